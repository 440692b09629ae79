//! Exact arithmetic for binary forms, pairs of ternary quadratic forms and
//! rings of small rank, together with the tools needed to count
//! monogenizations of quartic orders:
//!
//! - [`forms`]: integer binary forms, discriminant, content, `GL_2(Z)` actions.
//! - [`ternary`]: half-integral ternary quadratic forms stored as doubled Gram
//!   matrices, pairs `(A, B)`, the resolvent binary cubic and reduction to `A_1`.
//! - [`rings`]: rings of rank `n` given by structure constants, Delone–Faddeev
//!   cubic rings, invariant orders and brute-force monogenizer enumeration.
//! - [`resolvent`]: the quartic-to-pair embedding, its normalization, the map
//!   `rho` and the monogenization-counting pipeline.
//! - [`thue`]: bounded enumeration of solutions to `F(x, y) = m`.
//! - [`bounds`]: the explicit quartic Thue bound optimizer and the sublattice
//!   machinery behind it.
//!
//! All integers are arbitrary precision ([`num_bigint::BigInt`]).

pub mod arith;
pub mod bounds;
mod error;
pub mod forms;
pub mod json;
pub mod resolvent;
pub mod rings;
pub mod ternary;
pub mod thue;

pub use error::{Error, Result};
pub use forms::{Action, BinaryForm, Unimodular2};
pub use resolvent::{MonicQuartic, MonogenizationReport};
pub use rings::{RankRing, RingElement};
pub use ternary::{TernaryPair, TernaryQuadraticForm, Unimodular3};
pub use thue::{Target, ThueSolutionSet};




