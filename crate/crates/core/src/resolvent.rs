//! Binary quartic forms as pairs `(A_1, B)` of ternary quadratic forms, and
//! the monogenization count of a monic quartic order.
//!
//! A monogenization of `Q = Z[x]/(g)` is counted through its cubic resolvent
//! ring: each representation `(p, q)` of 1 by the resolvent cubic `F_3` gives a
//! monogenizer `beta`, and for each one a quartic form `h_beta` whose
//! representations of ±1 (up to sign) are the monogenizations lying over it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::forms::{homogenize, Action, BinaryForm, Unimodular2};
use crate::ternary::{a1, reduce_to_a1, TernaryPair, TernaryQuadraticForm, Unimodular3};
use crate::thue::{solve_box, Target};
use crate::{Error, Result};

/// `x^4 + b x^3 + c x^2 + d x + e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonicQuartic {
    #[serde(with = "crate::json::int")]
    pub b: BigInt,
    #[serde(with = "crate::json::int")]
    pub c: BigInt,
    #[serde(with = "crate::json::int")]
    pub d: BigInt,
    #[serde(with = "crate::json::int")]
    pub e: BigInt,
}

impl MonicQuartic {
    pub fn new(b: BigInt, c: BigInt, d: BigInt, e: BigInt) -> Self {
        MonicQuartic { b, c, d, e }
    }

    pub fn from_i64(b: i64, c: i64, d: i64, e: i64) -> Self {
        Self::new(b.into(), c.into(), d.into(), e.into())
    }

    /// `x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4`.
    pub fn form(&self) -> BinaryForm {
        homogenize(&[
            BigInt::one(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        ])
        .expect("monic quartic")
    }

    pub fn discriminant(&self) -> BigInt {
        self.form().discriminant()
    }
}

impl std::str::FromStr for MonicQuartic {
    type Err = Error;
    /// Parses `"b,c,d,e"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<BigInt> = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad quartic {s:?}")))?;
        let [b, c, d, e]: [BigInt; 4] = parts
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("expected b,c,d,e, got {s:?}")))?;
        Ok(MonicQuartic { b, c, d, e })
    }
}

impl fmt::Display for MonicQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

/// `f = (a, b, c, d, e)` maps to `(A_1, B)` with
/// `gram2(B) = [[2a, b, 0], [b, 2c, d], [0, d, 2e]]`.
pub fn psi_embed(f: &BinaryForm) -> Result<TernaryPair> {
    if f.degree() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected a quartic form, got degree {}",
            f.degree()
        )));
    }
    let k = f.coeffs();
    let z = BigInt::zero();
    let b = TernaryQuadraticForm::new([
        [2 * &k[0], k[1].clone(), z.clone()],
        [k[1].clone(), 2 * &k[2], k[3].clone()],
        [z, k[3].clone(), 2 * &k[4]],
    ])?;
    Ok(TernaryPair::new(a1(), b))
}

/// Inverse of [`psi_embed`] on pairs `(A_1, B)` whose `B` has zero corner entry.
pub fn psi_inverse(pair: &TernaryPair) -> Result<BinaryForm> {
    if pair.a != a1() {
        return Err(Error::PreconditionFailed("first form is not A_1".into()));
    }
    let m = pair.b.gram2();
    if !m[0][2].is_zero() {
        return Err(Error::PreconditionFailed(format!(
            "corner entry of B is {}, expected 0",
            m[0][2]
        )));
    }
    BinaryForm::new(vec![
        &m[0][0] / 2,
        m[0][1].clone(),
        &m[1][1] / 2,
        m[1][2].clone(),
        &m[2][2] / 2,
    ])
}

/// Replaces `B` by `B - t A_1` so that its corner entry vanishes.
pub fn normalize_f1(pair: &TernaryPair) -> Result<TernaryPair> {
    if pair.a != a1() {
        return Err(Error::PreconditionFailed("first form is not A_1".into()));
    }
    let t = pair.b.gram2()[0][2].clone();
    let shift = Unimodular2::new([
        [BigInt::one(), BigInt::zero()],
        [-t, BigInt::one()],
    ])
    .expect("unipotent");
    Ok(pair.act2(&shift))
}

/// The image of `gamma = (a b; c d)` in `SO(A_1)`:
/// `(1/det) [[a^2, ab, b^2], [2ac, ad + bc, 2bd], [c^2, cd, d^2]]`.
///
/// With this ordering of coordinates `psi(gamma . f)` and `rho(gamma) . psi(f)`
/// agree up to adding multiples of `A_1` to `B`, for the twisted action on
/// quartics. `rho` is a homomorphism and `rho(-gamma) = rho(gamma)`.
pub fn rho(gamma: &Unimodular2) -> Unimodular3 {
    let [[a, b], [c, d]] = gamma.entries();
    let det = gamma.det();
    let m: arith::Mat3 = [
        [a * a, a * b, b * b],
        [2 * a * c, a * d + b * c, 2 * b * d],
        [c * c, c * d, d * d],
    ]
    .map(|row| row.map(|x| x * &det));
    Unimodular3::new(m).expect("rho is unimodular")
}

/// `x^3 - c x^2 + (bd - 4e) x + (4ce - d^2 - b^2 e)`, descending coefficients.
pub fn monic_resolvent_cubic(g: &MonicQuartic) -> Vec<BigInt> {
    let MonicQuartic { b, c, d, e } = g;
    vec![
        BigInt::one(),
        -c.clone(),
        b * d - 4 * e,
        4 * c * e - d * d - b * b * e,
    ]
}

/// Search heights for the counting pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heights {
    /// Box for `F_3(p, q) = 1`.
    pub cubic: u64,
    /// Box for `h_beta(x, y) = ±1`.
    pub quartic: u64,
    /// Box for the isotropic vector in the reduction to `A_1`.
    pub reduce: u64,
}

impl Default for Heights {
    fn default() -> Self {
        Heights {
            cubic: 200,
            quartic: 200,
            reduce: 50,
        }
    }
}

/// A monogenizer of the cubic resolvent ring together with its quartic form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub quartic_form: BinaryForm,
    #[serde(with = "crate::json::int")]
    pub cubic_rep: (BigInt, BigInt),
}

/// One `beta` branch of the count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    #[serde(with = "crate::json::int")]
    pub cubic_rep: (BigInt, BigInt),
    /// Moves `(p, q)` to the first row.
    pub gamma: Unimodular2,
    /// `gamma . psi(h)`, whose first form has `4 Det = 1`.
    pub moved: TernaryPair,
    /// `g3` with `g3 A g3^t = A_1`, if found.
    pub reducer: Option<Unimodular3>,
    /// `h_beta`.
    pub quartic_form: Option<BinaryForm>,
    /// Representations of ±1 by `h_beta`, up to sign.
    #[serde(with = "crate::json::int")]
    pub representations: Vec<(BigInt, BigInt)>,
    pub error: Option<String>,
}

impl Branch {
    pub fn count(&self) -> usize {
        self.representations.len()
    }

    pub fn triple(&self) -> Option<Triple> {
        self.quartic_form.as_ref().map(|h| Triple {
            quartic_form: h.clone(),
            cubic_rep: self.cubic_rep.clone(),
        })
    }
}

/// Result of [`count_monogenizations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonogenizationReport {
    pub quartic: MonicQuartic,
    pub form: BinaryForm,
    #[serde(with = "crate::json::int")]
    pub discriminant: BigInt,
    pub resolvent: BinaryForm,
    pub heights: Heights,
    #[serde(with = "crate::json::int")]
    pub cubic_solutions: Vec<(BigInt, BigInt)>,
    pub branches: Vec<Branch>,
    /// Sum of the branch counts.
    pub total: usize,
    /// Sum over branches whose `h_beta` are pairwise inequivalent under the
    /// bounded equivalence test of [`equivalent_quartics`].
    pub dedup_total: usize,
    /// True when every branch was reduced.
    pub complete: bool,
}

impl MonogenizationReport {
    pub fn failed_branches(&self) -> usize {
        self.branches.iter().filter(|b| b.error.is_some()).count()
    }
}

/// Headline upper bound on monogenizations of a quartic order.
const MONOGENIZATION_BOUND: usize = 2760;

/// Counts monogenizations of `Z[x]/(g)` by the resolvent method.
///
/// Every step is a bounded search: the result is the number of
/// monogenizations whose data fit in the given heights. A branch whose
/// reduction fails is recorded and the whole call then fails with
/// `ReductionIncomplete` carrying the report.
pub fn count_monogenizations(g: &MonicQuartic, heights: Heights) -> Result<MonogenizationReport> {
    let h = g.form();
    let discriminant = h.discriminant();
    if discriminant.is_zero() {
        return Err(Error::DegenerateDiscriminant);
    }
    let embedded = psi_embed(&h)?;
    let resolvent = embedded.resolvent_cubic();
    let cubic = solve_box(&resolvent, &Target::Exact(BigInt::one()), heights.cubic, false)?;

    let branches: Vec<Branch> = cubic
        .solutions
        .par_iter()
        .map(|(p, q)| branch(&embedded, p, q, heights))
        .collect::<Result<_>>()?;

    let total: usize = branches.iter().map(Branch::count).sum();
    let mut classes: Vec<&BinaryForm> = Vec::new();
    let mut dedup_total = 0;
    for b in &branches {
        let Some(hb) = &b.quartic_form else { continue };
        if !classes.iter().any(|c| equivalent_quartics(c, hb)) {
            classes.push(hb);
            dedup_total += b.count();
        }
    }

    let report = MonogenizationReport {
        quartic: g.clone(),
        form: h,
        discriminant,
        resolvent,
        heights,
        cubic_solutions: cubic.solutions,
        complete: branches.iter().all(|b| b.error.is_none()),
        branches,
        total,
        dedup_total,
    };
    if total > MONOGENIZATION_BOUND {
        return Err(Error::BoundExceeded {
            count: total,
            bound: MONOGENIZATION_BOUND,
        });
    }
    if !report.complete {
        return Err(Error::ReductionIncomplete(Box::new(report)));
    }
    Ok(report)
}

fn branch(embedded: &TernaryPair, p: &BigInt, q: &BigInt, heights: Heights) -> Result<Branch> {
    let gamma = completion(p, q);
    let moved = embedded.act2(&gamma);
    let mut out = Branch {
        cubic_rep: (p.clone(), q.clone()),
        gamma,
        moved: moved.clone(),
        reducer: None,
        quartic_form: None,
        representations: Vec::new(),
        error: None,
    };
    let g3 = match reduce_to_a1(&moved.a, heights.reduce) {
        Ok(g3) => g3,
        Err(e @ Error::NotFoundWithinBound(_)) => {
            out.error = Some(e.to_string());
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let hb = psi_inverse(&normalize_f1(&moved.act3(&g3))?)?;
    let reps = solve_box(&hb, &Target::PlusMinus(BigInt::one()), heights.quartic, true)?;
    out.reducer = Some(g3);
    out.quartic_form = Some(hb);
    out.representations = reps.solutions;
    Ok(out)
}

/// `(p q; r s)` with `ps - qr = 1` and `(r, s)` as small as possible.
fn completion(p: &BigInt, q: &BigInt) -> Unimodular2 {
    let (g, x, y) = arith::ext_gcd(p, q);
    debug_assert!(g.is_one());
    // p x + q y = 1, so (r, s) = (-y, x); shift by multiples of (p, q).
    let (r0, s0) = (-y, x);
    let norm = p * p + q * q;
    let k0 = -(&r0 * p + &s0 * q).div_floor(&norm);
    let size = |k: &BigInt| {
        let (r, s) = (&r0 + k * p, &s0 + k * q);
        (r.abs().max(s.abs()), r, s)
    };
    let best = [&k0 - 1, k0.clone(), &k0 + 1]
        .iter()
        .map(size)
        .min()
        .expect("three candidates");
    Unimodular2::new([[p.clone(), q.clone()], [best.1, best.2]]).expect("completion")
}

/// Whether `f2 = ±(gamma . f1)` for some `gamma` with entries in `[-3, 3]`.
///
/// Bounded, so only a sufficient test of `GL_2(Z)`-equivalence.
pub fn equivalent_quartics(f1: &BinaryForm, f2: &BinaryForm) -> bool {
    if f1.discriminant() != f2.discriminant() {
        return false;
    }
    let neg = -f2.clone();
    let r = -3i64..=3;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    let g = Unimodular2::from_i64([[a, b], [c, d]]).expect("unimodular");
                    let moved = f1.act(&g, Action::QuarticTwist);
                    if &moved == f2 || moved == neg {
                        return true;
                    }
                }
            }
        }
    }
    false
}
