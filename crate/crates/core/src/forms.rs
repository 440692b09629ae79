//! Integer binary forms `a_0 x^n + a_1 x^{n-1} y + ... + a_n y^n` and the
//! `GL_2(Z)` actions on them.
//!
//! Coefficients are stored in descending powers of `x`. Matrices act on the
//! row vector `(x, y)`: `f` is sent to `f((x, y) g)`, optionally scaled by a
//! power of `det g`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::{Error, Result};

/// An integral binary form of degree `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: usize,
    #[serde(with = "crate::json::int")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<FormRepr> for BinaryForm {
    type Error = Error;

    fn try_from(r: FormRepr) -> Result<Self> {
        if r.coeffs.len() != r.degree + 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} needs {} coefficients, got {}",
                r.degree,
                r.degree + 1,
                r.coeffs.len()
            )));
        }
        BinaryForm::new(r.coeffs)
    }
}

impl From<BinaryForm> for FormRepr {
    fn from(f: BinaryForm) -> Self {
        FormRepr {
            degree: f.degree(),
            coeffs: f.coeffs,
        }
    }
}

/// The three ways `GL_2(Z)` acts on forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    /// `f((x, y) g)`
    Plain,
    /// `det(g)^{-1} f((x, y) g)`, the action matching a change of basis of a cubic ring.
    CubicTwist,
    /// `det(g)^{-2} f((x, y) g)`, under which `-I` acts trivially on quartics.
    QuarticTwist,
}

impl BinaryForm {
    /// Builds a form from its `n + 1` coefficients, `n >= 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a binary form needs at least 2 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![BigInt::zero(); degree.max(1) + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// `f(x, y)`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        // Homogeneous Horner: sum a_i x^{n-i} y^i.
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i == 0 {
                acc = a.clone();
            } else {
                ypow *= y;
                acc = acc * x + a * &ypow;
            }
        }
        acc
    }

    /// Greatest common divisor of the coefficients (0 for the zero form).
    pub fn content(&self) -> BigInt {
        arith::gcd_all(&self.coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_exact(&self, k: &BigInt) -> Result<BinaryForm> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::PreconditionFailed(format!(
                    "coefficient {c} is not divisible by {k}"
                )));
            }
            coeffs.push(q);
        }
        Ok(BinaryForm { coeffs })
    }

    /// `f((x, y) m)` for an arbitrary integer matrix `m = (p q; r s)`,
    /// i.e. `f(p x + r y, q x + s y)`.
    pub fn substitute(&self, m: &[[BigInt; 2]; 2]) -> BinaryForm {
        let n = self.degree();
        // Linear forms in descending powers of x: X = p x + r y, Y = q x + s y.
        let lx = [m[0][0].clone(), m[1][0].clone()];
        let ly = [m[0][1].clone(), m[1][1].clone()];
        let xpows = linear_powers(&lx, n);
        let ypows = linear_powers(&ly, n);
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let prod = poly_mul(&xpows[n - i], &ypows[i]);
            for (o, t) in out.iter_mut().zip(prod) {
                *o += a * t;
            }
        }
        BinaryForm { coeffs: out }
    }

    /// The action of `g` on `self` in the given mode.
    pub fn act(&self, g: &Unimodular2, mode: Action) -> BinaryForm {
        let f = self.substitute(g.entries());
        // det = ±1, so det^{-k} = det^k.
        let negate = g.det().is_negative()
            && match mode {
                Action::Plain | Action::QuarticTwist => false,
                Action::CubicTwist => true,
            };
        if negate {
            -f
        } else {
            f
        }
    }

    /// The discriminant, normalized as `(-1)^{n(n-1)/2} Res(p, p') / a_0` with
    /// `p(x) = f(x, 1)`; a form with `a_0 = 0` is first moved by
    /// `(x, y) -> (x, k x + y)` so that its leading coefficient is nonzero.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if self.leading().is_zero() {
            for k in 1..=n as i64 {
                let g = Unimodular2::from_i64([[1, k], [0, 1]]).expect("unipotent");
                let moved = self.substitute(g.entries());
                if !moved.leading().is_zero() {
                    return moved.discriminant();
                }
            }
            // f(1, t) vanishes at n + 1 points, so f is the zero form.
            return BigInt::zero();
        }
        let p = &self.coeffs;
        let dp: Vec<BigInt> = p[..n]
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigInt::from(n - i))
            .collect();
        let res = resultant(p, &dp);
        let d = res / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// `f(x, -y)`.
    pub fn flip_y(&self) -> BinaryForm {
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }
}

impl std::ops::Neg for BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (xp, yp) = (n - i, i);
            let mono = match (xp, yp) {
                (0, 0) => String::new(),
                (xp, 0) => var("x", xp),
                (0, yp) => var("y", yp),
                (xp, yp) => format!("{}{}", var("x", xp), var("y", yp)),
            };
            let mag = a.abs();
            let coef = if mag.is_one() && !mono.is_empty() {
                String::new()
            } else {
                mag.to_string()
            };
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            }
            write!(f, "{coef}{mono}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn var(name: &str, pow: usize) -> String {
    if pow == 1 {
        name.to_string()
    } else {
        format!("{name}^{pow}")
    }
}

/// Powers `l^0, .., l^n` of a linear form `l = [cx, cy]`, in descending powers of x.
fn linear_powers(l: &[BigInt; 2], n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vec![BigInt::one()]);
    for k in 1..=n {
        out.push(poly_mul(&out[k - 1], l));
    }
    out
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Resultant of two univariate polynomials given in descending order, as the
/// determinant of their Sylvester matrix.
pub fn resultant(p: &[BigInt], q: &[BigInt]) -> BigInt {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    arith::det(&rows)
}

/// Binary form obtained by homogenizing a monic degree-4 polynomial given in
/// descending order `[1, b, c, d, e]`.
pub fn homogenize(poly: &[BigInt]) -> Result<BinaryForm> {
    if poly.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "expected a degree-4 polynomial (5 coefficients), got {}",
            poly.len()
        )));
    }
    if !poly[0].is_one() {
        return Err(Error::InvalidInput(format!(
            "polynomial is not monic (leading coefficient {})",
            poly[0]
        )));
    }
    BinaryForm::new(poly.to_vec())
}

/// A 2x2 integer matrix `(p q; r s)` of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatRepr2", into = "MatRepr2")]
pub struct Unimodular2 {
    m: [[BigInt; 2]; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct MatRepr2(#[serde(with = "crate::json::int")] [[BigInt; 2]; 2]);

impl TryFrom<MatRepr2> for Unimodular2 {
    type Error = Error;
    fn try_from(r: MatRepr2) -> Result<Self> {
        Unimodular2::new(r.0)
    }
}

impl From<Unimodular2> for MatRepr2 {
    fn from(g: Unimodular2) -> Self {
        MatRepr2(g.m)
    }
}

impl Unimodular2 {
    pub fn new(m: [[BigInt; 2]; 2]) -> Result<Self> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.abs() != BigInt::one() {
            return Err(Error::InvalidInput(format!(
                "matrix has determinant {det}, expected ±1"
            )));
        }
        Ok(Unimodular2 { m })
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(m.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0], [0, 1]]).expect("identity")
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn mul(&self, other: &Unimodular2) -> Unimodular2 {
        let (a, b) = (&self.m, &other.m);
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j])
        });
        Unimodular2 { m }
    }

    pub fn inverse(&self) -> Unimodular2 {
        let d = self.det();
        let [[p, q], [r, s]] = &self.m;
        Unimodular2 {
            m: [[s * &d, -q * &d], [-r * &d, p * &d]],
        }
    }
}
