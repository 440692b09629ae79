//! Explicit bounds for quartic Thue equations `f(x, y) = ±1`.
//!
//! For a threshold `C` on `|Disc(f)|` and an integer `r >= 1` with
//! `r^12 C >= D_1`, set `kappa(r) = 1 - log D_1 / log(r^12 C) - eps`; the number
//! of solutions is at most `psi(r) floor(36 + 8 / kappa(r))`. The optimizer
//! picks the `r` minimizing this. Also here: sublattices of index `r` with
//! cyclic quotient and the forms they induce.

pub mod real;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forms::BinaryForm;
use crate::{Error, Result};
use real::Interval;

/// `D_1 = (7/2)^12 4^4 = 7^12 / 16`.
pub fn d1() -> BigRational {
    BigRational::new(BigInt::from(7).pow(12), BigInt::from(16))
}

/// Configuration for the bound computations.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundParams {
    /// Discriminant threshold.
    pub c: BigRational,
    pub epsilon: BigRational,
    /// Decimal digits of working precision.
    pub precision: u32,
}

impl BoundParams {
    pub fn new(c: BigRational, epsilon: BigRational, precision: u32) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidInput(format!("C must be positive, got {c}")));
        }
        if !epsilon.is_positive() || epsilon >= BigRational::one() {
            return Err(Error::InvalidInput(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        if precision < 40 {
            return Err(Error::InvalidInput(format!(
                "precision must be at least 40 digits, got {precision}"
            )));
        }
        Ok(BoundParams {
            c,
            epsilon,
            precision,
        })
    }

    /// `C` with `epsilon = 10^-9` and 60 digits.
    pub fn with_c(c: BigRational) -> Result<Self> {
        Self::new(c, default_epsilon(), 60)
    }

    /// `C = 10^k` with the defaults.
    pub fn power_of_ten(k: u32) -> Self {
        Self::with_c(BigRational::from_integer(BigInt::from(10).pow(k))).expect("valid")
    }

    fn bits(&self) -> u32 {
        real::bits_for_digits(self.precision)
    }
}

pub fn default_epsilon() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(9))
}

/// Parses `"10^k"`, `"1e6"`, `"13841287201/16"`, `"0.5"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    if let Some((base, exp)) = s.split_once('^') {
        let e: u32 = exp.trim().parse().map_err(|_| bad())?;
        return Ok(BigRational::from_integer(int(base)?.pow(e)));
    }
    if let Some((n, d)) = s.split_once('/') {
        let d = int(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(int(n)?, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.trim().parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let n = int(&format!("{whole}{frac}"))?;
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    })
}

/// `psi(r) = r prod_{p | r} (1 + 1/p)`.
pub fn dedekind_psi(r: u64) -> u64 {
    assert!(r >= 1);
    let mut n = r;
    let mut out = r;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out = out / p * (p + 1);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out = out / n * (n + 1);
    }
    out
}

/// `kappa(r)` enclosed in an interval. Requires `r^12 C > 1`.
pub fn kappa(r: u64, params: &BoundParams) -> Result<Interval> {
    let scaled = r12c(r, params);
    if scaled <= BigRational::one() {
        return Err(Error::PreconditionFailed(format!(
            "r^12 C = {scaled} must exceed 1"
        )));
    }
    let bits = params.bits();
    let ratio = real::ln(&d1(), bits).div(&real::ln(&scaled, bits));
    let one_minus_eps = Interval::from_rational(&(BigRational::one() - &params.epsilon), bits);
    Ok(one_minus_eps.sub(&ratio))
}

fn r12c(r: u64, params: &BoundParams) -> BigRational {
    BigRational::from_integer(BigInt::from(r).pow(12)) * &params.c
}

/// `kappa` rendered for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaValue {
    /// Lower end of the enclosure, truncated to 30 places.
    pub value: String,
    /// Three places, truncated.
    pub truncated: String,
    /// Three places, rounded.
    pub rounded: String,
}

impl KappaValue {
    fn from_interval(k: &Interval) -> Self {
        let lo = k.lower();
        KappaValue {
            value: real::fixed(&lo, 30, false),
            truncated: real::fixed(&lo, 3, false),
            rounded: real::fixed(&lo, 3, true),
        }
    }
}

/// Outcome of [`bound_for_r`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub r: u64,
    pub psi: u64,
    pub kappa: Option<KappaValue>,
    /// `psi(r) floor(36 + 8 / kappa(r))`, absent if `r` is rejected.
    pub bound: Option<u64>,
    pub rejected: Option<String>,
}

/// `psi(r) floor(36 + 8 / kappa(r))`, or a rejection when `r^12 C < D_1` or
/// `kappa(r)` is not in `(0, 1)`.
///
/// The floor is taken at the lower end of the `kappa` enclosure, so the bound
/// can only err upward.
pub fn bound_for_r(r: u64, params: &BoundParams) -> Candidate {
    let psi = dedekind_psi(r);
    let reject = |why: String| Candidate {
        r,
        psi,
        kappa: None,
        bound: None,
        rejected: Some(why),
    };
    if r12c(r, params) < d1() {
        return reject("r^12 C < D_1".into());
    }
    let k = match kappa(r, params) {
        Ok(k) => k,
        Err(e) => return reject(e.to_string()),
    };
    if !k.is_positive() || k.upper() >= BigRational::one() {
        return reject("kappa(r) is not in (0, 1)".into());
    }
    let lo = k.lower();
    // floor(36 + 8 / lo), exactly.
    let count = (BigRational::from_integer(36.into()) + BigRational::from_integer(8.into()) / &lo)
        .floor()
        .to_integer()
        .to_u64()
        .expect("small");
    Candidate {
        r,
        psi,
        kappa: Some(KappaValue::from_interval(&k)),
        bound: Some(psi * count),
        rejected: None,
    }
}

/// Largest `r` the optimizer examines.
pub const R_CAP: u64 = 1000;

/// One optimized bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub c: String,
    pub epsilon: String,
    pub r_star: u64,
    pub kappa: KappaValue,
    pub bound: u64,
    /// Every `r` evaluated, ascending; pruned values of `r` are omitted.
    pub candidates: Vec<Candidate>,
}

/// Minimizes `psi(r) floor(36 + 8 / kappa(r))` over `1 <= r <= 1000`.
///
/// Since `floor(36 + 8 / kappa) >= 44`, any `r` with `44 psi(r)` at least the
/// best bound so far is skipped. Ties go to the smaller `r`.
pub fn optimize(params: &BoundParams) -> Result<BoundReport> {
    let mut best: Option<(u64, Candidate)> = None;
    let mut candidates = Vec::new();
    for r in 1..=R_CAP {
        if let Some((b, _)) = &best {
            if 44 * dedekind_psi(r) >= *b {
                continue;
            }
        }
        let cand = bound_for_r(r, params);
        if let Some(b) = cand.bound {
            if best.as_ref().is_none_or(|(cur, _)| b < *cur) {
                best = Some((b, cand.clone()));
            }
        }
        candidates.push(cand);
    }
    let (bound, star) = best.ok_or(Error::NoFeasibleR(R_CAP))?;
    Ok(BoundReport {
        c: params.c.to_string(),
        epsilon: params.epsilon.to_string(),
        r_star: star.r,
        kappa: star.kappa.expect("feasible"),
        bound,
        candidates,
    })
}

/// A row of the table of optimal bounds for `C = 10^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: u32,
    pub r: u64,
    pub kappa: KappaValue,
    pub bound: u64,
}

impl TableRow {
    /// `k  r  kappa  bound` with kappa truncated to three places.
    pub fn text(&self) -> String {
        format!(
            "{}  {}  {}  {}",
            self.k, self.r, self.kappa.truncated, self.bound
        )
    }
}

/// Optimal bounds for `C = 10^k`, one row per `k`.
pub fn table(ks: &[u32], epsilon: &BigRational, precision: u32) -> Result<Vec<TableRow>> {
    ks.par_iter()
        .map(|&k| {
            let c = BigRational::from_integer(BigInt::from(10).pow(k));
            let rep = optimize(&BoundParams::new(c, epsilon.clone(), precision)?)?;
            Ok(TableRow {
                k,
                r: rep.r_star,
                kappa: rep.kappa,
                bound: rep.bound,
            })
        })
        .collect()
}

/// `D_1^(1 / (1 - kappa))`.
pub fn corollary_threshold(kappa_value: &BigRational, precision: u32) -> Result<Interval> {
    if !kappa_value.is_positive() || kappa_value >= &BigRational::one() {
        return Err(Error::InvalidInput(format!(
            "kappa must lie in (0, 1), got {kappa_value}"
        )));
    }
    let bits = real::bits_for_digits(precision);
    let exponent = BigRational::one() / (BigRational::one() - kappa_value);
    Ok(real::pow(&d1(), &Interval::from_rational(&exponent, bits)))
}

/// Sublattice of `Z^2` spanned by the rows `(a, b)` and `(0, d)` of its
/// Hermite normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice {
    pub hnf: [[u64; 2]; 2],
}

impl Sublattice {
    pub fn index(&self) -> u64 {
        self.hnf[0][0] * self.hnf[1][1]
    }

    /// `(x, y) = s (a, b) + t (0, d)` for integers `s, t`.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let [[a, b], [_, d]] = self.hnf.map(|r| r.map(|v| v as i64));
        if x.rem_euclid(a) != 0 {
            return false;
        }
        (y - b * (x / a)).rem_euclid(d) == 0
    }

    /// The parametrization `(s, t) -> (a s, b s + d t)` as a matrix
    /// `(a 0; b d)` for [`form_on_sublattice`].
    pub fn matrix(&self) -> [[BigInt; 2]; 2] {
        let [[a, b], [_, d]] = self.hnf;
        [[a, 0], [b, d]].map(|r| r.map(BigInt::from))
    }
}

/// All index-`r` sublattices with cyclic quotient, as Hermite normal forms
/// `(a b; 0 d)` with `ad = r`, `0 <= b < d`, `gcd(a, b, d) = 1`.
pub fn sublattices(r: u64) -> Vec<Sublattice> {
    assert!(r >= 1);
    let mut out = Vec::new();
    for a in 1..=r {
        if !r.is_multiple_of(a) {
            continue;
        }
        let d = r / a;
        for b in 0..d {
            if a.gcd(&b).gcd(&d) == 1 {
                out.push(Sublattice {
                    hnf: [[a, b], [0, d]],
                });
            }
        }
    }
    out
}

/// `f_A(x, y) = f(a x + b y, c x + d y)` for `A = (a b; c d)`.
pub fn form_on_sublattice(f: &BinaryForm, a: &[[BigInt; 2]; 2]) -> BinaryForm {
    // substitute takes the transpose convention.
    let t = [
        [a[0][0].clone(), a[1][0].clone()],
        [a[0][1].clone(), a[1][1].clone()],
    ];
    f.substitute(&t)
}

/// Whether every point of the box `|x|, |y| <= size` lies in some index-`r`
/// sublattice; otherwise the first uncovered point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub r: u64,
    pub size: u64,
    pub covered: bool,
    pub witness: Option<(i64, i64)>,
}

pub fn cover_check(r: u64, size: u64) -> CoverResult {
    let lattices = sublattices(r);
    let h = size as i64;
    let witness = (-h..=h)
        .flat_map(|x| (-h..=h).map(move |y| (x, y)))
        .find(|&(x, y)| !lattices.iter().any(|l| l.contains(x, y)));
    CoverResult {
        r,
        size,
        covered: witness.is_none(),
        witness,
    }
}
