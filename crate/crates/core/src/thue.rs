//! Bounded enumeration of integer solutions to `F(x, y) = m`.
//!
//! Each row `y` is solved as a univariate equation in `x`: every nonzero
//! integer root divides the lowest nonzero coefficient, so only divisors in the
//! box are evaluated.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forms::BinaryForm;
use crate::{Error, Result};

/// Right-hand side of a Thue equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `F(x, y) = m`.
    Exact(#[serde(with = "crate::json::int")] BigInt),
    /// `F(x, y) = m` or `F(x, y) = -m`.
    PlusMinus(#[serde(with = "crate::json::int")] BigInt),
}

impl Target {
    fn values(&self) -> Vec<BigInt> {
        match self {
            Target::Exact(m) => vec![m.clone()],
            Target::PlusMinus(m) if m.is_zero() => vec![m.clone()],
            Target::PlusMinus(m) => vec![m.clone(), -m.clone()],
        }
    }

    pub fn accepts(&self, v: &BigInt) -> bool {
        match self {
            Target::Exact(m) => v == m,
            Target::PlusMinus(m) => &v.abs() == m,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    /// `"pm1"` / `"pmM"` for `±M`, otherwise a plain integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad target {s:?}")))
        };
        match s.strip_prefix("pm") {
            Some(rest) => {
                let m = parse(rest)?;
                if m.is_negative() {
                    return Err(Error::InvalidInput(format!("bad target {s:?}")));
                }
                Ok(Target::PlusMinus(m))
            }
            None => Ok(Target::Exact(parse(s)?)),
        }
    }
}

/// Solutions of `F(x, y) = target` with `|x|, |y| <= height`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThueSolutionSet {
    pub form: BinaryForm,
    pub target: Target,
    pub height: u64,
    pub sign_identified: bool,
    #[serde(with = "crate::json::int")]
    pub solutions: Vec<(BigInt, BigInt)>,
}

impl ThueSolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Re-evaluates every listed pair.
    pub fn verify(&self) -> bool {
        self.solutions
            .iter()
            .all(|(x, y)| self.target.accepts(&self.form.eval(x, y)))
    }
}

/// Upper bounds from the literature used as sanity checks.
const QUARTIC_PM1_BOUND: usize = 276;
const CUBIC_ONE_BOUND: usize = 10;

/// All solutions of `f(x, y) = target` in the box `|x|, |y| <= height`.
///
/// With `sign_identified`, a pair `(x, y), (-x, -y)` of solutions is listed
/// once, as the member whose first nonzero coordinate is positive.
///
/// Fails with `BoundExceeded` if a nondegenerate quartic has more than 276
/// sign-identified representations of ±1, or a nondegenerate cubic represents
/// 1 more than 10 times: either would contradict known theorems and indicates
/// a bug.
pub fn solve_box(
    f: &BinaryForm,
    target: &Target,
    height: u64,
    sign_identified: bool,
) -> Result<ThueSolutionSet> {
    let h = i64::try_from(height)
        .map_err(|_| Error::InvalidInput(format!("height {height} is too large")))?;
    let values = target.values();
    let mut found: Vec<(i64, i64)> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|y| {
            let yb = BigInt::from(y);
            let mut row = Vec::new();
            for m in &values {
                for x in row_roots(f, &yb, m, h) {
                    row.push((x, y));
                }
            }
            row
        })
        .collect();
    found.sort();
    found.dedup();

    if sign_identified {
        let all = found.clone();
        found.retain(|&(x, y)| {
            let canonical = x > 0 || (x == 0 && y >= 0);
            canonical || all.binary_search(&(-x, -y)).is_err()
        });
    }

    let count = found.len();
    let bound = match (f.degree(), target) {
        (4, Target::PlusMinus(m)) if sign_identified && m == &BigInt::from(1) => {
            Some(QUARTIC_PM1_BOUND)
        }
        (3, Target::Exact(m)) if m == &BigInt::from(1) => Some(CUBIC_ONE_BOUND),
        _ => None,
    };
    if let Some(bound) = bound {
        if count > bound && !f.discriminant().is_zero() {
            return Err(Error::BoundExceeded { count, bound });
        }
    }

    Ok(ThueSolutionSet {
        form: f.clone(),
        target: target.clone(),
        height,
        sign_identified,
        solutions: found
            .into_iter()
            .map(|(x, y)| (BigInt::from(x), BigInt::from(y)))
            .collect(),
    })
}

/// Integer `x` with `|x| <= h` and `f(x, y) = m`, ascending.
fn row_roots(f: &BinaryForm, y: &BigInt, m: &BigInt, h: i64) -> Vec<i64> {
    let n = f.degree();
    // p[k] is the coefficient of x^k.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut ypow = BigInt::from(1);
    for i in 0..=n {
        p[n - i] = &f.coeffs()[i] * &ypow;
        ypow *= y;
    }
    p[0] -= m;

    if p.iter().all(Zero::is_zero) {
        return (-h..=h).collect();
    }
    let low = p.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(0);
    }
    let c0 = &p[low];
    let check = |x: i64| -> bool {
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in p[low..].iter().rev() {
            acc = acc * &xb + c;
        }
        acc.is_zero()
    };
    if low == n {
        // Only a monomial remains: no nonzero roots.
        return roots;
    }
    let limit = c0.abs().to_i64().map_or(h, |c| c.min(h));
    let small = c0.to_i128();
    for x in 1..=limit {
        let divides = match small {
            Some(c) => c % (x as i128) == 0,
            None => (c0 % BigInt::from(x)).is_zero(),
        };
        if !divides {
            continue;
        }
        if check(x) {
            roots.push(x);
        }
        if check(-x) {
            roots.push(-x);
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    fn pairs(s: &ThueSolutionSet) -> Vec<(i64, i64)> {
        s.solutions
            .iter()
            .map(|(x, y)| (x.to_i64().unwrap(), y.to_i64().unwrap()))
            .collect()
    }

    fn brute(f: &BinaryForm, t: &Target, h: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for x in -h..=h {
            for y in -h..=h {
                if t.accepts(&f.eval(&x.into(), &y.into())) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn seven_cyclotomic_cubic() {
        let f = form(&[1, 1, -2, -1]);
        let s = solve_box(&f, &Target::Exact(1.into()), 100, false).unwrap();
        assert_eq!(
            pairs(&s),
            vec![
                (-9, 5),
                (-1, -1),
                (-1, 1),
                (-1, 2),
                (0, -1),
                (1, 0),
                (2, -1),
                (4, -9),
                (5, 4)
            ]
        );
        assert!(s.verify());
    }

    #[test]
    fn sign_identified_quartic() {
        let f = form(&[1, 0, 0, 0, 1]);
        let s = solve_box(&f, &Target::PlusMinus(1.into()), 10, true).unwrap();
        assert_eq!(pairs(&s), vec![(0, 1), (1, 0)]);
        let s = solve_box(&f, &Target::PlusMinus(1.into()), 10, false).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn trivial_cases() {
        let f = form(&[2, 0, 0, 3]);
        let s = solve_box(&f, &Target::Exact(4.into()), 1, false).unwrap();
        assert!(s.is_empty());
        // The zero form hits 0 everywhere.
        let z = BinaryForm::zero(3);
        let s = solve_box(&z, &Target::Exact(0.into()), 2, false).unwrap();
        assert_eq!(s.len(), 25);
        let s = solve_box(&z, &Target::Exact(0.into()), 2, true).unwrap();
        assert_eq!(s.len(), 13);
    }

    #[test]
    fn target_parsing() {
        assert_eq!("pm1".parse::<Target>().unwrap(), Target::PlusMinus(1.into()));
        assert_eq!("-1".parse::<Target>().unwrap(), Target::Exact((-1).into()));
        assert_eq!("7".parse::<Target>().unwrap(), Target::Exact(7.into()));
        assert!("pm-1".parse::<Target>().is_err());
        assert!("one".parse::<Target>().is_err());
    }

    #[test]
    fn json_shape() {
        let f = form(&[1, 0, 0, 0, 1]);
        let s = solve_box(&f, &Target::PlusMinus(1.into()), 3, true).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["target"], serde_json::json!({"plus_minus": 1}));
        assert_eq!(v["solutions"], serde_json::json!([[0, 1], [1, 0]]));
        let back: ThueSolutionSet = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn matches_brute_force(
            c in prop::collection::vec(-6i64..=6, 3..=5),
            m in -3i64..=3,
            pm in any::<bool>(),
        ) {
            let f = form(&c);
            let t = if pm { Target::PlusMinus(m.abs().into()) } else { Target::Exact(m.into()) };
            let s = solve_box(&f, &t, 8, false);
            // A degenerate form may legitimately exceed the sanity bound.
            if let Ok(s) = s {
                prop_assert_eq!(pairs(&s), brute(&f, &t, 8));
            }
        }

        #[test]
        fn monotone_in_height(c in prop::array::uniform4(-5i64..=5), h in 1u64..12) {
            let f = form(&c);
            let t = Target::PlusMinus(1.into());
            if let (Ok(lo), Ok(hi)) = (solve_box(&f, &t, h, true), solve_box(&f, &t, h + 3, true)) {
                for p in &lo.solutions {
                    // A lone solution can be replaced by its canonical twin
                    // once the twin enters the box.
                    let neg = (-p.0.clone(), -p.1.clone());
                    prop_assert!(hi.solutions.contains(p) || hi.solutions.contains(&neg));
                }
            }
        }

        #[test]
        fn sign_identification_is_canonical(c in prop::collection::vec(-5i64..=5, 5)) {
            let f = form(&c);
            prop_assume!(!f.discriminant().is_zero());
            let s = solve_box(&f, &Target::PlusMinus(1.into()), 10, true).unwrap();
            let all = solve_box(&f, &Target::PlusMinus(1.into()), 10, false).unwrap();
            // Even degree: f(-x,-y) = f(x,y) so solutions pair up exactly.
            prop_assert_eq!(2 * s.len(), all.len());
            for (x, y) in &s.solutions {
                prop_assert!(x.is_positive() || (x.is_zero() && y.is_positive()));
            }
        }
    }
}
