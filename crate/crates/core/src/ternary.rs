//! Integral ternary quadratic forms and pairs of them.
//!
//! A form `A` is stored as `gram2 = 2 * Gram(A)`, a symmetric integer matrix
//! with even diagonal, so `A(v) = v^t gram2 v / 2` and `4 Det(A) = det(gram2) / 2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Mat3};
use crate::forms::{BinaryForm, Unimodular2};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TernaryRepr", into = "TernaryRepr")]
pub struct TernaryQuadraticForm {
    gram2: Mat3,
}

#[derive(Serialize, Deserialize)]
struct TernaryRepr {
    #[serde(with = "crate::json::int")]
    gram2: Mat3,
}

impl TryFrom<TernaryRepr> for TernaryQuadraticForm {
    type Error = Error;
    fn try_from(r: TernaryRepr) -> Result<Self> {
        TernaryQuadraticForm::new(r.gram2)
    }
}

impl From<TernaryQuadraticForm> for TernaryRepr {
    fn from(a: TernaryQuadraticForm) -> Self {
        TernaryRepr { gram2: a.gram2 }
    }
}

impl TernaryQuadraticForm {
    /// Validates symmetry and even diagonal.
    pub fn new(gram2: Mat3) -> Result<Self> {
        for i in 0..3 {
            if gram2[i][i].is_odd() {
                return Err(Error::InvalidInput(format!(
                    "gram2 diagonal entry {} is odd",
                    gram2[i][i]
                )));
            }
            for j in 0..i {
                if gram2[i][j] != gram2[j][i] {
                    return Err(Error::InvalidInput("gram2 is not symmetric".into()));
                }
            }
        }
        Ok(TernaryQuadraticForm { gram2 })
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(arith::mat3_from(rows))
    }

    pub fn zero() -> Self {
        TernaryQuadraticForm {
            gram2: arith::mat3_from([[0; 3]; 3]),
        }
    }

    pub fn gram2(&self) -> &Mat3 {
        &self.gram2
    }

    /// `4 Det(A)`, an integer.
    pub fn four_det(&self) -> BigInt {
        arith::mat3_det(&self.gram2) / 2
    }

    /// `A(v)`.
    pub fn eval(&self, v: &[BigInt; 3]) -> BigInt {
        arith::dot3(&arith::vec_mat3(v, &self.gram2), v) / 2
    }

    fn combine(&self, s: &BigInt, other: &Self, t: &BigInt) -> Self {
        TernaryQuadraticForm {
            gram2: arith::mat3_scale_add(&self.gram2, s, &other.gram2, t),
        }
    }
}

/// The fixed form `A_1(p, q, r) = pr - q^2` of determinant 1/4.
pub fn a1() -> TernaryQuadraticForm {
    TernaryQuadraticForm::from_i64([[0, 0, 1], [0, -2, 0], [1, 0, 0]]).expect("A1")
}

/// A pair `(A, B)` of integral ternary quadratic forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TernaryPair {
    #[serde(rename = "A")]
    pub a: TernaryQuadraticForm,
    #[serde(rename = "B")]
    pub b: TernaryQuadraticForm,
}

impl TernaryPair {
    pub fn new(a: TernaryQuadraticForm, b: TernaryQuadraticForm) -> Self {
        TernaryPair { a, b }
    }

    /// The resolvent binary cubic `4 Det(A x + B y)`, computed as
    /// `Det(2A x + 2B y) / 2`.
    ///
    /// With this sign the resolvent of the embedding of a monic quartic is the
    /// homogenized monic resolvent polynomial, and the `GL_2` action on pairs
    /// matches the plain substitution action on cubics.
    pub fn resolvent_cubic(&self) -> BinaryForm {
        let coeffs = self
            .doubled_resolvent()
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_even());
                c / 2
            })
            .collect();
        BinaryForm::new(coeffs).expect("cubic")
    }

    /// Coefficients of `Det(2A x + 2B y)`.
    fn doubled_resolvent(&self) -> Vec<BigInt> {
        let (ma, mb) = (&self.a.gram2, &self.b.gram2);
        // Entries are linear forms [coef of x, coef of y].
        let lin: [[[BigInt; 2]; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| [ma[i][j].clone(), mb[i][j].clone()])
        });
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            sub(
                &mul(&lin[r0][c0], &lin[r1][c1]),
                &mul(&lin[r0][c1], &lin[r1][c0]),
            )
        };
        let t0 = mul(&lin[0][0], &minor(1, 2, 1, 2));
        let t1 = mul(&lin[0][1], &minor(1, 2, 0, 2));
        let t2 = mul(&lin[0][2], &minor(1, 2, 0, 1));
        add(&sub(&t0, &t1), &t2)
    }

    /// The discriminant of the pair, i.e. of its resolvent cubic.
    pub fn discriminant(&self) -> BigInt {
        self.resolvent_cubic().discriminant()
    }

    /// `g3 . (A, B) = (g3 A g3^t, g3 B g3^t)`.
    pub fn act3(&self, g3: &Unimodular3) -> TernaryPair {
        TernaryPair {
            a: TernaryQuadraticForm {
                gram2: arith::congruence(&g3.m, &self.a.gram2),
            },
            b: TernaryQuadraticForm {
                gram2: arith::congruence(&g3.m, &self.b.gram2),
            },
        }
    }

    /// `(p q; r s) . (A, B) = (pA + qB, rA + sB)`.
    pub fn act2(&self, g2: &Unimodular2) -> TernaryPair {
        let [[p, q], [r, s]] = g2.entries();
        TernaryPair {
            a: self.a.combine(p, &self.b, q),
            b: self.a.combine(r, &self.b, s),
        }
    }
}

// Homogeneous polynomials in (x, y), descending powers of x.
fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A 3x3 integer matrix of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatRepr3", into = "MatRepr3")]
pub struct Unimodular3 {
    m: Mat3,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct MatRepr3(#[serde(with = "crate::json::int")] Mat3);

impl TryFrom<MatRepr3> for Unimodular3 {
    type Error = Error;
    fn try_from(r: MatRepr3) -> Result<Self> {
        Unimodular3::new(r.0)
    }
}

impl From<Unimodular3> for MatRepr3 {
    fn from(g: Unimodular3) -> Self {
        MatRepr3(g.m)
    }
}

impl Unimodular3 {
    pub fn new(m: Mat3) -> Result<Self> {
        let d = arith::mat3_det(&m);
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidInput(format!(
                "matrix has determinant {d}, expected ±1"
            )));
        }
        Ok(Unimodular3 { m })
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(arith::mat3_from(rows))
    }

    pub fn identity() -> Self {
        Unimodular3 {
            m: arith::mat3_identity(),
        }
    }

    pub fn entries(&self) -> &Mat3 {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        arith::mat3_det(&self.m)
    }

    pub fn mul(&self, other: &Unimodular3) -> Unimodular3 {
        Unimodular3 {
            m: arith::mat3_mul(&self.m, &other.m),
        }
    }

    /// `g M g^t` for a form `M`.
    pub fn conjugate(&self, a: &TernaryQuadraticForm) -> TernaryQuadraticForm {
        TernaryQuadraticForm {
            gram2: arith::congruence(&self.m, &a.gram2),
        }
    }
}

/// Finds `g3` with `g3 A g3^t = A_1`, for `A` with `4 Det(A) = 1`.
///
/// The first row of `g3` is the isotropic vector `v` of least height
/// (max-norm, ties broken lexicographically, first nonzero entry positive)
/// with `|v| <= search_height` whose image `gram2 v` is primitive. The third
/// row is an isotropic partner `w` with `v^t gram2 w = 1`, and the middle row
/// spans the orthogonal complement of `<v, w>`.
pub fn reduce_to_a1(a: &TernaryQuadraticForm, search_height: u64) -> Result<Unimodular3> {
    let four_det = a.four_det();
    if !four_det.is_one() {
        return Err(Error::PreconditionFailed(format!(
            "4 Det(A) = {four_det}, expected 1"
        )));
    }
    let m = &a.gram2;
    let v = least_isotropic(m, search_height).ok_or(Error::NotFoundWithinBound(search_height))?;

    let mv = arith::vec_mat3(&v, m);
    let (g, coeffs) = arith::ext_gcd_vec(&mv);
    debug_assert!(g.is_one());
    let w: [BigInt; 3] = coeffs.try_into().expect("three coefficients");
    // A(w + t v) = A(w) + t since A(v) = 0 and v^t gram2 w = 1.
    let t = -a.eval(&w);
    let w: [BigInt; 3] = std::array::from_fn(|k| &w[k] + &t * &v[k]);

    let mw = arith::vec_mat3(&w, m);
    let mut u = arith::cross3(&mv, &mw);
    let content = arith::gcd_all(&u);
    for x in u.iter_mut() {
        *x = &*x / &content;
    }
    let mut rows = [v, u, w];
    let d = arith::mat3_det(&rows);
    if d.is_negative() {
        rows[1] = rows[1].clone().map(|x| -x);
    }
    let g3 = Unimodular3::new(rows).map_err(|_| {
        Error::PreconditionFailed("hyperbolic completion is not unimodular".into())
    })?;
    if g3.conjugate(a) != a1() {
        return Err(Error::PreconditionFailed(
            "reduction did not reach A_1".into(),
        ));
    }
    Ok(g3)
}

/// Least `(height, v)` isotropic primitive vector with `gram2 v` primitive.
fn least_isotropic(m: &Mat3, h: u64) -> Option<[BigInt; 3]> {
    let h = h as i64;
    let mut best: Option<(i64, [BigInt; 3])> = None;
    // 2 A(v) = m22 v2^2 + 2 (m02 v0 + m12 v1) v2 + (m00 v0^2 + m11 v1^2 + 2 m01 v0 v1).
    for v0 in -h..=h {
        for v1 in -h..=h {
            let (x0, x1) = (BigInt::from(v0), BigInt::from(v1));
            let qa = m[2][2].clone();
            let qb: BigInt = 2 * (&m[0][2] * &x0 + &m[1][2] * &x1);
            let qc: BigInt =
                &m[0][0] * &x0 * &x0 + &m[1][1] * &x1 * &x1 + 2 * &m[0][1] * &x0 * &x1;
            for v2 in quadratic_roots(&qa, &qb, &qc, h) {
                let v = [x0.clone(), x1.clone(), BigInt::from(v2)];
                if !arith::is_canonical_sign(&v) || v.iter().all(Zero::is_zero) {
                    continue;
                }
                if !arith::gcd_all(&v).is_one() {
                    continue;
                }
                let height = v0.abs().max(v1.abs()).max(v2.abs());
                let better = match &best {
                    None => true,
                    Some((bh, bv)) => (height, &v) < (*bh, bv),
                };
                if better && arith::gcd_all(&arith::vec_mat3(&v, m)).is_one() {
                    best = Some((height, v));
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Integer roots `t` with `|t| <= h` of `a t^2 + b t + c`.
fn quadratic_roots(a: &BigInt, b: &BigInt, c: &BigInt, h: i64) -> Vec<i64> {
    let in_range = |t: &BigInt| -> Option<i64> {
        let t: i64 = t.try_into().ok()?;
        (t.abs() <= h).then_some(t)
    };
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { (-h..=h).collect() } else { vec![] };
        }
        let (q, r) = (-c).div_rem(b);
        return if r.is_zero() {
            in_range(&q).into_iter().collect()
        } else {
            vec![]
        };
    }
    let disc: BigInt = b * b - 4 * a * c;
    if disc.is_negative() {
        return vec![];
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return vec![];
    }
    let den: BigInt = 2 * a;
    let mut out = Vec::with_capacity(2);
    for num in [-b - &s, -b + &s] {
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            if let Some(t) = in_range(&q) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Action;
    use proptest::prelude::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn tq(rows: [[i64; 3]; 3]) -> TernaryQuadraticForm {
        TernaryQuadraticForm::from_i64(rows).unwrap()
    }

    #[test]
    fn a1_properties() {
        let a = a1();
        assert_eq!(a.gram2(), &arith::mat3_from([[0, 0, 1], [0, -2, 0], [1, 0, 0]]));
        assert_eq!(a.eval(&[b(1), b(1), b(1)]), b(0));
        assert_eq!(a.eval(&[b(2), b(1), b(3)]), b(5));
        assert_eq!(a.four_det(), b(1));
    }

    #[test]
    fn rejects_bad_gram() {
        assert!(TernaryQuadraticForm::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, 0]]).is_err());
        assert!(TernaryQuadraticForm::from_i64([[0, 1, 0], [0, 0, 0], [0, 0, 0]]).is_err());
    }

    #[test]
    fn resolvent_examples() {
        let p = TernaryPair::new(a1(), TernaryQuadraticForm::zero());
        assert_eq!(p.resolvent_cubic(), BinaryForm::from_i64(&[1, 0, 0, 0]).unwrap());
        assert_eq!(p.discriminant(), b(0));

        // embedding of x^4 + y^4
        let p = TernaryPair::new(a1(), tq([[2, 0, 0], [0, 0, 0], [0, 0, 2]]));
        assert_eq!(p.resolvent_cubic(), BinaryForm::from_i64(&[1, 0, -4, 0]).unwrap());
        assert_eq!(p.discriminant(), b(256));

        let z = TernaryPair::new(TernaryQuadraticForm::zero(), TernaryQuadraticForm::zero());
        assert!(z.resolvent_cubic().is_zero());
    }

    #[test]
    fn act_examples() {
        let p = TernaryPair::new(a1(), tq([[2, 1, 0], [1, 4, -3], [0, -3, 6]]));
        assert_eq!(p.act3(&Unimodular3::identity()), p);
        assert_eq!(p.act2(&Unimodular2::identity()), p);
        let swap = Unimodular2::from_i64([[0, 1], [1, 0]]).unwrap();
        assert_eq!(p.act2(&swap), TernaryPair::new(p.b.clone(), p.a.clone()));
        let rev = Unimodular3::from_i64([[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap();
        assert_eq!(p.act3(&rev).a, a1());
    }

    #[test]
    fn reduce_examples() {
        let g = reduce_to_a1(&a1(), 5).unwrap();
        assert_eq!(g.conjugate(&a1()), a1());
        let bad = tq([[2, 1, 0], [1, 2, 0], [0, 0, 2]]);
        assert!(matches!(
            reduce_to_a1(&bad, 5),
            Err(Error::PreconditionFailed(_))
        ));
        // A conjugate of A_1 whose smallest isotropic vector, (39, -21, 1), has height 39.
        let moved = tq([[-212, -395, -20], [-395, -736, -38], [-20, -38, -18]]);
        assert_eq!(moved.four_det(), b(1));
        assert!(matches!(
            reduce_to_a1(&moved, 15),
            Err(Error::NotFoundWithinBound(15))
        ));
        let g = reduce_to_a1(&moved, 60).unwrap();
        assert_eq!(g.conjugate(&moved), a1());
        assert_eq!(g.entries()[0][0].abs(), b(39));
    }

    #[test]
    fn reduce_signed_permutations() {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for perm in perms {
            for signs in 0..8 {
                let mut rows = [[0i64; 3]; 3];
                for (i, &j) in perm.iter().enumerate() {
                    rows[i][j] = if signs >> i & 1 == 1 { -1 } else { 1 };
                }
                let p = Unimodular3::from_i64(rows).unwrap();
                let a = p.conjugate(&a1());
                let g = reduce_to_a1(&a, 3).unwrap();
                assert_eq!(g.conjugate(&a), a1());
            }
        }
    }

    fn unimodular3() -> impl Strategy<Value = Unimodular3> {
        prop::collection::vec((0..3usize, 0..3usize, -2i64..=2), 0..8).prop_map(|ops| {
            let mut g = Unimodular3::identity();
            for (i, j, k) in ops {
                let mut e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
                if i == j {
                    e[i][i] = -1;
                } else {
                    e[i][j] = k;
                }
                g = g.mul(&Unimodular3::from_i64(e).unwrap());
            }
            g
        })
    }

    fn unimodular2() -> impl Strategy<Value = Unimodular2> {
        prop::collection::vec(0..4usize, 0..6).prop_map(|steps| {
            let gens = [
                Unimodular2::from_i64([[1, 1], [0, 1]]).unwrap(),
                Unimodular2::from_i64([[1, 0], [-1, 1]]).unwrap(),
                Unimodular2::from_i64([[0, 1], [1, 0]]).unwrap(),
                Unimodular2::from_i64([[-1, 0], [0, 1]]).unwrap(),
            ];
            steps
                .into_iter()
                .fold(Unimodular2::identity(), |acc, i| acc.mul(&gens[i]))
        })
    }

    fn ternary() -> impl Strategy<Value = TernaryQuadraticForm> {
        prop::array::uniform6(-4i64..=4).prop_map(|[a, b, c, d, e, f]| {
            tq([[2 * a, d, e], [d, 2 * b, f], [e, f, 2 * c]])
        })
    }

    fn pair() -> impl Strategy<Value = TernaryPair> {
        (ternary(), ternary()).prop_map(|(a, b)| TernaryPair::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn actions_commute(w in pair(), g2 in unimodular2(), g3 in unimodular3()) {
            prop_assert_eq!(w.act2(&g2).act3(&g3), w.act3(&g3).act2(&g2));
        }

        #[test]
        fn discriminant_invariant(w in pair(), g2 in unimodular2(), g3 in unimodular3()) {
            let d = w.discriminant();
            prop_assert_eq!(w.act3(&g3).discriminant(), d.clone());
            prop_assert_eq!(w.act2(&g2).discriminant().abs(), d.abs());
            prop_assert_eq!(w.act3(&g3).a.four_det(), w.a.four_det());
        }

        #[test]
        fn act2_is_substitution_on_resolvent(w in pair(), g2 in unimodular2()) {
            prop_assert_eq!(
                w.act2(&g2).resolvent_cubic(),
                w.resolvent_cubic().act(&g2, Action::Plain)
            );
        }

        #[test]
        fn resolvent_integral(w in pair()) {
            prop_assert!(w.doubled_resolvent().iter().all(|c| c.is_even()));
        }

        #[test]
        fn reduce_round_trip(g3 in unimodular3()) {
            let a = g3.conjugate(&a1());
            match reduce_to_a1(&a, 40) {
                Ok(g) => prop_assert_eq!(g.conjugate(&a), a1()),
                Err(Error::NotFoundWithinBound(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn resolvent_integral_exhaustive_sample() {
        // Every parity-valid gram2 with entries in [-4, 4], sampled on a grid.
        let vals = [-4i64, -1, 0, 3];
        let evens = [-4i64, -2, 0, 2, 4];
        let mut count = 0;
        for &a in &evens {
            for &d in &vals {
                for &e in &vals {
                    for &f in &vals {
                        let m = [[a, d, e], [d, 2, f], [e, f, -2]];
                        let n = [[-2, f, d], [f, a, e], [d, e, 4]];
                        let w = TernaryPair::new(tq(m), tq(n));
                        let direct = arith::mat3_det(&arith::mat3_scale_add(
                            w.a.gram2(),
                            &b(1),
                            w.b.gram2(),
                            &b(1),
                        ));
                        // F(1, 1) = det(gram2(A) + gram2(B)) / 2 must be integral.
                        assert!(direct.is_even());
                        assert_eq!(w.resolvent_cubic().eval(&b(1), &b(1)), direct / 2);
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 5 * 4 * 4 * 4);
    }
}
