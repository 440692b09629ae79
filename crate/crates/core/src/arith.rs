//! Small exact-integer helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. The empty matrix has determinant 1.
pub fn det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // Bareiss: the division is always exact.
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Returns `(g, x, y)` with `a*x + b*y = g` and `g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients `(u_1, .., u_k)` with `sum u_i * v_i = gcd(v)`; returns the gcd too.
pub fn ext_gcd_vec(v: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(v.len());
    for x in v {
        let (ng, s, t) = ext_gcd(&g, x);
        for c in coeffs.iter_mut() {
            *c *= &s;
        }
        coeffs.push(t);
        g = ng;
    }
    (g, coeffs)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Floor of `x / y` for `y > 0`.
pub fn floor_div(x: &BigInt, y: &BigInt) -> BigInt {
    x.div_floor(y)
}

pub type Mat3 = [[BigInt; 3]; 3];

pub fn mat3_from(rows: [[i64; 3]; 3]) -> Mat3 {
    rows.map(|r| r.map(BigInt::from))
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum())
    })
}

pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn mat3_det(a: &Mat3) -> BigInt {
    &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
        - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
        + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
}

/// `g * m * g^t`.
pub fn congruence(g: &Mat3, m: &Mat3) -> Mat3 {
    mat3_mul(&mat3_mul(g, m), &mat3_transpose(g))
}

pub fn mat3_scale_add(a: &Mat3, s: &BigInt, b: &Mat3, t: &BigInt) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| s * &a[i][j] + t * &b[i][j]))
}

pub fn mat3_identity() -> Mat3 {
    mat3_from([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

/// Row vector times matrix.
pub fn vec_mat3(v: &[BigInt; 3], m: &Mat3) -> [BigInt; 3] {
    std::array::from_fn(|j| (0..3).map(|k| &v[k] * &m[k][j]).sum())
}

pub fn dot3(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    (0..3).map(|k| &a[k] * &b[k]).sum()
}

pub fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Canonical sign: first nonzero entry positive.
pub fn canonical_sign<T>(v: &mut [T])
where
    T: Signed + Clone,
{
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

pub fn is_canonical_sign<T: Signed>(v: &[T]) -> bool {
    v.iter()
        .find(|x| !x.is_zero())
        .is_none_or(|x| x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn cofactor_det(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let cases = [
            m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]),
            m(&[&[0, 1, 2, 3], &[1, 0, 4, 1], &[2, 5, 0, 0], &[7, 1, 1, 1]]),
            m(&[&[0, 0], &[0, 5]]),
            m(&[&[3]]),
            m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]),
        ];
        for c in &cases {
            assert_eq!(det(c), cofactor_det(c));
        }
        assert_eq!(det(&[]), BigInt::one());
    }

    #[test]
    fn ext_gcd_vec_combination() {
        let v: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let (g, u) = ext_gcd_vec(&v);
        assert_eq!(g, BigInt::one());
        let s: BigInt = v.iter().zip(&u).map(|(a, b)| a * b).sum();
        assert_eq!(s, g);

        let v: Vec<BigInt> = [0, -4, 0].iter().map(|&x| BigInt::from(x)).collect();
        let (g, u) = ext_gcd_vec(&v);
        assert_eq!(g, BigInt::from(4));
        let s: BigInt = v.iter().zip(&u).map(|(a, b)| a * b).sum();
        assert_eq!(s, g);
    }
}
