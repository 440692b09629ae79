//! Rings of rank n given by structure constants on a basis `1, e_1, .., e_{n-1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::forms::BinaryForm;
use crate::{Error, Result};

/// A commutative, associative ring of rank `n` with identity.
///
/// `e_i e_j = m[i-1][j-1] + sum_k c[i-1][j-1][k-1] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct RankRing {
    rank: usize,
    m: Vec<Vec<BigInt>>,
    c: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Serialize, Deserialize)]
struct RingRepr {
    rank: usize,
    #[serde(with = "crate::json::int")]
    m: Vec<Vec<BigInt>>,
    #[serde(with = "crate::json::int")]
    c: Vec<Vec<Vec<BigInt>>>,
}

impl TryFrom<RingRepr> for RankRing {
    type Error = Error;
    fn try_from(r: RingRepr) -> Result<Self> {
        RankRing::new(r.rank, r.m, r.c)
    }
}

impl From<RankRing> for RingRepr {
    fn from(r: RankRing) -> Self {
        RingRepr {
            rank: r.rank,
            m: r.m,
            c: r.c,
        }
    }
}

/// An element `x_0 + x_1 e_1 + .. + x_{n-1} e_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    #[serde(with = "crate::json::int")]
    pub coords: Vec<BigInt>,
}

impl RingElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RingElement { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RingElement {
            coords: coords.iter().map(|&x| x.into()).collect(),
        }
    }

    pub fn one(rank: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[0] = BigInt::one();
        RingElement { coords }
    }

    /// The basis element `e_i` (with `e_0 = 1`).
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[i] = BigInt::one();
        RingElement { coords }
    }
}

impl RankRing {
    /// Builds a ring from its table, checking shape, commutativity and associativity.
    pub fn new(rank: usize, m: Vec<Vec<BigInt>>, c: Vec<Vec<Vec<BigInt>>>) -> Result<Self> {
        if !(2..=4).contains(&rank) {
            return Err(Error::InvalidInput(format!(
                "rank must be 2, 3 or 4, got {rank}"
            )));
        }
        let k = rank - 1;
        let shape_ok = m.len() == k
            && m.iter().all(|r| r.len() == k)
            && c.len() == k
            && c.iter().all(|r| r.len() == k && r.iter().all(|v| v.len() == k));
        if !shape_ok {
            return Err(Error::InvalidInput(format!(
                "table shape does not match rank {rank}"
            )));
        }
        let ring = RankRing { rank, m, c };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        let k = self.rank - 1;
        for i in 0..k {
            for j in 0..i {
                if self.m[i][j] != self.m[j][i] || self.c[i][j] != self.c[j][i] {
                    return Err(Error::InvalidInput("table is not commutative".into()));
                }
            }
        }
        let n = self.rank;
        for i in 1..n {
            for j in 1..n {
                for l in 1..n {
                    let (ei, ej, el) = (
                        RingElement::basis(n, i),
                        RingElement::basis(n, j),
                        RingElement::basis(n, l),
                    );
                    let left = self.mul(&self.mul(&ei, &ej), &el);
                    let right = self.mul(&ei, &self.mul(&ej, &el));
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "table is not associative at (e{i} e{j}) e{l}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self) -> &[Vec<BigInt>] {
        &self.m
    }

    pub fn c(&self) -> &[Vec<Vec<BigInt>>] {
        &self.c
    }

    /// Coordinates of `e_a e_b` for `0 <= a, b < n`.
    fn product_of_basis(&self, a: usize, b: usize) -> Vec<BigInt> {
        let n = self.rank;
        let mut out = vec![BigInt::zero(); n];
        match (a, b) {
            (0, b) => out[b] = BigInt::one(),
            (a, 0) => out[a] = BigInt::one(),
            (a, b) => {
                out[0] = self.m[a - 1][b - 1].clone();
                for k in 1..n {
                    out[k] = self.c[a - 1][b - 1][k - 1].clone();
                }
            }
        }
        out
    }

    fn full_table(&self) -> Vec<Vec<Vec<BigInt>>> {
        let n = self.rank;
        (0..n)
            .map(|a| (0..n).map(|b| self.product_of_basis(a, b)).collect())
            .collect()
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let n = self.rank;
        let mut out = vec![BigInt::zero(); n];
        for a in 0..n {
            if x.coords[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y.coords[b].is_zero() {
                    continue;
                }
                let s = &x.coords[a] * &y.coords[b];
                for (o, t) in out.iter_mut().zip(self.product_of_basis(a, b)) {
                    *o += &s * t;
                }
            }
        }
        RingElement { coords: out }
    }

    /// Matrix of multiplication by `alpha`; row `b` holds the coordinates of `alpha e_b`.
    fn mult_matrix(&self, alpha: &RingElement) -> Vec<Vec<BigInt>> {
        (0..self.rank)
            .map(|b| self.mul(alpha, &RingElement::basis(self.rank, b)).coords)
            .collect()
    }

    pub fn trace(&self, alpha: &RingElement) -> BigInt {
        let mm = self.mult_matrix(alpha);
        (0..self.rank).map(|i| mm[i][i].clone()).sum()
    }

    /// Translates the basis: `e_i -> e_i - t_i`.
    pub fn translate(&self, t: &[BigInt]) -> RankRing {
        let k = self.rank - 1;
        assert_eq!(t.len(), k);
        let mut m = self.m.clone();
        let mut c = self.c.clone();
        for i in 0..k {
            for j in 0..k {
                let shift: BigInt = (0..k).map(|l| &self.c[i][j][l] * &t[l]).sum();
                m[i][j] = &self.m[i][j] + shift - &t[i] * &t[j];
                c[i][j][j] -= &t[i];
                c[i][j][i] -= &t[j];
            }
        }
        RankRing {
            rank: self.rank,
            m,
            c,
        }
    }

    /// The ring `Z + k R` on basis `k e_i`.
    pub fn scaled(&self, k: &BigInt) -> RankRing {
        let k2 = k * k;
        RankRing {
            rank: self.rank,
            m: self
                .m
                .iter()
                .map(|r| r.iter().map(|x| x * &k2).collect())
                .collect(),
            c: self
                .c
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(|x| x * k).collect()).collect())
                .collect(),
        }
    }

    /// The quadratic ring `S(D) = Z[x]/(x^2 - D x + (D^2 - D)/4)` of discriminant `D`.
    pub fn quadratic(d: &BigInt) -> Result<RankRing> {
        let r = d.mod_floor(&BigInt::from(4));
        if !(r.is_zero() || r.is_one()) {
            return Err(Error::InvalidInput(format!(
                "{d} is not a discriminant (must be 0 or 1 mod 4)"
            )));
        }
        let constant = -(d * d - d) / 4;
        RankRing::new(2, vec![vec![constant]], vec![vec![vec![d.clone()]]])
    }

    /// `Z[x]/(g)` on the power basis, for monic `g` given by its coefficients
    /// below the leading one (`x^n + g[0] x^{n-1} + .. + g[n-1]`).
    pub fn monogenic(g: &[BigInt]) -> Result<RankRing> {
        let n = g.len();
        let mut poly = vec![BigInt::one()];
        poly.extend_from_slice(g);
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                let mut v = vec![BigInt::zero(); n];
                v[k] = BigInt::one();
                v
            })
            .collect();
        table_from_basis(&poly, &basis)
    }
}

/// Delone–Faddeev ring of a binary cubic `(a, b, c, d)` on basis `1, w, t`:
/// `wt = -ad`, `w^2 = -ac - b w + a t`, `t^2 = -bd - d w + c t`.
pub fn cubic_ring_from_form(f: &BinaryForm) -> Result<RankRing> {
    if f.degree() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected a cubic form, got degree {}",
            f.degree()
        )));
    }
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| f.coeffs()[i].clone());
    let z = BigInt::zero;
    let m = vec![vec![-(&a * &c), -(&a * &d)], vec![-(&a * &d), -(&b * &d)]];
    let cc = vec![
        vec![vec![-b.clone(), a.clone()], vec![z(), z()]],
        vec![vec![z(), z()], vec![-d.clone(), c.clone()]],
    ];
    RankRing::new(3, m, cc)
}

/// The invariant order of `f` on the basis `1, a_0 t, a_0 t^2 + a_1 t, ..`,
/// where `t` is a root of `f(x, 1)`.
pub fn invariant_order(f: &BinaryForm) -> Result<RankRing> {
    let n = f.degree();
    let a = f.coeffs();
    if a[0].is_zero() {
        return Err(Error::PreconditionFailed(
            "leading coefficient must be nonzero".into(),
        ));
    }
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "degree must be 2, 3 or 4, got {n}"
        )));
    }
    if f.discriminant().is_zero() {
        return Err(Error::PreconditionFailed("discriminant is zero".into()));
    }
    let basis: Vec<Vec<BigInt>> = (0..n)
        .map(|k| {
            let mut v = vec![BigInt::zero(); n];
            if k == 0 {
                v[0] = BigInt::one();
            } else {
                for j in 1..=k {
                    v[j] = a[k - j].clone();
                }
            }
            v
        })
        .collect();
    table_from_basis(a, &basis)
}

/// Multiplication table of the lattice spanned by `basis` (coordinates in
/// powers `1, t, .., t^{n-1}`, upper triangular with `basis[0] = 1`) inside
/// `Q[t]/(poly(t))`.
fn table_from_basis(poly: &[BigInt], basis: &[Vec<BigInt>]) -> Result<RankRing> {
    let n = poly.len() - 1;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let lead = q(&poly[0]);
    let basis_q: Vec<Vec<BigRational>> =
        basis.iter().map(|v| v.iter().map(q).collect()).collect();

    let product = |x: &[BigRational], y: &[BigRational]| -> Vec<BigRational> {
        let mut p = vec![BigRational::zero(); 2 * n - 1];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                p[i + j] += u * v;
            }
        }
        // t^k = t^{k-n} t^n and t^n = -(poly[1] t^{n-1} + ..) / poly[0].
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::take(&mut p[k]) / &lead;
            for l in 1..=n {
                p[k - l] -= &top * q(&poly[l]);
            }
        }
        p.truncate(n);
        p
    };
    let to_basis = |mut p: Vec<BigRational>| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n];
        for k in (0..n).rev() {
            let coef = &p[k] / &basis_q[k][k];
            for j in 0..=k {
                p[j] -= &coef * &basis_q[k][j];
            }
            out[k] = coef;
        }
        out
    };

    let k = n - 1;
    let mut m = vec![vec![BigInt::zero(); k]; k];
    let mut c = vec![vec![vec![BigInt::zero(); k]; k]; k];
    for i in 1..n {
        for j in 1..n {
            let coords = to_basis(product(&basis_q[i], &basis_q[j]));
            let mut ints = Vec::with_capacity(n);
            for x in coords {
                if !x.is_integer() {
                    return Err(Error::NonIntegralTable(format!(
                        "coefficient {x} in product e{i} e{j}"
                    )));
                }
                ints.push(x.to_integer());
            }
            m[i - 1][j - 1] = ints[0].clone();
            for l in 1..n {
                c[i - 1][j - 1][l - 1] = ints[l].clone();
            }
        }
    }
    RankRing::new(n, m, c).map_err(|e| Error::NonIntegralTable(e.to_string()))
}

/// `det(Tr(e_a e_b))`.
pub fn disc_ring(r: &RankRing) -> BigInt {
    let n = r.rank;
    let table = r.full_table();
    let traces: Vec<BigInt> = (0..n)
        .map(|k| r.trace(&RingElement::basis(n, k)))
        .collect();
    let gram: Vec<Vec<BigInt>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| table[a][b].iter().zip(&traces).map(|(x, t)| x * t).sum())
                .collect()
        })
        .collect();
    arith::det(&gram)
}

/// Largest `k` with `R = Z + k R'` for a ring `R'`.
pub fn content_ring(r: &RankRing) -> Result<BigInt> {
    if disc_ring(r).is_zero() {
        return Err(Error::PreconditionFailed("ring has zero discriminant".into()));
    }
    if r.rank == 2 {
        return Ok(content_rank2(&r.m[0][0], &r.c[0][0][0]));
    }
    // With e_i = k f_i + t_i, the coefficient of e_j in e_i e_j (j != i) is
    // t_i mod k, so that translation is forced; shifts by multiples of k
    // change the table by multiples of k (and k^2 on constants).
    let k = r.rank - 1;
    let t: Vec<BigInt> = (0..k)
        .map(|i| {
            let j = (i + 1) % k;
            r.c[i][j][j].clone()
        })
        .collect();
    let normal = r.translate(&t);
    let g1 = arith::gcd_all(normal.c.iter().flatten().flatten());
    let g2 = arith::gcd_all(normal.m.iter().flatten());
    Ok(largest_content(&g1, &g2))
}

/// Largest `k` with `k | g1` and `k^2 | g2`; not both zero.
fn largest_content(g1: &BigInt, g2: &BigInt) -> BigInt {
    let mut rest = g1.gcd(g2);
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            let mut e = 0u32;
            while rest.is_multiple_of(&p) {
                rest /= &p;
                e += 1;
            }
            let cap = valuation_cap(g1, g2, &p);
            k *= p.pow(e.min(cap));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        let cap = valuation_cap(g1, g2, &rest);
        if cap >= 1 {
            k *= &rest;
        }
    }
    k
}

fn valuation_cap(g1: &BigInt, g2: &BigInt, p: &BigInt) -> u32 {
    let v = |x: &BigInt| -> u32 {
        if x.is_zero() {
            return u32::MAX;
        }
        let mut x = x.clone();
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        e
    };
    let v2 = v(g2);
    v(g1).min(if v2 == u32::MAX { v2 } else { v2 / 2 })
}

fn content_rank2(m: &BigInt, c: &BigInt) -> BigInt {
    // e^2 = m + c e; with e = k f + t the ring is Z + k Z[f] iff k | c - 2t and
    // k^2 | m + c t - t^2.
    let disc: BigInt = c * c + 4 * m;
    let bound = disc.abs().sqrt();
    let mut best = BigInt::one();
    let mut k = BigInt::from(2);
    while k <= bound {
        if (&disc % (&k * &k)).is_zero() {
            let mut t = BigInt::zero();
            while t < k {
                let linear: BigInt = c - 2 * &t;
                let constant: BigInt = m + c * &t - &t * &t;
                if linear.is_multiple_of(&k) && constant.is_multiple_of(&(&k * &k)) {
                    best = k.clone();
                    break;
                }
                t += 1;
            }
        }
        k += 1;
    }
    best
}

/// Characteristic polynomial of multiplication by `alpha`, descending and monic.
pub fn char_poly(r: &RankRing, alpha: &RingElement) -> Vec<BigInt> {
    let n = r.rank;
    let a = r.mult_matrix(alpha);
    // Faddeev–LeVerrier; the divisions are exact for integer matrices.
    let mut out = vec![BigInt::one()];
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    let mut prev_c = BigInt::one();
    for k in 1..=n {
        let mut next = mat_mul(&a, &mk);
        for i in 0..n {
            next[i][i] += &prev_c;
        }
        let am = mat_mul(&a, &next);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let ck = -tr / BigInt::from(k);
        out.push(ck.clone());
        prev_c = ck;
        mk = next;
    }
    out
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `|det|` of the coordinates of `1, alpha, .., alpha^{n-1}`; 1 iff `Z[alpha] = R`.
pub fn monogenizer_index(r: &RankRing, alpha: &RingElement) -> BigInt {
    let n = r.rank;
    let mut rows = vec![RingElement::one(n).coords];
    let mut p = RingElement::one(n);
    for _ in 1..n {
        p = r.mul(&p, alpha);
        rows.push(p.coords.clone());
    }
    arith::det(&rows).abs()
}

/// All `alpha = (0, x_1, .., x_{n-1})` with `|x_i| <= height`, first nonzero
/// coordinate positive and `Z[alpha] = R`, in lexicographic order.
pub fn enumerate_monogenizers(r: &RankRing, height: u64) -> Result<Vec<RingElement>> {
    if disc_ring(r).is_zero() {
        return Err(Error::PreconditionFailed("ring has zero discriminant".into()));
    }
    let n = r.rank;
    let h = height as i64;
    let small = SmallTable::new(r);
    let mut found: Vec<Vec<i64>> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|x1| {
            let mut local = Vec::new();
            let mut rest = vec![-h; n - 2];
            loop {
                let mut coords = Vec::with_capacity(n);
                coords.push(0);
                coords.push(x1);
                coords.extend_from_slice(&rest);
                if arith::is_canonical_sign(&coords[1..]) && coords[1..].iter().any(|&x| x != 0)
                {
                    let unit = match small.as_ref().and_then(|t| t.index_is_one(&coords)) {
                        Some(u) => u,
                        None => monogenizer_index(r, &RingElement::from_i64(&coords)).is_one(),
                    };
                    if unit {
                        local.push(coords);
                    }
                }
                if !advance(&mut rest, h) {
                    break;
                }
            }
            local
        })
        .collect();
    found.sort();
    Ok(found.iter().map(|c| RingElement::from_i64(c)).collect())
}

fn advance(v: &mut [i64], h: i64) -> bool {
    for x in v.iter_mut().rev() {
        if *x < h {
            *x += 1;
            return true;
        }
        *x = -h;
    }
    false
}

/// The structure constants in `i128` for the enumeration fast path.
struct SmallTable {
    n: usize,
    t: Vec<Vec<Vec<i128>>>,
}

impl SmallTable {
    fn new(r: &RankRing) -> Option<SmallTable> {
        let t = r
            .full_table()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SmallTable { n: r.rank, t })
    }

    fn mul(&self, x: &[i128], y: &[i128]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.n];
        for a in 0..self.n {
            if x[a] == 0 {
                continue;
            }
            for b in 0..self.n {
                if y[b] == 0 {
                    continue;
                }
                let s = x[a].checked_mul(y[b])?;
                for k in 0..self.n {
                    out[k] = out[k].checked_add(s.checked_mul(self.t[a][b][k])?)?;
                }
            }
        }
        Some(out)
    }

    /// `None` on overflow.
    fn index_is_one(&self, coords: &[i64]) -> Option<bool> {
        let alpha: Vec<i128> = coords.iter().map(|&x| x as i128).collect();
        let mut rows = Vec::with_capacity(self.n);
        let mut p = vec![0i128; self.n];
        p[0] = 1;
        rows.push(p.clone());
        for _ in 1..self.n {
            p = self.mul(&p, &alpha)?;
            rows.push(p.clone());
        }
        Some(det_i128(rows)?.abs() == 1)
    }
}

/// Bareiss elimination with overflow checks.
fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}
