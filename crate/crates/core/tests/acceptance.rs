//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use monogen::bounds::{self, real};
use monogen::forms::{Action, BinaryForm, Unimodular2};
use monogen::resolvent::{
    count_monogenizations, monic_resolvent_cubic, normalize_f1, psi_embed, rho, Heights,
};
use monogen::rings::{
    content_ring, cubic_ring_from_form, disc_ring, enumerate_monogenizers, invariant_order,
};
use monogen::ternary::a1;
use monogen::thue::{solve_box, Target};
use monogen::MonicQuartic;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6d6f_6e6f ^ stream)
}

fn random_form(r: &mut ChaCha8Rng, degree: usize, bound: i64) -> BinaryForm {
    let c: Vec<i64> = (0..=degree).map(|_| r.gen_range(-bound..=bound)).collect();
    BinaryForm::from_i64(&c).unwrap()
}

/// A product of random elementary matrices, with a random determinant sign.
fn random_unimodular(r: &mut ChaCha8Rng) -> Unimodular2 {
    let mut g = Unimodular2::identity();
    for _ in 0..r.gen_range(1..=5) {
        let k = r.gen_range(-3..=3);
        let step = match r.gen_range(0..3) {
            0 => Unimodular2::from_i64([[1, k], [0, 1]]),
            1 => Unimodular2::from_i64([[1, 0], [k, 1]]),
            _ => Unimodular2::from_i64([[0, -1], [1, 0]]),
        }
        .unwrap();
        g = g.mul(&step);
    }
    if r.gen_bool(0.5) {
        g = g.mul(&Unimodular2::from_i64([[1, 0], [0, -1]]).unwrap());
    }
    g
}

const TABLE: [(u32, u64, f64, u64); 13] = [
    (6, 3, 0.237, 276),
    (7, 3, 0.297, 248),
    (8, 2, 0.230, 210),
    (9, 2, 0.291, 189),
    (10, 1, 0.106, 111),
    (11, 1, 0.187, 78),
    (12, 1, 0.255, 67),
    (13, 1, 0.312, 61),
    (14, 1, 0.361, 58),
    (15, 1, 0.404, 55),
    (20, 1, 0.553, 50),
    (30, 1, 0.702, 47),
    (45, 1, 0.801, 45),
];

fn table_reproduction() -> Outcome {
    let ks: Vec<u32> = TABLE.iter().map(|t| t.0).collect();
    let start = Instant::now();
    let rows = bounds::table(&ks, &bounds::default_epsilon(), 60).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (row, &(k, r, kappa, bound)) in rows.iter().zip(&TABLE) {
        check(row.k == k && row.r == r && row.bound == bound, || {
            format!("k={k}: got (r, bound) = ({}, {}), expected ({r}, {bound})", row.r, row.bound)
        })?;
        let got: f64 = row.kappa.value.parse().unwrap();
        check((got - kappa).abs() <= 0.001, || {
            format!("k={k}: kappa {got} differs from {kappa} by more than 0.001")
        })?;
    }
    check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}, limit 1 s")
    })?;
    Ok(format!("13 rows match, {elapsed:?}"))
}

fn threshold_constant() -> Outcome {
    let kappa = bounds::parse_rational("0.888888889").unwrap();
    let t = bounds::corollary_threshold(&kappa, 60).map_err(|e| e.to_string())?;
    let (lo, hi) = (real::sci(&t.lower(), 9, false), real::sci(&t.upper(), 9, false));
    check(lo == "2.71336712e80" && hi == lo, || {
        format!("threshold enclosed in [{lo}, {hi}]")
    })?;
    let d = bounds::d1();
    check(
        d == BigRational::new(BigInt::from(13841287201i64), BigInt::from(16)),
        || format!("D_1 = {d}"),
    )?;
    let approx = real::sci(&d, 4, true);
    check(approx == "8.651e8", || {
        format!("D_1 ~ {approx}")
    })?;
    Ok(format!("threshold {lo}, D_1 = {d} ~ {}", real::sci(&d, 9, false)))
}

fn disc49_cubic() -> Outcome {
    let start = Instant::now();
    let f = BinaryForm::from_i64(&[1, 1, -2, -1]).unwrap();
    let sols = solve_box(&f, &Target::Exact(BigInt::one()), 100, false).map_err(|e| e.to_string())?;
    check(sols.len() == 9 && sols.verify(), || {
        format!("{} Thue solutions", sols.len())
    })?;
    let ring = cubic_ring_from_form(&f).map_err(|e| e.to_string())?;
    check(disc_ring(&ring) == BigInt::from(49), || "ring discriminant".into())?;
    let monos = enumerate_monogenizers(&ring, 100).map_err(|e| e.to_string())?;
    check(monos.len() == 9, || format!("{} monogenizer classes", monos.len()))?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}, limit 5 s")
    })?;
    Ok(format!("9 solutions, 9 classes, {elapsed:?}"))
}

fn resolvent_triangle() -> Outcome {
    let mut r = rng(4);
    let mut done = 0;
    while done < 500 {
        let c: [i64; 4] = std::array::from_fn(|_| r.gen_range(-20..=20));
        let g = MonicQuartic::from_i64(c[0], c[1], c[2], c[3]);
        let h = g.form();
        let disc = h.discriminant();
        if disc.is_zero() {
            continue;
        }
        let formula = BinaryForm::new(monic_resolvent_cubic(&g)).unwrap();
        let pair = psi_embed(&h).unwrap();
        let cubic = pair.resolvent_cubic();
        check(cubic == formula, || format!("{c:?}: {cubic} vs {formula}"))?;
        check(cubic.discriminant() == disc && pair.discriminant() == disc, || {
            format!("{c:?}: discriminant mismatch")
        })?;
        done += 1;
    }
    Ok("500 quartics, 0 failures".into())
}

fn rho_equivariance() -> Outcome {
    let mut r = rng(5);
    for _ in 0..200 {
        let g = random_unimodular(&mut r);
        let f = random_form(&mut r, 4, 15);
        let m = rho(&g);
        check(m.det().is_one() && m.conjugate(&a1()) == a1(), || {
            format!("rho({:?}) is not in SO(A_1)", g.entries())
        })?;
        let left = normalize_f1(&psi_embed(&f.act(&g, Action::QuarticTwist)).unwrap()).unwrap();
        let right = normalize_f1(&psi_embed(&f).unwrap().act3(&m)).unwrap();
        check(left == right, || {
            format!("gamma {:?}, f = {f}", g.entries())
        })?;
    }
    Ok("200 pairs, 0 failures".into())
}

fn sublattice_law() -> Outcome {
    let mut r = rng(6);
    for i in 0..500 {
        let n = if i % 2 == 0 { 3 } else { 4 };
        let f = random_form(&mut r, n, 12);
        let a: [[BigInt; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| BigInt::from(r.gen_range(-6..=6))));
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        let lhs = bounds::form_on_sublattice(&f, &a).discriminant();
        let rhs = det.pow((n * (n - 1)) as u32) * f.discriminant();
        check(lhs == rhs, || format!("f = {f}, A = {a:?}"))?;
    }
    for rr in 1..=200 {
        let got = bounds::sublattices(rr).len() as u64;
        check(got == bounds::dedekind_psi(rr), || {
            format!("r = {rr}: {got} sublattices")
        })?;
    }
    for rr in [2, 3, 5] {
        let c = bounds::cover_check(rr, 50);
        check(c.covered, || format!("r = {rr}: uncovered {:?}", c.witness))?;
    }
    Ok("500 discriminant cases, psi(r) for r <= 200, covers for 2, 3, 5".into())
}

/// Monic quartics `(b, c, d, e)` of small discriminant.
const CURATED: [(i64, i64, i64, i64); 15] = [
    (0, 0, -1, 1),
    (0, 0, 1, 1),
    (1, 0, 0, 1),
    (0, 0, 0, 1),
    (0, -1, 0, 1),
    (0, 1, 0, 1),
    (0, 0, -1, -1),
    (1, 1, 1, 1),
    (0, 0, 0, 2),
    (0, -2, 0, 2),
    (0, 2, 0, 2),
    (0, 1, 1, 1),
    (1, 0, -1, 1),
    (0, 0, 2, -1),
    (0, -1, -1, 1),
];

/// Brute-force box; (0, 0, 2, -1) has a monogenizer of height 40.
const BRUTE_HEIGHT: u64 = 45;

fn pipeline_vs_oracle() -> Outcome {
    let mut summary = Vec::new();
    for (b, c, d, e) in CURATED {
        let g = MonicQuartic::from_i64(b, c, d, e);
        let report = count_monogenizations(&g, Heights::default())
            .map_err(|err| format!("{g}: {err}"))?;
        let order = invariant_order(&g.form()).map_err(|err| err.to_string())?;
        let brute = enumerate_monogenizers(&order, BRUTE_HEIGHT)
            .map_err(|err| err.to_string())?
            .len();
        check(report.total == brute, || {
            format!("{g}: pipeline {} vs brute force {brute}", report.total)
        })?;
        check(report.total <= 2760, || format!("{g}: {} > 2760", report.total))?;
        summary.push(report.total.to_string());
    }
    Ok(format!("15 quartics agree, counts [{}]", summary.join(", ")))
}

fn invariant_order_integrality() -> Outcome {
    let mut r = rng(8);
    let mut done = 0;
    while done < 500 {
        let mut c: Vec<i64> = (0..5).map(|_| r.gen_range(-10..=10)).collect();
        c[0] = r.gen_range(1..=5);
        let f = BinaryForm::from_i64(&c).unwrap();
        if f.discriminant().is_zero() {
            continue;
        }
        let ring = invariant_order(&f).map_err(|e| format!("{f}: {e}"))?;
        check(disc_ring(&ring) == f.discriminant(), || format!("{f}: discriminant"))?;
        let content = content_ring(&ring).map_err(|e| e.to_string())?;
        check(content == f.content(), || {
            format!("{f}: content {content} vs {}", f.content())
        })?;
        done += 1;
    }
    Ok("500 quartics, 0 failures".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 table of optimal bounds", table_reproduction),
        ("2 discriminant threshold and D_1", threshold_constant),
        ("3 disc-49 cubic", disc49_cubic),
        ("4 resolvent triangle identity", resolvent_triangle),
        ("5 rho equivariance", rho_equivariance),
        ("6 sublattice discriminant law and psi", sublattice_law),
        ("7 pipeline vs brute-force oracle", pipeline_vs_oracle),
        ("8 invariant order integrality", invariant_order_integrality),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
