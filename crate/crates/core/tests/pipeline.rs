use monogen::resolvent::{count_monogenizations, equivalent_quartics, Heights};
use monogen::rings::{enumerate_monogenizers, invariant_order};
use monogen::{Error, MonicQuartic, MonogenizationReport};

fn quartic(s: &str) -> MonicQuartic {
    s.parse().unwrap()
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for s in ["0,0,-1,1", "1,1,1,1", "0,-1,-1,1"] {
        let a = count_monogenizations(&quartic(s), Heights::default()).unwrap();
        let b = count_monogenizations(&quartic(s), Heights::default()).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        assert_eq!(ja, serde_json::to_string(&b).unwrap());
        let back: MonogenizationReport = serde_json::from_str(&ja).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn every_branch_form_has_the_quartic_discriminant() {
    let g = quartic("0,0,-1,-1");
    let report = count_monogenizations(&g, Heights::default()).unwrap();
    assert!(report.complete);
    assert_eq!(report.total, 13);
    for br in &report.branches {
        let h = br.quartic_form.as_ref().unwrap();
        assert_eq!(h.discriminant(), report.discriminant);
        for (x, y) in &br.representations {
            let v = h.eval(x, y);
            assert!(v == 1.into() || v == (-1).into());
        }
    }
}

#[test]
fn some_branch_recovers_the_input_form() {
    let g = quartic("0,1,1,1");
    let report = count_monogenizations(&g, Heights::default()).unwrap();
    assert!(report
        .branches
        .iter()
        .filter_map(|b| b.quartic_form.as_ref())
        .any(|h| equivalent_quartics(h, &report.form)));
}

#[test]
fn small_heights_undercount_but_never_overcount() {
    let g = quartic("0,0,2,-1");
    let order = invariant_order(&g.form()).unwrap();
    let full = enumerate_monogenizers(&order, 45).unwrap().len();
    let small = Heights {
        cubic: 5,
        quartic: 5,
        reduce: 50,
    };
    let report = count_monogenizations(&g, small).unwrap();
    assert!(report.total <= full);
}

#[test]
fn degenerate_quartic_is_rejected() {
    let err = count_monogenizations(&quartic("0,-2,0,1"), Heights::default()).unwrap_err();
    assert_eq!(err.kind(), "DegenerateDiscriminant");
    assert!(matches!(err, Error::DegenerateDiscriminant));
}
