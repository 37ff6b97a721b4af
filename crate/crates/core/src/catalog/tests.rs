use super::*;
use crate::invariants::{certify_smoothing, check_input};
use crate::matgerm::{maximal_minors, Matrix};

#[test]
fn listing_is_stable_and_complete() {
    let ids: Vec<&str> = list_entries().iter().map(|e| e.id).collect();
    assert_eq!(ids, ["ex1", "ex1-variant", "ex2", "ex3", "ex1-section", "ex2-section", "ex3-section"]);
    assert!(list_entries().iter().all(|e| !e.provenance.is_empty()));
}

#[test]
fn instantiates_templates() {
    let r = entry("ex1").unwrap().ring();
    let m = entry("ex1").unwrap().instantiate(None).unwrap();
    assert_eq!(m.matrix(), &Matrix::parse(&r, &[&["z", "y", "x"], &["w", "z", "y"]]).unwrap());
    let m = entry("ex2").unwrap().instantiate(Some(2)).unwrap();
    assert_eq!(m.matrix(), &Matrix::parse(&r, &[&["z", "w+x", "y^2"], &["w", "y", "x"]]).unwrap());
    let m = entry("ex3").unwrap().instantiate(Some(1)).unwrap();
    assert_eq!(m.matrix(), &Matrix::parse(&r, &[&["z", "y", "x"], &["x", "w", "y*z+y*w"]]).unwrap());
}

#[test]
fn parameter_domain_is_enforced() {
    assert!(matches!(entry("ex2").unwrap().instantiate(Some(0)), Err(CatalogError::OutOfDomain { .. })));
    assert!(matches!(entry("ex2").unwrap().instantiate(None), Err(CatalogError::MissingParameter { .. })));
    assert!(matches!(entry("ex1").unwrap().instantiate(Some(1)), Err(CatalogError::NotParametric { .. })));
    assert!(matches!(entry("ex9"), Err(CatalogError::UnknownEntry(_))));
}

#[test]
fn expected_values() {
    let e = entry("ex1").unwrap().expected(None).unwrap();
    assert_eq!([e.mu, e.tau, e.mu_c, e.ind].map(|v| v.unwrap().value), [1, 2, 2, 3]);
    let e = entry("ex2").unwrap().expected(Some(3)).unwrap();
    assert_eq!([e.mu, e.tau, e.mu_c, e.ind].map(|v| v.unwrap().value), [3, 4, 4, 6]);
    assert!(!e.ind.unwrap().binding());
    let e = entry("ex3").unwrap().expected(Some(2)).unwrap();
    assert_eq!((e.mu.unwrap().value, e.tau.unwrap().value), (7, 8));
}

#[test]
fn stored_values_are_consistent() {
    for e in list_entries() {
        for k in sweep(e) {
            let x = e.expected(k).unwrap();
            let binding = |v: Option<Value>| v.filter(Value::binding).map(|v| v.value);
            if let (Some(mu), Some(mc), Some(ind)) = (binding(x.mu), binding(x.mu_c), binding(x.ind)) {
                assert_eq!(ind, mu + mc, "{} k={k:?}", e.id);
            }
            if let (Some(mu), Some(tau)) = (x.mu, x.tau) {
                assert_eq!(tau.value, mu.value + 1, "{} k={k:?}", e.id);
            }
        }
    }
}

#[test]
fn every_instance_passes_the_input_check() {
    for e in list_entries() {
        for k in sweep(e).into_iter().take(2) {
            let m = e.instantiate(k).unwrap();
            let report = check_input(&m).unwrap();
            assert!(report.passed(), "{} k={k:?}: {report:?}", e.id);
        }
    }
}

#[test]
fn recorded_smoothings_are_certified() {
    for (id, k) in [("ex1-variant", None), ("ex2", Some(1)), ("ex2", Some(2))] {
        let t = entry(id).unwrap().template(k).unwrap().unwrap();
        assert!(certify_smoothing(&t.apply().unwrap()).unwrap(), "{id}");
        assert!(!certify_smoothing(&unperturbed(t).apply().unwrap()).unwrap(), "{id} at lambda = 0");
    }
}

#[test]
fn export_round_trips() {
    for e in list_entries() {
        let k = sweep(e)[0];
        let f = e.file(k).unwrap();
        let back = MatrixFile::from_toml(&f.to_toml()).unwrap();
        assert_eq!(back, f);
        assert_eq!(maximal_minors(&back.presentation().unwrap()), maximal_minors(&e.instantiate(k).unwrap()));
    }
}

#[test]
fn golden_file_round_trips() {
    let mut g = GoldenFile::parse(GOLDEN).unwrap();
    g.freeze("demo", GoldenRecord { k: 2, mu: Some(1), mu_c: None, ind: Some(3) });
    g.freeze("demo", GoldenRecord { k: 2, mu: Some(1), mu_c: Some(2), ind: Some(3) });
    let back = GoldenFile::parse(&g.to_toml()).unwrap();
    assert_eq!(back.get("demo", 2).unwrap().mu_c, Some(2));
    assert_eq!(back.entries["demo"].len(), 1);
}

#[test]
fn comparisons_skip_conflicting_values() {
    let e = entry("ex2").unwrap().expected(Some(2)).unwrap();
    let c = e.compare(Some(2), Some(2), Some(4));
    assert_eq!(c.iter().map(|c| c.quantity).collect::<Vec<_>>(), ["mu", "mu_c", "ind_ph"]);
    assert!(c[0].matches && !c[1].matches && c[2].matches);
    assert!(!c.iter().any(Comparison::fails));
    let c = entry("ex1").unwrap().expected(None).unwrap().compare(Some(2), None, Some(3));
    assert!(c[0].fails() && c[1].fails() && !c[2].fails());
}
