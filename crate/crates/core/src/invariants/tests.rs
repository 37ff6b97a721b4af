use super::*;
use crate::catalog::entry;
use crate::gbasis::{local_length, quotient_dimension};
use crate::matgerm::{perturb, Matrix, MatrixFile};
use crate::polycore::Ring;

fn surface_ring() -> Ring {
    Ring::new(["x", "y", "z", "w"]).unwrap()
}

fn cat(id: &str, k: Option<i64>) -> PresentationMatrix {
    entry(id).unwrap().instantiate(k).unwrap()
}

fn form(s: &str, r: &Ring) -> ProjectionData {
    ProjectionData::parse(s, r).unwrap()
}

fn opts(seed: u64) -> RunOptions {
    RunOptions::with_seed(seed)
}

#[test]
fn input_checks() {
    assert!(check_input(&cat("ex1", None)).unwrap().passed());
    assert!(check_input(&cat("ex2", Some(2))).unwrap().passed());
    let r = surface_ring();
    let bad = PresentationMatrix::parse(&r, &[&["x", "0", "0"], &["0", "x", "0"]]).unwrap();
    let rep = check_input(&bad).unwrap();
    assert_eq!(rep.dimension, 3);
    assert!(!rep.codimension_two);
    assert!(matches!(rep.verdict(), Err(InvariantError::Input(_))));
}

#[test]
fn transposed_input_is_accepted() {
    let m = cat("ex1", None);
    let t = PresentationMatrix::new(m.matrix().transpose()).unwrap();
    assert!(check_input(&t).unwrap().passed());
    assert_eq!(ph_index(&t, &opts(0)).unwrap(), 3);
}

#[test]
fn suspension_by_a_free_variable_is_not_isolated() {
    let r = Ring::new(["x", "y", "z", "w", "v"]).unwrap();
    let m = PresentationMatrix::parse(&r, &[&["z", "y", "x"], &["w", "z", "y"]]).unwrap();
    let rep = check_input(&m).unwrap();
    assert!(rep.codimension_two);
    assert_eq!(rep.singular_locus_dimension, 1);
    assert!(matches!(threefold_combined(&m, &opts(0)), Err(InvariantError::NonIsolated(1))));
}

#[test]
fn ambient_bound() {
    let rep = check_input(&cat("ex1", None)).unwrap();
    assert_eq!(rep.ambient_bound, 6);
    assert!(rep.bound_ok);
}

#[test]
fn template_smoothing_and_its_zero_member() {
    let t = entry("ex1-variant").unwrap().template(None).unwrap().unwrap();
    let fam = make_smoothing(&cat("ex1-variant", None), &Perturbation::Template(t.clone()), SeedStream::new(0), 0).unwrap();
    assert!(fam.certificate);
    assert_eq!(fam.seed, None);
    let zero = crate::catalog::unperturbed(t);
    assert!(!certify_smoothing(&zero.apply().unwrap()).unwrap());
    assert!(matches!(
        make_smoothing(&cat("ex1-variant", None), &Perturbation::Template(zero), SeedStream::new(0), 8),
        Err(InvariantError::SmoothingFailed { attempts: 1 })
    ));
}

#[test]
fn auto_smoothing_is_seed_deterministic() {
    let m = cat("ex2", Some(2));
    let a = make_smoothing(&m, &Perturbation::Auto, SeedStream::new(5), 8).unwrap();
    let b = make_smoothing(&m, &Perturbation::Auto, SeedStream::new(5), 8).unwrap();
    assert!(a.certificate);
    assert_eq!(a.deformed, b.deformed);
    assert_ne!(a.deformed, make_smoothing(&m, &Perturbation::Auto, SeedStream::new(6), 8).unwrap().deformed);
}

#[test]
fn critical_ideal_shapes() {
    let r = surface_ring();
    let md = perturb(&cat("ex1", None), &Perturbation::Auto, 1).unwrap();
    let ideal = critical_ideal(&md, &form("w", &r)).unwrap();
    // 3 minors and at most C(4,3)·C(4,3) = 16 bordered minors
    assert!(ideal.len() > 3 && ideal.len() <= 19);
    let r5 = Ring::new(["x", "y", "z", "w", "v"]).unwrap();
    let m5 = PresentationMatrix::parse(&r5, &[&["x", "y", "z"], &["w", "v", "x+2*y+3*z+4*w+5*v"]]).unwrap();
    let md5 = perturb(&m5, &Perturbation::Auto, 0).unwrap();
    let b = crate::matgerm::bordered_matrix(&crate::matgerm::jacobian(&maximal_minors(&md5)), &form("v", &r5)).unwrap();
    assert_eq!((b.rows(), b.cols()), (4, 5));
    assert!(critical_ideal(&md5, &form("v", &r5)).is_ok());
}

#[test]
fn minors_of_the_ex2_smoothing_match_the_hand_computation() {
    // the displayed system uses x and y swapped; compare after the swap
    let r = surface_ring();
    let t = entry("ex2").unwrap().template(Some(2)).unwrap().unwrap();
    let md = t.apply().unwrap();
    let minors = maximal_minors(&md);
    let hand = ["z*y-w*x-w^2", "z*x-w*y^2-w", "x^2+x*w-y^3-y"];
    let g1 = crate::gbasis::buchberger(minors.gens(), Ordering::DegRevLex).unwrap();
    let polys: Vec<_> = hand.iter().map(|s| crate::polycore::parse_poly(s, &r).unwrap()).collect();
    let g2 = crate::gbasis::buchberger(&polys, Ordering::DegRevLex).unwrap();
    assert_eq!(g1.basis(), g2.basis());
}

#[test]
fn certified_counts_on_recorded_smoothings() {
    let r = surface_ring();
    let t = entry("ex1-variant").unwrap().template(None).unwrap().unwrap();
    let c = count_critical_points(&t.apply().unwrap(), &form("w", &r), SeedStream::new(0), 8).unwrap();
    assert_eq!(c.count, 3);
    assert!(c.nondegenerate && c.separating_form.is_some());
    // with p = w the count is 2k + 1, one more than printed
    for k in 1..=3 {
        let t = entry("ex2").unwrap().template(Some(k)).unwrap().unwrap();
        let c = count_critical_points(&t.apply().unwrap(), &form("w", &r), SeedStream::new(0), 8).unwrap();
        assert_eq!(c.count as i64, 2 * k + 1);
    }
}

#[test]
fn local_count_excludes_points_away_from_the_origin() {
    let r = surface_ring();
    let m = cat("ex3", Some(1));
    let fam = make_smoothing(&m, &Perturbation::Auto, SeedStream::new(0), 8).unwrap();
    let p = form("y-z", &r);
    assert_eq!(local_critical_count(&fam, &p).unwrap(), 8);
    // the global count includes one point away from the origin
    assert_eq!(count_critical_points(&fam.deformed, &p, SeedStream::new(0), 8).unwrap().count, 9);
}

#[test]
fn local_length_matches_local_standard_basis() {
    let r = Ring::new(["x", "y"]).unwrap();
    let polys: Vec<_> = ["x^2 - x^3", "y^2 - x*y^2 + y^3"].iter().map(|s| crate::polycore::parse_poly(s, &r).unwrap()).collect();
    let global = crate::gbasis::buchberger(&polys, Ordering::DegRevLex).unwrap();
    let local = crate::gbasis::buchberger(&polys, Ordering::NegDegRevLex).unwrap();
    assert_eq!(Some(local_length(&global).unwrap()), quotient_dimension(&local).dimension);
}

#[test]
fn ph_index_values() {
    assert_eq!(ph_index(&cat("ex1", None), &opts(0)).unwrap(), 3);
    assert_eq!(ph_index(&cat("ex3", Some(1)), &opts(0)).unwrap(), 8);
    // generic projection: k + 2
    assert_eq!(ph_index(&cat("ex2", Some(3)), &opts(0)).unwrap(), 5);
}

#[test]
fn hyperplane_multiplicities() {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    let cusp = PresentationMatrix::new(Matrix::parse(&r, &[&["y^2-x^3", "z"]]).unwrap()).unwrap();
    let (m0, _) = multiplicity_m0(&cusp, SeedStream::new(0), 8).unwrap();
    assert_eq!(m0, 2);
    let line = PresentationMatrix::new(Matrix::parse(&r, &[&["x", "y"]]).unwrap()).unwrap();
    assert_eq!(multiplicity_m0(&line, SeedStream::new(3), 8).unwrap().0, 1);
    // tangent hyperplane overshoots
    assert_eq!(hyperplane_multiplicity(&cusp, &form("y", &r)).unwrap(), Some(3));
}

#[test]
fn curve_milnor_numbers() {
    let rep = milnor_curve(&cat("ex1-section", None), &opts(0)).unwrap();
    assert_eq!(rep.mu, Some(2));
    assert_eq!(rep.m1.unwrap() as i64 - rep.m0.unwrap() as i64 + 1, 2);
    assert!(rep.consistency);
    assert_eq!(milnor_curve(&cat("ex3-section", None), &opts(0)).unwrap().mu, Some(3));
    for k in 1..=3 {
        assert_eq!(milnor_curve(&cat("ex2-section", Some(k)), &opts(0)).unwrap().mu, Some(k + 1));
    }
}

#[test]
fn surface_milnor_numbers() {
    let rep = milnor_surface(&cat("ex1", None), &opts(0)).unwrap();
    assert_eq!((rep.mu, rep.ind_ph, rep.mu_section), (Some(1), 3, Some(2)));
    assert_eq!(rep.euler_characteristic, Some(2));
    assert!(rep.consistency && rep.global.agrees == Some(true));
    for k in 1..=2 {
        assert_eq!(milnor_surface(&cat("ex2", Some(k)), &opts(0)).unwrap().mu, Some(k));
    }
    let r = surface_ring();
    let rep = milnor_surface(&cat("ex3", Some(1)), &opts(0).projection(form("y-z", &r))).unwrap();
    assert_eq!((rep.mu, rep.ind_ph, rep.mu_section), (Some(5), 8, Some(3)));
}

#[test]
fn conjecture_verdicts() {
    let r = surface_ring();
    let rep = milnor_surface(&cat("ex3", Some(1)), &opts(0).projection(form("y-z", &r))).unwrap().with_conjecture(6);
    assert!(rep.conjecture.unwrap().equal_to_tau_minus_1);
    assert!(conjecture_check(1, 2).equal_to_tau_minus_1);
    assert!(conjecture_check(2, 3).equal_to_tau_minus_1);
    assert!(!conjecture_check(2, 2).equal_to_tau_minus_1);
}

#[test]
fn template_run_with_fixed_projection() {
    let r = surface_ring();
    let t = entry("ex1-variant").unwrap().template(None).unwrap().unwrap();
    let o = RunOptions { perturbation: Perturbation::Template(t), ..opts(0).projection(form("w", &r)) };
    let rep = milnor_surface(&cat("ex1-variant", None), &o).unwrap();
    assert_eq!((rep.mu, rep.ind_ph, rep.mu_section), (Some(1), 3, Some(2)));
}

#[test]
fn non_isolated_section_with_fixed_projection_is_an_input_error() {
    let r = surface_ring();
    let e = milnor_surface(&cat("ex1", None), &opts(0).projection(form("w", &r))).unwrap_err();
    assert!(e.is_input_error(), "{e}");
}

#[test]
fn threefold_linear_cone() {
    let r5 = Ring::new(["x", "y", "z", "w", "v"]).unwrap();
    let m = PresentationMatrix::parse(&r5, &[&["x", "y", "z"], &["w", "v", "x+2*y+3*z+4*w+5*v"]]).unwrap();
    let a = threefold_combined(&m, &opts(0)).unwrap();
    let b = threefold_combined(&m, &opts(1)).unwrap();
    assert_eq!(a.combined, b.combined);
    assert_eq!(a.combined, Some(a.m_d as i64 - a.mu_section.unwrap()));
    assert!(a.mu.is_none());
}

#[test]
fn dispatch_rejects_other_dimensions() {
    let r = Ring::new(["x", "y"]).unwrap();
    let m = PresentationMatrix::parse(&r, &[&["x", "y"]]).unwrap();
    assert!(matches!(milnor(&m, &opts(0)), Err(InvariantError::Input(_))));
}

#[test]
fn singular_locus_reports() {
    let rep = singular_locus_report(&cat("ex1", None)).unwrap();
    assert_eq!(rep.dimension, 0);
    let md = perturb(&cat("ex1", None), &Perturbation::Auto, 0).unwrap();
    assert_eq!(singular_locus_report(&md).unwrap().dimension, -1);
    // one-parameter deformation M_t (k = 2, t = 1): zero-dimensional, and the
    // origin is its only point
    let r = surface_ring();
    let mt = PresentationMatrix::deformed(Matrix::parse(&r, &[&["z", "y", "x"], &["x", "w", "y*z+y^2*w+y*w"]]).unwrap());
    let rep = singular_locus_report(&mt).unwrap();
    assert_eq!(rep.dimension, 0);
    assert_eq!(rep.degree, Some(10));
    let g = crate::gbasis::buchberger(singular_locus_ideal(&mt).gens(), Ordering::DegRevLex).unwrap();
    assert_eq!(local_length(&g).unwrap(), 10);
}

#[test]
fn seed_streams_are_independent() {
    let s = SeedStream::new(0);
    assert_ne!(s.derive(Stage::Smoothing, 0), s.derive(Stage::Projection, 0));
    assert_ne!(s.derive(Stage::Smoothing, 0), s.derive(Stage::Smoothing, 1));
    assert_eq!(s.derive(Stage::Separation, 2), SeedStream::new(0).derive(Stage::Separation, 2));
}

#[test]
fn structured_report_is_deterministic() {
    let a = milnor_surface(&cat("ex1", None), &opts(3)).unwrap();
    let b = milnor_surface(&cat("ex1", None), &opts(3)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn matrix_file_drives_the_pipeline() {
    let f = MatrixFile::from_toml("variables = [\"x\",\"y\",\"z\",\"w\"]\nentries = [[\"z\",\"y\",\"x\"],[\"w\",\"z\",\"y\"]]\n").unwrap();
    assert_eq!(milnor(&f.presentation().unwrap(), &opts(0)).unwrap().mu, Some(1));
}
