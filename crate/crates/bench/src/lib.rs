//! Fixtures shared by the benchmarks.

use detsing::catalog;
use detsing::invariants::critical_ideal;
use detsing::matgerm::{PresentationMatrix, ProjectionData};
use detsing::polycore::Poly;

/// A catalog entry at `k`.
pub fn germ(id: &str, k: Option<i64>) -> PresentationMatrix {
    catalog::entry(id).expect("catalog id").instantiate(k).expect("valid parameter")
}

/// Critical system of the last coordinate on the recorded smoothing of `id`.
pub fn critical_system(id: &str, k: Option<i64>) -> Vec<Poly> {
    let e = catalog::entry(id).expect("catalog id");
    let smooth = e.template(k).expect("valid parameter").expect("entry has a template").apply().expect("template applies");
    let n = e.variables.len();
    critical_ideal(&smooth, &ProjectionData::coordinate(n, n - 1)).expect("critical ideal").gens().to_vec()
}
