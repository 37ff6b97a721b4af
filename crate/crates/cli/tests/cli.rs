use std::path::Path;
use std::process::{Command, Output};

use detsing::catalog;
use detsing::invariants::critical_ideal;
use detsing::matgerm::{MatrixFile, ProjectionData};
use serde_json::Value;

fn detsing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detsing")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn catalog_list_has_every_entry() {
    let o = detsing(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 7);
    let o = detsing(&["catalog", "list", "--format", "structured"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 7);
}

#[test]
fn check_passes_on_ex1() {
    let o = detsing(&["check", "--catalog", "ex1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict        pass"));
}

#[test]
fn check_rejects_a_square_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.toml", "variables = [\"x\", \"y\", \"z\", \"w\"]\nentries = [[\"x\", \"y\"], [\"z\", \"w\"]]\n");
    let o = detsing(&["check", "--input", &f, "--format", "structured"]);
    assert_eq!(code(&o), 2);
    let doc = json(&o);
    assert_eq!(doc["passed"], false);
    assert_eq!(doc["report"]["shape_ok"], false);
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.toml", "variables = [\"x\", \"y\", \"z\", \"w\"]\nentries = [[\"z\", \"y\", \"x\"], [\"w\", \"z\", \"y+*x\"]]\n");
    let o = detsing(&["check", "--input", &f]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("row 2, column 3") && err.contains("column 3:"), "{err}");

    let g = write(dir.path(), "gens.txt", "x^2\ny^^2\n");
    let o = detsing(&["gb", &g]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("gens.txt:2:"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&detsing(&["milnor", "--bogus"])), 1);
    assert_eq!(code(&detsing(&["milnor"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "nope"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "ex2"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "ex1", "--input", "x.toml"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "ex1", "--projection", "x*y"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "ex1", "--projection", "0*x"])), 1);
    assert_eq!(code(&detsing(&["milnor", "--catalog", "ex1", "--perturbation", "template"])), 1);
    assert_eq!(code(&detsing(&["--help"])), 0);
}

#[test]
fn milnor_on_ex1() {
    let o = detsing(&["milnor", "--catalog", "ex1", "--seed", "0", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["report"];
    assert_eq!((r["ind_ph"].as_u64(), r["mu_section"].as_i64(), r["mu"].as_i64()), (Some(3), Some(2), Some(1)));
    assert_eq!(r["smoothing"]["certificate"], true);
    assert_eq!(r["critical"]["nondegenerate"], true);
}

#[test]
fn structured_output_is_byte_stable() {
    let args = ["milnor", "--catalog", "ex2", "--param", "k=2", "--seed", "7", "--format", "structured"];
    let a = detsing(&args);
    let b = detsing(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn milnor_on_ex2_k4() {
    let o = detsing(&["milnor", "--catalog", "ex2", "--param", "k=4", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["mu"], 4);
}

#[test]
fn milnor_on_ex3_with_the_published_projection() {
    let o = detsing(&["milnor", "--catalog", "ex3", "--param", "k=1", "--projection", "y-z", "--format", "structured"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r = &json(&o)["report"];
    assert_eq!((r["ind_ph"].as_u64(), r["mu"].as_i64()), (Some(8), Some(5)));
    assert_eq!(r["conjecture"]["tau"], 6);
    assert_eq!(r["conjecture"]["equal_to_tau_minus_1"], true);
}

#[test]
fn template_perturbation_with_a_fixed_projection() {
    let o = detsing(&["milnor", "--catalog", "ex2", "--param", "k=2", "--perturbation", "template", "--projection", "w", "--format", "structured"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let doc = json(&o);
    let r = &doc["report"];
    assert_eq!((r["m_d"].as_u64(), r["mu_section"].as_i64(), r["mu"].as_i64()), (Some(5), Some(3), Some(2)));
    assert_eq!(r["smoothing"]["kind"], "template");
    // ind = 2k is stored but not binding
    let ind = doc["expected"].as_array().unwrap().iter().find(|c| c["quantity"] == "ind_ph").unwrap().clone();
    assert_eq!((ind["expected"].as_i64(), ind["matches"].as_bool(), ind["binding"].as_bool()), (Some(4), Some(false), Some(false)));
}

#[test]
fn perturbation_file_must_match_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let text = catalog::entry("ex2").unwrap().file(Some(3)).unwrap().to_toml();
    let f = write(dir.path(), "ex2k3.toml", &text);
    let o = detsing(&["milnor", "--catalog", "ex2", "--param", "k=2", "--perturbation", &f]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("differs"));
    let o = detsing(&["milnor", "--input", &f, "--perturbation", &f, "--projection", "w", "--format", "structured"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["report"]["mu"], 3);
}

#[test]
fn curve_milnor_numbers() {
    for (args, mu) in [(vec!["--catalog", "ex1-section"], 2), (vec!["--catalog", "ex2-section", "--param", "k=2"], 3), (vec!["--catalog", "ex3-section"], 3)] {
        let mut full = vec!["milnor", "--format", "structured"];
        full.extend(args);
        let o = detsing(&full);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["report"]["mu"], mu);
    }
}

#[test]
fn export_round_trips_through_check() {
    let o = detsing(&["catalog", "export", "ex2", "--param", "k=2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let f = MatrixFile::from_toml(&text).unwrap();
    assert_eq!(f.presentation().unwrap(), catalog::entry("ex2").unwrap().instantiate(Some(2)).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "ex2.toml", &text);
    assert_eq!(code(&detsing(&["check", "--input", &path])), 0);
    assert_eq!(code(&detsing(&["catalog", "export", "ex2"])), 1);
}

#[test]
fn gb_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.txt", "# squares\nx^2\ny^2\n");
    let o = detsing(&["gb", &f, "--format", "structured"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["quotient_dimension"], 4);

    let f = write(dir.path(), "unit.txt", "x\n1+x\n");
    let o = detsing(&["gb", &f]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("unit ideal"));

    let f = write(dir.path(), "cusp.txt", "x^2+x^3\n");
    let local = json(&detsing(&["gb", &f, "--ordering", "local", "--format", "structured"]));
    let global = json(&detsing(&["gb", &f, "--format", "structured"]));
    assert_eq!((local["quotient_dimension"].as_u64(), global["quotient_dimension"].as_u64()), (Some(2), Some(3)));
}

/// The critical system of `w` on the recorded ex2 smoothing has `2k + 1`
/// simple solutions.
#[test]
fn gb_on_the_ex2_critical_system() {
    let dir = tempfile::tempdir().unwrap();
    for k in 1..=3 {
        let e = catalog::entry("ex2").unwrap();
        let smooth = e.template(Some(k)).unwrap().unwrap().apply().unwrap();
        let ideal = critical_ideal(&smooth, &ProjectionData::coordinate(4, 3)).unwrap();
        let f = write(dir.path(), &format!("crit{k}.txt"), &(ideal.to_strings().join("\n") + "\n"));
        let o = detsing(&["gb", &f, "--vars", "x,y,z,w", "--format", "structured"]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["quotient_dimension"], 2 * k + 1, "k={k}");
    }
}

#[test]
fn run_all_on_fixed_entries() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("golden.toml");
    let o = detsing(&[
        "catalog", "run-all", "--only", "ex1", "--only", "ex2", "--only", "ex3-section", "--max-k", "2", "--jobs", "2", "--format", "structured",
        "--freeze", golden.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let doc = json(&o);
    assert_eq!(doc["passed"], true);
    let ids: Vec<String> = doc["results"].as_array().unwrap().iter().map(|r| format!("{}{}", r["id"].as_str().unwrap(), r["k"])).collect();
    assert_eq!(ids, ["ex1null", "ex21", "ex22", "ex3-sectionnull"]);
    let frozen = catalog::GoldenFile::parse(&std::fs::read_to_string(golden).unwrap()).unwrap();
    assert_eq!(frozen.get("ex2", 2).unwrap().mu, Some(2));
}
