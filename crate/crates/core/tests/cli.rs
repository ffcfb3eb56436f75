use std::fs;
use std::path::PathBuf;

use invsq::cli::{run, EXIT_GEOMETRY, EXIT_INPUT, EXIT_OK, EXIT_SINGULAR};
use invsq::problem::parse_problem;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn invsq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("invsq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn eval_counterexample_centre() {
    let (code, out, _) = invsq(&[
        "eval",
        "--problem",
        &data("cross_polytope_d5.toml"),
        "--point",
        "0,0,0,0,0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "40.0\n");
    let (code, out, _) = invsq(&[
        "eval",
        "--problem",
        &data("single_source.toml"),
        "--point",
        "-1,0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1.0\n");
}

#[test]
fn eval_errors() {
    let single = data("single_source.toml");
    let (code, out, err) = invsq(&["eval", "--problem", &single, "--point", "0,0"]);
    assert_eq!((code, out.as_str()), (EXIT_SINGULAR, ""));
    assert!(err.contains("source 0"), "{err}");
    let (code, _, err) = invsq(&["eval", "--problem", &single, "--point", "1,2,3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("dimension mismatch"), "{err}");
    let (code, _, _) = invsq(&["eval", "--problem", &single, "--point", "1,x"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, err) = invsq(&["eval", "--problem", "/nonexistent/p.toml", "--point", "1,0"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("cannot read"));
}

#[test]
fn malformed_problem_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(
        &path,
        "dimension = 2\nweights = [1.0]\nsources = [\n  [0.0, 1.0, 2.0],\n]\n",
    )
    .unwrap();
    let (code, out, err) = invsq(&[
        "eval",
        "--problem",
        path.to_str().unwrap(),
        "--point",
        "1,1",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn classify_output() {
    assert_eq!(
        invsq(&["classify", "2"]).1,
        "sub-harmonic; max: boundary; min: full\n"
    );
    assert_eq!(
        invsq(&["classify", "4"]).1,
        "harmonic; max: boundary; min: boundary\n"
    );
    assert_eq!(
        invsq(&["classify", "9"]).1,
        "super-harmonic; max: full; min: boundary\n"
    );
    assert_eq!(invsq(&["classify", "0"]).0, EXIT_INPUT);
    assert_eq!(invsq(&["classify", "two"]).0, EXIT_INPUT);
}

#[test]
fn optimize_interior_maximum() {
    let (code, out, _) = invsq(&[
        "optimize",
        "--problem",
        &data("cross_polytope_d5.toml"),
        "--objective",
        "max",
        "--seed",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("value: 40.0\n"), "{out}");
    assert!(out.contains("location: interior\n"));
    assert!(out.contains("restricted: false\n"));
}

#[test]
fn optimize_is_deterministic() {
    let args = [
        "optimize",
        "--problem",
        &data("random_d3.toml"),
        "--objective",
        "min",
        "--seed",
        "9",
        "--starts",
        "12",
    ];
    let first = invsq(&args);
    assert_eq!(first.0, EXIT_OK);
    assert!(first.1.contains("starts_used: "));
    assert_eq!(first, invsq(&args));
}

#[test]
fn optimize_rejects_source_inside_region() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inside.toml");
    fs::write(
        &path,
        "dimension = 2\nweights = [1.0]\nsources = [[0.1, 0.0]]\n\n[region]\ntype = \"sphere\"\ncenter = [0.0, 0.0]\nradius = 1.0\n",
    )
    .unwrap();
    let (code, out, err) = invsq(&["optimize", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_GEOMETRY);
    assert!(out.is_empty());
    assert!(err.contains("inside the search region"), "{err}");
}

#[test]
fn optimize_needs_region() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.toml");
    let (code, _, _) = invsq(&["counterexample", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = invsq(&["optimize", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("[region]"));
}

#[test]
fn counterexample_round_trip() {
    let (code, text, _) = invsq(&["counterexample", "4"]);
    assert_eq!(code, EXIT_OK);
    let problem = parse_problem(&text).unwrap();
    assert_eq!(problem.sources.len(), 8);
    assert_eq!(problem.sources.evaluate(&[0.0; 4]).unwrap(), 32.0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp4.toml");
    invsq(&["counterexample", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
    let (_, out, _) = invsq(&[
        "eval",
        "--problem",
        path.to_str().unwrap(),
        "--point",
        "0,0,0,0",
    ]);
    assert_eq!(out, "32.0\n");
}

#[test]
fn rmax_csv() {
    let (code, out, _) = invsq(&["rmax", "--dims", "2,5..6,100"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "D,r_max,approx_simple,approx_quadratic,case\n\
         2,0.3218,NA,NA,minimum\n\
         5,0.0603,0.0602,0.0603,maximum\n\
         6,0.0783,0.0781,0.0783,maximum\n\
         100,0.1369,0.1357,0.1368,maximum\n"
    );
    assert_eq!(invsq(&["rmax", "--dims", "0"]).0, EXIT_INPUT);
    assert_eq!(invsq(&["rmax", "--dims", "7..3"]).0, EXIT_INPUT);
}

#[test]
fn verify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.json");
    let (code, out, _) = invsq(&[
        "verify",
        "oracle",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with("2 probes, 0 failed\n"));
    let reports: Vec<invsq::verification::ProbeReport> =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.passed() && r.seed == 5));
}

#[test]
fn verify_expected_counterexample() {
    let (code, out, _) = invsq(&["verify", "--expect-counterexample", "D=5", "r=0.05"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("EXPECTED"));
    // on a large sphere the boundary wins again
    let (code, out, _) = invsq(&["verify", "--expect-counterexample", "D=5", "r=0.3"]);
    assert_eq!(code, invsq::cli::EXIT_PROBE_FAILURE);
    assert!(out.contains("UNEXPECTED"));
    // D = 4 has no interior extremum
    let (code, _, _) = invsq(&["verify", "--expect-counterexample", "D=4"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invsq(&["verify", "--expect-counterexample", "x=1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn verify_unknown_suite() {
    assert_eq!(invsq(&["verify", "everything"]).0, EXIT_INPUT);
}

#[test]
fn help_is_not_an_error() {
    let (code, out, _) = invsq(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("rmax"));
}
