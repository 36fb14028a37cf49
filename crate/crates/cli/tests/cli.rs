use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn forms_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("forms")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_env(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_geomforge"));
    cmd.args(args).current_dir(forms_dir()).env_remove("GEOMFORGE_BUDGET");
    if let Some(b) = budget {
        cmd.env("GEOMFORGE_BUDGET", b);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = run_env(args, None);
    let json: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), json)
}

/// Compares stdout with `tests/golden/<name>.json`; set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, args: &[&str]) {
    let out = run_env(args, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let path = golden_dir().join(format!("{name}.json"));
    let got = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, &got).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "output of {args:?} differs from {}", path.display());
}

#[test]
fn golden_reports() {
    golden("group_iso_psl27_psl32", &["group", "iso", "--a", "psl(2,7)", "--b", "psl(3,2)"]);
    golden("forms_witt_symplectic4_q2", &["forms", "witt", "--file", "symplectic4_q2.json"]);
    golden("forms_reduce_orthogonal5_q2", &["forms", "reduce", "--file", "orthogonal5_q2.json"]);
    golden("geometry_check_pg22", &["geometry", "check", "--n", "2", "--q", "2"]);
    golden("classical_det_gf5", &["classical", "det", "--scalars", "5", "--matrix", "1 2 0;3 4 1;0 1 1"]);
    golden("building_apartment_n3", &["building", "apartment", "--n", "3", "--q", "2"]);
}

#[test]
fn reports_carry_schema_and_are_reproducible() {
    let args = ["classical", "steinberg", "--n", "3", "--quaternions", "--samples", "20", "--seed", "9"];
    let a = run_env(&args, None);
    let b = run_env(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["schema"], "geomforge.report/1");
    assert_eq!(json["command"], "classical steinberg");
    assert_eq!(json["results"]["sr3_conventions"], serde_json::json!(["ab"]));
    assert!(json.get("timing_ms").is_none());
    let (_, timed) = run(&["group", "order", "--group", "sym(4)", "--timing"]);
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn named_group_facts() {
    let (code, j) = run(&["group", "order", "--group", "sp(4,2)"]);
    assert_eq!((code, j["results"]["order"].as_str()), (0, Some("720")));
    let (_, j) = run(&["group", "perfect", "--group", "psl(2,3)"]);
    assert_eq!(j["results"]["perfect"], false);
    let (_, j) = run(&["group", "iso", "--a", "psl(3,4)", "--b", "psl(4,2)"]);
    assert_eq!(j["results"]["isomorphic"], false);
    let (_, j) = run(&["group", "transitivity", "--group", "pgl(2,5)"]);
    assert_eq!(j["results"]["transitivity_degree"], 3);
}

#[test]
fn forms_commands() {
    let (code, j) = run(&["forms", "witt", "--file", "hermitian3_q4.json"]);
    assert_eq!((code, j["results"]["index"].as_u64()), (0, Some(1)));
    let (_, j) = run(&["forms", "classify", "--file", "hermitian4_q4.json"]);
    assert_eq!(j["results"]["classification"]["case"], "ClassicalUnitary");
    let (_, j) = run(&["forms", "witt", "--file", "anisotropic2_q3.json"]);
    assert_eq!(j["results"]["anisotropic_dim"], 2);
    let (code, j) = run(&["forms", "paramcheck", "--file", "symplectic4_q2.json"]);
    assert_eq!((code, j["passed"].as_bool()), (0, Some(true)));
    let (code, j) = run(&["forms", "witt", "--file", "orthogonal5_q2.json"]);
    assert_eq!(code, 1);
    assert!(j["error"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn polar_commands() {
    let (code, j) = run(&["polar", "check", "--file", "hermitian4_q4.json"]);
    assert_eq!((code, j["results"]["points"].as_u64()), (0, Some(45)));
    assert_eq!(j["results"]["report"]["kind"], "Thick");
    let (_, j) = run(&["polar", "check", "--a32", "--q", "2"]);
    assert_eq!(j["results"]["report"]["kind"], "Weak");
    let (code, j) = run(&["polar", "oriflamme", "--q", "2"]);
    assert_eq!((code, j["results"]["oriflamme_chambers"].as_u64()), (0, Some(315)));
    let (_, j) = run(&["polar", "build", "--family", "o", "--n", "5", "--q", "2"]);
    assert_eq!(j["results"]["points"], 15);
}

#[test]
fn geometry_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pg32.txt");
    let f = file.to_str().unwrap();
    let (code, j) = run(&["geometry", "build", "--n", "3", "--q", "2", "--out", f]);
    assert_eq!((code, j["results"]["lines"].as_u64()), (0, Some(35)));
    let (code, j) = run(&["geometry", "check", "--file", f]);
    assert_eq!((code, j["results"]["points"].as_u64()), (0, Some(15)));

    let grid = dir.path().join("grid.txt");
    fs::write(&grid, "p a\np b\np c\np d\nl x\nl y\ni a x\ni b x\ni c y\ni d y\n").unwrap();
    let (code, j) = run(&["geometry", "check", "--file", grid.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(j["passed"], false);

    let edges = dir.path().join("edges.txt");
    let (code, j) = run(&["building", "flags", "--n", "2", "--q", "2", "--edges", edges.to_str().unwrap()]);
    assert_eq!((code, j["results"]["chambers"].as_u64()), (0, Some(21)));
    assert!(!fs::read_to_string(edges).unwrap().is_empty());
}

#[test]
fn classical_and_building_commands() {
    let (code, j) = run(&["classical", "build", "--kind", "pgl", "--n", "2", "--q", "5"]);
    assert_eq!((code, j["results"]["order"].as_str()), (0, Some("120")));
    let (code, _) = run(&["classical", "moufang", "--q", "7"]);
    assert_eq!(code, 0);
    let (code, j) = run(&["classical", "reconstruct", "--kind", "pgl", "--n", "3", "--q", "2"]);
    assert_eq!((code, j["results"]["lines"].as_u64()), (0, Some(7)));
    let (_, j) = run(&["classical", "det", "--scalars", "H", "--matrix", "0+1i+0j+0k 1;1 0+0i+1j+0k"]);
    assert_eq!(j["results"]["norm"], "2");
    let (_, j) = run(&["classical", "det", "--scalars", "GF(3)", "--matrix", "1 1;1 1"]);
    assert_eq!(j["results"]["determinant"], "0");
    let (code, j) = run(&["building", "tits", "--n", "2", "--q", "3"]);
    assert_eq!((code, j["results"]["bruhat_cells"].as_u64()), (0, Some(6)));
    let (code, _) = run(&["building", "roots", "--n", "3", "--q", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["group", "bogus"],
        vec!["group", "order", "--group", "psl(2)"],
        vec!["group", "order", "--group", "foo(3)"],
        vec!["forms", "witt", "--file", "missing.json"],
        vec!["classical", "det", "--scalars", "6", "--matrix", "1"],
        vec!["verify", "--suite", "other"],
        vec!["--budget", "nonsense", "group", "order", "--group", "sym(3)"],
    ] {
        let (code, j) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(j["exit"], "parse");
        assert!(j["error"].is_string());
    }
}

#[test]
fn tiny_budgets_exit_3() {
    let tiny = "max_group_order=1,max_grassmannian=1,max_enumeration=1";
    for args in [
        vec!["group", "order", "--group", "psl(2,7)"],
        vec!["group", "order", "--group", "psl(9,9)"],
        vec!["geometry", "build", "--n", "3", "--q", "3"],
        vec!["polar", "check", "--family", "sp", "--n", "4", "--q", "3"],
        vec!["forms", "witt", "--file", "symplectic4_q2.json"],
        vec!["classical", "steinberg", "--n", "3", "--q", "5"],
        vec!["building", "tits", "--n", "3", "--q", "2"],
        vec!["building", "flags", "--n", "3", "--q", "2"],
        vec!["verify", "--criterion", "1"],
    ] {
        let out = run_env(&args, Some(tiny));
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let (code, j) = run(&["--budget", "max_group_order=10", "group", "order", "--group", "alt(5)"]);
    assert_eq!(code, 3);
    assert_eq!(j["exit"], "budget");
}

#[test]
fn verify_suite_passes() {
    let (code, j) = run(&["verify", "--suite", "paper"]);
    assert_eq!(code, 0, "{j}");
    let criteria = j["results"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria.iter().all(|c| c["passed"] == true));
}
