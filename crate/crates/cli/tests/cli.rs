//! End-to-end tests of the command-line interface: output values, exit
//! codes, cache validation and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperorbit-test-{}-{}", name, std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn enumerate_small_box() {
    let report = stdout_json(&run(&["enumerate", "--n", "1", "--x", "2"]));
    assert_eq!(report["counts"]["curves"], 8);
    assert_eq!(report["counts"]["m_histogram_total"], 8);
}

#[test]
fn ffcount_fixed_poly() {
    let report = stdout_json(&run(&["ffcount", "--n", "1", "--p", "5", "--poly", "0,1"]));
    assert_eq!(report["counts"]["total"], 120);
    let row = &report["rows"][0];
    assert_eq!(row["m"], 1);
    assert_eq!(row["num_orbits"], 2);
    assert_eq!(row["distinguished_size"], 60);
}

#[test]
fn ffcensus_identities() {
    let report = stdout_json(&run(&["ffcensus", "--n", "1", "--p", "3"]));
    assert_eq!(report["counts"]["fiber_identity_holds"], true);
    assert_eq!(report["counts"]["regular_identity_holds"], true);
    assert_eq!(report["counts"]["regular_vectors"], 216);
    assert_eq!(report["counts"]["box_size"], "243");
}

#[test]
fn ffcensus_infeasible_exit_code() {
    let out = run(&["ffcensus", "--n", "2", "--p", "7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn padic_shape_values() {
    let report = stdout_json(&run(&["padic", "shape", "--p", "7", "--poly", "0,1"]));
    assert_eq!(report["rows"][0]["degrees"], serde_json::json!([1, 1, 1]));
    assert_eq!(report["rows"][0]["m"], 2);
}

#[test]
fn descent_orbit_certificate_green() {
    let report = stdout_json(&run(&[
        "descent", "orbit", "--curve", "0,1", "--points", "(2,3)", "--p", "5", "--prec", "6",
    ]));
    assert_eq!(report["counts"]["invariants_ok"], true);
    let cert = &report["rows"][0];
    assert_eq!(cert["unimodular"], true);
    assert_eq!(cert["charpoly_ok"], true);
    assert_eq!(cert["norm_ideal"], "3");
    assert_eq!(cert["norm_alpha"], "9");
}

#[test]
fn descent_point_off_curve_is_validation_error() {
    let out = run(&[
        "descent", "orbit", "--curve", "0,1", "--points", "(1,1)", "--p", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn descent_weierstrass_point_is_unsupported() {
    let out = run(&[
        "descent", "orbit", "--curve", "0,1", "--points", "(-1,0)", "--p", "5",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn descent_even_prime_is_unsupported() {
    let out = run(&[
        "descent", "orbit", "--curve", "0,1", "--points", "(2,3)", "--p", "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn descent_batch_runs_and_classifies_failures() {
    let dir = tmp_dir("batch");
    let file = dir.join("points.json");
    std::fs::write(
        &file,
        r#"[
            {"n": 1, "c": [0, 1], "points": [[2, 3]]},
            {"n": 1, "c": [0, 1], "points": [[1, 1]]},
            {"n": 1, "c": [0, 1], "points": [[-1, 0]]}
        ]"#,
    )
    .unwrap();
    let report = stdout_json(&run(&[
        "descent",
        "batch",
        "--file",
        file.to_str().unwrap(),
        "--p",
        "5,7",
    ]));
    assert_eq!(report["counts"]["entries"], 3);
    assert_eq!(report["counts"]["certificates_ok"], 1);
    assert_eq!(report["counts"]["failures"]["point_off_curve"], 1);
    assert_eq!(report["counts"]["failures"]["weierstrass_point"], 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn chabauty_constants_and_bounds() {
    let report = stdout_json(&run(&["chabauty", "--n", "3", "--x", "2"]));
    // delta_3 >= 1 - 2/7 = 5/7
    assert_eq!(report["ratios"]["delta_n_lower_bound"]["num"], "5");
    assert_eq!(report["ratios"]["delta_n_lower_bound"]["den"], "7");
    assert_eq!(report["counts"]["rank_average_identity_holds"], true);
    assert_eq!(report["counts"]["stoll_genus3_point_bound"], 19);

    let report = stdout_json(&run(&["chabauty", "--n", "1", "--x", "50"]));
    assert_eq!(report["counts"]["all_bounds_at_most_3"], true);
}

#[test]
fn localmass_product_holds() {
    let report = stdout_json(&run(&["localmass", "--n", "1", "--x", "20"]));
    assert_eq!(report["counts"]["product_identity_holds"], true);
    assert_eq!(report["counts"]["unsupported"], 0);
}

#[test]
fn lemmacheck_reports() {
    let report = stdout_json(&run(&["lemmacheck", "--n", "3"]));
    assert_eq!(report["counts"]["inequality_holds"], true);
    assert_eq!(report["counts"]["subsets_checked"], 512);
}

#[test]
fn orbit_command_distinguished_and_nilpotent() {
    let report = stdout_json(&run(&["orbit", "--poly", "0,1"]));
    assert_eq!(report["counts"]["distinguished_shape"], true);
    assert_eq!(report["counts"]["invariants_round_trip"], true);
    let report = stdout_json(&run(&["orbit", "--nilpotent", "regular", "--n", "2"]));
    assert_eq!(report["counts"]["charpoly_is_pure_power"], true);
}

#[test]
fn padic_chabauty_inapplicable_is_reported_not_an_error() {
    let report = stdout_json(&run(&["padic", "chabauty", "--curve", "0,1"]));
    assert_eq!(report["counts"]["applicable"], false);
}

#[test]
fn reports_are_deterministic_and_cacheable() {
    let dir = tmp_dir("cache");
    let args = [
        "enumerate",
        "--n",
        "1",
        "--x",
        "30",
        "--cache-dir",
        dir.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success());
    // second run consumes the cache and must be byte identical
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    // corrupt the cache: the run must fail loudly with a validation error
    let cache_file = dir.join("curves_n1_x30.jsonl");
    let text = std::fs::read_to_string(&cache_file).unwrap();
    let corrupted = text.replacen("\"disc\":\"", "\"disc\":\"9", 1);
    assert_ne!(text, corrupted);
    std::fs::write(&cache_file, corrupted).unwrap();
    let third = run(&args);
    assert_eq!(third.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&third.stderr);
    assert!(stderr.contains("corrupted cache"), "stderr: {}", stderr);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn csv_format_renders_flat_rows() {
    let out = run(&["--format", "csv", "lemmacheck", "--n", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("section,key,value"));
    assert!(text.contains("counts,inequality_holds,true"));
}
