//! End-to-end tests of the `qr` binary: exit codes, document shapes,
//! round-trips, and byte determinism.

use std::io::Write;
use std::process::{Command, Output};

use num_bigint::BigInt;
use quiverpoly::{ChernBasisPoly, ChernMono};
use serde_json::Value;
use tempfile::NamedTempFile;

fn qr(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qr"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn quiver_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn a3_file() -> NamedTempFile {
    quiver_file(r#"{"vertices": 3, "arrows": [[1,2],[3,2]]}"#)
}

fn parse_chern(doc: &Value) -> ChernBasisPoly {
    let mut out = ChernBasisPoly::zero();
    for term in doc.as_array().unwrap() {
        let symbols = term[0].as_array().unwrap().iter().flat_map(|s| {
            let vertex = s["vertex"].as_u64().unwrap() as u32;
            let degree = s["degree"].as_u64().unwrap() as u32;
            let mult = s["multiplicity"].as_u64().unwrap() as usize;
            std::iter::repeat_n((vertex, degree), mult)
        });
        let coeff: BigInt = term[1].as_str().unwrap().parse().unwrap();
        out.add_term(ChernMono::from_symbols(symbols), coeff);
    }
    out
}

#[test]
fn roots_lists_the_a3_root_system() {
    let f = a3_file();
    let doc = stdout_json(&qr(&["roots", "--quiver", f.path().to_str().unwrap()], &[]));
    assert_eq!(doc["dynkin_type"], "A3");
    assert_eq!(doc["count"], 6);
    assert_eq!(doc["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn roots_handles_a1_and_d4() {
    let a1 = quiver_file(r#"{"vertices": 1, "arrows": []}"#);
    let doc = stdout_json(&qr(&["roots", "--quiver", a1.path().to_str().unwrap()], &[]));
    assert_eq!(doc["count"], 1);

    let d4 = quiver_file(r#"{"vertices": 4, "arrows": [[1,2],[3,2],[2,4]]}"#);
    let doc = stdout_json(&qr(&["roots", "--quiver", d4.path().to_str().unwrap()], &[]));
    assert_eq!(doc["dynkin_type"], "D4");
    assert_eq!(doc["count"], 12);
}

#[test]
fn roots_rejects_non_dynkin_input() {
    let cyclic = quiver_file(r#"{"vertices": 3, "arrows": [[1,2],[2,3],[3,1]]}"#);
    let out = qr(&["roots", "--quiver", cyclic.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn orbits_enumerates_and_reports_codim() {
    let a2 = quiver_file(r#"{"vertices": 2, "arrows": [[1,2]]}"#);
    let doc = stdout_json(&qr(
        &["orbits", "--quiver", a2.path().to_str().unwrap(), "--dim", "1,1"],
        &[],
    ));
    assert_eq!(doc["count"], 2);
    let codims: Vec<i64> = doc["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["codim"].as_i64().unwrap())
        .collect();
    assert!(codims.contains(&0));
    assert!(codims.contains(&1));
}

#[test]
fn orbits_includes_the_reference_label() {
    let f = a3_file();
    let doc = stdout_json(&qr(
        &["orbits", "--quiver", f.path().to_str().unwrap(), "--dim", "2,3,2"],
        &[],
    ));
    let reference = quiverpoly::suite::reference_orbit().mults;
    let found = doc["orbits"].as_array().unwrap().iter().any(|o| {
        let mults: Vec<u32> = o["mults"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as u32)
            .collect();
        mults == reference
    });
    assert!(found);
}

// Sparse selector for the reference orbit in canonical root order:
// (0,0,1), (0,1,0), (1,1,0), (1,1,1) each with multiplicity one.
const REFERENCE_ORBIT: &str = "0:1,1:1,4:1,5:1";

#[test]
fn compute_reference_orbit_in_both_bases() {
    let f = a3_file();
    let doc = stdout_json(&qr(
        &[
            "compute",
            "--quiver",
            f.path().to_str().unwrap(),
            "--dim",
            "2,3,2",
            "--orbit-mults",
            REFERENCE_ORBIT,
            "--form",
            "vertex",
            "--basis",
            "both",
        ],
        &[],
    ));
    assert_eq!(doc["degree"], 3);
    assert_eq!(parse_chern(&doc["chern"]), quiverpoly::suite::golden_chern());
    let schur = doc["schur"].as_array().unwrap();
    assert_eq!(schur.len(), 2);
    assert_eq!(doc["positivity"]["all_nonnegative"], true);
    assert_eq!(doc["timing_ms"], Value::Null);
}

#[test]
fn compute_accepts_partition_files() {
    let f = a3_file();
    let mut chern_results = Vec::new();
    for blocks in [
        "[[[0,1,0]],[[1,1,0],[0,1,1],[1,1,1]],[[1,0,0],[0,0,1]]]",
        "[[[0,1,0],[1,1,0],[0,1,1]],[[1,1,1],[1,0,0],[0,0,1]]]",
    ] {
        let mut pf = NamedTempFile::new().unwrap();
        pf.write_all(blocks.as_bytes()).unwrap();
        let doc = stdout_json(&qr(
            &[
                "compute",
                "--quiver",
                f.path().to_str().unwrap(),
                "--dim",
                "2,3,2",
                "--orbit-mults",
                REFERENCE_ORBIT,
                "--form",
                "delta",
                "--partition",
                pf.path().to_str().unwrap(),
            ],
            &[],
        ));
        chern_results.push(parse_chern(&doc["chern"]));
    }
    assert_eq!(chern_results[0], quiverpoly::suite::golden_chern());
    assert_eq!(chern_results[0], chern_results[1]);
}

#[test]
fn compute_dense_orbit_is_one() {
    let f = a3_file();
    let orbits = stdout_json(&qr(
        &["orbits", "--quiver", f.path().to_str().unwrap(), "--dim", "2,3,2"],
        &[],
    ));
    let dense = orbits["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["codim"] == 0)
        .expect("a dense orbit exists");
    let index = dense["index"].as_u64().unwrap().to_string();
    let doc = stdout_json(&qr(
        &[
            "compute",
            "--quiver",
            f.path().to_str().unwrap(),
            "--dim",
            "2,3,2",
            "--orbit-index",
            &index,
        ],
        &[],
    ));
    assert_eq!(doc["degree"], 0);
    assert_eq!(parse_chern(&doc["chern"]), ChernBasisPoly::one());
}

#[test]
fn compute_with_verify_matches_the_rank_determinant() {
    let a2 = quiver_file(r#"{"vertices": 2, "arrows": [[1,2]]}"#);
    let doc = stdout_json(&qr(
        &[
            "compute",
            "--quiver",
            a2.path().to_str().unwrap(),
            "--dim",
            "2,2",
            "--orbit-mults",
            "0:1,1:1,2:1",
            "--verify",
        ],
        &[],
    ));
    assert_eq!(doc["verified"], true);
    assert_eq!(parse_chern(&doc["chern"]), quiverpoly::gtp_oracle(2, 2, 1));
}

#[test]
fn compute_output_is_byte_deterministic() {
    let f = a3_file();
    let args = [
        "compute",
        "--quiver",
        f.path().to_str().unwrap(),
        "--dim",
        "2,3,2",
        "--orbit-mults",
        REFERENCE_ORBIT,
        "--basis",
        "both",
        "--verify",
    ];
    let first = qr(&args, &[]);
    let second = qr(&args, &[]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn compute_rejects_schur_basis_off_the_vertex_form() {
    let f = a3_file();
    let out = qr(
        &[
            "compute",
            "--quiver",
            f.path().to_str().unwrap(),
            "--dim",
            "2,3,2",
            "--orbit-mults",
            REFERENCE_ORBIT,
            "--form",
            "c",
            "--basis",
            "schur",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_rejects_mismatched_dimension() {
    let f = a3_file();
    let out = qr(
        &[
            "compute",
            "--quiver",
            f.path().to_str().unwrap(),
            "--dim",
            "1,1,1",
            "--orbit-mults",
            REFERENCE_ORBIT,
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn term_cap_trips_resource_exit_code() {
    let f = a3_file();
    let out = qr(
        &[
            "compute",
            "--quiver",
            f.path().to_str().unwrap(),
            "--dim",
            "2,3,2",
            "--orbit-mults",
            REFERENCE_ORBIT,
            "--no-prune",
        ],
        &[("QR_MAX_TERMS", "2")],
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn check_suite_passes_and_reports() {
    let out = qr(&["check", "--suite", "golden"], &[]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    assert!(text.contains(", 0 failed"));
    assert!(!text.contains("FAIL "));
}

#[test]
fn check_rejects_unknown_suites() {
    let out = qr(&["check", "--suite", "nope"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = qr(&["check", "--suite", ""], &[]);
    assert_eq!(out.status.code(), Some(2));
}
