//! End-to-end tests against the compiled binary: subcommand behavior, the
//! exit-code contract (0 ok, 1 failure, 2 input error, 3 inconclusive),
//! and byte-identical report files on reruns.

use std::path::Path;
use std::process::{Command, Output};

fn latticeft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticeft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_rectangle_json(dir: &Path) -> String {
    // 3/2 x 4 rectangle: exactly area 6, centrally symmetric, convex, but
    // its transform does not vanish on the integer lattice
    let path = dir.join("rect.json");
    std::fs::write(
        &path,
        r#"{"vertices": [["-3/4", "-2"], ["3/4", "-2"], ["3/4", "2"], ["-3/4", "2"]]}"#,
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ft_lattice_point_is_zero_generic_branch() {
    let out = latticeft(&["ft", "--body", "R", "--xi", "1,0"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("branch: generic"), "{text}");
    let json = latticeft(&["ft", "--body", "R", "--xi", "1,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert!(v["abs"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn ft_at_origin_prints_area() {
    let out = latticeft(&["ft", "--body", "H", "--xi", "0,0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["re"].as_f64().unwrap(), 6.0);
    assert_eq!(v["branch"], "origin");
}

#[test]
fn ft_oracle_cross_check() {
    let out = latticeft(&["ft", "--body", "R", "--xi", "1/2,0", "--oracle", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let re = v["re"].as_f64().unwrap();
    assert!((re - 24.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 1e-10);
    assert!(v["oracle"]["abs_diff"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn ft_product_body() {
    let out = latticeft(&["ft", "--body", "H*ball:2:1", "--xi", "1/2,0,0,0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["re"].as_f64().unwrap() - 8.0 / std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn ft_rejects_bad_input() {
    let bad_body = latticeft(&["ft", "--body", "dodecahedron", "--xi", "1,0"]);
    assert_eq!(exit_code(&bad_body), 2);
    let bad_dim = latticeft(&["ft", "--body", "R", "--xi", "1,0,0"]);
    assert_eq!(exit_code(&bad_dim), 2);
    assert!(stderr(&bad_dim).contains("dimension"));
    let bad_xi = latticeft(&["ft", "--body", "R", "--xi", "1,zebra"]);
    assert_eq!(exit_code(&bad_xi), 2);
}

#[test]
fn ft_negative_frequency_and_json_file_body() {
    let dir = tempfile::tempdir().unwrap();
    let rect = write_rectangle_json(dir.path());
    let out = latticeft(&["ft", "--body", &rect, "--xi", "-1,0", "--json"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // rectangle transform at (-1, 0): 4 sin(-3 pi/2) / (-pi) = -4/pi
    assert!((v["re"].as_f64().unwrap() + 4.0 / std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn tile_check_candidate_lattice_passes() {
    let out = latticeft(&[
        "tile-check",
        "--body",
        "H",
        "--lattice",
        "1,3,1,-3",
        "--samples",
        "1500",
        "--range",
        "15",
        "--seed",
        "7",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("k=1"));
}

#[test]
fn tile_check_square_on_standard_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(
        &path,
        r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#,
    )
    .unwrap();
    let out = latticeft(&[
        "tile-check",
        "--body",
        path.to_str().unwrap(),
        "--lattice",
        "Z2",
        "--samples",
        "1000",
        "--range",
        "10",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
}

#[test]
fn tile_check_covolume_mismatch_fails() {
    let out = latticeft(&[
        "tile-check",
        "--body",
        "R",
        "--lattice",
        "Z2",
        "--samples",
        "300",
        "--range",
        "5",
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn tile_check_all_samples_skipped_is_inconclusive() {
    let out = latticeft(&[
        "tile-check",
        "--body",
        "R",
        "--lattice",
        "1,3,1,-3",
        "--samples",
        "50",
        "--eps",
        "100",
        "--range",
        "5",
    ]);
    assert_eq!(exit_code(&out), 3, "{}", stderr(&out));
}

#[test]
fn tile_check_json_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("tiling.json");
    let out = latticeft(&[
        "tile-check",
        "--body",
        "R",
        "--lattice",
        "1,3,1,-3",
        "--samples",
        "800",
        "--range",
        "10",
        "--out",
        report.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["verdict"], "k-tiling");
    assert_eq!(v["k"], 1);
    assert!(v["histogram"]["1"].as_u64().unwrap() > 0);
    assert_eq!(v["samples"], 800);
    assert_eq!(v["lattice_basis"][0], "1");
    assert!(v["spectral"]["pass"].as_bool().unwrap());
    assert!(v["spectral"]["max_abs"].as_f64().unwrap() <= 1e-10);
    // stdout JSON matches the file
    assert_eq!(
        stdout(&out).trim(),
        std::fs::read_to_string(&report).unwrap()
    );
}

#[test]
fn oracle_subcommand_reports_both_routes() {
    let out = latticeft(&[
        "oracle",
        "--body",
        "ball:3:1",
        "--xi",
        "1/2,0,0",
        "--mc",
        "--samples",
        "30000",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let closed = v["closed_form"]["re"].as_f64().unwrap();
    assert!((closed - 4.0 / std::f64::consts::PI).abs() < 1e-10);
    assert!(v["abs_diff"].as_f64().unwrap() <= 1e-10);
    assert!(v["monte_carlo"]["within_4_std_err_of_closed_form"]
        .as_bool()
        .unwrap());
}

#[test]
fn interval_demo_cases() {
    let equal = latticeft(&["interval-demo", "1", "1", "--json"]);
    assert_eq!(exit_code(&equal), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&equal)).unwrap();
    assert_eq!(v["agree_at_zero"], true);
    assert_eq!(v["half_lengths_equal"], true);

    let differ = latticeft(&["interval-demo", "1", "3/2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&differ)).unwrap();
    assert_eq!(v["ft_at_zero"][0], 2.0);
    assert_eq!(v["ft_at_zero"][1], 3.0);
    assert_eq!(v["agree_at_zero"], false);

    let halves = latticeft(&["interval-demo", "1/2", "1/2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&halves)).unwrap();
    assert_eq!(v["agree_at_zero"], true);

    let bad = latticeft(&["interval-demo", "0", "1"]);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn reproduce_reduced_ranges_succeeds_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("rep.json");
    let args = [
        "reproduce",
        "--range2",
        "8",
        "--range4",
        "3",
        "--samples",
        "1200",
        "--emit-points",
        "--out",
    ];
    let mut full: Vec<&str> = args.to_vec();
    let report_str = report.to_string_lossy().into_owned();
    full.push(&report_str);

    let out = latticeft(&full);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("counterexample reproduced"));
    let first = std::fs::read(&report).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["verdict"], "counterexample reproduced");
    assert_eq!(v["steps"].as_array().unwrap().len(), 6);
    assert!(v["steps"][1]["details"]["max_abs_diff"].as_f64().unwrap() <= 1e-10);
    assert!(v["assumptions"][0].as_str().unwrap().contains("polytope"));

    // per-point CSVs exist with the right headers
    let csv_2d = std::fs::read_to_string(dir.path().join("rep.2d.csv")).unwrap();
    assert!(csv_2d.starts_with("xi_1,xi_2,re_A,im_A,re_B,im_B,abs_diff,branch_A,branch_B"));
    assert_eq!(csv_2d.lines().count(), 1 + 17 * 17);
    let csv_4d = std::fs::read_to_string(dir.path().join("rep.4d.csv")).unwrap();
    assert!(csv_4d.starts_with("xi_1,xi_2,xi_3,xi_4,"));
    assert_eq!(csv_4d.lines().count(), 1 + 7usize.pow(4));

    // byte-identical on rerun
    let again = latticeft(&full);
    assert_eq!(exit_code(&again), 0);
    assert_eq!(std::fs::read(&report).unwrap(), first);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("rep.4d.csv")).unwrap(),
        csv_4d
    );
}

#[test]
fn reproduce_detects_lattice_disagreement_at_step_2() {
    let dir = tempfile::tempdir().unwrap();
    let rect = write_rectangle_json(dir.path());
    let report = dir.path().join("rep.json");
    let out = latticeft(&[
        "reproduce",
        "--body-b",
        &rect,
        "--range2",
        "5",
        "--range4",
        "2",
        "--samples",
        "400",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("step 2"), "{}", stderr(&out));
    // the partial report is still written, with step 1 passing
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["steps"][0]["pass"], true, "rectangle passes step 1");
    assert_eq!(v["steps"][1]["pass"], false);
    assert!(v["verdict"].as_str().unwrap().contains("step 2"));
}

#[test]
fn reproduce_with_impossible_tolerance_fails_at_step_2() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("rep.json");
    let out = latticeft(&[
        "reproduce",
        "--tol",
        "1e-300",
        "--range2",
        "5",
        "--range4",
        "2",
        "--samples",
        "400",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("step 2"), "{}", stderr(&out));
}

#[test]
fn reproduce_rejects_bad_config() {
    let zero_tol = latticeft(&["reproduce", "--tol", "0"]);
    assert_eq!(exit_code(&zero_tol), 2);
    let bad_range = latticeft(&["reproduce", "--range2", "0"]);
    assert_eq!(exit_code(&bad_range), 2);
    let non_polygon = latticeft(&["reproduce", "--body-a", "ball:2:1"]);
    assert_eq!(exit_code(&non_polygon), 2);
}

#[test]
fn unknown_flags_exit_2() {
    let out = latticeft(&["ft", "--body", "R", "--frequency", "1,0"]);
    assert_eq!(exit_code(&out), 2);
}
