//! End-to-end tests driving the `unirule` binary: exit codes, report
//! contents, precedence rules, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn unirule() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unirule"))
}

fn run(args: &[&str]) -> Output {
    unirule().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("unirule-test-{}-{}", std::process::id(), name));
    path
}

#[test]
fn certify_fermat_cubic_emits_certificate() {
    let out = run(&[
        "certify",
        "--field",
        "7",
        "--ambient",
        "2",
        "--poly",
        "x0^3+x1^3+x2^3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "not-geometrically-uniruled");
    assert_eq!(json["count"], 9);
    assert_eq!(json["residue"], 2);
    assert_eq!(json["modulus"], 7);
    assert_eq!(json["classification"], "calabi-yau");
    assert_eq!(json["smoothness"]["kind"], "fermat-exact");
    // Stable key order.
    let text = stdout(&out);
    let ambient = text.find("\"ambient_n\"").unwrap();
    let verdict = text.find("\"verdict\"").unwrap();
    let classification = text.find("\"classification\"").unwrap();
    assert!(ambient < verdict && verdict < classification);
}

#[test]
fn certify_inconclusive_still_exits_zero() {
    let out = run(&[
        "certify",
        "--field",
        "2",
        "--ambient",
        "2",
        "--poly",
        "x0^3+x1^3+x2^3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "inconclusive");
    assert_eq!(json["count"], 3);
    assert_eq!(json["residue"], 1);
}

#[test]
fn hasse_command_uses_coefficient_route() {
    let out = run(&[
        "hasse",
        "--field",
        "7",
        "--ambient",
        "2",
        "--poly",
        "x0^3+x1^3+x2^3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["method"], "hasse-coefficient");
    assert_eq!(json["coefficient"], 6);
    assert_eq!(json["residue"], 6);
    assert_eq!(json["modulus"], 7);
    assert_eq!(json["count"], serde_json::Value::Null);
    assert_eq!(json["verdict"], "not-geometrically-uniruled");
}

#[test]
fn verify_adds_cross_check_without_changing_verdict() {
    let plain = run(&[
        "hasse", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3",
    ]);
    let verified = run(&[
        "hasse", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--verify",
    ]);
    assert_eq!(verified.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&plain)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&verified)).unwrap();
    assert_eq!(a["verdict"], b["verdict"]);
    assert_eq!(b["count"], 9);
}

#[test]
fn count_command_reports_both_counts() {
    let out = run(&[
        "count", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["q"], 7);
    assert_eq!(json["affine_cone_zeros"], 55);
    assert_eq!(json["projective_points"], 9);
}

#[test]
fn extension_field_certification_goes_through_counting() {
    let out = run(&[
        "certify",
        "--field",
        "2^2",
        "--ambient",
        "2",
        "--poly",
        "x0^3+x1^3+x2^3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["field"]["p"], 2);
    assert_eq!(json["field"]["k"], 2);
    assert_eq!(json["count"], 9);
    assert_eq!(json["modulus"], 4);
    assert_eq!(json["residue"], 1);
    assert_eq!(json["verdict"], "inconclusive");
}

#[test]
fn inhomogeneous_input_exits_one() {
    let out = run(&[
        "certify", "--field", "7", "--ambient", "2", "--poly", "x0^2+x1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not homogeneous"));
}

#[test]
fn singular_input_exits_one_with_witness() {
    let out = run(&[
        "certify", "--field", "3", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("singular"));
}

#[test]
fn budget_errors_exit_two() {
    let out = run(&[
        "count", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--budget", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn budget_env_var_is_default_and_flag_overrides() {
    let out = unirule()
        .args(["count", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3"])
        .env("UNIRULE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = unirule()
        .args([
            "count", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--budget",
            "100000",
        ])
        .env("UNIRULE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bounds_text_layout_is_stable() {
    let out = run(&["bounds", "-n", "3", "-d", "5", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
ambient             3
degrees             5
classification      general-type
sum-d               5
rc-codim-lb         1
rc-vacuous          false
uniruled-codim-lb   2
uniruled-vacuous    false
no-rational-curves  true
moduli-dim          55
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn bounds_accepts_multidegrees() {
    let out = run(&["bounds", "-n", "4", "-d", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["classification"], "calabi-yau");
    assert_eq!(json["rc_locus_codim_lb"], -1);
    assert_eq!(json["rc_vacuous"], true);
    assert_eq!(json["uniruled_locus_codim_lb"], 1);
}

#[test]
fn scan_csv_golden() {
    let out = run(&[
        "fermat-scan",
        "--p-range",
        "2..7",
        "--d-range",
        "5..5",
        "--n-range",
        "3..3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
p,d,n,coprime,sk_applicable,sk_nu,unirational,paper_nonuniruled,verified_coefficient
2,5,3,true,true,2,yes,false,
3,5,3,true,true,2,yes,false,
5,5,3,false,false,,unknown,false,
7,5,3,true,true,2,yes,false,
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn scan_verify_records_coefficients() {
    let out = run(&[
        "fermat-scan",
        "--p-range",
        "5..7",
        "--d-range",
        "3..4",
        "--n-range",
        "2..3",
        "--verify",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let mut confirmed = 0;
    for line in stdout(&out).lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        if row["paper_nonuniruled"] == true {
            assert_ne!(row["verified_coefficient"], serde_json::Value::Null);
            confirmed += 1;
        }
    }
    // (7, d=3, n=2) and (5, d=4, n=3) are the non-uniruled rows in range.
    assert_eq!(confirmed, 2);
}

#[test]
fn config_file_drives_a_scan() {
    let config_path = tmp_path("scan.cfg");
    std::fs::write(
        &config_path,
        "command = fermat-scan\np_range = 2..7\nd_range = 5..5\nambient = 3\n",
    )
    .unwrap();
    let out = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("p,d,n,"));
    assert_eq!(stdout(&out).lines().count(), 5);
    std::fs::remove_file(&config_path).ok();
}

#[test]
fn flags_override_config_values() {
    let config_path = tmp_path("fmt.cfg");
    std::fs::write(
        &config_path,
        "command = bounds\nambient = 3\ndegrees = 5\nformat = csv\n",
    )
    .unwrap();
    let csv = run(&["--config", config_path.to_str().unwrap()]);
    assert!(stdout(&csv).starts_with("n,degrees,"));
    let text = run(&[
        "bounds",
        "--config",
        config_path.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).starts_with("ambient"));
    std::fs::remove_file(&config_path).ok();
}

#[test]
fn unknown_config_key_exits_one() {
    let config_path = tmp_path("bad.cfg");
    std::fs::write(&config_path, "command = bounds\nfoo = 1\n").unwrap();
    let out = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown config key 'foo'"));
    std::fs::remove_file(&config_path).ok();
}

#[test]
fn missing_command_exits_one() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file_receives_the_report() {
    let out_path = tmp_path("cert.json");
    let out = run(&[
        "certify",
        "--field",
        "7",
        "--ambient",
        "2",
        "--poly",
        "x0^3+x1^3+x2^3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(json["count"], 9);
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn repeated_runs_are_byte_identical_across_worker_counts() {
    let base = run(&[
        "certify", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--verify",
        "--workers", "1",
    ]);
    for workers in ["2", "8"] {
        let other = run(&[
            "certify", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--verify",
            "--workers", workers,
        ]);
        assert_eq!(base.stdout, other.stdout);
    }
    let again = run(&[
        "certify", "--field", "7", "--ambient", "2", "--poly", "x0^3+x1^3+x2^3", "--verify",
        "--workers", "1",
    ]);
    assert_eq!(base.stdout, again.stdout);
}

#[test]
fn poly_file_supplies_complete_intersection() {
    let poly_path = tmp_path("forms.txt");
    std::fs::write(&poly_path, "# two hyperplanes\nx0\n\nx1\n").unwrap();
    let out = run(&[
        "count",
        "--field",
        "5",
        "--ambient",
        "2",
        "--poly-file",
        poly_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["projective_points"], 1);
    std::fs::remove_file(&poly_path).ok();
}
