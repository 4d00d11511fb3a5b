//! End-to-end tests of the `spectra` binary: subcommand behavior, output
//! stability and the exit-code contract (0 success, 1 verification
//! failure, 2 input error).

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spectra_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn write_input(name: &str, json: &str) -> String {
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn wps_spectrum_json_has_eight_terms() {
    let out = spectra(&["wps", "--weights", "1,2,5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["mu"], 8);
    assert_eq!(v["terms"].as_array().unwrap().len(), 7);
    let total: u64 = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 8);
    assert_eq!(v["variance"], "12/5");
}

#[test]
fn verify_passes_on_p125() {
    let input = write_input("cli_p125.json", r#"{"vertices": [[1,0],[0,1],[-2,-5]]}"#);
    let out = spectra(&["verify", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all_passed: true"));
}

#[test]
fn verify_reads_stdin() {
    let out = spectra_stdin(
        &["verify", "--input", "-", "--format", "json"],
        r#"{"vertices": [[1,1],[1,-1],[-1,1],[-1,-1]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"] == "noether-classical"));
}

#[test]
fn rejection_paths_exit_two() {
    // not full-dimensional / origin not interior
    let input = write_input("cli_notfull.json", r#"{"vertices": [[1,0],[0,1]]}"#);
    let out = spectra(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // malformed JSON
    let input = write_input("cli_bad.json", r#"{"vertices": [[1,0],"#);
    let out = spectra(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));

    // schema violation: unknown field
    let input = write_input(
        "cli_extra.json",
        r#"{"vertices": [[1,0],[0,1],[-1,-1]], "name": "x"}"#,
    );
    let out = spectra(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));

    // unsupported dimension for the schema
    let input = write_input("cli_dim.json", r#"{"vertices": [[1],[-1]]}"#);
    let out = spectra(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));

    // missing --input
    let out = spectra(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown check token
    let input = write_input("cli_tok.json", r#"{"vertices": [[1,0],[0,1],[-1,-1]]}"#);
    let out = spectra(&["verify", "--input", &input, "--checks", "bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // usage error from clap
    let out = spectra(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_expectation_exits_one() {
    let input = write_input(
        "cli_p1222.json",
        r#"{"vertices": [[-2,-2,-2],[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    // the correct known value passes
    let out = spectra(&["verify", "--input", &input, "--expected-muhat", "63/2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // wrong expectation fails with exit 1
    let out = spectra(&["verify", "--input", &input, "--expected-muhat", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all_passed: false"));
}

#[test]
fn output_is_byte_stable() {
    let input = write_input("cli_stable.json", r#"{"vertices": [[1,0],[0,1],[-2,-5]]}"#);
    for cmd in [
        vec!["spectrum", "--input", input.as_str(), "--format", "json"],
        vec!["ehrhart", "--input", input.as_str(), "--format", "json"],
        vec!["polar", "--input", input.as_str(), "--format", "json"],
        vec!["resolve", "--input", input.as_str(), "--format", "json"],
        vec!["muhat", "--input", input.as_str(), "--format", "json"],
        vec!["stringy", "--input", input.as_str(), "--format", "json"],
        vec!["verify", "--input", input.as_str(), "--format", "json"],
    ] {
        let a = spectra(&cmd);
        let b = spectra(&cmd);
        assert!(a.status.success(), "{cmd:?}: {a:?}");
        assert_eq!(a.stdout, b.stdout, "unstable output for {cmd:?}");
    }
}

#[test]
fn muhat_and_polar_agree_for_fano_input() {
    let input = write_input("cli_fano.json", r#"{"vertices": [[1,0],[0,1],[-1,-3]]}"#);
    let mh = spectra(&["muhat", "--input", &input, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&mh.stdout).unwrap();
    assert_eq!(v["muhat"], "25/3");
    assert_eq!(v["c1_squared"], 8);

    let polar = spectra(&["polar", "--input", &input, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&polar.stdout).unwrap();
    assert_eq!(v["normalized_volume"], "25/3");
}

#[test]
fn resolve_reports_the_inserted_ray() {
    let input = write_input("cli_res.json", r#"{"vertices": [[1,0],[0,1],[-1,-3]]}"#);
    let out = spectra(&["resolve", "--input", &input, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ray_count"], 4);
    let rays = v["rays"].as_array().unwrap();
    let inserted = v["inserted"].as_array().unwrap();
    let k = rays
        .iter()
        .position(|r| r == &serde_json::json!([0, -1]))
        .unwrap();
    assert_eq!(inserted[k], true);
    assert_eq!(v["nu"].as_array().unwrap()[k], "2/3");
}

#[test]
fn hirzebruch_and_ghv_subcommands() {
    let out = spectra(&["hirzebruch", "--m", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mu"], 4);
    let ones: Vec<&serde_json::Value> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|t| t["exponent"] == "1")
        .collect();
    assert_eq!(ones[0]["multiplicity"], 2, "1 + 2z + z^2");

    let out = spectra(&["ghv", "--weights", "1,1,3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([[-1, -3], [0, 1], [1, 0]]));
    assert_eq!(v["mu"], 5);
}

#[test]
fn ehrhart_of_the_square() {
    let out = spectra_stdin(
        &["ehrhart", "--input", "-", "--format", "json"],
        r#"{"vertices": [[1,1],[1,-1],[-1,1],[-1,-1]]}"#,
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["delta_vector"], serde_json::json!([1, 6, 1]));
    assert_eq!(v["dilate_counts"], serde_json::json!([1, 9, 25]));
    assert_eq!(v["reflexive"], true);
}

#[test]
fn oracle_cutoff_flag_is_honored() {
    let input = write_input("cli_cut.json", r#"{"vertices": [[1,0],[0,1],[-1,-3]]}"#);
    let out = spectra(&[
        "verify",
        "--input",
        &input,
        "--checks",
        "oracle",
        "--oracle-cutoff",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // below n+2 is a parameter error
    let out = spectra(&[
        "verify",
        "--input",
        &input,
        "--checks",
        "oracle",
        "--oracle-cutoff",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
