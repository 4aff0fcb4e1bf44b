use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_obinv"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .unwrap_or_else(|e| panic!("failed to run obinv {args:?}: {e}"))
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn obinv");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait for obinv")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout should be valid JSON")
}

#[test]
fn invariants_on_the_worked_example() {
    let out = run(&[
        "invariants",
        &fixture("final_example.json"),
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "nullhomologous");
    assert_eq!(v["tb"], "-3");
    assert_eq!(v["rot"], "0");
    assert_eq!(v["sl_plus"], "-3");
    assert_eq!(v["sl_minus"], "-3");
    assert_eq!(v["solution_unique"], true);
    assert_eq!(v["h1"]["group"], "0");
    assert_eq!(v["euler_is_zero"], true);
    assert_eq!(v["euler_torsion"], true);
    assert_eq!(v["d3"], "-1/2");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let json = stdout_json(&run(&[
        "invariants",
        &fixture("final_example.json"),
        "--format",
        "json",
    ]));
    let text_out = run(&["invariants", &fixture("final_example.json")]);
    assert!(text_out.status.success());
    let text = String::from_utf8(text_out.stdout).unwrap();
    for (key, field) in [
        ("tb:", "tb"),
        ("rot:", "rot"),
        ("sl+:", "sl_plus"),
        ("sl-:", "sl_minus"),
        ("d3:", "d3"),
    ] {
        let line = text
            .lines()
            .find(|l| l.starts_with(key))
            .unwrap_or_else(|| panic!("missing line {key}"));
        let value = line.split_whitespace().last().unwrap();
        assert_eq!(value, json[field].as_str().unwrap(), "{key}");
    }
}

#[test]
fn input_echo_round_trips() {
    let v = stdout_json(&run(&[
        "invariants",
        &fixture("final_example.json"),
        "--format",
        "json",
    ]));
    let echoed = serde_json::to_string(&v["input"]).unwrap();
    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("final_example.json")).unwrap())
            .unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&echoed).unwrap();
    assert_eq!(reparsed, original);
}

#[test]
fn presentation_dump_matches_the_worked_data() {
    let v = stdout_json(&run(&[
        "presentation",
        &fixture("final_example.json"),
        "--format",
        "json",
    ]));
    assert_eq!(v["size"], 8);
    assert_eq!(v["l"], serde_json::json!([0, -1, 0, -1, -1, 0, -1, -1]));
    assert_eq!(v["r"], serde_json::json!([0, 0, 0, 0, 2, 1, 1, 0]));
    assert_eq!(v["q"][0], serde_json::json!([0, 0, 0, 0, -1, -1, -1, 0]));
    assert_eq!(v["q"][7], serde_json::json!([0, 0, 0, -1, 0, 0, 0, -2]));
    assert_eq!(v["coefficients"][4]["contact"], "-1");
    assert_eq!(v["coefficients"][4]["topological"], "-4");
}

#[test]
fn contact_subcommand_reports_euler_and_d3_only() {
    let v = stdout_json(&run(&[
        "contact",
        &fixture("final_example.json"),
        "--format",
        "json",
    ]));
    assert_eq!(v["d3"], "-1/2");
    assert_eq!(v["euler_torsion"], true);
    assert!(v.get("tb").is_none());
}

#[test]
fn word_rot_subcommand() {
    let v = stdout_json(&run(&[
        "word-rot", "a1", "b2", "a2", "B4", "A3", "b2", "--format", "json",
    ]));
    assert_eq!(v["lambda_plus"], 1);
    assert_eq!(v["rho_plus"], 2);
    assert_eq!(v["r"], 1);
}

#[test]
fn homology_of_trivial_torus_book_via_stdin() {
    let doc = r#"{"page":{"genus":1,"holes":0},"monodromy":[],"knot":{"word":["a1"]}}"#;
    let out = run_stdin(&["homology", "-", "--format", "json"], doc);
    let v = stdout_json(&out);
    assert_eq!(v["q_size"], 2);
    assert_eq!(v["h1"]["group"], "Z^2");
    assert_eq!(v["h1"]["free_rank"], 2);
}

#[test]
fn negative_verdict_is_still_a_successful_run() {
    let doc = r#"{"page":{"genus":1,"holes":0},"monodromy":[],"knot":{"word":["a1"]}}"#;
    let out = run_stdin(&["invariants", "-", "--format", "json"], doc);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "not_rationally_nullhomologous");
    assert!(v.get("tb").is_none());
    assert!(v.get("rot").is_none());
}

#[test]
fn rational_flag_reveals_rational_invariants() {
    // single positive twist along b1 doubled: contact -1/2 surgery,
    // the b1 knot is rationally but not integrally nullhomologous
    let doc = r#"{"page":{"genus":0,"holes":1},
                  "monodromy":[{"word":["b1"],"sign":1,"power":2}],
                  "knot":{"word":["b1"]}}"#;
    let out = run_stdin(&["invariants", "-", "--format", "json"], doc);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "rationally_nullhomologous");
    assert!(v.get("tb").is_none(), "suppressed without --rational");
    let out = run_stdin(&["invariants", "-", "--format", "json", "--rational"], doc);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "rationally_nullhomologous");
    assert!(v["tb"].is_string());
}

#[test]
fn both_levels_flag_adds_rotation_numbers() {
    let out = run(&[
        "invariants",
        &fixture("final_example.json"),
        "--format",
        "json",
        "--both-levels",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["rot_high"], "0");
    assert_eq!(v["rot_low"], "0");
}

#[test]
fn expanded_flag_preserves_invariants() {
    let doc = r#"{"page":{"genus":0,"holes":2},
                  "monodromy":[{"word":["b1","b2"],"sign":1,"power":3}],
                  "knot":{"word":["b1"]}}"#;
    let plain = stdout_json(&run_stdin(&["invariants", "-", "--format", "json"], doc));
    let expanded = stdout_json(&run_stdin(
        &["invariants", "-", "--format", "json", "--expanded"],
        doc,
    ));
    assert_eq!(plain["verdict"], expanded["verdict"]);
    assert_eq!(plain["tb"], expanded["tb"]);
    assert_eq!(plain["rot"], expanded["rot"]);
    assert_eq!(plain["d3"], expanded["d3"]);
}

#[test]
fn level_override_flag() {
    let out = run(&[
        "invariants",
        &fixture("final_example.json"),
        "--format",
        "json",
        "--level",
        "low",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["input"]["knot"]["level"], "low");
    // planar book: level choice cannot change anything
    assert_eq!(v["rot"], "0");
    assert_eq!(v["tb"], "-3");
}

#[test]
fn malformed_token_is_a_schema_error() {
    let doc = r#"{"page":{"genus":0,"holes":3},"monodromy":[],"knot":{"word":["c3"]}}"#;
    let out = run_stdin(&["invariants", "-"], doc);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("schema error"), "{stderr}");
    assert!(stderr.contains("c3"), "{stderr}");
}

#[test]
fn zero_power_is_a_schema_error() {
    let doc = r#"{"page":{"genus":0,"holes":2},
                  "monodromy":[{"word":["b1"],"sign":1,"power":0}],
                  "knot":{"word":["b1"]}}"#;
    let out = run_stdin(&["invariants", "-"], doc);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("monodromy[0].power"), "{stderr}");
}

#[test]
fn unknown_fields_are_rejected_with_a_path() {
    let doc =
        r#"{"page":{"genus":0,"holes":2,"color":"red"},"monodromy":[],"knot":{"word":["b1"]}}"#;
    let out = run_stdin(&["invariants", "-"], doc);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("schema error"), "{stderr}");
    assert!(stderr.contains("color"), "{stderr}");
}

#[test]
fn broken_json_is_a_syntax_error() {
    let out = run_stdin(&["invariants", "-"], "{ not json");
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("syntax error"), "{stderr}");
}

#[test]
fn out_of_range_letter_is_reported_with_its_index_bound() {
    let doc = r#"{"page":{"genus":0,"holes":3},"monodromy":[],"knot":{"word":["a1"]}}"#;
    let out = run_stdin(&["invariants", "-"], doc);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("out of range"), "{stderr}");
}

#[test]
fn unknown_subcommand_prints_usage_and_fails() {
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("Usage") || stderr.contains("usage"),
        "{stderr}"
    );
}

#[test]
fn zero_class_knot_warns() {
    let doc = r#"{"page":{"genus":1,"holes":0},"monodromy":[],"knot":{"word":["a1","A1"]}}"#;
    let v = stdout_json(&run_stdin(&["invariants", "-", "--format", "json"], doc));
    assert_eq!(v["verdict"], "nullhomologous");
    let warnings = v["warnings"].as_array().unwrap();
    assert!(
        warnings
            .iter()
            .any(|w| w.as_str().unwrap().contains("zero homology class")),
        "{warnings:?}"
    );
}

#[test]
fn genus_one_mixed_sign_golden_values() {
    // hand-checked: the alpha twist never links the knot, the doubled
    // negative boundary twist forces the half-integral Seifert solution
    let out = run(&[
        "invariants",
        &fixture("genus_one_example.json"),
        "--format",
        "json",
        "--rational",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "rationally_nullhomologous");
    assert_eq!(v["tb"], "1/2");
    assert_eq!(v["rot"], "0");
    assert_eq!(v["sl_plus"], "1/2");
    assert_eq!(v["sl_minus"], "1/2");
    assert_eq!(v["solution_unique"], false);
    assert_eq!(v["h1"]["group"], "Z/2 + Z");
    assert_eq!(v["h1"]["invariant_factors"], serde_json::json!(["2"]));
    assert_eq!(v["h1"]["free_rank"], 1);
    assert_eq!(v["euler_is_zero"], true);
    assert_eq!(v["d3"], "3/4");

    let p = stdout_json(&run(&[
        "presentation",
        &fixture("genus_one_example.json"),
        "--format",
        "json",
    ]));
    assert_eq!(p["l"], serde_json::json!([0, -1, 0, 0, -1]));
    assert_eq!(p["q"][4], serde_json::json!([0, -1, 0, 0, -1]));
    // negative twist of power two: contact +1/2, topological -1/2
    assert_eq!(p["coefficients"][4]["contact"], "1/2");
    assert_eq!(p["coefficients"][4]["topological"], "-1/2");
}
