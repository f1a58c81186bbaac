//! End-to-end tests that drive the compiled binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deckrecon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf8")
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout_str(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout line is JSON"))
        .collect()
}

/// Two disjoint stars whose hubs have degrees 5 and 3, as graph6.
fn two_stars() -> String {
    let out = run(&["gen", "stars", "5;3"]);
    assert_eq!(out.status.code(), Some(0), "gen stars failed: {}", stderr_str(&out));
    json_lines(&out)[0]["graph6"].as_str().expect("graph6 field").to_string()
}

#[test]
fn deck_prints_header_and_cards() {
    let out = run(&["deck", "Bw"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert_eq!(text, "# deck of Bw\nA_\nA_\nA_\n");
}

#[test]
fn deck_roundtrips_through_reconstruct() {
    let g6 = two_stars();
    let dir = tempfile::tempdir().expect("tempdir");
    let deck_path = dir.path().join("deck.txt");
    let out = run(&["deck", &g6, "--out", deck_path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["reconstruct", "--deck", deck_path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let result = &json_lines(&out)[0];
    assert_eq!(result["verified"], serde_json::json!(true));
    assert_eq!(result["profile"]["d1"], serde_json::json!(5));
    let rebuilt = result["graph6"].as_str().expect("graph6 field");
    let g = deckrecon::parse_graph6(&g6).expect("valid graph6");
    let h = deckrecon::parse_graph6(rebuilt).expect("valid graph6");
    assert!(deckrecon::is_isomorphic(&g, &h).expect("iso check runs").is_some());
}

#[test]
fn reconstruct_reads_deck_from_stdin() {
    let g6 = two_stars();
    let deck_out = run(&["deck", &g6]);
    let deck_text: String = stdout_str(&deck_out);
    let out = run_with_stdin(&["reconstruct", "--deck", "-"], &deck_text);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    assert_eq!(json_lines(&out)[0]["verified"], serde_json::json!(true));
}

#[test]
fn reconstruct_of_non_member_deck_is_null_and_exits_1() {
    let out = run_with_stdin(&["reconstruct", "--deck", "-"], "A_\nA_\nA_\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_str(&out), "null\n");
}

#[test]
fn witness_reports_json_or_null() {
    let g6 = two_stars();
    let out = run(&["witness", &g6]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json_lines(&out)[0];
    assert_eq!(w["v1"], serde_json::json!(0));

    let out = run(&["witness", "Bg"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_str(&out), "null\n");
}

#[test]
fn witness_reads_multiple_graphs_from_stdin() {
    let g6 = two_stars();
    let input = format!("# mixed bag\n\n{g6}\nBg\n");
    let out = run_with_stdin(&["witness", "-"], &input);
    assert_eq!(out.status.code(), Some(1), "one negative answer wins");
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with('{'));
    assert_eq!(lines[1], "null");
}

#[test]
fn check_reports_conditions_and_exit_code() {
    let g6 = two_stars();
    let out = run(&["check", &g6, "--v1", "0", "--others", "6"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let report = &json_lines(&out)[0];
    assert_eq!(report["c1"], serde_json::json!(true));
    assert_eq!(report["violation"], serde_json::Value::Null);

    let out = run(&["check", "Bg", "--v1", "0", "--others", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = &json_lines(&out)[0];
    assert_eq!(report["violation"]["condition"], serde_json::json!(2));
}

#[test]
fn malformed_graph6_exits_2_with_diagnostic() {
    let out = run(&["witness", "A`"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("graph6"), "stderr: {}", stderr_str(&out));

    let out = run_with_stdin(&["deck", "-"], "Bw\nnot graph6 at all\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("stdin line 2"), "stderr: {}", stderr_str(&out));
}

#[test]
fn empty_stdin_exits_2() {
    let out = run_with_stdin(&["deck", "-"], "# nothing here\n\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_counts_preimages() {
    let g6 = two_stars();
    let out = run(&["verify", &g6]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let row = &json_lines(&out)[0];
    assert_eq!(row["unique"], serde_json::json!(true));
    assert_eq!(row["preimages"], serde_json::json!(1));
}

#[test]
fn verify_beyond_oracle_range_exits_3() {
    let out = run(&["gen", "stars", "3;7"]);
    let g6 = json_lines(&out)[0]["graph6"].as_str().expect("graph6 field").to_string();
    let out = run(&["verify", &g6]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_str(&out).contains("11"), "stderr: {}", stderr_str(&out));
}

#[test]
fn survey_beyond_enumeration_range_exits_3() {
    let out = run(&["survey", "--max-n", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn survey_streams_rows_and_writes_members() {
    let dir = tempfile::tempdir().expect("tempdir");
    let members_path = dir.path().join("members.g6");
    let out = run(&[
        "survey",
        "--max-n",
        "5",
        "--jobs",
        "2",
        "--out",
        members_path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let rows = json_lines(&out);
    let order_rows: Vec<&serde_json::Value> =
        rows.iter().filter(|r| r.get("graphs").is_some()).collect();
    assert_eq!(order_rows.len(), 3);
    assert_eq!(order_rows[2]["n"], serde_json::json!(5));
    assert_eq!(order_rows[2]["graphs"], serde_json::json!(34));
    let battery_rows: Vec<&serde_json::Value> =
        rows.iter().filter(|r| r.get("battery").is_some()).collect();
    assert_eq!(battery_rows.len(), 4);
    assert!(battery_rows.iter().all(|b| b["unique"] == serde_json::json!(true)));

    let members = std::fs::read_to_string(&members_path).expect("members file");
    let total: u64 = order_rows.iter().map(|r| r["members"].as_u64().expect("count")).sum();
    assert_eq!(members.lines().count() as u64, total);
    for line in members.lines() {
        deckrecon::parse_graph6(line).expect("member lines are graph6");
    }
}

#[test]
fn gen_stars_rejects_bad_sizes() {
    let out = run(&["gen", "stars", "3;4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("differ by exactly 1"));

    let out = run(&["gen", "stars", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["gen", "stars", "2;5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_bad_flags_use_clap_codes() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["witness"]);
    assert_eq!(out.status.code(), Some(2));
}
