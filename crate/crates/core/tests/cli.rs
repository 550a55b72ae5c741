use std::process::{Command, Output};

use hlq::verify::{catalog, VerificationReport};

fn hlq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlq")).args(args).env_remove("HLQ_PROFILE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_one_family() {
    let o = hlq(&["verify", "krr1", "--k", "2", "--q-order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match through q^40"), "{}", stdout(&o));
}

#[test]
fn unknown_id_is_a_usage_error_with_catalog_hint() {
    let o = hlq(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("nosuch"));
    assert!(err.contains("hlq list"));
    assert!(err.contains("krr1"));
}

#[test]
fn verify_all_prints_one_line_per_entry() {
    let o = hlq(&["verify-all", "--profile", "quick", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), catalog().len());
    for (line, entry) in lines.iter().zip(catalog()) {
        assert!(line.starts_with(&entry.id), "{line}");
        assert!(line.contains(" match through "), "{line}");
    }
}

#[test]
fn mismatch_exits_one_with_witness() {
    let o = hlq(&["verify", "krr1", "--k", "2", "--q-order", "20", "--fault-q", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch (k=2) at q^7"), "{}", stdout(&o));
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(hlq(&["verify", "krr1", "--k", "0"]).status.code(), Some(2));
    assert_eq!(hlq(&["verify"]).status.code(), Some(2));
    assert_eq!(hlq(&["verify-all", "--profile", "slow"]).status.code(), Some(2));
    assert_eq!(hlq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hlq(&["--help"]).status.code(), Some(0));
}

#[test]
fn dump_elementary_polynomial() {
    let o = hlq(&["dump", "hl", "(1,1)", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[0,1,1] : 1\n[1,0,1] : 1\n[1,1,0] : 1\n");
}

#[test]
fn dump_empty_partition() {
    let o = hlq(&["dump", "hl", "()", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn dump_two_part_polynomial() {
    let o = hlq(&["dump", "hl", "(2)", "2"]);
    assert_eq!(stdout(&o), "[0,2] : 1\n[1,1] : 1 - q\n[2,0] : 1\n");
}

#[test]
fn dump_rejects_bad_partition() {
    let o = hlq(&["dump", "hl", "(1,x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(1,x"));
    assert_eq!(hlq(&["dump", "hl", "(1,2)", "2"]).status.code(), Some(2));
}

#[test]
fn dump_single_sum() {
    // sum q^{n^2}/(q^2;q^2)_n
    let o = hlq(&["dump", "series", "rr6-lhs", "--q-order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + q + q^3 + q^4 + q^5 + q^6 + q^7 + 2*q^8 + 2*q^9 + O(q^10)");
}

#[test]
fn dump_series_as_pairs() {
    let o = hlq(&["dump", "series", "krr9-rhs", "--k", "1", "--q-order", "6", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "hlq-report/1");
    assert_eq!(doc["order"], 6);
    let terms: Vec<(i64, String)> = serde_json::from_value(doc["terms"].clone()).unwrap();
    assert_eq!(terms, vec![(0, "1".into()), (1, "1".into()), (3, "1".into()), (4, "1".into()), (5, "1".into())]);
    assert_eq!(hlq(&["dump", "series", "krr99-lhs"]).status.code(), Some(2));
}

#[test]
fn formal_master_dump_has_polynomial_coefficients() {
    let o = hlq(&["dump", "series", "master-zq-lhs", "--k", "1", "--q-order", "3", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms: Vec<(i64, String)> = serde_json::from_value(doc["terms"].clone()).unwrap();
    assert!(terms.iter().any(|(_, c)| c.contains('a') && c.contains('b')), "{terms:?}");
    assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
}

#[test]
fn structured_reports_round_trip() {
    let o = hlq(&["verify", "kawanaka", "--n", "2", "--degree", "4", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "hlq-report/1");
    assert_eq!(doc["profile"], "quick");
    let reports: Vec<VerificationReport> = serde_json::from_value(doc["reports"].clone()).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].is_match());
    assert_eq!(reports[0].spec.params["degree"], 4);
    let again = serde_json::to_value(&reports).unwrap();
    assert_eq!(again, doc["reports"]);
}

#[test]
fn same_flags_give_identical_output() {
    let args = ["verify-all", "--profile", "quick", "--seed", "7", "--output", "json"];
    let a = hlq(&args);
    let b = hlq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn profile_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hlq"))
        .args(["verify", "euler", "--output", "json"])
        .env("HLQ_PROFILE", "full")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(doc["profile"], "full");
    assert_eq!(doc["reports"][0]["spec"]["params"]["q_order"], 60);
}

#[test]
fn list_shows_every_entry() {
    let o = hlq(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), catalog().len());
    let o = hlq(&["list", "--output", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["entries"].as_array().unwrap().len(), catalog().len());
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hlq::cli::run(["hlq", "dump", "hl", "(1)", "2"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "[0,1] : 1\n[1,0] : 1\n");
}
