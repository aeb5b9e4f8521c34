use std::process::{Command, Output};

fn fwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwl"))
        .args(args)
        .output()
        .expect("spawn fwl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn field_info_reports_structure_sizes() {
    let out = fwl(&["field-info", "--p", "2", "--t", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("q=64"), "{text}");
    assert!(text.contains("|Δ| = 9"), "{text}");
    assert!(text.contains("|Γ| = 9"), "{text}");
}

#[test]
fn field_info_json_parses() {
    let out = fwl(&["field-info", "--p", "2", "--t", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["q"], 64);
    assert_eq!(v["delta_size"], 9);
    assert_eq!(v["alpha_order"], 63);
}

#[test]
fn composite_p_is_a_config_error() {
    let out = fwl(&["field-info", "--p", "4", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn small_t_needs_explicit_override() {
    let out = fwl(&["field-info", "--p", "2", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = fwl(&["field-info", "--p", "2", "--t", "2", "--allow-small-t"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"), "{}", stderr(&out));
}

#[test]
fn s_value_matches_on_both_branches() {
    let out = fwl(&["s-value", "--p", "2", "--t", "3"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("S = 5 (direct count) = 5 (Kloosterman series)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn ksum_prime_field() {
    let out = fwl(&["ksum", "--p", "2", "--l", "1", "--a", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "K_1(1) = 1");

    let out = fwl(&["ksum", "--p", "2", "--l", "1", "--a", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_cd_passes_with_exit_zero() {
    let out = fwl(&["verify", "--p", "2", "--t", "3", "--family", "cd"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[2047, 12]") || text.contains("2047"), "{text}");
    assert!(text.contains("448"), "{text}");
}

#[test]
fn verify_json_roundtrip_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fwl(&[
        "verify", "--p", "2", "--t", "3", "--family", "cd2", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["params"]["n"], 2047);
    assert_eq!(v["params"]["k"], 11);
    assert_eq!(v["s_value"]["direct"], 5);
}

#[test]
fn dist_csv_has_expected_rows() {
    let out = fwl(&[
        "dist", "--p", "2", "--t", "3", "--family", "cd1", "--r", "5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("weight,frequency,source\n"), "{text}");
    assert!(text.contains("1024,2047,empirical"), "{text}");
}

#[test]
fn tiny_budget_exits_three() {
    let out = fwl(&["verify", "--p", "2", "--t", "3", "--budget", "16"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn cache_dir_env_var_populates_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fwl"))
        .args(["dist", "--p", "2", "--t", "3"])
        .env("FWL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
}

#[test]
fn minimality_subcommand_reports_verdict() {
    let out = fwl(&["minimality", "--p", "2", "--t", "3", "--family", "cd2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ratio criterion (> (p-1)/p): pass"), "{text}");
    assert!(text.contains("exhaustive cover scan: minimal"), "{text}");
}
