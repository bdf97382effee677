use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ecic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ecic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecic")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_example1() {
    let ex = data("example1.json");
    let l = data("example1.L");
    let o = ecic(&["verify", "--instance", &ex, "--matrix", &l, "--delta", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["min_weight"], 3);

    let o = ecic(&["verify", "--instance", &ex, "--matrix", &l, "--delta", "2", "--method", "enumerate"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn decode_received_word() {
    let o = ecic(&[
        "decode",
        "--instance",
        &data("example1.json"),
        "--matrix",
        &data("example1.L"),
        "--receiver",
        "1",
        "--received",
        &data("example1_r1.y"),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["x_hat"], 1);
    assert_eq!(v["e_hat"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn decode_receiver_mismatch_is_usage_error() {
    let o = ecic(&[
        "decode",
        "--instance",
        &data("example1.json"),
        "--matrix",
        &data("example1.L"),
        "--receiver",
        "2",
        "--received",
        &data("example1_r1.y"),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn pentagon_alpha_and_minrank() {
    let p = data("pentagon.json");
    let v = json(&ecic(&["alpha", "--instance", &p, "--format", "json"]));
    assert_eq!(v["alpha"], 2);
    let o = ecic(&["minrank", "--instance", &p, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kappa"], 3);
    assert_eq!(v["certified"], true);
}

#[test]
fn pentagon_bounds() {
    let o = ecic(&["bounds", "--instance", &data("pentagon.json"), "--delta", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["alpha_bound"]["n"], 8);
    assert_eq!(v["kappa_bound"]["n"], 10);
    assert_eq!(v["singleton"], 7);
}

#[test]
fn search_writes_certificate_that_verifies_and_simulates() {
    let p = data("pentagon.json");
    let out = scratch("pentagon9.L");
    let out_s = out.to_string_lossy().into_owned();
    let o = ecic(&["construct", "search", "--instance", &p, "--delta", "2", "--out", &out_s]);
    assert_eq!(code(&o), 0);
    let env: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{out_s}.json")).unwrap()).unwrap();
    assert_eq!(env["N"], 9);
    assert_eq!(env["certified"], true);
    assert_eq!(env["delta"], 2);

    let o = ecic(&["verify", "--instance", &p, "--matrix", &out_s, "--delta", "2"]);
    assert_eq!(code(&o), 0);
    let o = ecic(&[
        "simulate",
        "--instance",
        &p,
        "--matrix",
        &out_s,
        "--delta",
        "2",
        "--trials",
        "300",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["successes"], 300);
}

#[test]
fn search_budget_exhaustion_exits_3() {
    let o = ecic(&["construct", "search", "--instance", &data("pentagon.json"), "--delta", "2", "--budget", "100"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn search_below_optimum_exits_1() {
    let o = ecic(&["construct", "search", "--instance", &data("pentagon.json"), "--delta", "2", "--max-n", "8"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn concat_and_lift() {
    let o = ecic(&["construct", "lift", "--instance", &data("example2.json"), "--delta", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["envelope"]["N"], 8);
    let o = ecic(&["construct", "concat", "--instance", &data("pentagon.json"), "--delta", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["envelope"]["N"], 10);
}

#[test]
fn exhaustive_weight_two_campaign_fails() {
    let o = ecic(&[
        "simulate",
        "--instance",
        &data("example1.json"),
        "--matrix",
        &data("example1.L"),
        "--delta",
        "1",
        "--exhaustive",
        "--exact-weight",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["trials"], 48);
}

#[test]
fn nqkd_search_and_bracket() {
    let v = json(&ecic(&["nqkd", "--q", "2", "--k", "2", "--d", "5", "--mode", "search", "--format", "json"]));
    assert_eq!(v["n"], 8);
    assert_eq!(v["provenance"], "searched");
    assert_eq!(v["refutation"][0], 7);
    let o = ecic(&["nqkd", "--q", "2", "--k", "30", "--d", "9", "--mode", "table"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn static_commands() {
    let v = json(&ecic(&["static", "bounds", "--n", "20", "--rho", "10", "--delta", "1", "--format", "json"]));
    assert_eq!(v["lower_alpha"]["n"], 14);
    assert_eq!(v["lower_singleton"], 19);
    assert_eq!(v["upper"]["n"], 22);

    let hamming = scratch("hamming.L");
    std::fs::write(&hamming, "4 7 2\n1 0 0 0 1 1 0\n0 1 0 0 1 0 1\n0 0 1 0 0 1 1\n0 0 0 1 1 1 1\n").unwrap();
    let h = hamming.to_string_lossy().into_owned();
    assert_eq!(code(&ecic(&["static", "resilience", "--matrix", &h, "--rho", "1", "--t", "2"])), 0);
    assert_eq!(code(&ecic(&["static", "verify", "--matrix", &h, "--rho", "1", "--delta", "1"])), 0);
    assert_eq!(code(&ecic(&["static", "verify", "--matrix", &h, "--rho", "2", "--delta", "2"])), 1);

    let o = ecic(&["static", "construct", "--n", "6", "--rho", "2", "--delta", "1", "--length", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("6 9 2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&ecic(&["verify"])), 2);
    assert_eq!(code(&ecic(&["alpha", "--instance", "/nonexistent.json"])), 2);
    let o = ecic(&["minrank", "--instance", &data("pentagon.json"), "--q", "3"]);
    assert_eq!(code(&o), 2);
}
