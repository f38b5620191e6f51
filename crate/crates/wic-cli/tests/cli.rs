//! End-to-end tests of the `wic` binary: exit codes, output fixtures, CSV
//! determinism, and the scenario round-trip.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wic"))
}

static COUNTER: AtomicU32 = AtomicU32::new(0);

fn temp_path(name: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("wic-cli-test-{}-{n}-{name}", std::process::id()))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = temp_path(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const FIXTURE: &str = r#"{
  "scenario": "altruistic",
  "g11": 4.0, "g21": 1.0, "g12": 1.0, "g22": 4.0, "g1e": 1.0, "g2e": 1.0,
  "noise": 1.0, "pmax1": 2.0, "pmax2": 2.0, "gamma": 1.0
}"#;

#[test]
fn solve_reference_fixture() {
    let path = write_temp("fixture.json", FIXTURE);
    let out = bin().arg("solve").arg(&path).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    // Machine-readable record on the last line.
    let json: serde_json::Value =
        serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(json["p1"], 2.0);
    assert_eq!(json["p2"], 0.75);
    let secrecy = json["secrecy"].as_f64().unwrap();
    assert!((secrecy - 2.6f64.log2()).abs() < 1e-12);
    assert_eq!(json["regime"], "7b");
    assert!(text.contains("block-always"));
}

#[test]
fn solve_symmetric_zero_secrecy() {
    let scenario = r#"{
      "scenario": "altruistic",
      "g11": 2.0, "g21": 1.5, "g12": 1.0, "g22": 4.0, "g1e": 2.0, "g2e": 1.5,
      "noise": 1.0, "pmax1": 2.0, "pmax2": 2.0, "beta": 1.0
    }"#;
    let path = write_temp("symmetric.json", scenario);
    let out = bin().arg("solve").arg(&path).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    assert_eq!(json["secrecy"], 0.0);
    assert_eq!(json["p1"], 0.0);
}

#[test]
fn solve_qos_infeasible_exit_code() {
    // lambda2 = gamma*noise/g22 = 4 > pmax2 = 2.
    let scenario = r#"{
      "scenario": "egoistic",
      "g11": 1.0, "g21": 1.0, "g12": 1.0, "g22": 0.25, "g1e": 1.0, "g2e": 1.0,
      "noise": 1.0, "pmax1": 2.0, "pmax2": 2.0, "gamma": 1.0
    }"#;
    let path = write_temp("infeasible.json", scenario);
    let out = bin().arg("solve").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn parse_errors_exit_one() {
    let path = write_temp("bad.json", "{ not json");
    let out = bin().arg("solve").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Both beta and gamma given.
    let both = FIXTURE.replace("\"gamma\": 1.0", "\"gamma\": 1.0, \"beta\": 1.0");
    let path = write_temp("both.json", &both);
    let out = bin().arg("solve").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Unknown flag.
    let out = bin().arg("solve").arg("--no-such-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Missing file.
    let out = bin().arg("solve").arg("/nonexistent/scenario.json").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dump_scenario_round_trips() {
    let path = write_temp("dump.json", FIXTURE);
    let out = bin().arg("solve").arg(&path).arg("--dump-scenario").output().unwrap();
    assert!(out.status.success());
    let dumped = stdout(&out);
    let path2 = write_temp("dump2.json", &dumped);
    let out2 = bin().arg("solve").arg(&path2).arg("--dump-scenario").output().unwrap();
    assert!(out2.status.success());
    assert_eq!(dumped, stdout(&out2), "dump must be a fixed point of parse+dump");
    // And the echoed scenario solves to the same allocation.
    let a = bin().arg("solve").arg(&path).output().unwrap();
    let b = bin().arg("solve").arg(&path2).output().unwrap();
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_vacuous_and_small_runs() {
    let out = bin()
        .args(["verify", "--count", "0", "--grid-n", "50"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");

    for scenario in ["altruistic", "egoistic"] {
        let out = bin()
            .args(["verify", "--count", "50", "--grid-n", "60", "--scenario", scenario, "--paper-faithful"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{scenario}: {out:?}");
        let text = stdout(&out);
        assert!(text.contains("50/50 pass"), "{text}");
        assert!(text.contains("case-table"), "{text}");
    }

    let out = bin()
        .args(["verify", "--scenario", "single_user"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn montecarlo_minimal_and_deterministic() {
    let config = r#"{
      "seed": 11, "trials": 40,
      "pmax1_grid": [1.0, 2.0], "pmax2_grid": [2.0],
      "gamma_list": [1.0],
      "scenarios": ["altruistic", "egoistic", "single_user"]
    }"#;
    let cfg_path = write_temp("campaign.json", config);
    let out_a = temp_path("a.csv");
    let out_b = temp_path("b.csv");
    let run = |threads: &str, out: &PathBuf| {
        let r = bin()
            .arg("montecarlo")
            .arg("--config")
            .arg(&cfg_path)
            .arg("--output")
            .arg(out)
            .args(["--threads", threads])
            .output()
            .unwrap();
        assert!(r.status.success(), "{r:?}");
    };
    run("1", &out_a);
    run("4", &out_b);
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "campaign CSV must be byte-identical across thread counts");
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3); // header + cells
    assert!(text.starts_with("scenario,gamma,pmax1,pmax2,"));

    // Minimal 1-cell, 1-trial campaign.
    let config = r#"{
      "seed": 0, "trials": 1,
      "pmax1_grid": [2.0], "pmax2_grid": [2.0],
      "gamma_list": [1.0],
      "scenarios": ["altruistic"]
    }"#;
    let cfg_path = write_temp("tiny.json", config);
    let out_c = temp_path("c.csv");
    let r = bin()
        .arg("montecarlo")
        .arg("--config")
        .arg(&cfg_path)
        .arg("--output")
        .arg(&out_c)
        .output()
        .unwrap();
    assert!(r.status.success());
    assert_eq!(std::fs::read_to_string(&out_c).unwrap().lines().count(), 2);

    // Malformed config.
    let bad = write_temp("bad-campaign.json", r#"{"seed": 1}"#);
    let r = bin()
        .arg("montecarlo")
        .arg("--config")
        .arg(&bad)
        .arg("--output")
        .arg(temp_path("d.csv"))
        .output()
        .unwrap();
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn sweep_matches_solve() {
    let path = write_temp("sweep-fixture.json", FIXTURE);
    let out_csv = temp_path("sweep.csv");
    let r = bin()
        .arg("sweep")
        .arg("--scenario")
        .arg(&path)
        .arg("--output")
        .arg(&out_csv)
        .output()
        .unwrap();
    assert!(r.status.success(), "{r:?}");
    let text = std::fs::read_to_string(&out_csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "altruistic");
    let avg_secrecy: f64 = fields[4].parse().unwrap();
    let avg_p1: f64 = fields[5].parse().unwrap();
    let avg_p2: f64 = fields[6].parse().unwrap();
    assert!((avg_secrecy - 2.6f64.log2()).abs() < 1e-12);
    assert!((avg_p1 - 2.0).abs() < 1e-12);
    assert!((avg_p2 - 0.75).abs() < 1e-12);

    // Sweeping a grid produces one row per cell, same fixed channel.
    let out_csv = temp_path("sweep-grid.csv");
    let r = bin()
        .arg("sweep")
        .arg("--scenario")
        .arg(&path)
        .arg("--output")
        .arg(&out_csv)
        .args(["--pmax1-grid", "1,2", "--gamma-list", "0.5,1.0", "--scenarios", "altruistic,egoistic"])
        .output()
        .unwrap();
    assert!(r.status.success(), "{r:?}");
    let text = std::fs::read_to_string(&out_csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
}
