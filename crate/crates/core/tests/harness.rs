use std::process::Command;

use polya::geometry::Region;
use polya::harness::{case_function, replay_case, sweep_triangles, write_csv, Config, SweepGrid, Verdict, CASE_IDS};

fn small_grid() -> SweepGrid {
    SweepGrid {
        na: 5,
        nb: 5,
        b_min: 0.05,
        b_max: 3f64.sqrt() / 2.0,
        chart: Region::Reference,
        level: 4,
    }
}

fn csv_bytes(grid: &SweepGrid) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(&sweep_triangles(grid), &mut out).unwrap();
    out
}

#[test]
fn sweep_csv_is_deterministic() {
    let g = small_grid();
    let first = csv_bytes(&g);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let again = single.install(|| csv_bytes(&g));
    assert_eq!(first, again);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("a,b,class,lambda1,T,torsion_max,F,margin_low,margin_high\n"));
    assert_eq!(text.lines().count(), 1 + g.points().len());
}

#[test]
fn case_functions_reject_points_outside_their_region() {
    assert!(case_function("acute-1a.g", &[0.5, 2.9]).is_ok());
    assert!(case_function("acute-1a.g", &[0.5, 3.5]).is_err());
    assert!(case_function("no-such-case", &[0.5, 2.9]).is_err());
}

#[test]
fn every_case_replays_consistently() {
    for id in CASE_IDS {
        let r = replay_case(id).unwrap();
        assert!(r.is_consistent(), "{id}");
        assert_ne!(r.verdict, Verdict::Failed, "{id}: {:?}", r.witness);
    }
    assert!(replay_case("acute-9").is_err());
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polya-verify"))
}

#[test]
fn cli_compute_and_certify() {
    let out = cli().args(["compute", "--shape", "rect", "--a", "1", "--b", "1"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let f = v["F"].as_f64().unwrap();
    assert!((0.690..=0.698).contains(&f));

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"["-1/1", "3/1", "-5/1"]"#).unwrap();
    let st = cli().args(["certify", "--poly"]).arg(&good).args(["--dx", "1/10"]).output().unwrap();
    assert!(st.status.success());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"["1/1", "-1/1"]"#).unwrap();
    let st = cli().args(["certify", "--poly"]).arg(&bad).args(["--dx", "1/2", "--depth", "4"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn cli_sweep_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "level = 4\nb_min = 0.1\n").unwrap();
    assert_eq!(Config::from_file(&cfg).unwrap().level, 4);
    let csv = dir.path().join("out.csv");
    let st = cli()
        .arg("--config")
        .arg(&cfg)
        .args(["sweep", "--grid", "4x4", "--out"])
        .arg(&csv)
        .status()
        .unwrap();
    assert!(st.success());
    let mut rd = csv::Reader::from_path(&csv).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert!(!rows.is_empty());
    for r in &rows {
        let f: f64 = r[6].parse().unwrap();
        assert!(f > std::f64::consts::PI.powi(2) / 24.0 && f < std::f64::consts::PI.powi(2) / 12.0);
    }
    let bad = cli().args(["sweep", "--grid", "4by4", "--out"]).arg(&csv).status().unwrap();
    assert!(!bad.success());
}

#[test]
fn cli_replay_single_case() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let st = cli().args(["replay", "--case", "obtuse-2", "--out"]).arg(&out).status().unwrap();
    assert!(st.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["case_id"], "obtuse-2");
    assert_eq!(v[0]["verdict"], "Verified");
    assert!(!cli().args(["replay", "--case", "nope"]).status().unwrap().success());
}
