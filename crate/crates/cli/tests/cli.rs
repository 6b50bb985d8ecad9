use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn landau(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_landau"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Data rows of a stamped CSV, split into fields, after checking the stamp line.
fn rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let stamp = lines.next().unwrap();
    assert!(stamp.starts_with("# landau ") && stamp.contains(" config="), "{stamp}");
    lines
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn gaussian_eigs_match_closed_form() {
    let dir = TempDir::new().unwrap();
    let o = landau(
        &[
            "eigs", "--beta", "1", "--gamma", "0.5", "--b", "1", "--q", "0", "--K", "200",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mu: f64 = 1.0;
    let r = rows(&dir.path().join("eigs.csv"));
    assert_eq!(r.len(), 200);
    for row in &r {
        let k: f64 = row[0].parse().unwrap();
        let ln: f64 = row[2].parse().unwrap();
        let want = -(k + 1.0) * mu.ln_1p();
        assert!((ln - want).abs() <= 1e-10 * want.abs(), "k={k}: {ln} vs {want}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["task"], "eigs");
    assert_eq!(manifest["config"]["k_max"], 200);
    assert!(manifest["config"].get("out").is_none());
}

#[test]
fn compare_residual_is_logarithmic_for_beta_one() {
    let dir = TempDir::new().unwrap();
    let o = landau(&["thm2", "--beta", "1", "--gamma", "1", "--K", "300"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    assert!(text.lines().nth(1).unwrap() == "k,ln_nu_numeric,ln_nu_predicted,residual,residual_over_log_k");
    let r = rows(&dir.path().join("compare.csv"));
    assert_eq!(r.len(), 298);
    for row in &r {
        let k: f64 = row[0].parse().unwrap();
        let res: f64 = row[3].parse().unwrap();
        assert!(res.abs() <= 2.0 + k.ln(), "k={k}: residual {res}");
    }
    let e: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("expansion.json")).unwrap()).unwrap();
    assert_eq!(e["result"]["remainder"], "O(log k)");
    assert_eq!(e["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn nonpositive_beta_is_a_schema_error() {
    let dir = TempDir::new().unwrap();
    for beta in ["0", "-1"] {
        let o = landau(&["thm2", "--beta", beta, "--gamma", "1"], dir.path());
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("beta must be positive"));
    }
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"mode":"eigs","unknown_field":1}"#).unwrap();
    let o = landau(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_thread_runs_are_byte_identical() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["thm2", "--beta", "0.5", "--gamma", "1", "--K", "80", "--threads", "1"];
    assert!(landau(&args, a.path()).status.success());
    assert!(landau(&args, b.path()).status.success());
    for name in ["compare.csv", "expansion.json", "manifest.json"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"mode":"counting","decay":{"beta":1,"gamma":1},"k_max":120,
        "lambda":{"min":1e-20,"max":1e-3,"steps":5}}"#,
    )
    .unwrap();
    let o = landau(&["run", "--config", cfg.to_str().unwrap(), "--b", "2"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&dir.path().join("counting.csv"));
    assert_eq!(r.len(), 5);
    let counts: Vec<usize> = r.iter().map(|x| x[1].parse().unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] >= w[1]));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["b"], 2.0);
}

#[test]
fn truncation_warning_exit_code() {
    let dir = TempDir::new().unwrap();
    let o = landau(
        &[
            "thm3",
            "--rho",
            "2",
            "--K",
            "50",
            "--lambda-min",
            "1e-4",
            "--lambda-max",
            "1e-3",
            "--lambda-steps",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("counting.csv").exists());
}

#[test]
fn lemma_disk_and_sandwich_outputs() {
    let dir = TempDir::new().unwrap();
    let o = landau(&["lemma-disk", "--rho", "0.5", "--q", "1", "--K", "120"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&dir.path().join("lemma_disk.csv"));
    let ratio: f64 = r[100][3].parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "ratio {ratio}");

    let dir = TempDir::new().unwrap();
    let o = landau(&["sandwich", "--q", "0", "--sign", "-"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sandwich.json")).unwrap()).unwrap();
    assert_eq!(rep["result"]["sign"], "-");
    assert!(rep["result"]["pass"].as_bool().unwrap());
}

#[test]
fn seeded_self_checks_pass() {
    let dir = TempDir::new().unwrap();
    let o = landau(&["check", "--seed", "7", "--rounds", "3"], dir.path());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
