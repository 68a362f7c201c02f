use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tripartite::sweep::split_csv;

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(args)
        .current_dir(cwd)
        .env_remove("TRIPARTITE_WORKERS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&[], dir.path())), 1);
    assert_eq!(code(&run(&["fig9"], dir.path())), 1);
    assert_eq!(code(&run(&["fig2", "--workers", "many"], dir.path())), 1);
    assert_eq!(code(&run(&["--help"], dir.path())), 0);
    assert_eq!(code(&run(&["--version"], dir.path())), 0);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write(dir.path(), "a.toml", "colour = 3\n");
    assert_eq!(code(&run(&["fig2", "--config", &bad_key], dir.path())), 2);
    let bad_axis = write(dir.path(), "b.toml", "[[sweep.axis]]\nname = \"nope\"\nmin = 1\nmax = 2\ncount = 3\n");
    assert_eq!(code(&run(&["sweep", "--config", &bad_axis], dir.path())), 2);
    assert_eq!(code(&run(&["fig2", "--config", "missing.toml"], dir.path())), 2);
    assert_eq!(code(&run(&["fig2", "--workers", "0"], dir.path())), 2);
    let no_solution = write(dir.path(), "c.toml", "[params]\ntrap_voltage = 12.6\ncharge_per_mass = 1.0e7\n");
    let o = run(&["derive", "--config", &no_solution], dir.path());
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn refuses_to_overwrite_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", "[fig2]\nr_count = 4\nradius_count = 3\n");
    assert_eq!(code(&run(&["fig2", "--config", &cfg, "--out", "o"], dir.path())), 0);
    let before = std::fs::read_to_string(dir.path().join("o/fig2a.csv")).unwrap();
    let o = run(&["fig2", "--config", &cfg, "--out", "o"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    assert_eq!(code(&run(&["fig2", "--config", &cfg, "--out", "o", "--force", "--json"], dir.path())), 0);
    assert_eq!(std::fs::read_to_string(dir.path().join("o/fig2a.csv")).unwrap(), before);
    let mirror: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/fig2a.json")).unwrap()).unwrap();
    assert_eq!(mirror["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn tables_carry_provenance_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", "[fig2]\nr_count = 4\nradius_count = 3\n[params]\nyig_radius = 6e-8\n");
    assert_eq!(code(&run(&["fig2", "--config", &cfg, "--out", "o"], dir.path())), 0);
    let text = std::fs::read_to_string(dir.path().join("o/fig2d.csv")).unwrap();
    let (meta, body) = split_csv(&text).unwrap();
    assert_eq!(meta["tool"], "tripartite");
    assert_eq!(meta["constants_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(meta["run"]["params"]["yig_radius"], 6e-8);
    assert_eq!(meta["columns"][2]["unit"], "MHz");
    assert_eq!(body.lines().next().unwrap(), "radius_nm,r,lambda_eff_mhz");
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/fig2_errors.json")).unwrap()).unwrap();
    assert_eq!(sidecar["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn constants_override_changes_hash() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "consts.toml", "hbar = 1.0e-34\n");
    let cfg = write(dir.path(), "c.toml", "constants_file = \"consts.toml\"\n");
    let a = run(&["derive"], dir.path());
    let b = run(&["derive", "--config", &cfg], dir.path());
    assert_eq!((code(&a), code(&b)), (0, 0), "{}", String::from_utf8_lossy(&b.stderr));
    let (a, b): (Value, Value) =
        (serde_json::from_slice(&a.stdout).unwrap(), serde_json::from_slice(&b.stdout).unwrap());
    assert_ne!(a["constants_sha256"], b["constants_sha256"]);
    assert_ne!(a["derived"]["gamma_th"], b["derived"]["gamma_th"]);
}

#[test]
fn excessive_point_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write(dir.path(), "s.toml", "[[sweep.axis]]\nname = \"temperature\"\nmin = -0.01\nmax = 0.03\ncount = 5\n");
    let o = run(&["sweep", "--config", &cfg, "--out", "o"], dir.path());
    assert_eq!(code(&o), 3);
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/sweep_errors.json")).unwrap()).unwrap();
    assert_eq!(sidecar["failures"].as_array().unwrap().len(), 2);
    assert_eq!(sidecar["total_points"], 5);
    let text = std::fs::read_to_string(dir.path().join("o/sweep.csv")).unwrap();
    assert_eq!(split_csv(&text).unwrap().1.lines().count(), 4);

    // one bad point in eleven stays under the threshold
    let cfg = write(dir.path(), "t.toml", "[[sweep.axis]]\nname = \"temperature\"\nmin = 0.0\nmax = 0.1\ncount = 11\n");
    assert_eq!(code(&run(&["sweep", "--config", &cfg, "--out", "p"], dir.path())), 0);
}

#[test]
fn worker_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", "[fig2]\nr_count = 5\nradius_count = 4\n");
    let status = Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(["fig2", "--config", &cfg, "--out", "env"])
        .env("TRIPARTITE_WORKERS", "3")
        .current_dir(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(code(&run(&["fig2", "--config", &cfg, "--out", "one", "--workers", "1"], dir.path())), 0);
    for t in ["fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2d_contour", "fig2e_contour"] {
        let a = std::fs::read_to_string(dir.path().join(format!("env/{t}.csv"))).unwrap();
        let b = std::fs::read_to_string(dir.path().join(format!("one/{t}.csv"))).unwrap();
        assert_eq!(a, b, "{t}");
    }
}

#[test]
fn selftest_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "seed.toml", "seed = 11\n");
    let o = run(&["selftest", "--config", &cfg, "--out", "o"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/selftest.json")).unwrap()).unwrap();
    assert_eq!(report["seed"], 11);
    assert_eq!(code(&run(&["selftest", "--config", &cfg, "--out", "o"], dir.path())), 2);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn derive_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "[params]\nplatform = \"cantilever\"\nr = 2.0\n");
    let o = run(&["derive", "--config", &cfg], dir.path());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["derived"]["r"], 2.0);
    let ratio = v["derived"]["lambda_eff"].as_f64().unwrap() / v["derived"]["lambda"].as_f64().unwrap();
    assert!((ratio - 2f64.exp()).abs() < 1e-12);
    assert!(!dir.path().join("out").exists());
}
