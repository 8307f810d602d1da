use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = "name = small
model = kerr
kerr.lambda = 1
initial.field = coherent 1 0.5
time.list = 0, 0.5
grid.thetas = 4
products = tomogram, fidelity
";

fn cvtomo(args: &[&str], envs: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cvtomo"));
    cmd.args(args)
        .env_remove("CVTOMO_OUT_DIR")
        .env("SOURCE_DATE_EPOCH", "1700000000");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn list_presets_prints_every_figure() {
    let out = cvtomo(&["list-presets"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "fig1", "fig2a", "fig2b", "fig3top", "fig3bottom", "fig4", "fig5", "fig6a", "fig6b", "fig7top", "fig7bottom",
    ] {
        assert!(text.lines().any(|l| l.starts_with(name)), "missing {name}");
    }
    assert!(text.contains("Δ = 5"));
    assert!(text.contains("{2200, 2250, 2300}"));
}

#[test]
fn validate_accepts_good_and_rejects_bad() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.cfg");
    fs::write(&good, SMALL).unwrap();
    assert_eq!(cvtomo(&["validate", good.to_str().unwrap()], &[]).status.code(), Some(0));

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, format!("{SMALL}gamma2 = 3\ntime.subpackets = 0\n")).unwrap();
    let out = cvtomo(&["validate", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gamma2"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_a_runtime_failure() {
    let out = cvtomo(&["validate", "/nonexistent/x.cfg"], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_preset_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = cvtomo(&["run", "--preset", "fig99", "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_config_uses_env_dir_unless_out_given() {
    let env_dir = tempfile::tempdir().unwrap();
    let out_dir = tempfile::tempdir().unwrap();
    let cfg = env_dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();

    let out = cvtomo(&["run", cfg.to_str().unwrap()], &[("CVTOMO_OUT_DIR", env_dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let produced = env_dir.path().join("small");
    for f in ["manifest.txt", "tomogram_0000.dat", "tomogram_0001.dat", "fidelity.dat"] {
        assert!(produced.join(f).is_file(), "{f}");
    }
    let manifest = fs::read_to_string(produced.join("manifest.txt")).unwrap();
    assert!(manifest.contains("# timestamp = 1700000000"));

    let out = cvtomo(
        &["run", cfg.to_str().unwrap(), "--out", out_dir.path().to_str().unwrap()],
        &[("CVTOMO_OUT_DIR", env_dir.path())],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.path().join("small/manifest.txt").is_file());
}

#[test]
fn manifest_revalidates_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL).unwrap();
    let first = dir.path().join("a");
    let second = dir.path().join("b");
    assert_eq!(cvtomo(&["run", cfg.to_str().unwrap(), "--out", first.to_str().unwrap()], &[]).status.code(), Some(0));
    let manifest = first.join("small/manifest.txt");
    assert_eq!(cvtomo(&["validate", manifest.to_str().unwrap()], &[]).status.code(), Some(0));
    let out = cvtomo(&["run", manifest.to_str().unwrap(), "--out", second.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    for f in ["manifest.txt", "tomogram_0000.dat", "tomogram_0001.dat", "fidelity.dat"] {
        assert_eq!(
            fs::read(first.join("small").join(f)).unwrap(),
            fs::read(second.join("small").join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn run_requires_config_or_preset() {
    let out = cvtomo(&["run"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = cvtomo(&["run", "x.cfg", "--preset", "fig1"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
