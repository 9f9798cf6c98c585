//! The `premon` binary: subcommands, output formats and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn premon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_premon")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("premon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const HALF_SPIN: &str = r#"
[algebra]
builtin = "sl2"
[modules]
sl2_two_j = [0, 1]
[twining]
K = "(e*f + f*e + h^2/2)/4"
[checks]
run = ["symmetry"]
"#;

#[test]
fn check_text_report() {
    let out = premon(&["check", &config("gl1_ribbon.cfg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("validation: pass"));
    assert!(text.contains("ribbon.u_methods"));
    assert!(text.contains("101 results: 101 pass, 0 fail, 0 error"));
}

#[test]
fn fails_do_not_change_exit_status_unless_asked() {
    let cfg = config("sl2_v1.cfg");
    assert_eq!(premon(&["check", &cfg, "--format", "jsonlike"]).status.code(), Some(0));
    assert_eq!(premon(&["check", &cfg, "--expect-all-pass"]).status.code(), Some(1));
    assert_eq!(premon(&["check", &config("gl1_ribbon.cfg"), "--expect-all-pass"]).status.code(), Some(0));
}

#[test]
fn jsonlike_to_file() {
    let path = scratch("ribbon.jsonl");
    let out = premon(&["check", &config("gl1_ribbon.cfg"), "--format", "jsonlike", "--out", path.to_str().unwrap(), "--jobs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("{\"record\":\"config\""));
    assert!(text.lines().all(|l| l.starts_with('{') && l.ends_with('}')));
}

#[test]
fn variant_flag() {
    let out = premon(&["check", &config("sl2_v1.cfg"), "--format", "jsonlike", "--variant-eq5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("quasi.fusion_right_variant"));
}

#[test]
fn validation_error_exits_two() {
    let path = scratch("half.cfg");
    std::fs::write(&path, HALF_SPIN).unwrap();
    let out = premon(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("NonIntegerSpectrum") && err.contains("3/8"), "{err}");

    let out = premon(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("witness 3/8"));
}

#[test]
fn validate_passes_shipped_configs() {
    for name in ["gl1_pentagon.cfg", "gl1_ribbon.cfg", "sl2_v1.cfg"] {
        let out = premon(&["validate", &config(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn config_error_reports_position() {
    let path = scratch("bad.cfg");
    std::fs::write(&path, HALF_SPIN.replace("h^2/2", "h^2/g")).unwrap();
    let out = premon(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 7, column"), "{err}");
}

#[test]
fn gl1_oracle_output() {
    let out = premon(&["oracle-gl1", "(N^3 + 5*N)/6", "-1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q(M_1,M_1,M_1,M_1) = gamma^1/1 = -1/1"));
    assert!(text.contains("k(M_-1) = -1/1"));
    let out = premon(&["oracle-gl1", "N^3", "2", "--gamma", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("u(M_2) = gamma^-64/1 = 1/18446744073709551616"));
}
