use std::process::{Command, Output};

use holomon_cli::anchors::ANCHORS;

fn holomon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holomon"))
        .args(args)
        .env_remove("HOLOMON_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_all_on_the_torus() {
    let o = holomon(&["verify", "all", "--surface", "c11", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for anchor in ["trace-relation", "bracket-gradient", "quantum-relation"] {
        let tag = format!("[{anchor}]");
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(&tag)), "{anchor} missing");
    }
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn exit_codes() {
    assert_eq!(holomon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(holomon(&[]).status.code(), Some(2));
    assert_eq!(holomon(&["surface", "validate", "--surface", "/no/such/file.json"]).status.code(), Some(3));
    assert_eq!(holomon(&["tau", "--lambda", "abc"]).status.code(), Some(4));
    assert_eq!(holomon(&["tau", "--theta", "0.1,0.2"]).status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(holomon(&["surface", "validate", "--surface", bad.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn tau_prints_series_and_residual() {
    let o = holomon(&["tau", "--lambda", "0.41", "--kappa", "1.3", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = text.lines().filter(|l| !l.starts_with('#') && l.split_whitespace().count() == 4).count();
    assert!(rows > 10, "{text}");
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("[tau-sum]")));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    let run = |plot: &std::path::Path| {
        holomon(&["--plot", plot.to_str().unwrap(), "tau", "--lambda", "0.37", "--kappa", "0.5", "--order", "4"])
    };
    let (a, b) = (run(&p1), run(&p2));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (sa, sb) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(!sa.is_empty());
    assert_eq!(sa, sb);
}

#[test]
fn report_anchors_are_known() {
    let o = holomon(&["--format", "json", "verify", "all", "--surface", "c04"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        let a = c["anchor"].as_str().unwrap();
        assert!(ANCHORS.iter().any(|(k, _)| *k == a), "unknown anchor {a}");
    }
}

#[test]
fn precision_from_environment() {
    let run = |digits: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_holomon"))
            .args(["tau", "--lambda", "0.3", "--kappa", "0.2", "--order", "3"])
            .env("HOLOMON_PRECISION", digits)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    assert!(run("40").lines().next().unwrap().contains("digits 40"));
    assert!(run("70").lines().next().unwrap().contains("digits 70"));
}

#[test]
fn saved_flip_validates() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("flipped.json");
    let o = holomon(&["flip", "--surface", "c04", "--edge", "2", "--save", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = holomon(&["surface", "validate", "--surface", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 10/10 checks passed"));
}

#[test]
fn sphere_block_coefficients() {
    let o = holomon(&[
        "block", "sphere4", "--weights", "1/3,2/5,3/7,1/11", "--internal", "5/13", "--c", "17/4", "--order", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // (Db + D2 - D1)(Db + D3 - D4) / 2 Db
    assert!(text.lines().any(|l| l == "1 964/2275"), "{text}");
    assert!(text.lines().any(|l| l == "exponent -68/195"));
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.csv");
    let o = holomon(&["--format", "csv", "--output", f.to_str().unwrap(), "verify", "dictionary"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.lines().count() >= 3);
    assert!(text.contains("parameter-dictionary"));
}
