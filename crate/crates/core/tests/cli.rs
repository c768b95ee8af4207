use std::process::{Command, Output};

fn geolang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geolang"))
        .args(args)
        .env_remove("GEOLANG_ELEMENT_BUDGET")
        .env_remove("GEOLANG_CLASS_BUDGET")
        .env_remove("GEOLANG_DEPTH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn scenario_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let a = geolang(&["scenario", "z2-shortlex", "--report", p1.to_str().unwrap()]);
    let b = geolang(&["scenario", "z2-shortlex", "--report", p2.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (ja, jb) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["data"]["cumulative_counts"][10], 221);
}

#[test]
fn every_scenario_passes() {
    let o = geolang(&["scenario", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches(": PASS\n").count(), 7);
}

#[test]
fn errors_map_to_distinct_exit_codes() {
    assert_eq!(geolang(&["scenario", "nope"]).status.code(), Some(26));
    assert_eq!(
        geolang(&["build-cone", "-g", "s3", "-m", "1"])
            .status
            .code(),
        Some(18)
    );
    assert_eq!(
        geolang(&["build-cone", "-g", "nowhere.toml"]).status.code(),
        Some(29)
    );
    assert_eq!(
        geolang(&["pump", "--prefix", "a b"]).status.code(),
        Some(24)
    );
    assert_eq!(
        geolang(&["pump", "--prefix", "a q"]).status.code(),
        Some(10)
    );
    assert_eq!(
        geolang(&["--depth-budget", "3", "validate", "--depth", "5"])
            .status
            .code(),
        Some(11)
    );
    assert_eq!(geolang(&["frobnicate"]).status.code(), Some(2));
    let help = stdout(&geolang(&["--help"]));
    assert!(help.contains("18  inconsistent locality"));
    assert!(help.contains("GEOLANG_DEPTH_BUDGET"));
}

#[test]
fn budget_env_override_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_geolang"))
        .args(["build-cone", "-g", "z2", "--validate", "6"])
        .env("GEOLANG_DEPTH_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(11));
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation depth"));
}

#[test]
fn injected_bad_m_fails_validation_with_witness() {
    let o = geolang(&[
        "validate",
        "--depth",
        "4",
        "--m",
        "0",
        "--triple",
        "z2,trivial,2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("inconsistent locality at m = 0"), "{text}");
}

#[test]
fn exported_machine_round_trips_through_growth() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f2.json");
    let dot = dir.path().join("f2.dot");
    let o = geolang(&[
        "build-cone",
        "--export",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 states"));
    let o = geolang(&[
        "build-cone",
        "--export",
        "dot",
        "--out",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));
    let o = geolang(&["growth", "--fsa", json.to_str().unwrap(), "--series"]);
    let text = stdout(&o);
    assert!(text.contains("pf eigenvalue 3"), "{text}");
    assert!(
        text.contains("cumulative series: (1 + x) / (1 - 4x + 3x^2)"),
        "{text}"
    );
}

#[test]
fn subcommands_report() {
    let o = geolang(&["gap", "-g", "f2", "-H", "a", "-w", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = geolang(&["sublang", "-g", "z2*z", "-H", "ab", "--cap", "2"]);
    assert!(stdout(&o).contains("inconclusive/cap-hit"));
    let o = geolang(&["sublang", "-g", "f2", "--generator", "a b", "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = geolang(&["shortlex", "-g", "z2", "--counts", "3"]);
    assert!(stdout(&o).contains("cumulative counts: 1 5 13 25"));
    let o = geolang(&["pump", "--prefix", "a b a b a b a b a b"]);
    assert!(stdout(&o).contains("g = u v u^-1 = `a b`"));
}

#[test]
fn group_spec_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("lattice.toml");
    std::fs::write(
        &spec,
        "kind = \"raag\"\ngenerators = [\"p\", \"q\"]\ncommute = [[\"p\", \"q\"]]\n",
    )
    .unwrap();
    let o = geolang(&[
        "build-cone",
        "-g",
        spec.to_str().unwrap(),
        "--validate",
        "6",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("lattice trivial m=1: 9 states"));
    std::fs::write(&spec, "kind = \"nonsense\"\n").unwrap();
    assert_eq!(
        geolang(&["build-cone", "-g", spec.to_str().unwrap()])
            .status
            .code(),
        Some(27)
    );
}
