use std::process::{Command, Output};

fn entropic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entropic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mu_for_fourier4() {
    let o = entropic(&["--unitary", "fourier:4", "mu"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("c = 0.5\n"), "{s}");
    assert!(s.contains("bound = 2.0 bits"), "{s}");
}

#[test]
fn mu_json() {
    let o = entropic(&["--unitary", "example3", "--format", "json", "mu"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d"], 3);
    assert!(v["c"].as_f64().unwrap() > 0.0);
}

#[test]
fn c6_has_no_3x2_supports() {
    let o = entropic(&["--unitary", "c6", "equality", "scan", "--shape", "3x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 equality supports among 300 candidates"));
}

#[test]
fn diagram_csv_has_one_line_per_sample() {
    let o = entropic(&["--unitary", "fourier:2", "--samples", "100", "diagram"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 101);
    assert_eq!(lines[0], "h_x,h_y");
    for l in &lines[1..] {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 2);
        assert!(v[0] + v[1] >= 1.0 - 1e-9);
    }
}

#[test]
fn output_independent_of_thread_count() {
    let base = ["--unitary", "fourier:5", "--samples", "5000", "--seed", "7", "--strategy", "real", "diagram"];
    let run = |t: &str| {
        let mut args = vec!["--threads", t];
        args.extend_from_slice(&base);
        let o = entropic(&args);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("2"));
    assert_eq!(one, run("4"));
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d2.json");
    let o = entropic(&["--alpha", "2", "--out", path.to_str().unwrap(), "d2", "--points", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!v["points"].as_array().unwrap().is_empty());
}

#[test]
fn file_unitary_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(&good, format!(r#"{{"d": 2, "matrix": [[[{h}, 0], [{h}, 0]], [[{h}, 0], [-{h}, 0]]]}}"#)).unwrap();
    let o = entropic(&["--unitary", &format!("file:{}", good.display()), "mu"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("bound = 1.0 bits"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"d": 2, "matrix": [[[1, 0], [0.1, 0]], [[0, 0], [1, 0]]]}"#).unwrap();
    let spec = format!("file:{}", bad.display());
    let o = entropic(&["--unitary", &spec, "mu"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(entropic(&["--unitary", &spec, "--force", "mu"]).status.code(), Some(0));

    let ragged = dir.path().join("ragged.json");
    std::fs::write(&ragged, r#"{"d": 2, "matrix": [[[1, 0]], [[0, 0], [1, 0]]]}"#).unwrap();
    let o = entropic(&["--unitary", &format!("file:{}", ragged.display()), "mu"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        vec!["frobnicate"],
        vec!["--unitary", "fourier:0", "mu"],
        vec!["--unitary", "nonsense", "mu"],
        vec!["--alpha", "0.6", "--beta", "2", "diagram"],
        vec!["--alpha", "-1", "diagram"],
        vec!["--strategy", "sideways", "diagram"],
        vec!["--samples", "0", "diagram"],
        vec!["conjecture", "5"],
        vec!["conjecture", "2"],
        vec!["--unitary", "c6", "equality", "scan", "--shape", "3"],
        vec!["extremality", "--state", "1,1"],
    ] {
        let o = entropic(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(entropic(&["--help"]).status.code(), Some(0));
    assert_eq!(entropic(&["--version"]).status.code(), Some(0));
    assert_eq!(entropic(&["equality", "--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failure_exits_two() {
    let base = ["--unitary", "fourier:3", "frontier", "--target", "1.0"];
    let o = entropic(&base);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["hy"].as_f64().unwrap() - 1.0).abs() <= 1e-6);

    // A one-step budget cannot meet a tight constraint.
    let mut starved = base.to_vec();
    starved.extend(["--max-iter", "1", "--restarts", "1", "--tol", "1e-14"]);
    let o = entropic(&starved);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("constraint"));

    assert_eq!(entropic(&["--unitary", "fourier:3", "frontier", "--target", "2.0"]).status.code(), Some(1));
}

#[test]
fn equality_check_and_fourier_classes() {
    let o = entropic(&["--unitary", "fourier:4", "equality", "check", "--state", "0.5,0.5,0.5,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "equality");

    let o = entropic(&["--format", "csv", "equality", "fourier", "--group", "2x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn conjecture_report_is_json() {
    let o = entropic(&["--samples", "2000", "conjecture", "4", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conjecture"], 4);
    assert!(["consistent", "tension"].contains(&v["verdict"].as_str().unwrap()));
}

#[test]
fn quick_selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = entropic(&["selftest", "--quick", "--archive", dir.path().to_str().unwrap()]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
    assert!(dir.path().join("selftest.json").exists());
}
