use std::process::{Command, Output};

fn mapspace(args: &[&str]) -> Output {
    mapspace_env(args, &[])
}

fn mapspace_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mapspace"));
    cmd.args(args).env_remove("MAPSPACE_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Asserts the exit status and a single diagnostic line naming `kind`.
fn assert_failure(o: &Output, code: i32, kind: &str) {
    assert_eq!(o.status.code(), Some(code), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "one-line diagnostic expected: {err}");
    assert!(
        err.starts_with(&format!("mapspace: error exit={code} kind={kind}: ")),
        "{err}"
    );
}

const HOL_N1: [&str; 13] = [
    "--space",
    "hol",
    "--n",
    "1",
    "--field",
    "q",
    "--component",
    "3",
    "--cutoff",
    "10",
    "--grading",
    "ordinary",
    "--format",
];

#[test]
fn compute_json_matches_schema() {
    let mut args = vec!["compute"];
    args.extend(HOL_N1);
    args.push("json");
    let o = mapspace(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"space\":\"hol\",\"n\":1,\"field\":\"Q\",\"grading\":\"ordinary\",\"cutoff\":10,\"components\":{\"3\":{\"0\":1,\"3\":1}}}\n"
    );
}

#[test]
fn compute_csv_rows() {
    let mut args = vec!["compute"];
    args.extend(HOL_N1);
    args.push("csv");
    let o = mapspace(&args);
    assert_eq!(stdout(&o), "component,degree,dimension\n3,0,1\n3,3,1\n");
}

#[test]
fn compute_text_with_series() {
    let o = mapspace(&[
        "compute",
        "--space",
        "hol",
        "--n",
        "2",
        "--field",
        "f3",
        "--component",
        "1",
        "--cutoff",
        "12",
        "--series",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("series 1: 1 + t^2 + t^3 + t^4 + t^5 + t^7\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn negative_component_ranges_parse() {
    let o = mapspace(&[
        "compute",
        "--space",
        "loop",
        "--n",
        "2",
        "--field",
        "f3",
        "--components",
        "-2..2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&String> = v["components"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["-2", "-1", "0", "1", "2"]);
    // 3 divides n + 1: every component has the same column.
    assert_eq!(v["components"]["-2"], v["components"]["1"]);
}

#[test]
fn export_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let mut files = Vec::new();
        for threads in ["1", "4", "4"] {
            let path = dir.path().join(format!("table-{threads}-{}.{format}", files.len()));
            let p = path.to_str().unwrap();
            let o = mapspace_env(
                &[
                    "export",
                    "--space",
                    "loop",
                    "--n",
                    "2",
                    "--field",
                    "f2",
                    "--components",
                    "-3..3",
                    "--format",
                    format,
                    "--output",
                    p,
                ],
                &[("MAPSPACE_THREADS", threads)],
            );
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            files.push(std::fs::read(&path).unwrap());
        }
        assert!(files.windows(2).all(|w| w[0] == w[1]), "{format} output differs");
    }
}

#[test]
fn verify_examples_exit_zero() {
    for args in [
        &[
            "verify",
            "--check",
            "periodicity",
            "--n",
            "2",
            "--field",
            "f2",
            "--k",
            "2",
            "--components",
            "-2..2",
        ][..],
        &[
            "verify",
            "--check",
            "dichotomy",
            "--n",
            "2",
            "--field",
            "f2",
            "--components",
            "-3..3",
        ][..],
        &["verify", "--check", "collapse", "--n", "2", "--field", "f3"][..],
        &[
            "verify",
            "--check",
            "injectivity",
            "--n",
            "2",
            "--field",
            "f2",
            "--cutoff",
            "16",
        ][..],
    ] {
        let o = mapspace(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("PASS "), "{}", stdout(&o));
    }
}

#[test]
fn unmet_hypothesis_is_no_claim() {
    let o = mapspace(&["verify", "--check", "unit", "--n", "2", "--field", "f2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NO-CLAIM unit"));
}

#[test]
fn verify_json_lines() {
    let o = mapspace(&[
        "verify", "--check", "unit", "--n", "2", "--field", "f3", "--k", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["check"], "unit");
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn failing_check_exits_one() {
    let o = mapspace(&[
        "verify",
        "--check",
        "example62",
        "--n",
        "2",
        "--field",
        "f2",
        "--components",
        "0",
    ]);
    assert_failure(&o, 1, "CheckFailed");
    assert!(stdout(&o).starts_with("FAIL example62"));
    let o = mapspace(&[
        "verify",
        "--check",
        "example62",
        "--n",
        "2",
        "--field",
        "f2",
        "--components",
        "0",
        "--reading",
        "with-unit-block",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_errors_exit_two() {
    let cases: [(&[&str], &str); 8] = [
        (
            &["compute", "--space", "loop", "--n", "2", "--field", "f4"],
            "CompositeCharacteristic",
        ),
        (
            &["compute", "--space", "loop", "--n", "2", "--field", "rational"],
            "InvalidFieldSpec",
        ),
        (&["compute", "--space", "loop", "--n", "0"], "InvalidParameter"),
        (
            &["compute", "--space", "hol", "--n", "2", "--component", "-1"],
            "InvalidParameter",
        ),
        (
            &["compute", "--space", "loop", "--n", "2", "--components", "3..1"],
            "InvalidComponents",
        ),
        (&["compute", "--space", "torus", "--n", "2"], "Usage"),
        (
            &["verify", "--check", "collapse", "--n", "2", "--field", "q"],
            "InvalidParameter",
        ),
        (&["verify", "--check", "example62", "--n", "3", "--field", "f2"], "OddN"),
    ];
    for (args, kind) in cases {
        assert_failure(&mapspace(args), 2, kind);
    }
    assert_failure(
        &mapspace(&["verify", "--check", "unit", "--n", "2", "--field", "f3"]),
        2,
        "MissingParameter",
    );
    assert_failure(
        &mapspace(&["export", "--space", "loop", "--n", "2"]),
        2,
        "MissingOutput",
    );
    assert_failure(
        &mapspace_env(
            &["compute", "--space", "loop", "--n", "1"],
            &[("MAPSPACE_THREADS", "zero")],
        ),
        2,
        "InvalidThreads",
    );
}

#[test]
fn short_generator_list_exits_three() {
    let o = mapspace(&[
        "compute",
        "--space",
        "loop",
        "--n",
        "2",
        "--field",
        "f2",
        "--max-generator-degree",
        "10",
    ]);
    assert_failure(&o, 3, "CutoffTooTight");
    let o = mapspace(&[
        "compute",
        "--space",
        "loop",
        "--n",
        "2",
        "--field",
        "f2",
        "--max-generator-degree",
        "10",
        "--cutoff",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("table.json");
    let o = mapspace(&[
        "export",
        "--space",
        "hol",
        "--n",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_failure(&o, 4, "Io");
}
