use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use svineq_cli::report_file::{ReportBody, ReportFile};
use svineq_cli::{run, EXIT_EXHAUSTED, EXIT_HOLDS, EXIT_HYPOTHESIS, EXIT_USAGE, EXIT_VIOLATED};
use svineq_core::fuzzer::{replay, SearchOutcome};
use svineq_core::inequalities::Verdict;
use tempfile::TempDir;

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn svineq(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("svineq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const EX_2_2: &str = r#"{"n": 2, "entries": [[[2, -1], [0, 2]], [[0, 2], [0, 2]]]}"#;
const EX_2_3: &str = r#"{"n": 2, "entries": [[[1, 1], [1, 0]], [[1, 0], [0, 1]]]}"#;

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ex23 = write(dir.path(), "ex23.json", EX_2_3);
    let ex22 = write(dir.path(), "ex22.json", EX_2_2);
    let p = |p: &PathBuf| p.to_str().unwrap().to_string();

    let r = svineq(&["verify", "thm-2.1", &p(&ex23)]);
    assert_eq!(r.code, EXIT_HOLDS, "{}", r.stderr);
    let file = ReportFile::from_json(&r.stdout).unwrap();
    assert_eq!(file.schema, 1);

    assert_eq!(
        svineq(&["verify", "loewner-cartesian", &p(&ex22)]).code,
        EXIT_VIOLATED
    );
    assert_eq!(
        svineq(&["verify", "thm-2.1", &p(&ex22)]).code,
        EXIT_HYPOTHESIS
    );
    assert_eq!(svineq(&["verify", "thm-2.8", &p(&ex22)]).code, EXIT_USAGE);
    assert_eq!(svineq(&["verify", "thm-9.9", &p(&ex22)]).code, EXIT_USAGE);
    assert_eq!(svineq(&["verify", "thm-2.1"]).code, EXIT_USAGE);
    assert_eq!(
        svineq(&["verify", "thm-2.1", "/nonexistent.json"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        svineq(&["verify", "thm-2.1", &p(&ex23), "--tol-rel", "-1"]).code,
        EXIT_USAGE
    );
}

#[test]
fn verify_rejects_malformed_matrices() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        (
            "ragged",
            r#"{"n": 2, "entries": [[[1, 0], [0, 0]], [[1, 0]]]}"#,
        ),
        (
            "wrong_n",
            r#"{"n": 3, "entries": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]]}"#,
        ),
        ("empty", r#"{"n": 0, "entries": []}"#),
        ("overflow", r#"{"n": 1, "entries": [[[1e400, 0]]]}"#),
        ("not_json", "[[1, 2]"),
    ] {
        let path = write(dir.path(), name, text);
        let r = svineq(&["verify", "thm-2.7", path.to_str().unwrap()]);
        assert_eq!(r.code, EXIT_USAGE, "{name}: {}", r.stderr);
        assert!(r.stderr.starts_with("error:"), "{name}");
    }
}

#[test]
fn verify_report_replays() {
    let dir = TempDir::new().unwrap();
    let ex22 = write(dir.path(), "ex22.json", EX_2_2);
    let r = svineq(&["verify", "loewner-cartesian", ex22.to_str().unwrap()]);
    let file = ReportFile::from_json(&r.stdout).unwrap();
    let ReportBody::Verify { witness, .. } = &file.body else {
        panic!()
    };
    assert_eq!(replay(witness).unwrap().verdict, Verdict::Violated);

    let saved = write(dir.path(), "report.json", &r.stdout);
    let again = svineq(&["replay", saved.to_str().unwrap()]);
    assert_eq!(again.code, EXIT_VIOLATED, "{}", again.stderr);
}

#[test]
fn repro_outputs() {
    let r = svineq(&["repro", "ex-2.3"]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert!(r.stdout.contains("s2(A1 + iA2) recomputed 1.17557"));
    assert!(r
        .stdout
        .contains("DISCREPANCY s2(|A1| + |A2|): example states ≈ 0.9591, recomputed 1.61803"));

    let r = svineq(&["repro", "ex-2.2"]);
    assert!(r.stdout.contains("A1 = [[2.00000, 0], [0, 0]]"));
    assert!(r
        .stdout
        .contains("A2 = [[-1.00000, 2.00000], [2.00000, 2.00000]]"));
    assert_eq!(svineq(&["repro", "ex-9.9"]).code, EXIT_USAGE);
}

#[test]
fn repro_is_deterministic_and_round_trips() {
    for fixture in ["ex-2.2", "ex-2.3"] {
        let a = svineq(&["repro", fixture]);
        let b = svineq(&["repro", fixture]);
        assert_eq!(a.stdout, b.stdout);

        let json = svineq(&["repro", fixture, "--json"]).stdout;
        let file = ReportFile::from_json(&json).unwrap();
        assert_eq!(file.to_json(), json);
        assert_eq!(ReportFile::from_json(&file.to_json()).unwrap(), file);
        for w in file.witnesses() {
            assert_eq!(replay(w).unwrap().verdict, w.report.verdict);
        }
    }
}

#[test]
fn repro_out_file_matches_json_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ex23.json");
    let r = svineq(&["repro", "ex-2.3", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), r.stdout);
}

#[test]
fn fuzz_flags() {
    let r = svineq(&[
        "fuzz", "--ineq", "thm-2.7", "--class", "ginibre", "--dims", "2..6", "--trials", "500",
        "--seed", "1",
    ]);
    assert_eq!(r.code, EXIT_HOLDS, "{}", r.stdout);
    assert!(r.stdout.contains("2500 trials"));

    let r = svineq(&[
        "fuzz", "--ineq", "all", "--trials", "1", "--seed", "0", "--dims", "3",
    ]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert_eq!(
        r.stdout.lines().filter(|l| l.contains(" trials,")).count(),
        14
    );
    assert!(r
        .stdout
        .lines()
        .all(|l| !l.contains(" trials,") || l.contains(": 1 trials")));

    let r = svineq(&["fuzz", "--ineq", "list"]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert_eq!(r.stdout.lines().count(), 14);

    for bad in [
        vec!["fuzz", "--ineq", "thm-2.7", "--dims", "0"],
        vec!["fuzz", "--ineq", "thm-2.7", "--trials", "0"],
        vec!["fuzz", "--ineq", "thm-2.7", "--class", "nope"],
        vec!["fuzz", "--ineq", "tao-1.2", "--class", "dominated_pair"],
        vec!["fuzz", "--ineq", "all", "--class", "ginibre"],
        vec!["fuzz", "--ineq", "thm-2.7", "--trials", "-3"],
        vec!["fuzz", "--ineq", "thm-2.7", "--dims", "65"],
        vec!["fuzz"],
    ] {
        assert_eq!(svineq(&bad).code, EXIT_USAGE, "{bad:?}");
    }
}

#[test]
fn fuzz_exit_codes_follow_expectations() {
    // Outside normal inputs the Löwner statement is not expected to hold, so
    // its violations do not fail the run.
    let r = svineq(&[
        "fuzz",
        "--ineq",
        "loewner-cartesian",
        "--class",
        "ginibre",
        "--dims",
        "2",
        "--trials",
        "50",
    ]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert!(!r.stdout.contains(", violated 0,"), "{}", r.stdout);

    // With zero tolerance, rounding in the exact identity counts as a violation.
    let r = svineq(&[
        "fuzz",
        "--ineq",
        "thm-2.7",
        "--dims",
        "4",
        "--trials",
        "50",
        "--tol-abs",
        "0",
        "--tol-rel",
        "0",
    ]);
    assert_eq!(r.code, EXIT_VIOLATED, "{}", r.stdout);
    assert!(r.stdout.contains("UNEXPECTED"));
}

#[test]
fn fuzz_report_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("fuzz.json");
    let r = svineq(&[
        "fuzz",
        "--ineq",
        "loewner-cartesian",
        "--class",
        "ginibre",
        "--dims",
        "2,3",
        "--trials",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_HOLDS);
    let file = ReportFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    let ReportBody::Fuzz { config, result } = &file.body else {
        panic!()
    };
    assert_eq!(config.dims, vec![2, 3]);
    assert_eq!(result.targets[0].trials, 40);
    let replayed = svineq(&["replay", path.to_str().unwrap()]);
    assert_eq!(replayed.code, EXIT_VIOLATED);
}

#[test]
fn search_exit_codes() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("w.json");
    let r = svineq(&[
        "search",
        "--target",
        "thm-2.1-nonnormal",
        "--budget",
        "1000",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_HOLDS, "{}", r.stdout);
    let file = ReportFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    let ReportBody::Search {
        outcome: SearchOutcome::Found { witness, .. },
        ..
    } = &file.body
    else {
        panic!()
    };
    assert_eq!(replay(witness).unwrap().verdict, Verdict::Violated);

    assert_eq!(
        svineq(&["search", "--target", "thm-2.1-nonnormal", "--budget", "0"]).code,
        EXIT_EXHAUSTED
    );
    assert_eq!(svineq(&["search", "--target", "nope"]).code, EXIT_USAGE);
    assert_eq!(
        svineq(&["search", "--target", "thm-2.1-nonnormal", "--dims", "0"]).code,
        EXIT_USAGE
    );
}

#[test]
fn replay_rejects_tampered_files() {
    let dir = TempDir::new().unwrap();
    let json = svineq(&["repro", "ex-2.2", "--json"]).stdout;
    let tampered = json.replacen("\"verdict\": \"violated\"", "\"verdict\": \"holds\"", 1);
    assert_ne!(tampered, json);
    let path = write(dir.path(), "t.json", &tampered);
    assert_eq!(svineq(&["replay", path.to_str().unwrap()]).code, EXIT_USAGE);

    let wrong_schema = json.replacen("\"schema\": 1", "\"schema\": 2", 1);
    let path = write(dir.path(), "s.json", &wrong_schema);
    assert_eq!(svineq(&["replay", path.to_str().unwrap()]).code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_svineq");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(status(&["repro", "ex-2.3"]), 0);
    assert_eq!(status(&["--help"]), 0);
    assert_eq!(status(&["--version"]), 0);
    assert_eq!(status(&[]), 3);
    assert_eq!(status(&["bogus"]), 3);
    assert_eq!(
        status(&["search", "--target", "bk-1.1-hermitian-B", "--budget", "0"]),
        4
    );
}
