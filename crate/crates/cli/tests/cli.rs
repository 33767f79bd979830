use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lpack(args: &[&str], stdin: &str) -> Output {
    lpack_env(args, stdin, &[])
}

fn lpack_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lpack"));
    cmd.args(args)
        .env_remove("LPACK_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn generate(args: &[&str]) -> String {
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    let o = lpack(&all, "");
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn net_analysis() {
    let net = generate(&["--family", "net"]);
    let o = lpack(&["analyze"], &net);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["eb=3", "claw_free=true", "connectivity=1", "class_a=true"] {
        assert!(out.lines().any(|l| l == line), "{line} missing from\n{out}");
    }
}

#[test]
fn q_has_no_factor_through_its_apex_edge() {
    let q = generate(&["--family", "Q", "--la", "5", "--lb", "5"]);
    let o = lpack(&["solve", "--require-edge", "z1,z2"], &q);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "no factor");
    // without the constraint a factor exists
    let o = lpack(&["solve"], &q);
    assert!(stdout(&o).starts_with("factor"));
}

#[test]
fn cycle_factor() {
    let o = lpack(&["solve", "EhEG"], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "factor (2 paths)");
    assert_eq!(lines.len(), 3);
}

#[test]
fn constraint_flags() {
    // C6 with vertex 0 deleted is P5: no factor, but a maximum packing of 1
    let o = lpack(&["solve", "EhEG", "--delete-vertex", "-6"], "");
    assert_eq!(stdout(&o).trim(), "no factor");
    let o = lpack(
        &[
            "solve",
            "EhEG",
            "--max",
            "--forbid-edge",
            "0,1",
            "--forbid-edge",
            "3,4",
        ],
        "",
    );
    assert!(stdout(&o).starts_with("maximum packing (2 paths)"));
    let o = lpack(&["solve", "EhEG", "--require-path", "0,1,2"], "");
    assert!(stdout(&o).starts_with("factor (2 paths)"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lpack(&["solve", "--bogus"], "").status.code(), Some(2));
    assert_eq!(lpack(&["solve", "not graph6!"], "").status.code(), Some(2));
    assert_eq!(
        lpack(&["solve", "EhEG", "--require-edge", "0,9"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lpack(&["verify", "--theorem", "T9_9"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        lpack(&["verify", "--filter", "girth>=4"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        lpack(&["generate", "--family", "blowup"], "").status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports_bad_lines_and_continues() {
    let o = lpack(&["verify", "--theorem", "B1_9,B1_10"], "C~\nC~x\nEhEG\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("stdin:2"));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["graph"], "stdin:1");
    assert_eq!(lines[2]["graph"], "stdin:3");
    // both graphs are 2-connected: no end-blocks, so B1_10 does not apply
    for pair in lines.chunks(2) {
        assert_eq!(pair[0]["outcome"], "HOLDS");
        assert_eq!(pair[1]["outcome"], "NOT_APPLICABLE");
    }
}

#[test]
fn empty_corpus() {
    let o = lpack(&["verify"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("graphs: 0"));
}

#[test]
fn verify_is_independent_of_jobs() {
    let base = [
        "verify",
        "--random-cubic",
        "8:4",
        "--blowup",
        "--seed",
        "3",
        "--max-subcases",
        "50",
    ];
    let one = lpack(&[&base[..], &["--jobs", "1"]].concat(), "");
    let four = lpack(&[&base[..], &["--jobs", "4"]].concat(), "");
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn budget_flag_beats_environment() {
    let k4d = generate(&["--family", "blowup", "--base", "C~"]);
    let starved = lpack_env(
        &["verify", "--theorem", "T2_1"],
        &k4d,
        &[("LPACK_BUDGET", "1")],
    );
    assert!(stdout(&starved).contains("RESOURCE_EXHAUSTED"));
    let fed = lpack_env(
        &["verify", "--theorem", "T2_1", "--budget", "1000000"],
        &k4d,
        &[("LPACK_BUDGET", "1")],
    );
    assert!(stdout(&fed).contains("\"HOLDS\""), "{}", stdout(&fed));
}

#[test]
fn generate_marks_named_parts() {
    let o = lpack(&["generate", "--family", "R", "--la", "4", "--lb", "4"], "");
    assert_eq!(stderr(&o), "a=0-1\nb=4-5\n");
    let o = lpack(&["generate", "--family", "H"], "");
    assert_eq!(stderr(&o), "T=6,7,8\n");
    let o = lpack(&["generate", "--family", "classA", "--steps", "2"], "");
    let g = stdout(&o);
    let a = lpack(&["analyze"], &g);
    assert!(stdout(&a).contains("n=12\n"));
}
