use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn calc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disord-calc"))
}

fn fuzz() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disord-fuzz"))
}

fn session_script(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/tests/scripts/{name}.dis"))
}

fn temp_script(tag: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("disord-cli-{}-{tag}.dis", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn repl(input: &str, args: &[&str]) -> Output {
    let mut child = calc()
        .arg("repl")
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn runs_a_session_script() {
    let out = calc().arg("run").arg(session_script("disord_session")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert!(stdout.contains("[1] 81 16 49  1  4 36  9 64 25"));
    let stderr = text(&out.stderr);
    assert!(stderr.contains("must extract each element once and once only (or none of them)"));
    assert!(stderr.contains("must specify each element once and once only"));
    assert!(stderr.contains("do not match"));
}

#[test]
fn output_is_deterministic_per_storage_order() {
    for order in ["insertion", "shuffle:3"] {
        let run = || {
            calc()
                .args(["run", "--storage-order", order])
                .arg(session_script("mvp_session"))
                .output()
                .unwrap()
                .stdout
        };
        assert_eq!(run(), run());
    }
}

#[test]
fn polynomial_output_ignores_storage_order() {
    let mvp_lines = |order: &str| -> Vec<String> {
        let out = calc()
            .args(["run", "--storage-order", order])
            .arg(session_script("accessor_session"))
            .output()
            .unwrap();
        let stdout = text(&out.stdout);
        let lines: Vec<&str> = stdout.lines().collect();
        lines
            .iter()
            .enumerate()
            .filter(|(i, _)| *i > 0 && lines[i - 1] == "mvp object algebraically equal to")
            .map(|(_, l)| l.to_string())
            .collect()
    };
    let reference = mvp_lines("insertion");
    assert_eq!(reference.len(), 4);
    for seed in 1..5 {
        assert_eq!(mvp_lines(&format!("shuffle:{seed}")), reference);
    }
}

#[test]
fn exit_statuses() {
    let empty = temp_script("empty", "");
    let out = calc().arg("run").arg(&empty).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty() && out.stderr.is_empty());

    let runtime = temp_script("runtime", "a <- disord(1, 2)\nsum(a)\na[1]\nsum(a)\n");
    let out = calc().arg("run").arg(&runtime).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text(&out.stdout), "[1] 3\n");
    assert!(text(&out.stderr).starts_with("Error [BadIndex]"));

    let parse = temp_script("parse", "a <- 1\nb <- (2\n");
    let out = calc().arg("run").arg(&parse).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("line 2"));

    for path in [empty, runtime, parse] {
        std::fs::remove_file(path).unwrap();
    }
}

#[test]
fn rejects_unknown_storage_orders() {
    let out = calc()
        .args(["run", "--storage-order", "random"])
        .arg(session_script("disord_session"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("insertion or shuffle:<seed>"));
}

#[test]
fn repl_keeps_going_after_errors() {
    let out = repl("1+1\na <- disord(1,2,3)\na[1]\nsum(a)\nq\nsum(a)\n", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "[1] 2\n[1] 6\n");
    assert!(text(&out.stderr).contains("must extract each element once and once only"));

    let out = repl("x <- (1\n2*3\n", &["--storage-order", "shuffle:9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "[1] 6\n");
    assert!(text(&out.stderr).starts_with("Error [ParseError]"));
}

#[test]
fn fuzz_reports_pass_and_fail() {
    let out = fuzz().args(["--programs", "30", "--trials", "3", "--seed", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "PASS 30\n");

    let out = fuzz()
        .args(["--programs", "200", "--trials", "4", "--seed", "0", "--inject-positional-extract"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let line = text(&out.stdout);
    let fields: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(fields.len(), 3, "{line}");
    assert_eq!(fields[0], "FAIL");
    assert!(fields[1].parse::<u64>().is_ok() && fields[2].parse::<usize>().is_ok());

    let out = fuzz().args(["--programs", "5", "--trials", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
