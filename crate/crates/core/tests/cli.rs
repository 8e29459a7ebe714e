use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn bcalc(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn bcalc");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    Run {
        code: o.status.code().unwrap(),
        out: String::from_utf8(o.stdout).unwrap(),
        err: String::from_utf8(o.stderr).unwrap(),
    }
}

const W: &str = "break (let <x:X, y:Y> = (z : X * Y) in x) as <phi, f> @ B in phi (g : X -> B)";

#[test]
fn check_b1() {
    let term = bcalc(&["axioms", "B1"], "").out;
    let r = bcalc(&["check", "-"], &term);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.trim(), "(A -> B) -> (B -> C) -> A -> C");
}

#[test]
fn check_reads_files() {
    let dir = std::env::temp_dir().join(format!("bcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b3.bterm");
    std::fs::write(&path, bcalc(&["axioms", "b3"], "").out).unwrap();
    let r = bcalc(&["check", path.to_str().unwrap()], "");
    assert_eq!(r.out.trim(), "A * B -> B * A");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn normalize_divisibility_trace() {
    let u = bcalc(&["catalog", "divisibility_u"], "").out;
    let r = bcalc(&["normalize", "--trace", "-"], &u);
    assert_eq!(r.code, 0, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(*lines.last().unwrap(), "\\x':A. \\g':A -> B. g' x'");
    // Leftmost-outermost reduction needs an ap-b-conv step before the
    // l-b-conv, so the trace has seven lines.
    let rules: Vec<&str> = lines[..lines.len() - 1]
        .iter()
        .map(|l| l.split(' ').nth(1).unwrap())
        .collect();
    assert_eq!(
        rules,
        [
            "beta",
            "ap-b-conv",
            "l-b-conv",
            "beta",
            "l-conv",
            "b-conv",
            "beta"
        ]
    );
    assert!(lines[0].starts_with("1 beta 0.0.0.0 "));
}

#[test]
fn normal_form_keeps_type() {
    let u = bcalc(&["catalog", "homomorphism"], "").out;
    let before = bcalc(&["check", "-"], &u).out;
    let nf = bcalc(&["normalize", "-"], &u).out;
    assert_eq!(bcalc(&["check", "-"], &nf).out, before);
}

#[test]
fn strategies_diverge_only_with_experimental_rule() {
    let first = bcalc(
        &[
            "normalize",
            "--experimental-blconv",
            "--strategy",
            "first",
            "-",
        ],
        W,
    );
    let last = bcalc(
        &[
            "normalize",
            "--experimental-blconv",
            "--strategy",
            "last",
            "-",
        ],
        W,
    );
    assert_eq!((first.code, last.code), (0, 0));
    assert_ne!(first.out, last.out);
    let plain_first = bcalc(&["normalize", "--strategy", "first", "-"], W);
    let plain_last = bcalc(&["normalize", "--strategy", "last", "-"], W);
    assert_eq!(plain_first.out, plain_last.out);
}

#[test]
fn infer_and_translate() {
    let r = bcalc(
        &["infer", "-"],
        "\\v. let <x, f> = v in break x as <phi, g> in <phi f, g>",
    );
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.trim(), "a * (a -> b) -> b * (b -> a)");
    let r = bcalc(&["translate", "-"], "let <x:A, y:B> = (v : A * B) in x");
    assert_eq!(r.out.trim(), "p0 v");
}

#[test]
fn sequent_commands() {
    let t = bcalc(&["catalog", "identity_break"], "").out;
    let d = bcalc(&["sequent", "fromterm", "-"], &t);
    assert_eq!(d.code, 0, "{}", d.err);
    assert_eq!(
        bcalc(&["sequent", "check", "-"], &d.out).out.trim(),
        "|- A -> A"
    );
    let e = bcalc(&["sequent", "cutelim", "-"], &d.out);
    assert_eq!(e.code, 0, "{}", e.err);
    assert!(!e.out.contains("CUT"));
    assert!(e.out.contains("BRK"));
    assert_eq!(
        bcalc(&["sequent", "check", "-"], &e.out).out.trim(),
        "|- A -> A"
    );
    let back = bcalc(&["sequent", "toterm", "-"], &e.out).out;
    assert_eq!(bcalc(&["check", "-"], &back).out.trim(), "A -> A");
}

#[test]
fn search_exit_codes() {
    let ok = bcalc(&["sequent", "search", "A * B |- B * A"], "");
    assert_eq!(ok.code, 0);
    let fail = bcalc(
        &["sequent", "search", "|- A -> (A -> B) -> B * (B -> A)"],
        "",
    );
    assert_eq!(fail.code, 1);
    assert!(fail.err.contains("no cut-free"));
}

#[test]
fn exit_codes() {
    assert_eq!(bcalc(&["check", "-"], "\\x:A. x x").code, 1);
    assert_eq!(bcalc(&["check", "-"], "let <x:A> = y").code, 2);
    assert_eq!(
        bcalc(
            &["normalize", "--max-steps", "1", "-"],
            "(\\x:A. x) ((\\y:A. y) (z : A))"
        )
        .code,
        3
    );
    assert_eq!(bcalc(&["axioms", "B9"], "").code, 4);
    assert_eq!(bcalc(&["check", "/nonexistent/file.bterm"], "").code, 4);
    let bad = bcalc(&["sequent", "check", "-"], "(ASM [A |- B])");
    assert_eq!(bad.code, 1);
    assert!(bad.err.contains("ASM"), "{}", bad.err);
    assert!(bad.out.is_empty());
}

#[test]
fn deterministic_output() {
    let u = bcalc(&["catalog", "divisibility_u"], "").out;
    let a = bcalc(&["normalize", "--trace", "-"], &u).out;
    let b = bcalc(&["normalize", "--trace", "-"], &u).out;
    assert_eq!(a, b);
}
