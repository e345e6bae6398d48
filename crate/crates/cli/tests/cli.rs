use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn modal_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_modal"))
        .args(args)
        .envs(env.iter().copied())
        .current_dir(root())
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn modal(args: &[&str]) -> Run {
    modal_env(args, &[])
}

fn lines_starting(s: &str, prefix: &str) -> usize {
    s.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn check_reports_one_item_per_definition() {
    let r = modal(&["check", "stdlib/pathsplit.mtt"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let defs = std::fs::read_to_string(root().join("stdlib/pathsplit.mtt")).unwrap();
    let count = defs.lines().filter(|l| l.starts_with("def ")).count();
    assert_eq!(lines_starting(&r.stdout, "PASS "), count + 1);
    assert!(r.stdout.lines().last().unwrap().starts_with("PASS ("));
}

#[test]
fn check_locates_a_type_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.mtt");
    std::fs::write(
        &path,
        "def id : (A : Type) -> A -> A := fun A x => x\n\ndef bad : (A : Type) -> A -> A := fun A x => A\n",
    )
    .unwrap();
    let r = modal(&["check", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("PASS id"));
    assert!(r.stdout.contains(&format!("FAIL bad: {}:3:1:", path.display())), "{}", r.stdout);
}

#[test]
fn eval_prints_the_normal_form() {
    let r = modal(&["eval", "stdlib/prelude.mtt", "--def", "ap"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("normal form: fun"));
    let r = modal(&["eval", "stdlib/prelude.mtt", "--def", "no-such-definition"]);
    assert_eq!(r.code, 2);
}

#[test]
fn nuclei_on_the_two_chain() {
    let r = modal(&["nuclei", "--poset", "fixtures/chain2.poset", "--enumerate"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("4 nuclei:"), "{}", r.stdout);
    assert!(r.stdout.contains("{[]: [], [a]: [a,b], [a,b]: [a,b]} = dneg = open:[a]"));
    assert!(r.stdout.contains("{[]: [a], [a]: [a], [a,b]: [a,b]} = closed:[a]"));
}

#[test]
fn nucleus_tables_are_checked() {
    let r =
        modal(&["nuclei", "--poset", "fixtures/chain2.poset", "--nucleus-table", "fixtures/not-idempotent.nucleus"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("not idempotent at []"), "{}", r.stdout);
    let r = modal(&["nuclei", "--poset", "fixtures/chain2.poset", "--nucleus-table", "fixtures/open-a.nucleus"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn coframe_and_tautology() {
    let r = modal(&["nuclei", "--poset", "fixtures/vee.poset", "--coframe", "--fracture-taut", "l"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(lines_starting(&r.stdout, "PASS "), 3);
    // not a down-set of the vee
    let r = modal(&["nuclei", "--poset", "fixtures/vee.poset", "--fracture-taut", "t"]);
    assert_eq!(r.code, 2);
}

#[test]
fn fracture_on_the_sierpinski_poset() {
    let r = modal(&["fracture", "--poset", "fixtures/sierpinski.poset", "--presheaf", "fixtures/x.pshf", "--q", "a"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    for corner in ["X: [a=2 b=3]", "open part: [a=2 b=2]", "closed part: [a=1 b=3]", "open part: [a=1 b=2]"] {
        assert!(r.stdout.contains(corner), "{corner} missing from\n{}", r.stdout);
    }
    assert!(r.stdout.contains("PASS fracture square is a pullback"));
}

#[test]
fn sheafify_open_at_the_bottom_point() {
    let r = modal(&[
        "sheafify",
        "--poset",
        "fixtures/sierpinski.poset",
        "--presheaf",
        "fixtures/x.pshf",
        "--nucleus",
        "open:a",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    // the result is X(a) at both points
    assert!(r.stdout.contains(r#"sheafification: {"a": ["0", "1"], "b": ["0", "1"]} b>a:[0, 1]"#), "{}", r.stdout);
    let bad = modal(&[
        "sheafify",
        "--poset",
        "fixtures/sierpinski.poset",
        "--presheaf",
        "fixtures/x.pshf",
        "--nucleus-table",
        "fixtures/not-idempotent.nucleus",
    ]);
    assert_eq!(bad.code, 1);
}

#[test]
fn factorize_a_map() {
    for spec in ["id", "top", "dneg", "open:a", "closed:a", "closed:[]"] {
        let r = modal(&[
            "factorize",
            "--poset",
            "fixtures/sierpinski.poset",
            "--map",
            "fixtures/x-to-y.map",
            "--nucleus",
            spec,
        ]);
        assert_eq!(r.code, 0, "{spec}: {}{}", r.stdout, r.stderr);
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(modal(&[]).code, 2);
    assert_eq!(modal(&["frobnicate"]).code, 2);
    assert_eq!(modal(&["sheafify", "--poset", "fixtures/sierpinski.poset", "--presheaf", "fixtures/x.pshf"]).code, 2);
    let r = modal(&["check", "does/not/exist.mtt"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));
    // x.pshf names elements the vee does not have
    let r = modal(&["fracture", "--poset", "fixtures/vee.poset", "--presheaf", "fixtures/x.pshf", "--q", "l"]);
    assert_eq!(r.code, 2);
    let r =
        modal(&["sheafify", "--poset", "fixtures/chain2.poset", "--presheaf", "fixtures/x.pshf", "--nucleus", "wat"]);
    assert_eq!(r.code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["nuclei", "--poset", "fixtures/vee.poset", "--enumerate", "--coframe"];
    let a = modal(&args);
    let b = modal(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("elapsed"));
    let v = modal(&["nuclei", "--poset", "fixtures/vee.poset", "--verbose"]);
    assert!(v.stdout.lines().last().unwrap().starts_with("elapsed: "));
}

#[test]
fn suite_prints_shrunken_guards() {
    let r = modal_env(&["suite", "--criterion", "3", "--criterion", "6"], &[("MODAL_SUITE_BUDGET", "5")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("shrunken guard: sheaf posets <= 2 (full: <= 3)"), "{}", r.stdout);
    assert_eq!(lines_starting(&r.stdout, "PASS 3."), 1);
    assert_eq!(lines_starting(&r.stdout, "PASS 6."), 1);
    let r = modal_env(&["suite", "--criterion", "5"], &[("MODAL_SUITE_BUDGET", "120")]);
    assert!(!r.stdout.contains("shrunken"));
    let r = modal_env(&["suite"], &[("MODAL_SUITE_BUDGET", "soon")]);
    assert_eq!(r.code, 2);
}
