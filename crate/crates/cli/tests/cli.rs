use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn stagec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stagec"))
        .args(args)
        .env("STAGEC_COLOR", "0")
        .output()
        .expect("spawn stagec")
}

fn example(name: &str) -> String {
    examples().join(format!("{name}.2lt")).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(file: &str) -> String {
    fs::read_to_string(examples().join("golden").join(file)).unwrap()
}

fn example_names() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(examples())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "2lt").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

#[test]
fn stage_matches_goldens() {
    let names = example_names();
    assert!(names.len() >= 9);
    for name in names {
        let o = stagec(&["stage", &example(&name)]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert_eq!(stdout(&o), golden(&format!("{name}.stage")), "{name}");
    }
}

#[test]
fn tables_and_dot_match_goldens() {
    for name in ["not", "and", "or", "tab", "swap", "twice"] {
        let o = stagec(&["table", &example(name)]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert_eq!(stdout(&o), golden(&format!("{name}.table")), "{name}");
    }
    let o = stagec(&["dot", &example("and")]);
    assert_eq!(stdout(&o), golden("and.dot"));
}

#[test]
fn add42_stages_to_numeral() {
    let o = stagec(&["stage", &example("add42")]);
    let text = stdout(&o);
    assert_eq!(text.matches("succ").count(), 42);
    assert!(text.starts_with("def main : Nat@d = succ (succ"));
}

#[test]
fn run_not() {
    let o = stagec(&["run", &example("not"), "--inputs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn and_table_ends_with_one() {
    let o = stagec(&["table", &example("and")]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3], "11 -> 1");
}

#[test]
fn staged_output_rechecks_in_staged_phase() {
    let dir = tempfile::tempdir().unwrap();
    for name in example_names() {
        let out = dir.path().join(format!("{name}.2lt"));
        let o = stagec(&["stage", &example(&name), "-o", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).is_empty());
        let c = stagec(&["check", "--phase", "stg", out.to_str().unwrap()]);
        assert_eq!(stdout(&c), "ok\n", "{name}: {}", stderr(&c));
        let src = stagec(&["check", out.to_str().unwrap()]);
        assert!(src.status.success(), "staged output is also a valid source program");
    }
}

#[test]
fn output_is_deterministic() {
    let a = stagec(&["stage", &example("tab")]);
    let b = stagec(&["stage", &example("tab")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn user_errors_exit_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.2lt");
    fs::write(&bad, "def main : Nat@d =\n  (zero, zero);\n").unwrap();
    let o = stagec(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad.2lt:2:3: stage error"), "{err}");
    assert!(!err.contains('\x1b'));

    fs::write(&bad, "def main : = ;").unwrap();
    let o = stagec(&["stage", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.2lt:1:12: syntax error"), "{}", stderr(&o));
}

#[test]
fn run_rejects_wrong_width_and_non_circuits() {
    let o = stagec(&["run", &example("not"), "--inputs", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = stagec(&["run", &example("add42"), "--inputs", ""]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("non-circuit"));
}

#[test]
fn missing_def_and_file() {
    let o = stagec(&["stage", &example("add42"), "--def", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = stagec(&["check", "/nonexistent/file.2lt"]);
    assert_eq!(o.status.code(), Some(1));
    let o = stagec(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn circuit_profile_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fn.2lt");
    fs::write(&f, "def main : Circ 1 1 -> Circ 1 1 = \\c. c;").unwrap();
    assert_eq!(stagec(&["check", f.to_str().unwrap()]).status.code(), Some(0));
    let o = stagec(&["check", "--profile", "circuit", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("profile violation"));
    let o = stagec(&["check", "--profile", "circuit", &example("tab")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn builtins_lists_catalogue() {
    let o = stagec(&["builtins"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("tab : (Bool -> Up (Circ 1 1)) -> Up (Circ 2 1)\n"));
}
