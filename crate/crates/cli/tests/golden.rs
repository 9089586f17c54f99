//! Runs every case in `golden/cases.txt` and compares exit code, standard
//! output and standard error with the stored files. Set
//! `GOLDEN_BLESS=1` to rewrite the stored outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            assert_eq!(parts.len(), 3, "bad case line {l:?}");
            Case {
                name: parts[0].to_string(),
                code: parts[1].parse().unwrap(),
                args: parts[2].split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

fn run(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_groupknap"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn golden_cases() {
    let bless = std::env::var_os("GOLDEN_BLESS").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (code, stdout, stderr) = run(&case.args);
        let dir = golden_dir();
        let out_path = dir.join(format!("{}.stdout", case.name));
        let err_path = dir.join(format!("{}.stderr", case.name));
        if bless {
            std::fs::write(&out_path, &stdout).unwrap();
            std::fs::write(&err_path, &stderr).unwrap();
        }
        let want_out = std::fs::read_to_string(&out_path).unwrap_or_default();
        let want_err = std::fs::read_to_string(&err_path).unwrap_or_default();
        if code != case.code {
            failures.push(format!("{}: exit {code}, expected {}\n{stderr}", case.name, case.code));
        }
        if stdout != want_out {
            failures.push(format!("{}: stdout differs\n got: {stdout}\nwant: {want_out}", case.name));
        }
        if stderr != want_err {
            failures.push(format!("{}: stderr differs\n got: {stderr}\nwant: {want_err}", case.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn runs_are_byte_identical() {
    for case in cases() {
        assert_eq!(run(&case.args), run(&case.args), "{}", case.name);
    }
}

#[test]
fn every_yes_is_verified() {
    for case in cases().iter().filter(|c| c.args[0] == "solve") {
        let (code, stdout, _) = run(&case.args);
        if code == 0 {
            let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
            assert_eq!(v["decision"], "yes");
            assert_eq!(v["verified"], true, "{}", case.name);
        }
    }
}

#[test]
fn reduced_instances_parse_and_agree() {
    let tmp = std::env::temp_dir().join(format!("groupknap-golden-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let pairs = [
        ("free_bkp.inst", "bkp", "ssp"),
        ("free_bkp_no.inst", "bkp", "ssp"),
        ("free_bsmp.inst", "bsmp", "ssop"),
        ("free_ikp.inst", "ikp", "kp"),
        ("zoe_identity.inst", "zoe", "ssp-zomega"),
        ("zoe_file.inst", "zoe", "ssp-zomega"),
        ("fxf_wp.inst", "wp", "bgwp"),
    ];
    for (file, from, to) in pairs {
        let out = tmp.join(format!("{from}-{file}"));
        let args: Vec<String> = ["reduce", file, "--from", from, "--to", to, "-o", out.to_str().unwrap()]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(run(&args).0, 0);
        let (before, _, _) = run(&["solve".into(), file.into()]);
        let (after, _, err) = run(&["solve".into(), out.to_str().unwrap().into()]);
        assert_eq!(before, after, "{file}: {err}");
    }
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn dump_graph_writes_edges() {
    let out = std::env::temp_dir().join(format!("groupknap-dump-{}.txt", std::process::id()));
    let args: Vec<String> =
        ["solve", "cyclic_ssp.inst", "--dump-graph", out.to_str().unwrap()].iter().map(|s| s.to_string()).collect();
    assert_eq!(run(&args).0, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# states "));
    let edges: Vec<Vec<&str>> = lines.filter(|l| !l.starts_with('#')).map(|l| l.split(' ').collect()).collect();
    assert!(!edges.is_empty());
    assert!(edges.iter().all(|e| e.len() == 4));
    std::fs::remove_file(&out).unwrap();
}
