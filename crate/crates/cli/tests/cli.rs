use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn antipath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antipath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", s(&p)]);
    let out = antipath(&all);
    assert_eq!(code(&out), 0, "{}", text(&out.stderr));
    p
}

#[test]
fn find_then_verify() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "t7.graph", &["tournament-union", "--k", "7"]);
    for o in ["forward-first", "backward-first"] {
        let cert = dir.path().join(format!("{o}.json"));
        let out = antipath(&[
            "find",
            s(&g),
            "--k",
            "4",
            "--orientation",
            o,
            "-o",
            s(&cert),
        ]);
        assert_eq!(code(&out), 0, "{}", text(&out.stderr));
        let out = antipath(&["verify", s(&g), s(&cert)]);
        assert_eq!(code(&out), 0, "{}", text(&out.stderr));
        assert!(text(&out.stdout).contains(&format!("antipath of length 4 ({o})")));
    }
}

#[test]
fn certificate_goes_to_stdout() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "t7.graph", &["tournament-union", "--k", "7"]);
    let out = antipath(&["find", s(&g), "--k", "3"]);
    assert_eq!(code(&out), 0);
    let json = text(&out.stdout);
    assert!(json.contains("\"kind\": \"antipath\""));
    assert!(json.contains("\"orientation\": \"forward-first\""));
    assert!(json.contains("\"graph_hash\""));
}

#[test]
fn triangle_is_not_guaranteed() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.graph", "oriented 3 3\n0 1\n1 2\n2 0\n");
    let out = antipath(&["find", s(&g), "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(text(&out.stdout).contains("not_guaranteed"));
    let cert = write(&dir, "tri.json", &text(&out.stdout));
    let out = antipath(&["verify", s(&g), s(&cert)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn malformed_files_report_positions() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.graph", "oriented 3 2\n0 1\n1 0\n");
    let out = antipath(&["find", s(&g), "--k", "3"]);
    assert_eq!(code(&out), 1);
    let err = text(&out.stderr);
    assert!(
        err.contains("bad.graph:3:1:") && err.contains("2-cycle"),
        "{err}"
    );

    let g = write(&dir, "bad2.graph", "oriented 3 1\n0 z\n");
    let err = text(&antipath(&["oracle", s(&g)]).stderr);
    assert!(err.contains("bad2.graph:2:3:"), "{err}");
}

#[test]
fn unsupported_k_is_an_error() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "t7.graph", &["tournament-union", "--k", "7"]);
    let out = antipath(&["find", s(&g), "--k", "2"]);
    assert_eq!(code(&out), 1);
    assert!(text(&out.stderr).contains("k = 2"));
}

#[test]
fn verify_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "t7.graph", &["tournament-union", "--k", "7"]);
    let out = antipath(&["find", s(&g), "--k", "4"]);
    let json = text(&out.stdout);

    // Swap the second and third vertices.
    let start = json.find("\"vertices\": [").unwrap() + "\"vertices\": [".len();
    let end = start + json[start..].find(']').unwrap();
    let mut verts: Vec<String> = json[start..end]
        .split(',')
        .map(|v| v.trim().to_string())
        .collect();
    verts.swap(1, 2);
    let swapped = format!("{}{}{}", &json[..start], verts.join(", "), &json[end..]);
    let cert = write(&dir, "swapped.json", &swapped);
    let out = antipath(&["verify", s(&g), s(&cert)]);
    assert_eq!(code(&out), 1);
    let err = text(&out.stderr);
    assert!(
        err.contains("alternate") || err.contains("no edge"),
        "{err}"
    );

    let other = gen(&dir, "t9.graph", &["tournament-union", "--k", "9"]);
    let cert = write(&dir, "orig.json", &json);
    let out = antipath(&["verify", s(&other), s(&cert)]);
    assert_eq!(code(&out), 1);
    assert!(text(&out.stderr).contains("hash mismatch"));
}

#[test]
fn oracle_fixtures() {
    let dir = TempDir::new().unwrap();
    let blowup = gen(&dir, "b.graph", &["blowup", "--ell", "3", "--s", "2"]);
    let out = antipath(&["oracle", s(&blowup)]);
    assert_eq!(code(&out), 0);
    assert!(text(&out.stdout).contains("max length: 3"));

    let tri = write(&dir, "tri.graph", "oriented 3 3\n0 1\n1 2\n2 0\n");
    assert!(text(&antipath(&["oracle", s(&tri)]).stdout).contains("max length: 1"));

    let empty = write(&dir, "e.graph", "oriented 4 0\n");
    assert!(text(&antipath(&["oracle", s(&empty)]).stdout).contains("max length: 0"));

    let big = gen(
        &dir,
        "r.graph",
        &["random-tournament", "--n", "16", "--seed", "1"],
    );
    let out = antipath(&["oracle", s(&big), "--budget", "50"]);
    assert_eq!(code(&out), 4);
    assert!(text(&out.stdout).contains("inexact"));
}

#[test]
fn generators() {
    let dir = TempDir::new().unwrap();
    let u = gen(
        &dir,
        "u.graph",
        &["tournament-union", "--k", "5", "--copies", "2"],
    );
    assert!(fs::read_to_string(u)
        .unwrap()
        .starts_with("oriented 10 20\n"));
    let b = gen(&dir, "b.graph", &["blowup", "--ell", "3", "--s", "2"]);
    assert!(fs::read_to_string(b)
        .unwrap()
        .starts_with("oriented 6 12\n"));

    let a = gen(
        &dir,
        "a.graph",
        &["random-tournament", "--n", "20", "--seed", "7"],
    );
    let b = gen(
        &dir,
        "b2.graph",
        &["random-tournament", "--n", "20", "--seed", "7"],
    );
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());

    let out = antipath(&["gen", "tournament-union", "--k", "4"]);
    assert_eq!(code(&out), 1);
    let out = antipath(&["gen", "random-oriented", "--n", "5", "--p", "1.5"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn dense_flag() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "r.graph",
        &["random-tournament", "--n", "30", "--seed", "3"],
    );
    let cert = dir.path().join("c.json");
    let out = antipath(&["find", s(&g), "--k", "8", "--dense", "-o", s(&cert)]);
    assert_eq!(code(&out), 0, "{}", text(&out.stderr));
    assert_eq!(code(&antipath(&["verify", s(&g), s(&cert)])), 0);
}

#[test]
fn stress_smoke_and_dot() {
    let out = antipath(&[
        "stress",
        "random-tournaments",
        "--trials",
        "5",
        "--seed",
        "9",
    ]);
    assert_eq!(code(&out), 0, "{}", text(&out.stdout));
    assert!(text(&out.stdout).contains("failures 0"));

    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.graph", "oriented 3 3\n0 1\n1 2\n2 0\n");
    let out = antipath(&["dot", s(&g)]);
    assert!(text(&out.stdout).contains("2 -> 0;"));
}
