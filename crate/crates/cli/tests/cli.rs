use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use consprop_cli::{cmd_build, cmd_check, cmd_decode, cmd_demo, ARTIFACTS};

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_consprop")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn negative_fixtures_are_rejected_with_locations() {
    let expected = fs::read_to_string(here("fixtures/invalid/expected.tsv")).unwrap();
    let mut n = 0;
    for line in expected.lines() {
        let (name, loc) = line.split_once('\t').unwrap();
        let path = here(&format!("fixtures/invalid/{name}.json"));
        let path = path.to_str().unwrap();
        for out in [cmd_check(path, "{}"), cmd_build(path, None)] {
            assert_eq!(out.code, 2, "{name}: {}", out.stderr);
            assert!(out.stdout.is_empty());
            assert!(out.stderr.starts_with(&format!("error: {path}: {loc}")), "{name}: {}", out.stderr);
        }
        n += 1;
    }
    let files = fs::read_dir(here("fixtures/invalid"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"));
    assert_eq!(files.count(), n);
    assert!(n >= 20);
}

#[test]
fn check_verdicts() {
    let o = cmd_check("bundled:exactly-one-p", "{P(c0)}");
    assert_eq!((o.code, o.stdout.as_str()), (0, "IN P_A\n"));
    let o = cmd_check("bundled:exactly-one-p", "{!(c0=c0)}");
    assert_eq!((o.code, o.stdout.as_str()), (1, "NOT IN P_A\n"));
    let o = cmd_check("bundled:exactly-one-p", "{P(c0), P(c1), !(c0 = c1)}");
    assert_eq!(o.code, 1);
    assert_eq!(cmd_check("bundled:exactly-one-p", "{P(c7)}").code, 2);
    assert_eq!(cmd_check(here("fixtures/missing.json").to_str().unwrap(), "{}").code, 2);
}

#[test]
fn unrealized_axiom_fails_at_a_step() {
    let o = cmd_build(here("fixtures/unrealized.json").to_str().unwrap(), None);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("step 22: dense set `user[22].0` is not dense below"), "{}", o.stderr);
}

#[test]
fn build_writes_only_declared_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = cmd_build("bundled:exactly-one-p", Some(&out));
    assert_eq!(o.code, 0, "{}", o.stderr);
    let mut names: Vec<String> =
        fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names, ["out"]);
    names = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let mut want: Vec<&str> = ARTIFACTS.to_vec();
    want.sort();
    assert_eq!(names, want);
    for name in ARTIFACTS {
        let golden = fs::read_to_string(here(&format!("golden/exactly-one-p/{name}"))).unwrap();
        assert_eq!(fs::read_to_string(out.join(name)).unwrap(), golden, "{name}");
    }
    assert_eq!(o.stdout, fs::read_to_string(out.join("summary.txt")).unwrap());
}

#[test]
fn exactly_one_p_has_a_single_p_class() {
    let model = fs::read_to_string(here("golden/exactly-one-p/model.txt")).unwrap();
    assert!(model.lines().any(|l| l == "P: {(c0)}"));
    let summary = fs::read_to_string(here("golden/exactly-one-p/summary.txt")).unwrap();
    assert!(summary.ends_with("status: OK\n"));
}

#[test]
fn decode_outputs() {
    assert_eq!(cmd_decode("wfe:{}").stdout, "{}\nack:0\nvalid\n");
    assert_eq!(cmd_decode("wfe:{(0,1)}").stdout, "{{}}\nack:1\nvalid\n");
    assert_eq!(cmd_decode("wfe:{(0,0)}").stdout, "{}\nack:0\nIllFounded (cycle 0 -> 0)\n");
    assert_eq!(cmd_decode("bits:001").stdout, "{{}}\nack:1\nvalid\n");
    assert_eq!(cmd_decode("ack:3").stdout.lines().next(), Some("{{},{{}}}"));
    assert_eq!(cmd_decode("wfe:{(0,1)").code, 2);
    assert_eq!(cmd_decode("bits:012").code, 2);
}

#[test]
fn demos() {
    let o = cmd_demo("oror-counterexample", Some(3));
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().filter(|l| l.contains(": refuted at stage")).count(), 3);
    assert_eq!(
        cmd_demo("oror-counterexample", Some(5)).stdout,
        fs::read_to_string(here("golden/oror-k5.txt")).unwrap()
    );
    assert_eq!(cmd_demo("oror-counterexample", Some(0)).code, 2);
    assert_eq!(cmd_demo("nosuch", None).code, 2);
}

#[test]
fn binary_exit_codes() {
    assert_eq!(bin(&["check", "bundled:exactly-one-p", "{P(c0)}"]).0, 0);
    assert_eq!(bin(&["check", "bundled:exactly-one-p", "{!(c0=c0)}"]).0, 1);
    assert_eq!(bin(&["check", "no/such/file.json", "{}"]).0, 2);
    assert_eq!(bin(&["demo", "nosuch"]).0, 2);
    assert_eq!(bin(&["frobnicate"]).0, 2);
    let (code, stdout, _) = bin(&["decode", "wfe:{(0,1)}"]);
    assert_eq!((code, stdout.as_str()), (0, "{{}}\nack:1\nvalid\n"));
    let (code, stdout, _) = bin(&["demo", "oror-counterexample", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.ends_with("RESULT: OK\n"));
}
