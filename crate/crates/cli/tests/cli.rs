use std::path::{Path, PathBuf};
use std::process::Command;

use autalg_core::first_type::semigroupify;
use autalg_core::schema::{parse, Object};
use autalg_core::DEFAULT_CAP;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn autalg(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_autalg")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn check_exit_codes() {
    assert_eq!(autalg(&["check", &f("trivial-first.json")]).0, 0);
    let (code, out) = autalg(&["check", &f("corrupted-semigroup.json")]);
    assert_eq!(code, 1);
    assert_eq!(out["witness"]["axiom"], "output");
    let (code, out) = autalg(&["check", &f("bad-range.json")]);
    assert_eq!(code, 2);
    assert!(out["error"].as_str().unwrap().contains("next[1][0]"));
    assert_eq!(autalg(&["check", &f("malformed.json")]).0, 2);
    assert_eq!(autalg(&["check", "/nonexistent/file.json"]).0, 2);
    assert_eq!(autalg(&["bogus-verb"]).0, 2);
}

#[test]
fn triples_need_components() {
    assert_eq!(autalg(&["check", &f("triple-semigroup.json")]).0, 2);
    let ok = autalg(&["check", &f("triple-semigroup.json"), "--with", &f("swap-semigroup.json"), &f("swap-semigroup.json")]);
    assert_eq!(ok.0, 0);
    let bad = autalg(&["check", &f("triple-broken.json"), "--with", &f("swap-semigroup.json"), &f("swap-semigroup.json")]);
    assert_eq!(bad.0, 1);
    assert_eq!(bad.1["witness"]["law"], "crossed-homomorphism");
    let mixed = autalg(&["check", &f("triple-pure.json"), "--with", &f("swap.json"), &f("swap-semigroup.json")]);
    assert_eq!(mixed.0, 2);
}

#[test]
fn semigroupify_writes_a_checkable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let (code, res) = autalg(&[
        "construct",
        "semigroupify",
        &f("swap.json"),
        "--output",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(res["artifact_paths"].as_array().unwrap().len(), 2);
    let written = parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let Object::FirstPure(pure) = parse(&std::fs::read_to_string(fixture("swap.json")).unwrap()).unwrap() else {
        panic!()
    };
    assert_eq!(written, Object::FirstSemigroup(semigroupify(&pure, DEFAULT_CAP).unwrap()));
    let Object::FirstSemigroup(g) = &written else { panic!() };
    assert_eq!(g.gamma().order(), 2);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    assert_eq!(autalg(&["check", out.to_str().unwrap()]).0, 0);
}

#[test]
fn wreath_cap_is_an_input_error() {
    let (code, res) = autalg(&["construct", "wreath", &f("swap-semigroup.json"), &f("swap-semigroup.json"), "--cap", "4"]);
    assert_eq!(code, 2);
    assert!(res["error"].as_str().unwrap().contains("cap"));
    let (code, res) = autalg(&["construct", "wreath", &f("swap-semigroup.json"), &f("swap-semigroup.json")]);
    assert_eq!(code, 0);
    assert_eq!(res["value"]["semigroup"]["order"], 8);
}

#[test]
fn quotient_incompatibility_has_a_word_pair() {
    let (code, res) = autalg(&["construct", "quotient", &f("constant-swap.json"), &f("mu-swap.json"), &f("nu-z3.json"), "--max-len", "6"]);
    assert_eq!(code, 1);
    let w = &res["witness"];
    assert_ne!(w["u"], w["v"]);
    assert_eq!(w["conflict"]["kind"], "output");
    let (code, _) = autalg(&["construct", "quotient", &f("constant-swap.json"), &f("mu-swap.json"), &f("nu-z2.json")]);
    assert_eq!(code, 0);
}

#[test]
fn group_verbs() {
    let (code, res) = autalg(&["group", "apply", &f("odometer.json"), "00"]);
    assert_eq!(code, 0);
    assert_eq!(res["value"], "1 0");
    assert_eq!(autalg(&["group", "apply", &f("odometer.json"), "1 1 0"]).1["value"], "0 0 1");
    let (code, res) = autalg(&["group", "equal", &f("identity.json"), &f("identity.json")]);
    assert_eq!((code, res["value"].clone()), (0, Value::Bool(true)));
    let (code, res) = autalg(&["group", "equal", &f("odometer.json"), &f("identity.json")]);
    assert_eq!(code, 1);
    assert_eq!(res["witness"]["word"], "0");
    assert_eq!(autalg(&["group", "order", &f("grigorchuk-a.json")]).1["value"], 2);
    assert_eq!(autalg(&["group", "order", &f("odometer.json"), "--max-power", "16"]).0, 1);
    assert_eq!(autalg(&["group", "invert", &f("non-invertible.json")]).0, 2);
    assert_eq!(autalg(&["group", "order", &f("non-invertible.json")]).0, 2);
    assert_eq!(autalg(&["group", "apply", &f("odometer.json"), "2"]).0, 2);
}

#[test]
fn composed_generators_match() {
    let dir = tempfile::tempdir().unwrap();
    let bc = dir.path().join("bc.json");
    let code = autalg(&["group", "compose", &f("grigorchuk-b.json"), &f("grigorchuk-c.json"), "--output", bc.to_str().unwrap()]).0;
    assert_eq!(code, 0);
    assert_eq!(autalg(&["group", "equal", bc.to_str().unwrap(), &f("grigorchuk-d.json"), "--depth", "10"]).0, 0);
    let inv = dir.path().join("inv.json");
    assert_eq!(autalg(&["group", "invert", &f("odometer.json"), "--output", inv.to_str().unwrap()]).0, 0);
    assert_eq!(autalg(&["group", "apply", inv.to_str().unwrap(), "0 0 1"]).1["value"], "1 1 0");
}

#[test]
fn mapping_verbs() {
    let (code, res) = autalg(&["mapping", "apply", &f("odometer.json"), "0 1 1"]);
    assert_eq!((code, res["value"].as_str().unwrap()), (0, "1 1 1"));
    assert_eq!(autalg(&["mapping", "decode", &f("odometer.json"), "1 1 1"]).1["value"], "0 1 1");
    assert_eq!(autalg(&["mapping", "apply", &f("odometer.json"), "--state", "1", "0 1"]).1["value"], "0 1");
    assert_eq!(autalg(&["mapping", "decode", &f("non-invertible.json"), "0"]).0, 2);
    assert_eq!(autalg(&["mapping", "apply", &f("odometer.json"), "--state", "5", "0"]).0, 2);
}

#[test]
fn serial_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let back = dir.path().join("back.json");
    assert_eq!(autalg(&["construct", "serial", &f("parity-quotient.json"), "--output", s.to_str().unwrap()]).0, 0);
    assert_eq!(autalg(&["check", s.to_str().unwrap()]).0, 0);
    assert_eq!(autalg(&["construct", "derive-second", s.to_str().unwrap(), "--output", back.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read_to_string(back).unwrap(), std::fs::read_to_string(fixture("parity-quotient.json")).unwrap());
    let (code, res) = autalg(&["construct", "derive-second", &f("corrupted-serial.json")]);
    assert_eq!(code, 1);
    assert_eq!(res["witness"]["law"], "cocycle");
}

#[test]
fn embed_reports_the_canonical_map() {
    let (code, res) = autalg(&["construct", "embed", &f("swap-semigroup.json"), &f("swap-semigroup.json"), &f("triple-semigroup.json")]);
    assert_eq!(code, 0);
    assert_eq!(res["value"]["wreath_order"], 8);
    assert_eq!(res["value"]["injective"], true);
    let (code, _) = autalg(&["construct", "embed", &f("swap-semigroup.json"), &f("swap-semigroup.json"), &f("triple-broken.json")]);
    assert_eq!(code, 1);
}
