//! Runs the `sck` binary over the instance corpus and compares against stored output.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the stored files.

use std::path::{Path, PathBuf};
use std::process::Command;

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn sck(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sck"))
        .args(args)
        .current_dir(instances())
        .env_remove("SCK_LIMIT")
        .output()
        .expect("spawn sck");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

const CASES: &[(&str, &[&str])] = &[
    ("check-poset-sierpinski", &["check-poset", "--input", "sierpinski.json"]),
    ("check-poset-cycle", &["check-poset", "--input", "cycle.json"]),
    ("downsets-m3", &["downsets", "--input", "diamond-m3.json"]),
    ("is-distributive-m3", &["is-distributive", "--input", "diamond-m3.json"]),
    ("is-distributive-sierpinski", &["is-distributive", "--input", "sierpinski.json"]),
    ("idealoid-check-gap", &["idealoid-check", "--input", "chain3-gap.json"]),
    ("idealoid-check-strict", &["idealoid-check", "--input", "chain4-strict.json"]),
    ("subdivisible-strict", &["subdivisible", "--input", "chain4-strict.json"]),
    ("subdivisible-full", &["subdivisible", "--input", "chain4-full.json"]),
    ("subdivisible-glued", &["subdivisible", "--input", "glued-interval.json"]),
    ("sd-core-strict", &["sd-core", "--input", "chain4-strict.json"]),
    ("sd-core-dint", &["sd-core", "--input", "dint-way-below.json"]),
    ("chain-strict", &["chain", "--input", "chain4-strict.json", "--x", "0", "--y", "3"]),
    ("chain-dint", &["chain", "--input", "dint-way-below.json", "--x", "up:3/4", "--y", "up:1/4", "--depth", "2"]),
    ("chain-glued-points", &["chain", "--input", "glued-interval.json", "--x", "0", "--y", "1", "--depth", "2"]),
    ("minkowski-third", &["minkowski", "--value", "1/3"]),
    ("minkowski-inverse", &["minkowski", "--value", "3/8", "--inverse"]),
    ("restricted-sierpinski", &["restricted", "--input", "sierpinski-rather-below.json", "--x", "{};{a}"]),
    ("restricted-principal", &["restricted", "--input", "chain4-full.json"]),
    ("sequentialize-strict", &["sequentialize", "--input", "chain4-strict.json", "--x", "3"]),
    ("arrow-idealoid-glued", &["arrow-idealoid", "--input", "glued-interval.json"]),
    ("arrow-idealoid-strict", &["arrow-idealoid", "--input", "chain4-strict.json", "--x", "0->2", "--y", "1->3"]),
    ("back-and-forth", &["back-and-forth", "--x", "dyadic:[0,1]", "--y", "rational:[0,1]", "--steps", "6"]),
    ("way-below-sierpinski", &["way-below", "--input", "sierpinski.json"]),
    ("way-below-dint", &["way-below", "--input", "dint.json", "--x", "up:1/2", "--y", "up:1/4"]),
    ("continuous-dint", &["continuous-check", "--input", "dint.json"]),
    ("section-cofinite", &["section", "--input", "cofinite.json"]),
    ("flachsmeyer-sierpinski", &["flachsmeyer", "--input", "sierpinski.json"]),
    ("flachsmeyer-dint-op", &["flachsmeyer", "--input", "dint-op.json"]),
    ("rather-below-sierpinski", &["rather-below", "--input", "sierpinski.json"]),
    ("regular-sierpinski", &["regular-check", "--input", "sierpinski.json"]),
    ("regular-antichain", &["regular-check", "--input", "antichain2.json"]),
    ("compactify-sierpinski", &["compactify", "--input", "sierpinski.json"]),
    ("compactify-dint", &["compactify", "--input", "dint.json"]),
    ("vsc-dint", &["vsc", "--input", "dint.json"]),
    ("dual-sierpinski", &["dual", "--input", "sierpinski.json"]),
    ("dual-dint", &["dual", "--input", "dint.json"]),
    ("patch-dint", &["patch", "--input", "dint.json"]),
    ("nachbin-sierpinski", &["nachbin", "--input", "sierpinski.json"]),
    ("perfect-inclusion", &["perfect-check", "--input", "open-point-inclusion.json"]),
    ("perfect-square", &["perfect-check", "--input", "dint-square.json"]),
    ("perfect-step", &["perfect-check", "--input", "dint-step.json"]),
    ("ksat-sierpinski", &["ksat", "--input", "sierpinski.json"]),
    ("ksat-dint", &["ksat", "--input", "dint.json"]),
    ("excisive-product", &["excisive-check", "--input", "presheaf-product.json"]),
    ("excisive-not", &["excisive-check", "--input", "presheaf-not-excisive.json"]),
    ("sheafify-jump-third", &["sheafify", "--input", "jump-third.json", "--at", "up:1/3"]),
    ("sheafify-jump-half", &["sheafify", "--input", "jump-third.json", "--at", "1/2"]),
    ("sheafify-product", &["sheafify", "--input", "presheaf-product.json"]),
    ("flachsmeyer-image-third", &["flachsmeyer-image", "--input", "jump-third.json"]),
    ("flachsmeyer-image-cut", &["flachsmeyer-image", "--input", "jump-closed-cut.json"]),
    ("ksheaf-third", &["ksheaf", "--input", "jump-third.json", "--at", "[1/3,1]"]),
    ("ksheaf-cut-raw", &["ksheaf", "--input", "jump-closed-cut.json", "--at", "1/2", "--raw"]),
    ("verdier-sierpinski", &["verdier", "--input", "sheaf-sierpinski.json"]),
    ("verdier-roundtrip-sierpinski", &["verdier-roundtrip", "--input", "sheaf-sierpinski.json"]),
    ("verdier-roundtrip-random", &["verdier-roundtrip", "--trials", "5", "--seed", "3"]),
    ("complex-homology-circle", &["complex-homology", "--input", "complex-circle.json"]),
    ("json-minkowski", &["minkowski", "--value", "1/3", "--format", "json"]),
    ("dot-downsets", &["downsets", "--input", "sierpinski.json", "--format", "dot"]),
    ("error-missing-file", &["check-poset", "--input", "no-such-file.json"]),
    ("error-dot-unsupported", &["minkowski", "--value", "1/3", "--format", "dot"]),
];

fn render(r: &Run) -> String {
    format!("{}[exit {}]\n", r.stdout, r.code)
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    if update {
        std::fs::create_dir_all(&dir).unwrap();
    }
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let got = render(&sck(args));
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if got != want {
            mismatches.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn every_case_is_deterministic() {
    for (name, args) in CASES.iter().step_by(5) {
        assert_eq!(render(&sck(args)), render(&sck(args)), "{name}");
    }
}

#[test]
fn exit_codes_follow_status() {
    for (name, args) in CASES {
        let r = sck(args);
        let status = r.stdout.lines().find_map(|l| l.strip_prefix("status: "));
        let want = match status {
            Some("pass") => 0,
            Some("fail") => 1,
            Some("error") => 2,
            _ => continue,
        };
        assert_eq!(r.code, want, "{name}");
    }
}

#[test]
fn json_reports_have_fixed_keys() {
    for (name, args) in CASES.iter().filter(|(_, a)| a.contains(&"--input")).take(20) {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let r = sck(&a);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{name}: {e}"));
        for key in ["status", "command", "payload", "counterexample"] {
            assert!(v.get(key).is_some(), "{name} lacks {key}");
        }
    }
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    let r = sck(&["no-such-command"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(!r.stderr.is_empty());
    let r = sck(&["chain", "--input", "chain4-strict.json", "--x", "0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_exits_zero() {
    let r = sck(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sd-core"));
}

/// Node labels in a DOT lattice are the downset ids that `check-poset`-style reports print.
#[test]
fn dot_labels_round_trip() {
    let dot = sck(&["downsets", "--input", "diamond-m3.json", "--format", "dot"]).stdout;
    let text = sck(&["downsets", "--input", "diamond-m3.json", "--format", "json"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut want: Vec<String> = v["payload"]["downsets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    let mut got: Vec<String> = dot
        .lines()
        .filter_map(|l| l.split_once("[label=\"").map(|(_, r)| r.trim_end_matches("\"];").to_string()))
        .collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!(edges, v["payload"]["lattice_covers"].as_array().unwrap().len());
}

#[test]
fn limit_flag_is_enforced() {
    let r = sck(&["downsets", "--input", "diamond-m3.json", "--limit", "2"]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    let r = Command::new(env!("CARGO_BIN_EXE_sck"))
        .args(["downsets", "--input", "diamond-m3.json"])
        .current_dir(instances())
        .env("SCK_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(r.status.code(), Some(2));
}
