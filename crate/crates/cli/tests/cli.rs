use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const LOOP: &str = "graph loop\nvertex v: e.1 e.2\nedge e: twist=0\n";
const TEMPLATE: &str = "graph t\nvertex u: a.1 h1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=1\n";
const IDENTITY: &str = "graph identity\nvertex u: hm!m p.1\nvertex w: hn!n p.2\nedge p: twist=0\n";
/// The identity piece reversed at `w` but listed without the flip flag.
const MISLABELED: &str = "graph turned\nvertex u: hm!m p.1\nvertex w: p.2 hn!n\nedge p: twist=1\n";
const MELON: &str = "cgraph m rank=3 bipartite\nvertex u +\nvertex w -\n\
    edge c0: u w color=0\nedge c1: u w color=1\nedge c2: u w color=2\nedge c3: u w color=3\n";
const ONE_EDGE_MELON: &str = "cgraph t rank=3 bipartite\nvertex u +\nvertex w -\nedge c0: u w color=0\n\
    half hu1: u color=1\nhalf hu2: u color=2\nhalf hu3: u color=3\n\
    half hw1: w color=1\nhalf hw2: w color=2\nhalf hw3: w color=3\n";
const DIPOLE: &str = "cgraph d rank=3 bipartite\nvertex u +\nvertex w -\n\
    edge c1: u w color=1\nedge c2: u w color=2\nedge c3: u w color=3\n\
    half m: w color=0 mark=m\nhalf n: u color=0 mark=n\n";
/// One color-1 edge between the marked vertices; other legs open.
const SHORT_PIECE: &str = "cgraph s rank=3\nvertex u\nvertex w\nedge p: u w color=1\n\
    half m: u color=0 mark=m\nhalf n: w color=0 mark=n\n\
    half hu2: u color=2\nhalf hu3: u color=3\nhalf hw2: w color=2\nhalf hw3: w color=3\n";

fn herg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herg"))
        .args(args)
        .current_dir(dir)
        .env_remove("HERG_MAX_EDGES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, files: &[(&str, &str)]) {
    for (name, text) in files {
        std::fs::write(dir.join(name), text).unwrap();
    }
}

fn verdicts(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["verdict"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn loop_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), &[("loop.herg", LOOP)]);
    let out = herg(&["poly", "--kind", "R", "loop.herg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["text"], "y + 1");
}

#[test]
fn melon_invariant_full_state_term() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), &[("m.ctg", MELON)]);
    let out = herg(&["poly", "--kind", "T", "--alpha", "3=1", "m.ctg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = json(&out)["text"].as_str().unwrap().to_string();
    assert!(text.contains("y^3*z^11"), "{text}");
    let half = herg(&["stranded", "poly", "--alpha", "3=1/2", "m.ctg"], dir.path());
    assert!(json(&half)["text"].as_str().unwrap().contains("y^3*z^9"));
}

#[test]
fn parse_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        &[
            ("bad.herg", "garbage\n"),
            ("clash.ctg", "cgraph g rank=3\nvertex u\nvertex w\nedge a: u w color=1\nedge b: u w color=1\n"),
            ("dangling.herg", "graph g\nvertex v: e.1\nedge e: twist=0\n"),
        ],
    );
    assert_eq!(herg(&["stats", "bad.herg"], dir.path()).status.code(), Some(1));
    assert_eq!(herg(&["stats", "missing.herg"], dir.path()).status.code(), Some(1));
    assert_eq!(herg(&["stranded", "bubbles", "clash.ctg"], dir.path()).status.code(), Some(2));
    assert_ne!(herg(&["stats", "dangling.herg"], dir.path()).status.code(), Some(0));
}

#[test]
fn edge_limit_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), &[("t.herg", TEMPLATE)]);
    let out = Command::new(env!("CARGO_BIN_EXE_herg"))
        .args(["poly", "--kind", "Zherg", "t.herg"])
        .current_dir(dir.path())
        .env("HERG_MAX_EDGES", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HERG_MAX_EDGES"));
}

#[test]
fn graph_views() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), &[("t.herg", TEMPLATE)]);
    let stats = json(&herg(&["stats", "t.herg"], dir.path()));
    assert_eq!(stats["stats"]["k"], 1);
    let faces = json(&herg(&["faces", "t.herg"], dir.path()));
    assert!(!faces["faces"].as_array().unwrap().is_empty());
    let b = json(&herg(&["boundary", "t.herg"], dir.path()));
    assert_eq!(b["boundary"]["vertices"], serde_json::json!(["h1"]));
}

#[test]
fn identity_manifest_passes_every_mode() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        &[
            ("t.herg", TEMPLATE),
            ("id.herg", IDENTITY),
            ("id.manifest", "template t.herg\npiece a id.herg\npiece b id.herg\n"),
        ],
    );
    for mode in ["s12", "theorem"] {
        let out = herg(&["decomp", "verify", "--manifest", "id.manifest", "--mode", mode], dir.path());
        assert_eq!(out.status.code(), Some(0), "{mode}");
        assert!(verdicts(&json(&out)).iter().all(|v| v == "pass"));
    }
    let general = herg(&["decomp", "verify", "--manifest", "id.manifest", "--mode", "general"], dir.path());
    assert_eq!(general.status.code(), Some(0));
    assert!(verdicts(&json(&general)).iter().all(|v| v.starts_with("skipped(")));
    let dumped = json(&herg(&["decomp", "verify", "--manifest", "id.manifest", "--dump-matrices"], dir.path()));
    assert_eq!(dumped["details"]["template_states"].as_array().unwrap().len(), 4);
    assert_eq!(dumped["inputs"].as_object().unwrap().len(), 3);
    let m = json(&herg(&["decomp", "matrices", "--manifest", "id.manifest"], dir.path()));
    assert_eq!(m["template_states"].as_array().unwrap().len(), 4);
}

#[test]
fn mislabeled_arc_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        &[
            ("t.herg", TEMPLATE),
            ("id.herg", IDENTITY),
            ("turned.herg", MISLABELED),
            ("bad.manifest", "template t.herg\npiece a turned.herg\npiece b id.herg\n"),
            ("flagged.manifest", "template t.herg\npiece a turned.herg flip\npiece b id.herg\n"),
            ("short.manifest", "template t.herg\npiece a id.herg\n"),
        ],
    );
    let out = herg(&["decomp", "verify", "--manifest", "bad.manifest"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert!(verdicts(&report).contains(&"fail".to_string()));
    assert!(!report["counterexamples"].as_array().unwrap().is_empty());
    assert_eq!(report["details"]["screens_pass"], false);
    let flagged = herg(&["decomp", "verify", "--manifest", "flagged.manifest"], dir.path());
    assert_eq!(flagged.status.code(), Some(0));
    assert_eq!(herg(&["decomp", "verify", "--manifest", "short.manifest"], dir.path()).status.code(), Some(2));
}

#[test]
fn stranded_verification() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        &[
            ("t.ctg", ONE_EDGE_MELON),
            ("m.ctg", MELON),
            ("d.ctg", DIPOLE),
            ("s.ctg", SHORT_PIECE),
            ("ok.manifest", "template t.ctg\npiece c0 d.ctg\n"),
            (
                "full.manifest",
                "template m.ctg\npiece c0 s.ctg\npiece c1 d1.ctg\npiece c2 d2.ctg\npiece c3 d3.ctg\n",
            ),
        ],
    );
    let ok = herg(&["stranded", "verify", "--manifest", "ok.manifest"], dir.path());
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    assert!(verdicts(&json(&ok)).iter().all(|v| v == "pass"));
    for c in 1..=3 {
        let swapped = DIPOLE
            .replace(&format!("color={c}"), "color=X")
            .replace("color=0", &format!("color={c}"))
            .replace("color=X", "color=0");
        write(dir.path(), &[(&format!("d{c}.ctg"), &swapped)]);
    }
    let full = herg(&["stranded", "verify", "--manifest", "full.manifest"], dir.path());
    assert_eq!(full.status.code(), Some(3));
    assert!(!json(&full)["counterexamples"].as_array().unwrap().is_empty());
    let b = json(&herg(&["stranded", "bubbles", "m.ctg"], dir.path()));
    assert_eq!(b["stats"]["bubbles"], serde_json::json!([2, 4, 6, 4]));
}

#[test]
fn random_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = herg(&["random", "herg", "--seed", "1", "--count", "5", "--edges", "3"], dir.path());
    let b = herg(&["random", "herg", "--seed", "1", "--count", "5", "--edges", "3"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = herg(&["random", "colored", "--seed", "2", "--count", "3", "--out", "col"], dir.path());
    assert_eq!(c.status.code(), Some(0));
    assert!(dir.path().join("col/c0.ctg").exists());
    let again = herg(&["random", "colored", "--seed", "2", "--count", "3"], dir.path());
    assert_eq!(json(&c)["digest"], json(&again)["digest"]);
    assert_eq!(herg(&["random", "colored", "--seed", "2", "--rank", "1"], dir.path()).status.code(), Some(2));
}

#[test]
fn random_manifests_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = herg(&["random", "manifests", "--seed", "4", "--count", "3", "--out", "r"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let index = json(&out);
    for inst in index["instances"].as_array().unwrap() {
        assert_eq!(inst["screened"], true);
        let m = format!("r/{}", inst["manifest"].as_str().unwrap());
        let v = herg(&["decomp", "verify", "--manifest", &m], dir.path());
        assert_eq!(v.status.code(), Some(0), "{m}");
    }
    let col = herg(&["random", "manifests", "--seed", "4", "--count", "2", "--colored", "--out", "c"], dir.path());
    assert_eq!(col.status.code(), Some(0));
    let m = format!("c/{}", json(&col)["instances"][0]["manifest"].as_str().unwrap());
    let v = herg(&["stranded", "verify", "--manifest", &m], dir.path());
    assert!(matches!(v.status.code(), Some(0) | Some(3)));
}
