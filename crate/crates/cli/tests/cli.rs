use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pef::oracle::blown_up_c5;
use serde_json::Value;
use tempfile::TempDir;

fn pef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pef"))
        .args(args)
        .env_remove("PEF_SEED")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn cycle_text(n: usize) -> String {
    let mut s = format!("c cycle of length {n}\np edge {n} {n}\n");
    for i in 1..=n {
        s += &format!("e {} {}\n", i, i % n + 1);
    }
    s
}

fn wheel_text(k: usize) -> String {
    let mut s = cycle_text(k).replace(
        &format!("p edge {k} {k}"),
        &format!("p edge {} {}", k + 1, 2 * k),
    );
    for i in 1..=k {
        s += &format!("e {} {}\n", k + 1, i);
    }
    s
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn recognize_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", &cycle_text(5));
    let c6 = write(&dir, "c6.txt", &cycle_text(6));
    let bad = write(&dir, "bad.txt", "p edge 3 1\ne 1 9\n");

    let out = pef(&["recognize", s(&c5)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"]["verdict"], "free");

    let out = pef(&["recognize", "--witness", s(&c6)]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    let witness = &report["artifacts"][0]["witness"];
    assert_eq!(witness["type"], "even-hole");
    assert_eq!(witness["hole"].as_array().unwrap().len(), 6);

    let out = pef(&["recognize", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&pef(&["recognize", s(&missing)])), 2);
}

#[test]
fn batch_keeps_input_order_and_worst_code() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", &cycle_text(5));
    let c6 = write(&dir, "c6.txt", &cycle_text(6));
    let c7 = write(&dir, "c7.txt", &cycle_text(7));
    let out = pef(&["recognize", s(&c6), s(&c5), s(&c7)]);
    assert_eq!(code(&out), 1);
    let reports = json(&out);
    let verdicts: Vec<_> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["summary"]["verdict"].clone())
        .collect();
    assert_eq!(verdicts, ["forbidden", "free", "free"]);
    assert_eq!(reports[0]["input"]["path"], s(&c6));
}

#[test]
fn emitted_artifacts_verify_in_a_fresh_process() {
    let dir = TempDir::new().unwrap();
    let blowup = write(&dir, "blowup.txt", &blown_up_c5(2).to_dimacs());
    for args in [
        vec!["recognize", "--certificate", "--witness", "--verify"],
        vec!["color", "--verify"],
        vec!["treewidth", "--verify"],
        vec!["arcs", "--verify"],
    ] {
        let mut full = args.clone();
        full.push(s(&blowup));
        let out = pef(&full);
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = write(&dir, "report.json", &String::from_utf8(out.stdout).unwrap());
        let check = pef(&["verify", s(&blowup), s(&report)]);
        assert_eq!(
            code(&check),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&check.stdout)
        );
        assert_eq!(json(&check)["valid"], true);
    }
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", &cycle_text(5));
    let c6 = write(&dir, "c6.txt", &cycle_text(6));

    let out = pef(&["recognize", "--certificate", s(&c5)]);
    let mut report = json(&out);
    let cert = report["artifacts"][0]["certificate"].clone();
    let mut bare = cert.clone();
    bare["artifact"] = "certificate".into();
    let good = write(&dir, "cert.json", &bare.to_string());
    assert_eq!(code(&pef(&["verify", s(&c5), s(&good)])), 0);

    // Swap two bags of the buoy: adjacency between consecutive bags breaks.
    let bags = &mut bare["atoms"][0]["certificate"]["bags"];
    let first = bags[0].clone();
    bags[0] = bags[2].clone();
    bags[2] = first;
    let tampered = write(&dir, "tampered.json", &bare.to_string());
    let out = pef(&["verify", s(&c5), s(&tampered)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);

    // The same tampering inside a full report.
    report["artifacts"][0]["certificate"]["atoms"][0]["certificate"]["bags"] =
        bare["atoms"][0]["certificate"]["bags"].clone();
    let tampered = write(&dir, "tampered-report.json", &report.to_string());
    assert_eq!(code(&pef(&["verify", s(&c5), s(&tampered)])), 1);

    let out = pef(&["recognize", "--witness", s(&c6)]);
    let mut witness = json(&out)["artifacts"][0]["witness"].clone();
    let whole = write(
        &dir,
        "c6-report.json",
        &String::from_utf8(out.stdout).unwrap(),
    );
    assert_eq!(code(&pef(&["verify", s(&c5), s(&whole)])), 1);
    assert_eq!(code(&pef(&["verify", s(&c6), s(&whole)])), 0);
    witness["artifact"] = "witness".into();
    let bare = write(&dir, "c6-witness.json", &witness.to_string());
    assert_eq!(code(&pef(&["verify", s(&c5), s(&bare)])), 1);
    assert_eq!(code(&pef(&["verify", s(&c6), s(&bare)])), 0);

    let junk = write(&dir, "junk.json", "{\"artifact\": \"nonsense\"}");
    assert_eq!(code(&pef(&["verify", s(&c5), s(&junk)])), 2);
}

#[test]
fn color_examples() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", &cycle_text(5));
    let w5 = write(&dir, "w5.txt", &wheel_text(5));
    let c6 = write(&dir, "c6.txt", &cycle_text(6));
    let out = pef(&["color", s(&c5)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"]["chi"], 3);
    let out = pef(&["color", s(&w5)]);
    assert_eq!(code(&out), 0);
    let oracle = json(&pef(&["oracle", "chromatic", s(&w5)]));
    assert_eq!(json(&out)["summary"]["chi"], oracle["result"]["chi"]);
    assert_eq!(oracle["result"]["chi"], 4);
    let out = pef(&["color", s(&c6)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["artifacts"][0]["artifact"], "witness");
}

#[test]
fn treewidth_and_arcs_examples() {
    let dir = TempDir::new().unwrap();
    let blowup = write(&dir, "blowup.txt", &blown_up_c5(2).to_dimacs());
    let c5 = write(&dir, "c5.txt", &cycle_text(5));
    let c6 = write(&dir, "c6.txt", &cycle_text(6));
    let out = pef(&["treewidth", s(&blowup)]);
    assert_eq!(json(&out)["summary"]["width"], 5);
    assert_eq!(json(&out)["summary"]["omega"], 4);
    let out = pef(&["treewidth", s(&c5)]);
    assert_eq!(json(&out)["summary"]["width"], 2);
    assert_eq!(code(&pef(&["treewidth", s(&c6)])), 1);
    assert_eq!(code(&pef(&["arcs", s(&c6)])), 1);

    let dot = pef(&["treewidth", "--format", "dot", s(&c5)]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("graph"));
    let svg = pef(&["arcs", "--format", "svg", s(&blowup)]);
    assert_eq!(code(&svg), 0);
    assert!(String::from_utf8(svg.stdout).unwrap().contains("<svg"));
    let out = json(&pef(&["arcs", s(&blowup)]));
    assert_eq!(out["summary"]["all_unit"], true);
    assert_eq!(out["artifacts"][0]["unit"], true);
}

#[test]
fn gen_is_seeded_and_parses() {
    let a = pef(&["gen", "--seed", "11", "free-graph"]);
    let b = pef(&["gen", "free-graph", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("c seed 11"));
    let g = pef::parse_graph(&text).unwrap();
    assert!(pef::recognizer::recognize(&g).unwrap().is_free());

    let env = Command::new(env!("CARGO_BIN_EXE_pef"))
        .args(["gen", "random-graph", "--n", "8"])
        .env("PEF_SEED", "11")
        .output()
        .unwrap();
    let flag = pef(&["gen", "random-graph", "--n", "8", "--seed", "11"]);
    assert_eq!(env.stdout, flag.stdout);
    let other = pef(&["gen", "random-graph", "--n", "8", "--seed", "12"]);
    assert_ne!(other.stdout, flag.stdout);
}

#[test]
fn oracle_queries() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.txt", &cycle_text(6));
    assert_eq!(json(&pef(&["oracle", "free", s(&c6)]))["result"], false);
    assert_eq!(
        json(&pef(&["oracle", "even-hole", s(&c6)]))["result"]["type"],
        "even-hole"
    );
    assert_eq!(
        json(&pef(&["oracle", "pan", s(&c6)]))["result"],
        Value::Null
    );
    assert_eq!(json(&pef(&["oracle", "clique", s(&c6)]))["result"], 2);
}
