use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cms_cli::format::{write_edge_list, write_ordering};
use cms_cli::report::Report;
use cms_core::generators::{cycle, cycle_types, random_regular, two_regular};
use cms_core::sequencer::{general_lower_bound_ordering, two_regular_certificate};
use cms_core::{EdgeOrdering, Graph};
use tempfile::TempDir;

fn cms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cms"))
        .args(args)
        .output()
        .expect("cms binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn report(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn exact_on_nine_cycle() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("c9.txt");
    assert!(cms(&["gen", "cycle", "9", "-o", path_str(&g)]).status.success());
    let out = cms(&["exact", path_str(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).result["cms"], 4);
}

#[test]
fn exact_budget_exit_three() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("k6.txt");
    assert!(cms(&["gen", "complete", "6", "-o", path_str(&g)]).status.success());
    let out = cms(&["exact", path_str(&g), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    let interval = r.result["cms_interval"].as_array().unwrap();
    assert!(interval[0].as_u64().unwrap() <= 2 && interval[1].as_u64().unwrap() >= 2);
}

#[test]
fn construct_two_regular_then_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    let ord = dir.path().join("g.ord");
    let rep = dir.path().join("g.json");
    assert!(cms(&["gen", "two-regular", "4", "5", "-o", path_str(&g)]).status.success());
    let out = cms(&["construct", path_str(&g), "--method", "two-regular", "--ordering-out", path_str(&ord)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.result["claimed_bound"].as_u64().unwrap() >= 3);
    assert_eq!(r.result["verified"], true);
    std::fs::write(&rep, &out.stdout).unwrap();
    let checked = cms(&["verify", path_str(&g), path_str(&ord), "--report", path_str(&rep)]);
    assert_eq!(checked.status.code(), Some(0));
    assert_eq!(report(&checked).result["passed"], true);
}

#[test]
fn tampered_ordering_fails() {
    let dir = TempDir::new().unwrap();
    let g = two_regular(&[4, 5]).unwrap();
    let gp = write(&dir, "g.txt", &write_edge_list(&g));
    let cert = two_regular_certificate(&g).unwrap();
    // move a neighbour of the first edge right next to it
    let mut seq = cert.ordering.edges().to_vec();
    let first = seq[0];
    let at = seq.iter().position(|&e| g.are_adjacent(first, e)).unwrap();
    seq.swap(1, at);
    let tampered = EdgeOrdering::of_graph(&g, seq).unwrap();
    assert!(tampered.cms(&g) < cert.claimed_bound);
    let op = write(&dir, "bad.ord", &write_ordering(&g, &tampered));
    let claim = cert.claimed_bound.to_string();
    let out = cms(&["verify", path_str(&gp), path_str(&op), "--claim", &claim]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).result["passed"], false);

    // a pair that is not an edge, and a missing edge
    let mut lines: Vec<String> = write_ordering(&g, &cert.ordering).lines().map(String::from).collect();
    lines[0] = "0 2".into();
    let op = write(&dir, "nonedge.ord", &lines.join("\n"));
    assert_eq!(cms(&["verify", path_str(&gp), path_str(&op)]).status.code(), Some(1));
    let op = write(&dir, "short.ord", &lines[1..].join("\n"));
    assert_eq!(cms(&["verify", path_str(&gp), path_str(&op)]).status.code(), Some(1));
    let op = write(&dir, "garbled.ord", "0 one\n");
    assert_eq!(cms(&["verify", path_str(&gp), path_str(&op)]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let gp = write(&dir, "g.txt", "p 3 2\ne 0 1\n");
    assert_eq!(cms(&["exact", path_str(&gp)]).status.code(), Some(2));
    assert_eq!(cms(&["gen", "cycle", "2"]).status.code(), Some(2));
    assert_eq!(cms(&["gen", "random-regular", "10", "3"]).status.code(), Some(2));
    let c = write(&dir, "c.txt", &write_edge_list(&cycle(9).unwrap()));
    assert_eq!(cms(&["construct", path_str(&c), "--method", "randomized"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("rr.txt");
    assert!(cms(&["gen", "random-regular", "120", "3", "--seed", "5", "-o", path_str(&g)]).status.success());
    let runs = [
        vec!["construct", path_str(&g), "--method", "randomized", "--alpha", "1/7", "--seed", "3"],
        vec!["construct", path_str(&g), "--method", "explicit"],
        vec!["construct", path_str(&g), "--method", "general"],
        vec!["bounds", path_str(&g)],
    ];
    for args in runs {
        let a = cms(&args);
        let b = cms(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let text = String::from_utf8(a.stdout).unwrap();
        assert!(!text.contains('.'), "no floats in {args:?}");
        assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
    }
    let randomized = cms(&["construct", path_str(&g), "--method", "randomized", "--alpha", "1/7", "--seed", "3"]);
    assert_eq!(report(&randomized).result["params"]["alpha"], "1/7");
}

#[test]
fn bench_is_deterministic() {
    let a = cms(&["bench", "cycles"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, cms(&["bench", "cycles"]).stdout);
}

fn verify_matches_library(dir: &TempDir, name: &str, g: &Graph, ordering: &EdgeOrdering, claim: usize) {
    let gp = write(dir, &format!("{name}.txt"), &write_edge_list(g));
    let op = write(dir, &format!("{name}.ord"), &write_ordering(g, ordering));
    let claim_arg = claim.to_string();
    let out = cms(&["verify", path_str(&gp), path_str(&op), "--claim", &claim_arg]);
    let lib_ok = ordering.covers_graph(g) && ordering.cms(g) >= claim;
    assert_eq!(out.status.code(), Some(if lib_ok { 0 } else { 1 }), "{name}");
    assert_eq!(report(&out).result["cms"], ordering.cms(g), "{name}");
}

#[test]
fn cli_verify_agrees_with_library() {
    let dir = TempDir::new().unwrap();
    let mut cases = 0;
    for n in 6..=12 {
        for lengths in cycle_types(n) {
            let g = two_regular(&lengths).unwrap();
            let cert = two_regular_certificate(&g).unwrap();
            assert!(cert.verified);
            let name = format!("tr{n}_{}", lengths.len());
            verify_matches_library(&dir, &name, &g, &cert.ordering, cert.claimed_bound);
            // one more than measured must be refused by both
            verify_matches_library(&dir, &name, &g, &cert.ordering, cert.measured_cms + 1);
            cases += 2;
        }
    }
    for seed in 0..6 {
        let g = random_regular(20, 3 + (seed as usize % 2), seed).unwrap();
        let cert = general_lower_bound_ordering(&g);
        assert!(cert.verified);
        verify_matches_library(&dir, &format!("rr{seed}"), &g, &cert.ordering, cert.claimed_bound);
        let identity = EdgeOrdering::of_graph(&g, (0..g.m()).collect()).unwrap();
        verify_matches_library(&dir, &format!("id{seed}"), &g, &identity, cert.claimed_bound);
        cases += 2;
    }
    assert!(cases > 40);
}
