use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use planar_ramsey::arrows::{two_pentagons, VerdictFile};
use planar_ramsey::format::{read_coloring, read_graph, write_coloring, ColoringFile, GraphFile};
use planar_ramsey::graph::EdgeColoring;
use serde_json::Value;
use tempfile::TempDir;

fn pramsey(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pramsey"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn gen(dir: &Path, file: &str, family: &[&str]) {
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", file]);
    let out = pramsey(dir, &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gen_examples() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "tr2.json", &["tr", "2"]);
    gen(d.path(), "t4.json", &["tree", "T4"]);
    gen(d.path(), "g3.json", &["grid", "3"]);
    let tr2 = json(d.path().join("tr2.json"));
    assert_eq!(tr2["n"], 7);
    assert_eq!(json(d.path().join("t4.json"))["n"], 6);
    let g3 = json(d.path().join("g3.json"));
    assert_eq!((g3["n"].as_u64(), g3["edges"].as_array().unwrap().len()), (Some(9), 16));
    assert_eq!(tr2["manifest"]["command"], "gen");
    assert!(tr2["manifest"]["arguments"].is_array());
}

#[test]
fn gen_every_family() {
    let d = TempDir::new().unwrap();
    for fam in [
        vec!["tr", "3"],
        vec!["uop", "5"],
        vec!["grid", "4"],
        vec!["fish", "6"],
        vec!["c4witness"],
        vec!["c4witness", "--omit", "1,5"],
        vec!["c4witness", "--alternating"],
        vec!["tree", "T1"],
        vec!["broom", "5", "3"],
        vec!["kary", "3", "2"],
        vec!["random", "40"],
        vec!["complete", "5"],
        vec!["path", "6"],
        vec!["cycle", "6"],
    ] {
        gen(d.path(), "x.json", &fam);
        read_graph(&std::fs::read_to_string(d.path().join("x.json")).unwrap())
            .unwrap_or_else(|e| panic!("{fam:?}: {e}"));
    }
}

#[test]
fn gen_errors_exit_nonzero() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&pramsey(d.path(), &["gen", "tr", "20"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["--cap-edges", "10", "gen", "grid", "4"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["gen", "tree", "T9"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["gen", "c4witness", "--omit", "28"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["gen", "cycle", "2"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["nope"])), 4);
    let out = pramsey(d.path(), &["gen", "tr", "20"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("size limit"));
}

#[test]
fn arrow_exit_codes() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "w.json", &["c4witness"]);
    gen(d.path(), "k5.json", &["complete", "5"]);
    gen(d.path(), "k6.json", &["complete", "6"]);
    gen(d.path(), "c4.json", &["cycle", "4"]);

    let out = pramsey(d.path(), &["arrow", "w.json", "c4.json", "-k", "2", "-o", "v.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(d.path().join("v.json"))["outcome"], "ARROWS");

    assert_eq!(code(&pramsey(d.path(), &["arrow", "k6.json", "builtin:K3", "-o", "v6.json"])), 0);

    let out = pramsey(d.path(), &["arrow", "k5.json", "builtin:K3", "-o", "v5.json"]);
    assert_eq!(code(&out), 1);
    let v: VerdictFile = serde_json::from_value(json(d.path().join("v5.json"))).unwrap();
    let cert = v.certificate.expect("certificate embedded");
    std::fs::write(d.path().join("cert.json"), serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(code(&pramsey(d.path(), &["verify", "k5.json", "builtin:K3", "-k", "2", "cert.json"])), 0);

    let out = pramsey(d.path(), &["--budget", "1", "arrow", "w.json", "builtin:C4"]);
    assert_eq!(code(&out), 2);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"], "UNDECIDED");
    assert_eq!(code(&pramsey(d.path(), &["--budget", "100000000", "arrow", "w.json", "builtin:C4"])), 0);
}

#[test]
fn arrow_bad_inputs() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "k5.json", &["complete", "5"]);
    std::fs::write(d.path().join("junk.json"), "{not json").unwrap();
    assert_eq!(code(&pramsey(d.path(), &["arrow", "junk.json", "builtin:K3"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["arrow", "missing.json", "builtin:K3"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["arrow", "k5.json", "builtin:Q7"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["arrow", "k5.json", "builtin:K3", "-k", "1"])), 4);
    assert_eq!(code(&pramsey(d.path(), &["--cap-edges", "5", "arrow", "k5.json", "builtin:K3"])), 4);
}

#[test]
fn verify_examples() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "k5.json", &["complete", "5"]);
    std::fs::write(d.path().join("pent.json"), write_coloring(&two_pentagons()).unwrap()).unwrap();
    assert_eq!(code(&pramsey(d.path(), &["verify", "k5.json", "builtin:K3", "-k", "2", "pent.json"])), 0);

    gen(d.path(), "tri.json", &["complete", "3"]);
    gen(d.path(), "p3.json", &["path", "3"]);
    let tri = read_graph(&std::fs::read_to_string(d.path().join("tri.json")).unwrap()).unwrap();
    let red = EdgeColoring::uniform(&tri.graph, 2, 0);
    std::fs::write(d.path().join("red.json"), write_coloring(&red).unwrap()).unwrap();
    let out = pramsey(d.path(), &["verify", "tri.json", "p3.json", "-k", "2", "red.json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["counterexample"]["embedding"].as_array().unwrap().len(), 3);

    gen(d.path(), "tr4.json", &["tr", "4"]);
    assert_eq!(code(&pramsey(d.path(), &["color", "c3", "tr4.json", "-o", "c3.json"])), 0);
    assert_eq!(code(&pramsey(d.path(), &["verify", "tr4.json", "builtin:T3", "-k", "3", "c3.json"])), 0);

    // a tiny budget must not pass silently
    gen(d.path(), "tr5.json", &["tr", "5"]);
    assert_eq!(code(&pramsey(d.path(), &["color", "avoidT1", "tr5.json", "-o", "a1.json"])), 0);
    let out = pramsey(d.path(), &["--budget", "1", "verify", "tr5.json", "builtin:P6", "-k", "2", "a1.json"]);
    assert!(matches!(code(&out), 1 | 3));
}

#[test]
fn verify_inconclusive_exits_3() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "k8.json", &["complete", "8"]);
    let k8 = read_graph(&std::fs::read_to_string(d.path().join("k8.json")).unwrap()).unwrap();
    // bipartite split: color 0 inside halves, color 1 across
    let c = EdgeColoring::from_vec(
        &k8.graph,
        2,
        &k8.graph.edges().iter().map(|&(u, v)| usize::from((u < 4) != (v < 4))).collect::<Vec<_>>(),
    );
    std::fs::write(d.path().join("c.json"), write_coloring(&c).unwrap()).unwrap();
    // color 0 is two disjoint K4s: no C8, but proving it takes more than one node
    let out = pramsey(d.path(), &["--budget", "1", "verify", "k8.json", "builtin:C8", "-k", "2", "c.json"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn color_examples() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "tr4.json", &["tr", "4"]);
    gen(d.path(), "tr5.json", &["tr", "5"]);
    gen(d.path(), "tr3.json", &["tr", "3"]);
    assert_eq!(code(&pramsey(d.path(), &["color", "c4", "tr4.json", "-o", "c4.json"])), 0);
    let c4 = json(d.path().join("c4.json"));
    assert_eq!(c4["k"], 4);
    assert_eq!(c4["provenance"]["scheme"], "c4");
    assert_eq!(code(&pramsey(d.path(), &["color", "avoidT1", "tr5.json", "-o", "a1.json"])), 0);
    assert_eq!(json(d.path().join("a1.json"))["k"], 2);
    let out = pramsey(d.path(), &["color", "avoidT2", "tr3.json"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not outerplanar"));
}

#[test]
fn extract_examples() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "g4.json", &["grid", "4"]);
    assert_eq!(code(&pramsey(d.path(), &["--seed", "9", "color", "random", "g4.json", "-o", "r.json"])), 0);
    let out = pramsey(d.path(), &["extract", "crossing", "g4.json", "r.json", "-o", "p.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let p = json(d.path().join("p.json"));
    assert!(p["length"].as_u64().unwrap() >= 3);

    gen(d.path(), "u9.json", &["uop", "9"]);
    assert_eq!(code(&pramsey(d.path(), &["color", "random", "u9.json", "-o", "ru.json"])), 0);
    let out = pramsey(d.path(), &["extract", "uop", "u9.json", "ru.json", "-n", "3", "-o", "up.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(d.path().join("up.json"))["length"].as_u64().unwrap() >= 3);

    let out = pramsey(d.path(), &["extract", "uop", "g4.json", "r.json", "-n", "2"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("metadata"));
}

#[test]
fn find_and_classify() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "k4.json", &["complete", "4"]);
    let out = pramsey(d.path(), &["find", "k4.json", "builtin:C4", "--limit", "10"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["copies"].as_array().unwrap().len(), 3);

    let out = pramsey(d.path(), &["classify", "builtin:C4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"][0]["k"], 2);
    assert_eq!(v["verdicts"][0]["verdict"]["status"], "unavoidable");
    assert_eq!(v["verdicts"][1]["verdict"]["status"], "avoidable");
}

#[test]
fn outputs_round_trip() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "uop.json", &["uop", "4"]);
    let text = std::fs::read_to_string(d.path().join("uop.json")).unwrap();
    let pg = read_graph(&text).unwrap();
    let file: GraphFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file, GraphFile::from_plane(&pg));
    assert_eq!(file.to_plane().unwrap(), pg);

    assert_eq!(code(&pramsey(d.path(), &["color", "avoidT2", "uop.json", "-o", "c.json"])), 0);
    let text = std::fs::read_to_string(d.path().join("c.json")).unwrap();
    let c = read_coloring(&text).unwrap();
    let file: ColoringFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file, ColoringFile::from_coloring(&c));

    gen(d.path(), "k5.json", &["complete", "5"]);
    pramsey(d.path(), &["arrow", "k5.json", "builtin:K3", "-o", "v.json"]);
    let text = std::fs::read_to_string(d.path().join("v.json")).unwrap();
    let v: VerdictFile = serde_json::from_str(&text).unwrap();
    let again: VerdictFile = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn identical_runs_are_byte_identical() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "w.json", &["c4witness"]);
    let runs: Vec<Vec<&str>> = vec![
        vec!["--seed", "3", "gen", "random", "300"],
        vec!["gen", "uop", "7"],
        vec!["arrow", "w.json", "builtin:C4"],
        vec!["color", "c3", "w.json"],
        vec!["--seed", "11", "color", "random", "w.json"],
        vec!["classify", "builtin:T1"],
    ];
    for args in runs {
        let a = pramsey(d.path(), &args);
        let b = pramsey(d.path(), &args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let s1 = pramsey(d.path(), &["--seed", "1", "gen", "random", "100"]).stdout;
    let s2 = pramsey(d.path(), &["--seed", "2", "gen", "random", "100"]).stdout;
    assert_ne!(s1, s2);

    let timed: Value = serde_json::from_slice(&pramsey(d.path(), &["--timing", "gen", "tr", "2"]).stdout).unwrap();
    assert!(timed["manifest"]["wall_ms"].is_u64());
    let plain: Value = serde_json::from_slice(&pramsey(d.path(), &["gen", "tr", "2"]).stdout).unwrap();
    assert!(plain["manifest"].get("wall_ms").is_none());
}
