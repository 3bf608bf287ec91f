use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::tempdir;

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

/// Runs the binary; returns exit code, stdout and stderr.
fn treeamb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_treeamb")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn f(rel: &str) -> String {
    fixture(rel).display().to_string()
}

fn tmp(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn validate_reports_the_offending_line() {
    let (code, _, err) = treeamb(&["validate", &f("broken.pta")]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.pta:5: expected declared state, found `p`"), "{err}");
    let (code, out, _) = treeamb(&["validate", &f("negunion2.pta")]);
    assert_eq!((code, out.trim()), (0, "ok pta neg_union2 (2 states)"));
    for rep in ["rep_single", "rep_two_level", "rep_comb"] {
        assert_eq!(treeamb(&["validate", &f(rep)]).0, 0, "{rep}");
    }
    assert_eq!(treeamb(&["validate", &f("lstar_r.chain")]).0, 0);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(treeamb(&["classify"]).0, 2);
    assert_eq!(treeamb(&["frobnicate"]).0, 2);
    assert_eq!(treeamb(&["member", "-a", "/nonexistent.pta", "-t", &f("tc.mtree")]).0, 2);
    assert_eq!(treeamb(&["zoo", "nope"]).0, 2);
}

#[test]
fn member_exit_codes_and_artifacts() {
    let d = tempdir().unwrap();
    let run = tmp(d.path(), "r.run");
    let (code, out, _) = treeamb(&["member", "-a", &f("negunion2.pta"), "-t", &f("tc.mtree"), "--run", &run]);
    assert_eq!((code, out.trim()), (0, "true"));
    assert_eq!(treeamb(&["validate", &run]).0, 0);

    let straj = tmp(d.path(), "s.straj");
    let (code, out, _) = treeamb(&["member", "-a", &f("complement_tc.pta"), "-t", &f("tc1.mtree"), "--straj", &straj]);
    assert_eq!((code, out.trim()), (1, "false"));
    assert_eq!(treeamb(&["validate", &straj, "-a", &f("complement_tc.pta")]).0, 0);
    assert_eq!(treeamb(&["validate", &straj]).0, 2);
}

#[test]
fn classify_text_and_json() {
    let (code, out, _) = treeamb(&["classify", "-a", &f("negunion2.pta"), "-t", &f("tc.mtree")]);
    assert_eq!((code, out.as_str()), (0, "exact 2\n"));
    let (_, out, _) = treeamb(&["classify", "-a", &f("negunion2.pta"), "-t", &f("tc.mtree"), "--json"]);
    assert_eq!(out.trim(), r#"{"n":2,"verdict":"exact","witness":null}"#);
    let (_, out, _) = treeamb(&["classify", "-a", &f("negunion2.pta"), "-t", &f("tc.mtree"), "--max-k", "1"]);
    assert_eq!(out, "at_least 2\n");

    let tc = fixture("tc.mtree");
    let (code, out, _) = treeamb(&["classify", "-a", &f("free2.pta"), "-t", &tc.display().to_string(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "uncountable");
    assert_eq!(v["n"], serde_json::Value::Null);
    assert_eq!(v["witness"]["mode"], "uncountable");
    assert!(v["witness"]["runs"][0].as_str().unwrap().starts_with("run of=free2 on="));
    let keys: Vec<&String> = v["witness"].as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn infinite_verdict_through_graft_and_classify() {
    let d = tempdir().unwrap();
    let spine = tmp(d.path(), "spine.mtree");
    let (code, _, err) = treeamb(&["construct", "graft", "-t", &f("tc1.mtree"), "--with", &f("ta1.mtree"), "--chain", &f("lstar_r.chain"), "-o", &spine]);
    assert_eq!(code, 0, "{err}");
    let (_, out, _) = treeamb(&["classify", "-a", &f("complement_tc.pta"), "-t", &spine]);
    assert!(out.starts_with("infinite p=("), "{out}");
}

#[test]
fn ambiguity_and_emptiness() {
    assert_eq!(treeamb(&["ambiguous", "-a", &f("negunion2.pta"), "-k", "1"]).1.trim(), "false");
    assert_eq!(treeamb(&["ambiguous", "-a", &f("negunion2.pta"), "-k", "2"]).1.trim(), "true");
    assert_eq!(treeamb(&["ambiguous", "-a", &f("negunion2.pta"), "-k", "2", "--json"]).1.trim(), r#"{"k":2,"k_ambiguous":true}"#);
    let d = tempdir().unwrap();
    let w = tmp(d.path(), "w.mtree");
    assert_eq!(treeamb(&["empty", "-a", &f("negunion2.pta"), "--witness", &w]).1.trim(), "nonempty");
    assert_eq!(treeamb(&["member", "-a", &f("negunion2.pta"), "-t", &w]).0, 0);
}

#[test]
fn constructions_produce_valid_automata() {
    let d = tempdir().unwrap();
    let u = tmp(d.path(), "u.pta");
    assert_eq!(treeamb(&["construct", "union", "-a", &f("negunion2.pta"), "-b", &f("free2.pta"), "-o", &u]).0, 2);
    assert_eq!(treeamb(&["construct", "intersect", "-a", &f("negunion2.pta"), "-b", &f("negunion2.pta"), "-o", &u]).0, 0);
    assert_eq!(treeamb(&["member", "-a", &u, "-t", &f("tc.mtree")]).0, 0);
    let s = tmp(d.path(), "s.pta");
    assert_eq!(treeamb(&["construct", "single-init", "-a", &f("negunion2.pta"), "-o", &s]).0, 0);
    let (code, out, _) = treeamb(&["classify", "-a", &s, "-t", &f("tc.mtree")]);
    assert_eq!((code, out.as_str()), (0, "exact 2\n"));
    let r = tmp(d.path(), "r.pta");
    assert_eq!(treeamb(&["construct", "restrict", "-a", &f("negunion2.pta"), "--init", "not_a1.q", "-o", &r]).0, 0);
    assert_eq!(treeamb(&["classify", "-a", &r, "-t", &f("tc.mtree")]).1, "exact 1\n");
    let moore = tmp(d.path(), "id.moore");
    fs::write(&moore, "moore id\ninput c a1 a2\noutput c a1 a2\nstate p out=c\ninit p\ndelta p c p\ndelta p a1 p\ndelta p a2 p\n").unwrap();
    assert_eq!(treeamb(&["validate", &moore]).0, 0);
    assert_eq!(treeamb(&["construct", "reduce", "-a", &f("negunion2.pta"), "-m", &moore, "-o", &r]).0, 0);
    assert_eq!(treeamb(&["member", "-a", &r, "-t", &f("tc.mtree")]).0, 0);
    let g = tmp(d.path(), "g.mtree");
    assert_eq!(treeamb(&["construct", "graft", "-t", &f("tc.mtree"), "--with", &f("tc.mtree"), "--at", "lr", "-o", &g]).0, 0);
    assert_eq!(treeamb(&["construct", "graft", "-t", &f("tc.mtree"), "--with", &f("tc.mtree"), "--at", "lx"]).0, 2);
}

#[test]
fn zoo_output_parses() {
    let d = tempdir().unwrap();
    for name in ["neg_union", "exists_a1", "complement_singleton", "lfa", "frak", "no_max", "perf", "x_subset_ydown", "free2", "det_not"] {
        let p = tmp(d.path(), &format!("{name}.pta"));
        assert_eq!(treeamb(&["zoo", name, "--k", "3", "-o", &p]).0, 0, "{name}");
        assert_eq!(treeamb(&["validate", &p]).0, 0, "{name}");
    }
    let p = tmp(d.path(), "nw.pta");
    assert_eq!(treeamb(&["zoo", "niwinski", "--rep", &f("rep_comb"), "-o", &p]).0, 0);
    assert_eq!(treeamb(&["ambiguous", "-a", &p, "-k", "1"]).1.trim(), "true");
    assert_eq!(treeamb(&["zoo", "niwinski"]).0, 2);
}

#[test]
fn game_build_and_solve() {
    let d = tempdir().unwrap();
    let (g, dot) = (tmp(d.path(), "m.game"), tmp(d.path(), "m.dot"));
    assert_eq!(treeamb(&["game", "build", "-a", &f("negunion2.pta"), "-t", &f("tc.mtree"), "-o", &g, "--dot", &dot]).0, 0);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let (code, out, _) = treeamb(&["game", "solve", "-g", &g, "--dot", &dot]);
    assert_eq!(code, 0);
    assert!(out.starts_with("winner A "), "{out}");
    assert!(fs::read_to_string(&dot).unwrap().contains("palegreen"));
    let (_, out, _) = treeamb(&["game", "solve", "-g", &g, "--json"]);
    assert!(out.contains(r#""init_winner":"A""#), "{out}");
}

#[test]
fn leads_finds_a_differing_node() {
    let d = tempdir().unwrap();
    let a = f("complement_tc.pta");
    let spine = tmp(d.path(), "spine.mtree");
    treeamb(&["construct", "graft", "-t", &f("tc1.mtree"), "--with", &f("ta1.mtree"), "--at", "lr", "-o", &spine]);
    let (run, straj) = (tmp(d.path(), "phi.run"), tmp(d.path(), "s.straj"));
    assert_eq!(treeamb(&["member", "-a", &a, "-t", &spine, "--run", &run]).0, 0);
    assert_eq!(treeamb(&["member", "-a", &a, "-t", &f("tc1.mtree"), "--straj", &straj]).0, 1);
    let (code, out, err) = treeamb(&["leads", "-a", &a, "--t0", &f("tc1.mtree"), "--tprime", &spine, "--run", &run, "--straj", &straj]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "lr");
    // preconditions: t0 must be rejected
    assert_eq!(treeamb(&["leads", "-a", &a, "--t0", &spine, "--tprime", &spine, "--run", &run, "--straj", &straj]).0, 2);
}
