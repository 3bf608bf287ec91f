use std::fs;
use std::path::{Path, PathBuf};

use treeamb::automata::FiniteLabeledTree;
use treeamb::membership::{build_game, pathfinder_strategy, some_run};
use treeamb::trees::{MooreMachine, NodePath, RegularAntichain};
use treeamb::zoo;
use treeamb_cli::formats::*;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn read(rel: &str) -> String {
    fs::read_to_string(fixtures().join(rel)).unwrap()
}

#[test]
fn fixture_files_round_trip_byte_for_byte() {
    for f in ["negunion2.pta", "free2.pta", "complement_tc.pta"] {
        assert_eq!(write_pta(&parse_pta(&read(f), f).unwrap()), read(f), "{f}");
    }
    for f in ["tc.mtree", "tc1.mtree", "ta1.mtree"] {
        assert_eq!(write_mtree(&parse_mtree(&read(f), f).unwrap()), read(f), "{f}");
    }
    assert_eq!(write_chain(&parse_chain(&read("lstar_r.chain"), "c").unwrap()), read("lstar_r.chain"));
    for dir in ["rep_single", "rep_two_level", "rep_comb"] {
        let rep = read(&format!("{dir}/rep"));
        assert_eq!(write_rep(&parse_rep(&rep, "rep").unwrap()), rep);
        let fta = read(&format!("{dir}/rep.fta"));
        assert_eq!(write_fta(&parse_fta(&fta, "rep.fta").unwrap()), fta);
    }
}

#[test]
fn fixtures_match_the_zoo() {
    assert_eq!(parse_pta(&read("negunion2.pta"), "f").unwrap(), zoo::neg_union(2));
    assert_eq!(parse_pta(&read("free2.pta"), "f").unwrap(), zoo::free2());
    assert_eq!(parse_chain(&read("lstar_r.chain"), "f").unwrap(), RegularAntichain::left_spine_right());
    let reps = zoo::niwinski_examples();
    for (dir, rep) in ["rep_single", "rep_two_level", "rep_comb"].iter().zip(&reps) {
        let loaded = treeamb_cli::cli::load_rep(&fixtures().join(dir)).unwrap();
        assert_eq!(loaded.fta, rep.fta);
        assert_eq!(loaded.trees, rep.trees);
    }
}

#[test]
fn undeclared_state_is_reported_with_its_line() {
    let e = parse_pta(&read("broken.pta"), "broken.pta").unwrap_err();
    assert_eq!(e.line, 5);
    assert_eq!(e.found, "p");
    assert_eq!(e.expected, "declared state");
    assert_eq!(e.to_string(), "broken.pta:5: expected declared state, found `p`");
}

#[test]
fn malformed_inputs_are_rejected() {
    let cases: &[(&str, usize, &str)] = &[
        ("mtree t\nalphabet c\nstate s out=c\ninit s\nedge s l s\n", 3, "state s"),
        ("mtree t\nalphabet c\nstate s out=d\n", 3, "d"),
        ("mtree t\nalphabet c\nstate s out=c\nedge s l s\nedge s r s\n", 5, "end of file"),
        ("tree t\n", 1, "tree t"),
        ("mtree t\nalphabet c\nstate s out=c\nstate s out=c\n", 4, "s"),
        ("mtree t\nalphabet c\nstate s out=c\ninit s\nedge s x s\n", 5, "x"),
        ("mtree t\nalphabet c\nbogus\n", 3, "bogus"),
    ];
    for (text, line, found) in cases {
        let e = parse_mtree(text, "t.mtree").unwrap_err();
        assert_eq!((e.line, e.found.as_str()), (*line, *found), "{text:?}: {e}");
    }
    assert_eq!(parse_pta("pta a\nalphabet c\nstate q color=x\n", "a").unwrap_err().line, 3);
    assert_eq!(parse_game("game g\nvertex v owner=B color=0\n", "g").unwrap_err().found, "owner=B");
    assert_eq!(parse_game("game g\nvertex v owner=A color=0 sink\ninit v\nedge v v\n", "g").unwrap_err().line, 2);
    assert!(parse_ftree("node l c\nnode - c\n", "f").is_err());
    assert_eq!(parse_ftree("node - x1\nnode - x1\n", "f").unwrap_err().line, 2);
    assert!(parse_moore("moore m\ninput c\noutput c\nstate p out=c\ninit p\n", "m").is_err());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# a tree\nmtree t_c\n\nalphabet c a1 a2\nstate s0 out=c\ninit s0\n# edges\nedge s0 l s0\nedge s0 r s0\n";
    assert_eq!(parse_mtree(text, "t").unwrap(), zoo::constant_tree("c", 2));
}

#[test]
fn generated_objects_round_trip() {
    let a = zoo::complement_singleton(&zoo::constant_tree("c", 1));
    let tc = zoo::constant_tree("c", 1);
    let t = treeamb::trees::graft_node(&tc, &zoo::constant_tree("a1", 1), &NodePath::parse("lr").unwrap());

    let run = some_run(&a, &t).unwrap();
    let text = write_run(&run);
    assert!(text.starts_with(&format!("run of={} on={}\n", run.of, run.on)));
    assert_eq!(parse_run(&text, "r").unwrap(), run);

    let s = pathfinder_strategy(&a, &tc).unwrap();
    let text = write_straj(&s);
    assert_eq!(parse_straj(&text, "s", &a).unwrap(), s);
    assert_eq!(write_straj(&parse_straj(&text, "s", &a).unwrap()), text);
    // dropping the last `out` line leaves the map partial
    let partial = &text[..text.trim_end().rfind('\n').unwrap() + 1];
    assert_eq!(parse_straj(partial, "s", &a).unwrap_err().expected, "a total out map");

    let g = build_game(&a, &t).unwrap();
    let text = write_game(g.arena());
    let back = parse_game(&text, "g").unwrap();
    assert_eq!(write_game(&back), text);
    assert_eq!((back.len(), back.init), (g.arena().len(), g.arena().init));
    assert_eq!(back.sink, g.arena().sink);

    let m = MooreMachine::first_a1_countdown(&zoo::sigma(1), 2);
    let text = write_moore(&m);
    assert_eq!(parse_moore(&text, "m").unwrap(), m);

    let f = FiniteLabeledTree::node("c", &FiniteLabeledTree::leaf("x2"), &FiniteLabeledTree::leaf("x1"));
    let text = write_ftree(&f);
    assert_eq!(text, "node - c\nnode l x2\nnode r x1\n");
    assert_eq!(parse_ftree(&text, "f").unwrap(), f);
}
