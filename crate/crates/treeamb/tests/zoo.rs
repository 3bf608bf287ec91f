use std::collections::BTreeMap;

use treeamb::ambiguity::{at_least_k, classify, is_k_ambiguous, validate_witness, AmbiguityVerdict, RunCounter};
use treeamb::automata::{det_pta_for_tree, trim_useful, FiniteLabeledTree, Pta};
use treeamb::membership::member;
use treeamb::trees::{graft_antichain, graft_node, make_node, NodePath, RegularAntichain, RegularTree};
use treeamb::zoo::{self, constant_tree, NiwinskiRepresentation};

fn tc(k: usize) -> RegularTree {
    constant_tree("c", k)
}

fn ta1(k: usize) -> RegularTree {
    constant_tree("a1", k)
}

fn path(s: &str) -> NodePath {
    NodePath::parse(s).unwrap()
}

/// `t[X]` over `{0, 1}` from a machine given as `(label, left, right)` rows.
fn bit_tree(name: &str, rows: &[(&str, usize, usize)]) -> RegularTree {
    RegularTree::new(
        name,
        vec!["0".into(), "1".into()],
        (0..rows.len()).map(|i| format!("s{i}")).collect(),
        0,
        rows.iter().map(|r| [r.1, r.2]).collect(),
        rows.iter().map(|r| if r.0 == "1" { 1 } else { 0 }).collect(),
    )
    .unwrap()
}

fn two_differences() -> RegularTree {
    let leaf = make_node("a1", &tc(1), &tc(1)).unwrap();
    make_node("c", &leaf, &leaf).unwrap()
}

#[test]
fn neg_union_examples() {
    assert!(zoo::neg_union(1).is_deterministic());
    assert!(matches!(classify(&zoo::neg_union(1), &tc(1), 3), AmbiguityVerdict::Exact(1)));
    let both = make_node("c", &ta1(2), &constant_tree("a2", 2)).unwrap();
    assert!(!member(&zoo::neg_union(2), &both));
    assert!(member(&zoo::neg_union(2), &make_node("c", &ta1(2), &tc(2)).unwrap()));
    assert!(matches!(classify(&zoo::neg_union(3), &tc(3), 5), AmbiguityVerdict::Exact(3)));
}

#[test]
fn neg_union_global_degree() {
    for k in [2, 3] {
        let a = zoo::neg_union(k);
        assert!(is_k_ambiguous(&a, k), "k={k}");
        assert!(!is_k_ambiguous(&a, k - 1), "k={k}");
    }
}

#[test]
fn exists_a1_examples() {
    let a = zoo::exists_a1();
    assert!(!member(&a, &tc(1)));
    let t = graft_node(&tc(1), &ta1(1), &path("rl"));
    assert!(member(&a, &t));
    assert!(matches!(classify(&a, &t, 5), AmbiguityVerdict::Exact(1)));
}

#[test]
fn complement_singleton_examples() {
    let a = zoo::complement_singleton(&tc(1));
    assert!(!member(&a, &tc(1)));
    for t in [ta1(1), graft_node(&tc(1), &ta1(1), &path("lrl")), two_differences()] {
        assert!(member(&a, &t));
    }
    assert!(matches!(classify(&a, &two_differences(), 5), AmbiguityVerdict::Exact(2)));
}

#[test]
fn lfa_examples() {
    let a = zoo::lfa();
    let t = zoo::lfa_tree(1, 2, &tc(2));
    assert!(member(&a, &t));
    assert!(!member(&a, &tc(2)));
    assert!(matches!(classify(&a, &t, 8), AmbiguityVerdict::Exact(4)));
}

#[test]
fn lfa_counts_grow_with_m() {
    let a = zoo::lfa();
    for m in 2..=5 {
        let t = zoo::lfa_tree(0, m, &tc(2));
        assert!(at_least_k(&a, &t, m), "m={m}");
    }
    for k in 1..=5 {
        assert!(!is_k_ambiguous_on_witness(&a, k), "k={k}");
    }
}

/// Not `k`-ambiguous, shown on the `L_{k+1}` witness tree.
fn is_k_ambiguous_on_witness(a: &Pta, k: usize) -> bool {
    !at_least_k(a, &zoo::lfa_tree(0, k + 1, &tc(2)), k + 1)
}

#[test]
fn frak_scheme_examples() {
    let a = zoo::frak_standard();
    let t = graft_antichain(&tc(1), &ta1(1), &RegularAntichain::left_spine_right()).unwrap();
    assert!(member(&a, &t));
    assert!(!member(&a, &tc(1)));
    // every l^i·r subtree has two runs in the complement part
    let amb = graft_antichain(&tc(1), &two_differences(), &RegularAntichain::left_spine_right()).unwrap();
    match classify(&a, &amb, 4) {
        AmbiguityVerdict::Uncountable(w) => validate_witness(&a, &amb, &w).unwrap(),
        v => panic!("unexpected verdict {v:?}"),
    }
}

#[test]
fn frak_scheme_on_single_difference_spine_has_one_run() {
    let a = zoo::frak_standard();
    let t = graft_antichain(&tc(1), &ta1(1), &RegularAntichain::left_spine_right()).unwrap();
    assert!(matches!(classify(&a, &t, 4), AmbiguityVerdict::Exact(1)));
}

#[test]
fn frak_scheme_rejects_mismatched_alphabets() {
    assert!(zoo::frak_scheme(&zoo::free2(), &zoo::exists_a1()).is_err());
}

#[test]
fn no_max_examples() {
    let a = zoo::no_max();
    assert!(member(&a, &bit_tree("empty", &[("0", 0, 0)])));
    assert!(!member(&a, &bit_tree("root_only", &[("1", 1, 1), ("0", 1, 1)])));
    assert!(member(&a, &bit_tree("left_spine", &[("1", 0, 1), ("0", 1, 1)])));
}

#[test]
fn perf_examples() {
    let a = zoo::perf();
    assert!(member(&a, &bit_tree("all", &[("1", 0, 0)])));
    assert!(!member(&a, &bit_tree("empty", &[("0", 0, 0)])));
    assert!(!member(&a, &bit_tree("left_spine", &[("1", 0, 1), ("0", 1, 1)])));
}

#[test]
fn x_subset_ydown_examples() {
    let a = zoo::x_subset_ydown();
    let alphabet = zoo::pair_bits();
    let tree = |out: Vec<usize>, next: Vec<[usize; 2]>| {
        let states = (0..out.len()).map(|i| format!("s{i}")).collect();
        RegularTree::new("xy", alphabet.clone(), states, 0, next, out).unwrap()
    };
    // X = {ε}, Y = {r}
    assert!(member(&a, &tree(vec![2, 0, 1], vec![[1, 2], [1, 1], [1, 1]])));
    // X = {ε}, Y = ∅
    assert!(!member(&a, &tree(vec![2, 0], vec![[1, 1], [1, 1]])));
}

#[test]
fn free2_examples() {
    let a = zoo::free2();
    let t = RegularTree::constant("t_c", &["c"], "c").unwrap();
    assert!(member(&a, &t));
    assert!(at_least_k(&a, &t, 4));
    assert!(matches!(classify(&a, &t, 3), AmbiguityVerdict::Uncountable(_)));
}

fn leaf(x: &str) -> FiniteLabeledTree {
    FiniteLabeledTree::leaf(x)
}

fn node(a: &str, l: &FiniteLabeledTree, r: &FiniteLabeledTree) -> FiniteLabeledTree {
    FiniteLabeledTree::node(a, l, r)
}

/// Sample finite trees with the representation's leaves, some outside `M`.
fn finite_samples(rep: &NiwinskiRepresentation) -> Vec<FiniteLabeledTree> {
    let xs: Vec<FiniteLabeledTree> = rep.fta.leaf_alphabet.iter().map(|x| leaf(x)).collect();
    let last = xs.last().unwrap().clone();
    let first = xs[0].clone();
    vec![
        first.clone(),
        last.clone(),
        node("c", &first, &first),
        node("c", &last, &first),
        node("c", &node("c", &last, &first), &first),
    ]
}

fn niwinski_samples(rep: &NiwinskiRepresentation) -> Vec<RegularTree> {
    let mut out: Vec<RegularTree> = finite_samples(rep).iter().map(|t| rep.substitute(t).unwrap()).collect();
    out.push(tc(1));
    out.push(make_node("a1", &tc(1), &ta1(1)).unwrap());
    out
}

#[test]
fn niwinski_examples_are_unambiguous_and_agree_with_substitution() {
    for rep in zoo::niwinski_examples() {
        let a = zoo::niwinski_unambiguous(&rep).unwrap();
        assert!(is_k_ambiguous(&a, 1), "{}", rep.fta.name);
        assert!(rep.unique_on(&finite_samples(&rep)).unwrap());
        for t in niwinski_samples(&rep) {
            assert_eq!(member(&a, &t), zoo::member_by_substitution(&rep, &t), "{} on {}", rep.fta.name, t.name);
        }
    }
}

#[test]
fn niwinski_single_and_two_level() {
    let reps = zoo::niwinski_examples();
    let single = zoo::niwinski_unambiguous(&reps[0]).unwrap();
    assert!(matches!(classify(&single, &tc(1), 2), AmbiguityVerdict::Exact(1)));
    let two = zoo::niwinski_unambiguous(&reps[1]).unwrap();
    assert!(member(&two, &ta1(1)));
    assert!(member(&two, &make_node("c", &ta1(1), &ta1(1)).unwrap()));
}

#[test]
fn ambiguous_representation_is_rejected() {
    let mut rep = zoo::niwinski_examples().remove(1);
    // a second state doing the same as `top` makes every tree of M have two computations
    rep.fta.states.push("top2".into());
    rep.fta.initials.push(2);
    rep.fta.leaves.push((2, 0));
    assert_eq!(zoo::niwinski_unambiguous(&rep).unwrap_err(), zoo::ZooError::AmbiguousRepresentation);
}

#[test]
fn trimming_keeps_membership_on_samples() {
    let cases: Vec<(Pta, Vec<RegularTree>)> = vec![
        (zoo::neg_union(2), vec![tc(2), ta1(2), make_node("c", &ta1(2), &constant_tree("a2", 2)).unwrap()]),
        (zoo::exists_a1(), vec![tc(1), ta1(1), two_differences()]),
        (zoo::lfa(), vec![tc(2), zoo::lfa_tree(0, 2, &tc(2)), zoo::lfa_tree(1, 3, &ta1(2))]),
        (zoo::frak_standard(), vec![tc(1), graft_antichain(&tc(1), &ta1(1), &RegularAntichain::left_spine_right()).unwrap()]),
        (zoo::no_max(), vec![bit_tree("z", &[("0", 0, 0)]), bit_tree("o", &[("1", 0, 0)])]),
        (zoo::perf(), vec![bit_tree("z", &[("0", 0, 0)]), bit_tree("o", &[("1", 0, 0)])]),
        (zoo::free2(), vec![RegularTree::constant("t_c", &["c"], "c").unwrap()]),
    ];
    for (a, trees) in cases {
        let trimmed = trim_useful(&a);
        for t in &trees {
            assert_eq!(member(&a, t), member(&trimmed, t), "{} on {}", a.name, t.name);
        }
    }
}

#[test]
fn deterministic_automata_have_at_most_one_run() {
    let trees = [tc(1), ta1(1), two_differences(), graft_node(&tc(1), &ta1(1), &path("rr"))];
    for base in &trees {
        let a = det_pta_for_tree(base);
        for t in &trees {
            let v = classify(&a, t, 3);
            assert!(matches!(v, AmbiguityVerdict::Exact(0) | AmbiguityVerdict::Exact(1)), "{v:?}");
        }
    }
}

#[test]
fn classify_is_coherent_with_at_least() {
    let a = zoo::neg_union(3);
    let t = tc(3);
    let rc = RunCounter::new(&a, &t);
    assert!(rc.at_least(3) && !rc.at_least(4));
    let _ = BTreeMap::<u8, u8>::new();
}
