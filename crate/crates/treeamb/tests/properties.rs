use proptest::prelude::*;

use treeamb::ambiguity::{
    at_least_k, classify, emptiness, k_distinct_runs_automaton, nonempty_states, validate_witness, AmbiguityVerdict,
    RunCounter,
};
use treeamb::automata::{intersect, lasso_accepts, union, ParityConjunction, Pta, Transition};
use treeamb::games::{solve, solve_oracle, verify_strategy, Arena, Player};
use treeamb::membership::{member, run_is_accepting, some_run};
use treeamb::trees::{graft_node, subtree_at, tree_equal, Dir, NodePath, RegularTree};

fn alphabet(k: usize) -> Vec<String> {
    ["c", "a1", "a2"][..k].iter().map(|s| s.to_string()).collect()
}

prop_compose! {
    fn arb_tree(letters: usize)(n in 1usize..=3)(
        next in prop::collection::vec((0..n, 0..n), n),
        out in prop::collection::vec(0..letters, n),
    ) -> RegularTree {
        let n = out.len();
        RegularTree::new(
            "t",
            alphabet(letters),
            (0..n).map(|i| format!("s{i}")).collect(),
            0,
            next.into_iter().map(|(l, r)| [l, r]).collect(),
            out,
        )
        .unwrap()
    }
}

prop_compose! {
    fn arb_pta(letters: usize, max_states: usize)(n in 1..=max_states)(
        colors in prop::collection::vec(0u32..=2, n),
        init in prop::collection::vec(any::<bool>(), n),
        trans in prop::collection::vec((0..n, 0..letters, 0..n, 0..n), 1..=3 * n + 2),
    ) -> Pta {
        let n = colors.len();
        let mut initials: Vec<usize> = (0..n).filter(|&q| init[q]).collect();
        if initials.is_empty() {
            initials.push(0);
        }
        let trans = trans.into_iter().map(|(from, letter, left, right)| Transition { from, letter, left, right }).collect();
        Pta::new("a", alphabet(letters), (0..n).map(|i| format!("q{i}")).collect(), colors, initials, trans).unwrap()
    }
}

prop_compose! {
    fn arb_arena()(n in 1usize..=8)(
        owners in prop::collection::vec(any::<bool>(), n),
        colors in prop::collection::vec(0u32..=4, n),
        edges in prop::collection::vec(prop::collection::vec(0..n, 0..=2), n),
    ) -> Arena {
        let mut g = Arena::new("g");
        for (v, (&o, &c)) in owners.iter().zip(&colors).enumerate() {
            g.add_vertex(format!("v{v}"), if o { Player::Automaton } else { Player::Pathfinder }, c);
        }
        for (v, es) in edges.iter().enumerate() {
            for &w in es {
                g.add_edge(v, w);
            }
        }
        g.finish();
        g
    }
}

fn arb_path() -> impl Strategy<Value = NodePath> {
    prop::collection::vec(any::<bool>(), 0..4)
        .prop_map(|b| NodePath::from_dirs(b.into_iter().map(|x| if x { Dir::R } else { Dir::L }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graft_places_the_subtree(t1 in arb_tree(2), t2 in arb_tree(2), v in arb_path()) {
        let g = graft_node(&t1, &t2, &v);
        prop_assert!(tree_equal(&subtree_at(&g, &v), &t2));
        for (w, label) in t1.unfold(4) {
            if !v.is_prefix_of(&w) {
                prop_assert_eq!(g.label(&w), label.as_str());
            }
        }
    }

    #[test]
    fn trim_preserves_the_tree(t in arb_tree(3)) {
        prop_assert!(tree_equal(&t, &t.trim()));
    }

    #[test]
    fn union_is_disjunction(a in arb_pta(2, 2), b in arb_pta(2, 2), t in arb_tree(2)) {
        let u = union(&a, &b.clone().with_name("b")).unwrap();
        prop_assert_eq!(member(&u, &t), member(&a, &t) || member(&b, &t));
    }

    #[test]
    fn intersection_is_conjunction(a in arb_pta(2, 2), b in arb_pta(2, 2), t in arb_tree(2)) {
        let i = intersect(&a, &b.clone().with_name("b")).unwrap();
        prop_assert_eq!(member(&i, &t), member(&a, &t) && member(&b, &t));
    }

    #[test]
    fn solvers_agree_and_strategies_win(g in arb_arena()) {
        let w = solve(&g).unwrap();
        let o = solve_oracle(&g).unwrap();
        prop_assert_eq!(&w.winner, &o.winner);
        for p in [Player::Automaton, Player::Pathfinder] {
            prop_assert!(verify_strategy(&g, &w.strategy(&g, p)).unwrap());
        }
    }

    #[test]
    fn conjunction_matches_lassos(
        dims in prop::collection::vec(0u32..=2, 1..=3),
        stem_len in 0usize..3,
        cycle_len in 1usize..4,
        seed in prop::collection::vec(0u32..=2, 18),
    ) {
        let k = dims.len();
        let letter = |i: usize| -> Vec<u32> { (0..k).map(|j| seed[(i * k + j) % seed.len()] % (dims[j] + 1)).collect() };
        let stem: Vec<Vec<u32>> = (0..stem_len).map(letter).collect();
        let cycle: Vec<Vec<u32>> = (stem_len..stem_len + cycle_len).map(letter).collect();
        let pc = ParityConjunction::new(&dims);
        // run the gadget; the color of each position lags one letter behind
        let mut s = pc.initial();
        for l in &stem {
            s = pc.step(&s, l);
        }
        let mut seen = vec![s.clone()];
        loop {
            for l in &cycle {
                s = pc.step(&s, l);
            }
            if let Some(i) = seen.iter().position(|x| *x == s) {
                let mut top = 0;
                let mut x = seen[i].clone();
                for _ in i..seen.len() {
                    for l in &cycle {
                        x = pc.step(&x, l);
                        top = top.max(pc.color(&x, l));
                    }
                }
                prop_assert_eq!(top % 2 == 0, lasso_accepts(&cycle));
                break;
            }
            seen.push(s.clone());
        }
    }

    #[test]
    fn members_have_accepting_runs(a in arb_pta(2, 3), t in arb_tree(2)) {
        if member(&a, &t) {
            let run = some_run(&a, &t).unwrap();
            prop_assert!(run_is_accepting(&a, &t, &run).unwrap());
        } else {
            prop_assert!(some_run(&a, &t).is_err());
        }
    }

    #[test]
    fn emptiness_witness_is_accepted(a in arb_pta(2, 3)) {
        let nonempty = nonempty_states(&a);
        match emptiness(&a) {
            Some(w) => prop_assert!(member(&a, &w)),
            None => prop_assert!(a.initials.iter().all(|&q| !nonempty[q])),
        }
    }

    #[test]
    fn at_least_is_monotone(a in arb_pta(2, 3), t in arb_tree(2)) {
        let rc = RunCounter::new(&a, &t);
        let counts: Vec<bool> = (1..=4).map(|k| rc.at_least(k)).collect();
        for k in 1..counts.len() {
            prop_assert!(!counts[k] || counts[k - 1]);
        }
    }

    #[test]
    fn lazy_count_matches_explicit_product(a in arb_pta(2, 2), t in arb_tree(2), k in 1usize..=3) {
        prop_assert_eq!(at_least_k(&a, &t, k), member(&k_distinct_runs_automaton(&a, k), &t));
    }

    #[test]
    fn classify_is_coherent(a in arb_pta(2, 3), t in arb_tree(2)) {
        let rc = RunCounter::new(&a, &t);
        match classify(&a, &t, 4) {
            AmbiguityVerdict::Exact(n) => {
                prop_assert!(rc.at_least(n));
                prop_assert!(!rc.at_least(n + 1));
            }
            AmbiguityVerdict::AtLeast(n) => prop_assert!(rc.at_least(n)),
            AmbiguityVerdict::Infinite(w) | AmbiguityVerdict::Uncountable(w) => {
                prop_assert!(validate_witness(&a, &t, &w).is_ok());
                prop_assert!(rc.at_least(5));
            }
        }
    }
}
