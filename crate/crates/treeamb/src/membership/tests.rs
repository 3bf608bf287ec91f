use super::*;
use crate::games::verify_strategy;
use crate::trees::{graft_node, make_node, NodePath};
use crate::zoo;

fn tc(k: usize) -> RegularTree {
    zoo::constant_tree("c", k)
}

fn ta1(k: usize) -> RegularTree {
    zoo::constant_tree("a1", k)
}

#[test]
fn det_not_a1_on_tc_is_a_forced_cycle() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    let g = build_game(&a, &tc(1)).unwrap();
    assert_eq!(g.arena().len(), 2);
    let w = solve_game(&g).unwrap();
    assert_eq!(w.winner[g.arena().init], Player::Automaton);
}

#[test]
fn det_not_a1_on_ta1_starts_in_a_sink() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    let g = build_game(&a, &ta1(1)).unwrap();
    assert!(g.arena().sink[g.arena().init]);
}

#[test]
fn union_game_has_three_automaton_vertices() {
    let g = build_game(&zoo::neg_union(2), &tc(2)).unwrap();
    let autos = g.product.vertex.iter().filter(|v| matches!(v, ProductVertex::Auto(..))).count();
    assert_eq!(autos, 3);
}

#[test]
fn membership_examples() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    assert!(member(&a, &tc(1)));
    assert!(!member(&a, &graft_node(&tc(1), &ta1(1), &NodePath::parse("r").unwrap())));
    let t = make_node("c", &ta1(2), &tc(2)).unwrap();
    assert!(member(&zoo::neg_union(2), &t));
}

#[test]
fn strategy_run_is_accepting() {
    let a = zoo::neg_union(2);
    let run = some_run(&a, &tc(2)).unwrap();
    assert!(run_is_accepting(&a, &tc(2), &run).unwrap());
    let labels: std::collections::BTreeSet<String> = run.machine.unfold(3).into_iter().map(|(_, l)| l).collect();
    assert_eq!(labels.len(), 1);
}

#[test]
fn union_run_follows_first_summand_when_strategy_says_so() {
    let a = zoo::neg_union(2);
    let g = build_game(&a, &tc(2)).unwrap();
    let mut w = solve_game(&g).unwrap();
    let root = g.arena().init;
    let first = g
        .arena()
        .succ[root]
        .iter()
        .copied()
        .find(|&p| matches!(g.product.vertex[p], ProductVertex::Path(_, 0, 0)))
        .unwrap();
    w.choice[root] = Some(first);
    let run = automaton_strategy_to_run(&g, &w).unwrap();
    for (_, label) in run.machine.unfold(3) {
        assert_eq!(label, a.states[0]);
    }
}

#[test]
fn run_acceptance_by_cycle_colors() {
    let one = Pta::from_names("odd", &["c"], &[("q", 1)], &["q"], &[("q", "c", "q", "q")]).unwrap();
    let run = RegularRun {
        machine: RegularTree::constant("phi", &["q"], "q").unwrap(),
        of: "odd".into(),
        on: "tc".into(),
    };
    let t = RegularTree::constant("tc", &["c"], "c").unwrap();
    assert!(!run_is_accepting(&one, &t, &run).unwrap());

    let alt = Pta::from_names(
        "alt",
        &["c"],
        &[("x", 1), ("y", 2)],
        &["x"],
        &[("x", "c", "y", "y"), ("y", "c", "x", "x")],
    )
    .unwrap();
    let machine = RegularTree::new(
        "phi",
        vec!["x".into(), "y".into()],
        vec!["r0".into(), "r1".into()],
        0,
        vec![[1, 1], [0, 0]],
        vec![0, 1],
    )
    .unwrap();
    let run = RegularRun { machine, of: "alt".into(), on: "tc".into() };
    assert!(run_is_accepting(&alt, &t, &run).unwrap());
}

#[test]
fn inconsistent_run_is_reported() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    let run = some_run(&a, &tc(1)).unwrap();
    assert!(matches!(run_is_accepting(&a, &ta1(1), &run), Err(MembershipError::InconsistentRun(_))));
}

#[test]
fn grafting_runs() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    let t = tc(1);
    let run = some_run(&a, &t).unwrap();
    let (t2, g) = run_graft(&a, &t, &run, &t, &run, &NodePath::root()).unwrap();
    assert!(crate::trees::tree_equal(&g.machine, &run.machine));
    let (_, g) = run_graft(&a, &t2, &run, &t, &run, &NodePath::parse("lr").unwrap()).unwrap();
    assert!(!runs_differ(&g, &run));

    let u = zoo::neg_union(2);
    let t = tc(2);
    let phi = some_run(&u, &t).unwrap();
    let q = phi.state_at(&NodePath::parse("r").unwrap()).to_string();
    let mut uq = u.clone();
    uq.initials = vec![u.state_index(&q).unwrap()];
    let t1 = graft_node(&t, &ta1(2), &NodePath::parse("l").unwrap());
    let t1 = if member(&uq, &t1) { t1 } else { graft_node(&t, &zoo::constant_tree("a2", 2), &NodePath::parse("l").unwrap()) };
    let phi1 = some_run(&uq, &t1).unwrap();
    let (tree, grafted) = run_graft(&u, &t, &phi, &t1, &phi1, &NodePath::parse("r").unwrap()).unwrap();
    assert!(run_is_accepting(&u, &tree, &grafted).unwrap());
}

#[test]
fn graft_state_mismatch() {
    let u = zoo::neg_union(2);
    let t = tc(2);
    let phi = some_run(&u, &t).unwrap();
    let other = if phi.state_at(&NodePath::root()) == u.states[0] { 1 } else { 0 };
    let uq = crate::automata::restrict_initials(&u, &[u.states[other].as_str()]).unwrap();
    let phi1 = some_run(&uq, &t).unwrap();
    assert!(matches!(
        run_graft(&u, &t, &phi, &t, &phi1, &NodePath::parse("l").unwrap()),
        Err(MembershipError::StateMismatch(_))
    ));
}

#[test]
fn pathfinder_strategies() {
    let a = zoo::det_not("a1", &zoo::sigma(1));
    assert!(pathfinder_strategy(&a, &ta1(1)).is_ok());
    assert!(matches!(pathfinder_strategy(&a, &tc(1)), Err(MembershipError::IsMember)));

    let e = zoo::exists_a1();
    let (g, w, s) = pathfinder_strategy_with_game(&e, &tc(1)).unwrap();
    let region = w.region(Player::Pathfinder);
    assert!(verify_strategy(g.arena(), &s.as_arena_strategy(&g, &region)).unwrap());
}

#[test]
fn leads_examples() {
    let e = zoo::exists_a1();
    let t0 = tc(1);
    let rl = NodePath::parse("rl").unwrap();
    let tprime = graft_node(&t0, &ta1(1), &rl);
    let phi = some_run(&e, &tprime).unwrap();
    let s = pathfinder_strategy(&e, &t0).unwrap();
    assert_eq!(leads(&e, &t0, &s, &tprime, &phi).unwrap(), rl);

    let a = zoo::det_not("a1", &zoo::sigma(1));
    let t0 = ta1(1);
    let tprime = tc(1);
    let phi = some_run(&a, &tprime).unwrap();
    let s = pathfinder_strategy(&a, &t0).unwrap();
    assert_eq!(leads(&a, &t0, &s, &tprime, &phi).unwrap(), NodePath::root());
}

#[test]
fn leads_rejects_non_accepting_run_on_t0() {
    let e = zoo::exists_a1();
    let t0 = tc(1);
    let s = pathfinder_strategy(&e, &t0).unwrap();
    let q = e.states[e.initials[0]].clone();
    let searcher = e
        .transitions
        .iter()
        .find(|t| t.from == e.initials[0] && t.left == e.initials[0])
        .copied()
        .unwrap();
    // the run that searches forever down the left spine
    let machine = RegularTree::new(
        "phi",
        e.states.clone(),
        vec!["r0".into(), "r1".into()],
        0,
        vec![[0, 1], [1, 1]],
        vec![e.state_index(&q).unwrap(), searcher.right],
    )
    .unwrap();
    let phi = RegularRun { machine, of: e.name.clone(), on: t0.name.clone() };
    assert!(matches!(leads(&e, &t0, &s, &t0, &phi), Err(MembershipError::PreconditionViolated(_))));
}
