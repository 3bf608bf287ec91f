//! Regular runs: Moore machines over `{l, r}` labeling nodes with automaton states.

use std::collections::HashSet;

use super::MembershipError;
use crate::automata::Pta;
use crate::games::cycle_with_max_parity;
use crate::trees::{graft_node, Dir, NodePath, RegularTree};

/// A computation `φ` given by a machine whose alphabet is the automaton's state names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularRun {
    pub machine: RegularTree,
    pub of: String,
    pub on: String,
}

impl RegularRun {
    pub fn state_at(&self, v: &NodePath) -> &str {
        self.machine.label(v)
    }
}

/// Automaton state index of every run-machine output symbol.
fn state_map(a: &Pta, run: &RegularRun) -> Result<Vec<usize>, MembershipError> {
    run.machine
        .alphabet
        .iter()
        .map(|s| a.state_index(s).ok_or_else(|| MembershipError::InconsistentRun(format!("unknown state `{s}`"))))
        .collect()
}

/// Checks the root is initial and every reachable (run state, tree state) pair follows a transition.
pub fn run_check(a: &Pta, t: &RegularTree, run: &RegularRun) -> Result<(), MembershipError> {
    let map = state_map(a, run)?;
    let r = &run.machine;
    let q0 = map[r.out[r.init]];
    if !a.initials.contains(&q0) {
        return Err(MembershipError::InconsistentRun(format!("root state `{}` is not initial", a.states[q0])));
    }
    let mut seen = HashSet::new();
    let mut stack = vec![(r.init, t.init, NodePath::root())];
    seen.insert((r.init, t.init));
    while let Some((x, m, v)) = stack.pop() {
        let q = map[r.out[x]];
        let sym = t.state_label(m);
        let letter = a.letter_index(sym).ok_or_else(|| MembershipError::AlphabetMismatch(sym.to_string()))?;
        let ql = map[r.out[r.next[x][0]]];
        let qr = map[r.out[r.next[x][1]]];
        if !a.has_transition(q, letter, ql, qr) {
            return Err(MembershipError::InconsistentRun(format!(
                "no transition ({}, {}, {}, {}) at node {}",
                a.states[q], sym, a.states[ql], a.states[qr], v
            )));
        }
        for d in Dir::BOTH {
            let pair = (r.next[x][d.index()], t.next[m][d.index()]);
            if seen.insert(pair) {
                stack.push((pair.0, pair.1, v.child(d)));
            }
        }
    }
    Ok(())
}

/// Every branch satisfies the parity condition: no reachable cycle of the run machine has odd
/// maximal color.
pub fn run_is_accepting(a: &Pta, t: &RegularTree, run: &RegularRun) -> Result<bool, MembershipError> {
    run_check(a, t, run)?;
    let map = state_map(a, run)?;
    let r = run.machine.trim();
    let colors: Vec<u32> = (0..r.len()).map(|x| a.colors[map[r.out[x]]]).collect();
    let succ: Vec<Vec<usize>> = r.next.iter().map(|n| n.to_vec()).collect();
    Ok(!cycle_with_max_parity(&succ, &colors, &vec![true; r.len()], 1))
}

/// Whether the two runs label some node differently.
pub fn runs_differ(r1: &RegularRun, r2: &RegularRun) -> bool {
    !crate::trees::tree_equal(&r1.machine, &r2.machine)
}

/// `φ[φ1/v]` on `t[t1/v]`; requires `φ(v)` to be the root state of `φ1`.
pub fn run_graft(
    a: &Pta,
    t: &RegularTree,
    phi: &RegularRun,
    t1: &RegularTree,
    phi1: &RegularRun,
    v: &NodePath,
) -> Result<(RegularTree, RegularRun), MembershipError> {
    let at_v = phi.state_at(v);
    let root1 = phi1.state_at(&NodePath::root());
    if at_v != root1 {
        return Err(MembershipError::StateMismatch(format!("φ({v}) = {at_v} but the grafted run starts in {root1}")));
    }
    run_check(a, t, phi)?;
    let q = a.state_index(root1).ok_or_else(|| MembershipError::StateMismatch(root1.to_string()))?;
    let mut aq = a.clone();
    aq.initials = vec![q];
    run_check(&aq, t1, phi1)?;
    let tree = graft_node(t, t1, v);
    let machine = graft_node(&phi.machine, &phi1.machine, v).with_name(format!("{}_graft", phi.machine.name));
    Ok((tree.clone(), RegularRun { machine, of: phi.of.clone(), on: tree.name }))
}
