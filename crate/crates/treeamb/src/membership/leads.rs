//! The play of a run-induced Automaton strategy against a winning Pathfinder strategy.

use std::collections::HashSet;

use super::{member, run_is_accepting, MembershipError, PathfinderStrategyTree, RegularRun};
use crate::automata::Pta;
use crate::trees::{Dir, NodePath, RegularTree};

/// Plays `str_φ` against `STR` in `G_{t0,A}` and returns the node of Automaton's first invalid
/// move. Since `φ` is consistent on `tprime`, the returned node `v` has `t0(v) ≠ tprime(v)`.
pub fn leads(
    a: &Pta,
    t0: &RegularTree,
    strategy: &PathfinderStrategyTree,
    tprime: &RegularTree,
    phi: &RegularRun,
) -> Result<NodePath, MembershipError> {
    if member(a, t0) {
        return Err(MembershipError::PreconditionViolated(format!("{} is accepted", t0.name)));
    }
    match run_is_accepting(a, tprime, phi) {
        Ok(true) => {}
        Ok(false) => return Err(MembershipError::PreconditionViolated("the run is not accepting".into())),
        Err(e) => return Err(MembershipError::PreconditionViolated(e.to_string())),
    }
    let n = a.len();
    if strategy.automaton_states.len() != n || strategy.dirs.iter().any(|d| d.len() != n * n) {
        return Err(MembershipError::PreconditionViolated("strategy map is not total on Q×Q".into()));
    }
    let map: Vec<usize> = phi
        .machine
        .alphabet
        .iter()
        .map(|s| a.state_index(s).expect("checked by run_check"))
        .collect();
    let r = &phi.machine;
    let bound = t0.len() * r.len() * strategy.states.len() * tprime.len();
    let mut seen = HashSet::new();
    let (mut m0, mut x, mut s, mut mp) = (t0.init, r.init, strategy.init, tprime.init);
    let mut v = NodePath::root();
    for _ in 0..=bound {
        let q = map[r.out[x]];
        let ql = map[r.out[r.next[x][0]]];
        let qr = map[r.out[r.next[x][1]]];
        let valid = a.letter_index(t0.state_label(m0)).is_some_and(|letter| a.has_transition(q, letter, ql, qr));
        if !valid {
            return Ok(v);
        }
        if !seen.insert((m0, x, s, mp)) {
            break;
        }
        let d: Dir = strategy.dir(s, ql, qr);
        let i = d.index();
        m0 = t0.next[m0][i];
        x = r.next[x][i];
        s = strategy.next[s][i];
        mp = tprime.next[mp][i];
        v = v.child(d);
    }
    Err(MembershipError::PreconditionViolated("the play never reaches an invalid move".into()))
}
