//! Regeneration witnesses: a product vertex `p = (m, q)` of some accepting run that repeats
//! below itself, together with two distinct accepting residual runs.
//!
//! Infinite: `p` has two residual runs and a good path leads from `p` back to `p`. Grafting the
//! loop fragment in front of a residual run is injective, and two distinct runs cannot both be
//! fixed points of its powers, so one orbit is infinite.
//!
//! Uncountable: a good cycle from `p` to `p` has even maximal color and leaves, at one step,
//! an off-path child with two residual runs. Repeating the cycle forever gives an accepting
//! spine with one independent binary choice per repetition.

use std::collections::{HashMap, VecDeque};

use super::{AmbiguityError, RunCounter};
use crate::automata::Pta;
use crate::membership::{run_is_accepting, runs_differ, RegularRun};
use crate::trees::{tree_equal, Dir, RegularTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    Infinite,
    Uncountable,
}

impl WitnessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMode::Infinite => "infinite",
            WitnessMode::Uncountable => "uncountable",
        }
    }
}

/// One node of the loop fragment: state `q` at tree-machine state `m`, the chosen transition's
/// children, and the direction the loop continues in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FragmentStep {
    pub m: usize,
    pub q: usize,
    pub left: usize,
    pub right: usize,
    pub dir: Dir,
}

#[derive(Debug, Clone)]
pub struct RegenerationWitness {
    pub mode: WitnessMode,
    /// `(tree-machine state, automaton state)`.
    pub p: (usize, usize),
    /// Steps from `p` back to `p`; the first step is at `p`.
    pub fragment: Vec<FragmentStep>,
    /// Step whose off-path child carries the two residual runs (uncountable mode).
    pub offshoot: Option<usize>,
    /// Vertex carrying the residual runs: `p` itself, or the offshoot's off-path child.
    pub branch: (usize, usize),
    pub runs: [RegularRun; 2],
    /// `t_{≥m_b}` for the branch vertex.
    pub residual: RegularTree,
}

impl RegenerationWitness {
    pub fn spine_max_color(&self, a: &Pta) -> u32 {
        self.fragment.iter().map(|s| a.colors[s.q]).max().unwrap_or(0)
    }
}

fn step_child(rc: &RunCounter<'_>, s: &FragmentStep, d: Dir) -> (usize, usize) {
    let m = rc.t.next[s.m][d.index()];
    (m, if d == Dir::L { s.left } else { s.right })
}

/// Returns the first witness in `(m, q)` order, or `None`.
pub fn find_regeneration_witness(
    a: &Pta,
    t: &RegularTree,
    mode: WitnessMode,
) -> Result<Option<RegenerationWitness>, AmbiguityError> {
    let rc = RunCounter::new(a, t);
    if !rc.member {
        return Err(AmbiguityError::NotMember);
    }
    Ok(search(&rc, mode))
}

pub(crate) fn search(rc: &RunCounter<'_>, mode: WitnessMode) -> Option<RegenerationWitness> {
    let reach = rc.good_reachable();
    let two = rc.two_table();
    for m in 0..rc.t.len() {
        for q in 0..rc.a.len() {
            if !reach[m][q] || (mode == WitnessMode::Infinite && !two[m][q]) {
                continue;
            }
            let Some(fragment) = loop_from(rc, (m, q), mode) else { continue };
            let (offshoot, branch) = match mode {
                WitnessMode::Infinite => (None, (m, q)),
                WitnessMode::Uncountable => {
                    let i = fragment
                        .iter()
                        .position(|s| {
                            let (mb, qb) = step_child(rc, s, s.dir.other());
                            two[mb][qb]
                        })
                        .expect("the search only returns loops with an offshoot");
                    (Some(i), step_child(rc, &fragment[i], fragment[i].dir.other()))
                }
            };
            let runs = rc.residual_runs(branch.0, branch.1)?;
            return Some(RegenerationWitness {
                mode,
                p: (m, q),
                fragment,
                offshoot,
                branch,
                runs,
                residual: rc.residual_tree(branch.0),
            });
        }
    }
    None
}

/// Breadth-first search for a good path from `p` back to `p`. In uncountable mode the search
/// state also tracks the maximal color so far and whether an offshoot with two runs was passed.
fn loop_from(rc: &RunCounter<'_>, p: (usize, usize), mode: WitnessMode) -> Option<Vec<FragmentStep>> {
    type Key = (usize, usize, u32, bool);
    let colors = &rc.a.colors;
    let two = rc.two_table();
    let top0 = if mode == WitnessMode::Uncountable { colors[p.1] } else { 0 };
    let start: Key = (p.0, p.1, top0, false);
    let mut parent: HashMap<Key, (Key, FragmentStep)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = std::collections::HashSet::from([start]);
    while let Some(key) = queue.pop_front() {
        let (m, q, top, flag) = key;
        for (left, right) in rc.good_moves(m, q) {
            for dir in Dir::BOTH {
                let step = FragmentStep { m, q, left, right, dir };
                let (mc, qc) = step_child(rc, &step, dir);
                let (mo, qo) = step_child(rc, &step, dir.other());
                let (ntop, nflag) = match mode {
                    WitnessMode::Infinite => (0, false),
                    WitnessMode::Uncountable => (top.max(colors[qc]), flag || two[mo][qo]),
                };
                let closes = (mc, qc) == p
                    && match mode {
                        WitnessMode::Infinite => true,
                        WitnessMode::Uncountable => nflag && ntop % 2 == 0,
                    };
                if closes {
                    let mut steps = vec![step];
                    let mut cur = key;
                    while cur != start {
                        let (prev, s) = parent[&cur];
                        steps.push(s);
                        cur = prev;
                    }
                    steps.reverse();
                    return Some(steps);
                }
                let next: Key = (mc, qc, ntop, nflag);
                if seen.insert(next) {
                    parent.insert(next, (key, step));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// Mechanical re-check of every witness property against `A` and `t`.
pub fn validate_witness(a: &Pta, t: &RegularTree, w: &RegenerationWitness) -> Result<(), AmbiguityError> {
    let bad = |msg: &str| Err(AmbiguityError::InvalidWitness(msg.to_string()));
    let rc = RunCounter::new(a, t);
    if w.p.0 >= t.len() || w.p.1 >= a.len() || w.branch.0 >= t.len() || w.branch.1 >= a.len() {
        return bad("vertex out of range");
    }
    if w.fragment.is_empty() || (w.fragment[0].m, w.fragment[0].q) != w.p {
        return bad("fragment does not start at p");
    }
    for (i, s) in w.fragment.iter().enumerate() {
        if s.m >= t.len() || s.q >= a.len() || !rc.win[s.m][s.q] {
            return bad("fragment leaves the winning region");
        }
        if !rc.good_moves(s.m, s.q).contains(&(s.left, s.right)) {
            return bad("fragment step is not a transition with winning children");
        }
        let next = step_child(&rc, s, s.dir);
        let expected = w.fragment.get(i + 1).map_or(w.p, |n| (n.m, n.q));
        if next != expected {
            return bad("fragment steps are not connected");
        }
    }
    if !rc.good_reachable()[w.p.0][w.p.1] {
        return bad("p occurs in no accepting run");
    }
    if !tree_equal(&w.residual, &t.rooted_at_state(w.branch.0)) {
        return bad("residual tree is not the subtree at the branch vertex");
    }
    let mut aq = a.clone();
    aq.initials = vec![w.branch.1];
    for run in &w.runs {
        if !matches!(run_is_accepting(&aq, &w.residual, run), Ok(true)) {
            return bad("residual run is not an accepting run from the branch state");
        }
    }
    if !runs_differ(&w.runs[0], &w.runs[1]) {
        return bad("residual runs coincide");
    }
    match w.mode {
        WitnessMode::Infinite => {
            if w.branch != w.p {
                return bad("branch vertex differs from p");
            }
        }
        WitnessMode::Uncountable => {
            if !w.spine_max_color(a).is_multiple_of(2) {
                return bad("spine has odd maximal color");
            }
            let Some(s) = w.offshoot.and_then(|i| w.fragment.get(i)) else {
                return bad("missing offshoot step");
            };
            if step_child(&rc, s, s.dir.other()) != w.branch {
                return bad("branch vertex is not the offshoot's off-path child");
            }
        }
    }
    Ok(())
}
