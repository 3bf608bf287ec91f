//! Emptiness, products counting pairwise-distinct runs, and run-cardinality classification.
//!
//! Per tree, runs are counted up to a cap. An accepting run from `(m, q)` is a transition
//! `(q, a, q_l, q_r)` together with accepting runs from `(m_l, q_l)` and `(m_r, q_r)`, since
//! acceptance is a condition on single branches. Capped counts are therefore the least
//! fixpoint of `x(m, q) = min(cap, Σ x(m_l, q_l) · x(m_r, q_r))` above the winning indicator:
//! every iterate is a lower bound, and the `D`-th iterate counts the depth-`D` partial runs
//! with winning frontier, which separate any finite set of distinct runs for large `D`.
//! Global `k`-ambiguity uses emptiness of the `k`-distinct construction instead.

mod emptiness;
mod kdistinct;
mod witness;


use std::cell::OnceCell;
use std::collections::VecDeque;

use thiserror::Error;

use crate::automata::Pta;
use crate::games::{solve, Player, WinningAnalysis};
use crate::membership::{build_product_rooted, winning_table, Product, RegularRun};
use crate::trees::{explore, RegularTree};

pub use emptiness::{emptiness, nonempty_states};
pub use kdistinct::{k_distinct_runs_automaton, KDistinct, KRules, KState, TrackerMode};
pub use witness::{find_regeneration_witness, validate_witness, FragmentStep, RegenerationWitness, WitnessMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmbiguityError {
    #[error("the tree is not accepted by the automaton")]
    NotMember,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// Number of accepting runs of an automaton on one tree.
#[derive(Debug, Clone)]
pub enum AmbiguityVerdict {
    /// Exactly `n` runs: `n` distinct runs exist and `n + 1` do not.
    Exact(usize),
    /// At least this many runs and no witness of infinitely many was found.
    AtLeast(usize),
    Infinite(Box<RegenerationWitness>),
    Uncountable(Box<RegenerationWitness>),
}

impl AmbiguityVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            AmbiguityVerdict::Exact(_) => "exact",
            AmbiguityVerdict::AtLeast(_) => "at_least",
            AmbiguityVerdict::Infinite(_) => "infinite",
            AmbiguityVerdict::Uncountable(_) => "uncountable",
        }
    }

    pub fn count(&self) -> Option<usize> {
        match self {
            AmbiguityVerdict::Exact(n) | AmbiguityVerdict::AtLeast(n) => Some(*n),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&RegenerationWitness> {
        match self {
            AmbiguityVerdict::Infinite(w) | AmbiguityVerdict::Uncountable(w) => Some(w),
            _ => None,
        }
    }
}

/// The 2-distinct game rooted at `(m, [q, q])` for every `(m, q)` with two residual runs.
struct TwoRuns {
    product: Option<Product<KState>>,
    analysis: Option<WinningAnalysis>,
    /// `table[m][q]`: `A_q` has two distinct accepting runs on `t_{≥m}`.
    table: Vec<Vec<bool>>,
}

/// Shared per-`(A, t)` tables for counting runs and searching witnesses.
pub struct RunCounter<'a> {
    pub a: &'a Pta,
    pub t: &'a RegularTree,
    letters: Vec<Option<usize>>,
    /// `win[m][q]`: `A_q` accepts `t_{≥m}`.
    pub win: Vec<Vec<bool>>,
    pub member: bool,
    two: OnceCell<TwoRuns>,
    two_counts: OnceCell<Vec<Vec<bool>>>,
}

impl<'a> RunCounter<'a> {
    pub fn new(a: &'a Pta, t: &'a RegularTree) -> Self {
        let win = winning_table(a, t);
        let member = a.initials.iter().any(|&q| win[t.init][q]);
        RunCounter { a, t, letters: a.letter_map_from(&t.alphabet), win, member, two: OnceCell::new(), two_counts: OnceCell::new() }
    }

    pub fn letter(&self, m: usize) -> Option<usize> {
        self.letters[self.t.out[m]]
    }

    fn two_runs(&self) -> &TwoRuns {
        self.two.get_or_init(|| {
            let (a, t) = (self.a, self.t);
            let mut table = vec![vec![false; a.len()]; t.len()];
            let kd = KDistinct::new(a, 2);
            let two = self.two_table();
            let roots: Vec<(usize, KState)> = (0..t.len())
                .flat_map(|m| (0..a.len()).map(move |q| (m, q)))
                .filter(|&(m, q)| two[m][q])
                .map(|(m, q)| (m, KState { tr: vec![q, q], pend: 1, dpw: kd.conj.initial() }))
                .collect();
            if roots.is_empty() {
                return TwoRuns { product: None, analysis: None, table };
            }
            let rules = KRules { kd: &kd, letters: self.letters.clone(), win: &self.win, two: None };
            let product = build_product_rooted(&rules, t, &roots);
            let w = solve(&product.arena).expect("product arenas are well formed");
            for (&v, (m, s)) in product.roots.iter().zip(&roots) {
                table[*m][s.tr[0]] = w.winner[v] == Player::Automaton;
            }
            TwoRuns { product: Some(product), analysis: Some(w), table }
        })
    }

    /// `A_q` has two distinct accepting runs on `t_{≥m}`.
    pub fn two_table(&self) -> &[Vec<bool>] {
        self.two_counts.get_or_init(|| {
            self.capped_counts(2).into_iter().map(|row| row.into_iter().map(|c| c >= 2).collect()).collect()
        })
    }

    /// `counts[m][q] = min(cap, |ACC(A_q, t_{≥m})|)`.
    pub fn capped_counts(&self, cap: usize) -> Vec<Vec<usize>> {
        let (a, t) = (self.a, self.t);
        let table = a.table();
        let mut x: Vec<Vec<usize>> = self.win.iter().map(|row| row.iter().map(|&w| usize::from(w).min(cap)).collect()).collect();
        loop {
            let mut changed = false;
            for m in 0..t.len() {
                let Some(letter) = self.letter(m) else { continue };
                let [ml, mr] = t.next[m];
                for q in 0..a.len() {
                    if !self.win[m][q] || x[m][q] >= cap {
                        continue;
                    }
                    let sum = table
                        .get(q, letter)
                        .iter()
                        .fold(0usize, |acc, &(l, r)| acc.saturating_add(x[ml][l].saturating_mul(x[mr][r])))
                        .min(cap);
                    if sum > x[m][q] {
                        x[m][q] = sum;
                        changed = true;
                    }
                }
            }
            if !changed {
                return x;
            }
        }
    }

    /// `min(cap, |ACC(A, t)|)`; runs from distinct initial states are distinct.
    pub fn count(&self, cap: usize) -> usize {
        if !self.member {
            return 0;
        }
        let x = self.capped_counts(cap);
        self.a.initials.iter().fold(0usize, |acc, &q| acc.saturating_add(x[self.t.init][q])).min(cap)
    }

    /// `|ACC(A, t)| ≥ n`.
    pub fn at_least(&self, n: usize) -> bool {
        match n {
            0 => true,
            1 => self.member,
            _ => self.count(n) >= n,
        }
    }

    /// Two distinct accepting runs of `A_q` on `t_{≥m}`, projected from Automaton's winning
    /// strategy in the 2-distinct game.
    pub fn residual_runs(&self, m: usize, q: usize) -> Option<[RegularRun; 2]> {
        let two = self.two_runs();
        if !two.table[m][q] {
            return None;
        }
        let (product, w) = (two.product.as_ref()?, two.analysis.as_ref()?);
        let kd = KDistinct::new(self.a, 2);
        let v0 = product.auto(m, &KState { tr: vec![q, q], pend: 1, dpw: kd.conj.initial() })?;
        let residual = self.residual_tree(m);
        let runs = [0, 1].map(|i| {
            let (_, out, next) = explore(v0, |&v| {
                let p = w.choice[v].expect("winning Automaton vertex has a move");
                let crate::membership::ProductVertex::Auto(_, s) = &product.vertex[v] else {
                    unreachable!("moves lead from Automaton vertices")
                };
                (s.tr[i], product.path_children(p))
            });
            let machine = RegularTree {
                name: format!("run{}_{}_{}", i + 1, self.a.name, residual.name),
                alphabet: self.a.states.clone(),
                states: (0..out.len()).map(|x| format!("r{x}")).collect(),
                init: 0,
                next,
                out,
            };
            RegularRun { machine, of: self.a.name.clone(), on: residual.name.clone() }
        });
        Some(runs)
    }

    /// `t_{≥m}` as a trimmed machine.
    pub fn residual_tree(&self, m: usize) -> RegularTree {
        let name = format!("{}_at_{}", self.t.name, self.t.states[m]);
        self.t.rooted_at_state(m).with_name(name)
    }

    /// Transitions at `(m, q)` whose children both accept residually.
    pub fn good_moves(&self, m: usize, q: usize) -> Vec<(usize, usize)> {
        let Some(letter) = self.letter(m) else { return Vec::new() };
        let [ml, mr] = self.t.next[m];
        self.a
            .transitions
            .iter()
            .filter(|tr| tr.from == q && tr.letter == letter && self.win[ml][tr.left] && self.win[mr][tr.right])
            .map(|tr| (tr.left, tr.right))
            .collect()
    }

    /// `(m, q)` labels a node in some accepting run: reachable from a winning initial vertex
    /// along good moves. A finite partial run whose frontier is winning extends to an
    /// accepting run, as finite prefixes do not affect the colors seen infinitely often.
    pub fn good_reachable(&self) -> Vec<Vec<bool>> {
        let mut seen = vec![vec![false; self.a.len()]; self.t.len()];
        let mut queue = VecDeque::new();
        let root = self.t.init;
        for &q in &self.a.initials {
            if self.win[root][q] && !seen[root][q] {
                seen[root][q] = true;
                queue.push_back((root, q));
            }
        }
        while let Some((m, q)) = queue.pop_front() {
            let [ml, mr] = self.t.next[m];
            for (l, r) in self.good_moves(m, q) {
                for (mc, qc) in [(ml, l), (mr, r)] {
                    if !seen[mc][qc] {
                        seen[mc][qc] = true;
                        queue.push_back((mc, qc));
                    }
                }
            }
        }
        seen
    }
}

/// `|ACC(A, t)| ≥ k`.
pub fn at_least_k(a: &Pta, t: &RegularTree, k: usize) -> bool {
    RunCounter::new(a, t).at_least(k)
}

/// No tree has `k + 1` pairwise-distinct accepting runs.
pub fn is_k_ambiguous(a: &Pta, k: usize) -> bool {
    emptiness(&k_distinct_runs_automaton(a, k + 1)).is_none()
}

/// Witnesses first (uncountable, then infinite), then the run count capped at `K + 1`.
pub fn classify(a: &Pta, t: &RegularTree, max_k: usize) -> AmbiguityVerdict {
    let rc = RunCounter::new(a, t);
    classify_with(&rc, max_k)
}

pub fn classify_with(rc: &RunCounter<'_>, max_k: usize) -> AmbiguityVerdict {
    if !rc.member {
        return AmbiguityVerdict::Exact(0);
    }
    if let Some(w) = witness::search(rc, WitnessMode::Uncountable) {
        return AmbiguityVerdict::Uncountable(Box::new(w));
    }
    if let Some(w) = witness::search(rc, WitnessMode::Infinite) {
        return AmbiguityVerdict::Infinite(Box::new(w));
    }
    let bound = max_k.max(1);
    match rc.count(bound + 1) {
        n if n <= bound => AmbiguityVerdict::Exact(n),
        n => AmbiguityVerdict::AtLeast(n),
    }
}
