//! Products that accept a tree iff the automaton has `k` pairwise-distinct accepting runs on it.
//!
//! `k` trackers follow `δ` synchronously. Every pair of trackers that carry equal states is
//! pending: a checker for it searches one branch for the node where the pair first differs.
//! A pair that differs at the left child is resolved there; otherwise one that differs at the
//! right child is resolved there; otherwise the search moves to a chosen child. Checker colors
//! are co-Büchi (search 1, resolved 0) and all checkers share one coordinate by taking the max.

use std::collections::{HashMap, VecDeque};

use crate::automata::{compress_colors, ParityConjunction, Pta, Transition, TransitionTable};
use crate::membership::ProductRules;
use crate::trees::RegularTree;

/// How tracker parity conditions enter the acceptance condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackerMode {
    /// All compressed colors are 0: trackers never reject.
    Dropped,
    /// Compressed colors within `{0, 1}`: trackers join the checkers' co-Büchi coordinate.
    Folded,
    /// One parity coordinate per tracker, before the checkers' coordinate.
    Own,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KState {
    pub tr: Vec<usize>,
    /// Bit `p` set iff pair `p` is pending (its trackers carry equal states).
    pub pend: u64,
    pub dpw: Vec<usize>,
}

pub struct KDistinct<'a> {
    pub a: &'a Pta,
    pub k: usize,
    pub table: TransitionTable,
    pub pairs: Vec<(usize, usize)>,
    pub mode: TrackerMode,
    ccol: Vec<u32>,
    pub conj: ParityConjunction,
}

impl<'a> KDistinct<'a> {
    pub fn new(a: &'a Pta, k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        assert!(pairs.len() <= 64, "at most 64 tracker pairs are supported");
        let table = compress_colors(&a.colors);
        let ccol: Vec<u32> = a.colors.iter().map(|&c| table[c as usize]).collect();
        let top = ccol.iter().copied().max().unwrap_or(0);
        let mode = match top {
            0 => TrackerMode::Dropped,
            1 => TrackerMode::Folded,
            _ => TrackerMode::Own,
        };
        let dims: Vec<u32> = match mode {
            TrackerMode::Own => std::iter::repeat_n(top, k).chain([1]).collect(),
            _ => vec![1],
        };
        KDistinct { a, k, table: a.table(), pairs, mode, ccol, conj: ParityConjunction::new(&dims) }
    }

    fn coordinate_colors(&self, s: &KState) -> Vec<u32> {
        let search = u32::from(s.pend != 0);
        match self.mode {
            TrackerMode::Dropped => vec![search],
            TrackerMode::Folded => {
                vec![s.tr.iter().map(|&q| self.ccol[q]).max().unwrap_or(0).max(search)]
            }
            TrackerMode::Own => {
                let mut c: Vec<u32> = s.tr.iter().map(|&q| self.ccol[q]).collect();
                c.push(search);
                c
            }
        }
    }

    pub fn color(&self, s: &KState) -> u32 {
        self.conj.color(&s.dpw, &self.coordinate_colors(s))
    }

    fn pending_mask(&self, tr: &[usize]) -> u64 {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| tr[i] == tr[j])
            .fold(0u64, |m, (p, _)| m | (1 << p))
    }

    /// Initial states: all `k`-tuples of initial states allowed by `root_ok`; pending pairs must pass `live`.
    pub fn initials(&self, root_ok: &dyn Fn(usize) -> bool, live: &dyn Fn(usize) -> bool) -> Vec<KState> {
        let inits: Vec<usize> = self.a.initials.iter().copied().filter(|&q| root_ok(q)).collect();
        let mut out = Vec::new();
        let mut tuple = vec![0usize; self.k];
        if inits.is_empty() {
            return out;
        }
        let mut idx = vec![0usize; self.k];
        loop {
            for i in 0..self.k {
                tuple[i] = inits[idx[i]];
            }
            let pend = self.pending_mask(&tuple);
            let ok = (0..self.pairs.len()).all(|p| pend & (1 << p) == 0 || live(tuple[self.pairs[p].0]));
            if ok {
                out.push(KState { tr: tuple.clone(), pend, dpw: self.conj.initial() });
            }
            let mut i = self.k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < inits.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// All child pairs on `letter`. `child_ok(side, q)` filters tracker children and
    /// `live(side, q)` filters the child a genuine pending pair is routed to.
    pub fn successors(
        &self,
        s: &KState,
        letter: usize,
        child_ok: &dyn Fn(usize, usize) -> bool,
        live: &dyn Fn(usize, usize) -> bool,
    ) -> Vec<(KState, KState)> {
        let options: Vec<Vec<(usize, usize)>> = s
            .tr
            .iter()
            .map(|&q| {
                self.table
                    .get(q, letter)
                    .iter()
                    .copied()
                    .filter(|&(l, r)| child_ok(0, l) && child_ok(1, r))
                    .collect()
            })
            .collect();
        if options.iter().any(|o| o.is_empty()) {
            return Vec::new();
        }
        let dpw = self.conj.step(&s.dpw, &self.coordinate_colors(s));
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.k];
        let mut left = vec![0usize; self.k];
        let mut right = vec![0usize; self.k];
        loop {
            for i in 0..self.k {
                (left[i], right[i]) = options[i][idx[i]];
            }
            self.route(s.pend, &left, &right, &dpw, live, &mut out);
            let mut i = self.k;
            let mut done = true;
            while i > 0 {
                i -= 1;
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
            if done {
                return out;
            }
        }
    }

    fn route(
        &self,
        pend: u64,
        left: &[usize],
        right: &[usize],
        dpw: &[usize],
        live: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<(KState, KState)>,
    ) {
        // genuine pairs with their allowed sides: bit 0 left, bit 1 right
        let mut genuine: Vec<(usize, u8)> = Vec::new();
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            if pend & (1 << p) == 0 || left[i] != left[j] || right[i] != right[j] {
                continue;
            }
            let sides = u8::from(live(0, left[i])) | (u8::from(live(1, right[i])) << 1);
            if sides == 0 {
                return;
            }
            genuine.push((p, sides));
        }
        let mut choice = vec![0u8; genuine.len()];
        for (c, &(_, sides)) in choice.iter_mut().zip(&genuine) {
            *c = if sides & 1 != 0 { 0 } else { 1 };
        }
        loop {
            let mut lp = 0u64;
            let mut rp = 0u64;
            for (&(p, _), &c) in genuine.iter().zip(&choice) {
                if c == 0 {
                    lp |= 1 << p;
                } else {
                    rp |= 1 << p;
                }
            }
            out.push((
                KState { tr: left.to_vec(), pend: lp, dpw: dpw.to_vec() },
                KState { tr: right.to_vec(), pend: rp, dpw: dpw.to_vec() },
            ));
            // next routing: binary counter over pairs that may go both ways
            let mut g = genuine.len();
            let mut advanced = false;
            while g > 0 {
                g -= 1;
                if genuine[g].1 == 3 && choice[g] == 0 {
                    choice[g] = 1;
                    advanced = true;
                    break;
                }
                if genuine[g].1 == 3 {
                    choice[g] = 0;
                }
            }
            if !advanced {
                return;
            }
        }
    }

    pub fn name(&self, s: &KState) -> String {
        let tr: Vec<&str> = s.tr.iter().map(|&q| self.a.states[q].as_str()).collect();
        let mut name = format!("<{}|{:x}", tr.join(","), s.pend);
        if !s.dpw.is_empty() {
            let d: Vec<String> = s.dpw.iter().map(|x| x.to_string()).collect();
            name.push_str(&format!("|{}", d.join(".")));
        }
        name.push('>');
        name
    }
}

/// The explicit product automaton over the whole alphabet, without tree-specific pruning.
pub fn k_distinct_runs_automaton(a: &Pta, k: usize) -> Pta {
    let kd = KDistinct::new(a, k);
    let yes1 = |_: usize| true;
    let yes2 = |_: usize, _: usize| true;
    let mut index: HashMap<KState, usize> = HashMap::new();
    let mut keys: Vec<KState> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: KState, keys: &mut Vec<KState>, queue: &mut VecDeque<usize>| -> usize {
        if let Some(&i) = index.get(&s) {
            return i;
        }
        keys.push(s.clone());
        index.insert(s, keys.len() - 1);
        queue.push_back(keys.len() - 1);
        keys.len() - 1
    };
    let initials: Vec<usize> =
        kd.initials(&yes1, &yes1).into_iter().map(|s| intern(s, &mut keys, &mut queue)).collect();
    let mut trans = Vec::new();
    while let Some(i) = queue.pop_front() {
        for letter in 0..a.alphabet.len() {
            let s = keys[i].clone();
            for (l, r) in kd.successors(&s, letter, &yes2, &yes2) {
                let li = intern(l, &mut keys, &mut queue);
                let ri = intern(r, &mut keys, &mut queue);
                trans.push(Transition { from: i, letter, left: li, right: ri });
            }
        }
    }
    let states = keys.iter().map(|s| kd.name(s)).collect();
    let colors = keys.iter().map(|s| kd.color(s)).collect();
    Pta::new(format!("{}_x{}", a.name, k), a.alphabet.clone(), states, colors, initials, trans)
        .expect("product indices are in range")
}

/// Lazy product rules on one tree with exact prunings: tracker children must be accepted
/// residually (`win`), and a genuine pending pair may only enter a child where two distinct
/// residual runs exist (`two`).
pub struct KRules<'a, 'b> {
    pub kd: &'b KDistinct<'a>,
    pub letters: Vec<Option<usize>>,
    pub win: &'b [Vec<bool>],
    pub two: Option<&'b [Vec<bool>]>,
}

impl ProductRules for KRules<'_, '_> {
    type S = KState;

    fn color(&self, s: &KState) -> u32 {
        self.kd.color(s)
    }

    fn moves(&self, t: &RegularTree, m: usize, s: &KState) -> Vec<(KState, KState)> {
        let Some(letter) = self.letters[t.out[m]] else { return Vec::new() };
        let kids = t.next[m];
        let child_ok = |side: usize, q: usize| self.win[kids[side]][q];
        let live = |side: usize, q: usize| self.two.is_none_or(|two| two[kids[side]][q]);
        self.kd.successors(s, letter, &child_ok, &live)
    }

    fn name(&self, s: &KState) -> String {
        self.kd.name(s)
    }
}
