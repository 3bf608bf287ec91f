//! Parity tree automata and the constructions that bound accepting-run counts.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::dpw::{compress_colors, conjunction_dpw};
use super::AutomatonError;
use crate::trees::{MooreMachine, RegularTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub letter: usize,
    pub left: usize,
    pub right: usize,
}

/// A nondeterministic parity tree automaton. A run is accepting iff on every branch the
/// largest color seen infinitely often is even. Zero states is the empty-language marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pta {
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub colors: Vec<u32>,
    pub initials: Vec<usize>,
    pub transitions: Vec<Transition>,
}

/// `moves[q][a]` lists the pairs `(q_l, q_r)` with `(q, a, q_l, q_r) ∈ δ`, sorted and deduplicated.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    pub moves: Vec<Vec<Vec<(usize, usize)>>>,
}

impl TransitionTable {
    pub fn get(&self, q: usize, a: usize) -> &[(usize, usize)] {
        &self.moves[q][a]
    }
}

impl Pta {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: Vec<String>,
        colors: Vec<u32>,
        initials: Vec<usize>,
        transitions: Vec<Transition>,
    ) -> Result<Self, AutomatonError> {
        let n = states.len();
        if colors.len() != n {
            return Err(AutomatonError::Malformed("one color per state is required".into()));
        }
        if let Some(&q) = initials.iter().find(|&&q| q >= n) {
            return Err(AutomatonError::UnknownState(format!("#{q}")));
        }
        for t in &transitions {
            if t.from >= n || t.left >= n || t.right >= n {
                return Err(AutomatonError::UnknownState(format!("#{}", t.from.max(t.left).max(t.right))));
            }
            if t.letter >= alphabet.len() {
                return Err(AutomatonError::UnknownLetter(format!("#{}", t.letter)));
            }
        }
        let mut a = Pta { name: name.into(), alphabet, states, colors, initials, transitions };
        a.normalize();
        Ok(a)
    }

    /// Builds from names; states are declared in order of first appearance in `states`.
    pub fn from_names(
        name: &str,
        alphabet: &[&str],
        states: &[(&str, u32)],
        initials: &[&str],
        transitions: &[(&str, &str, &str, &str)],
    ) -> Result<Self, AutomatonError> {
        let alpha: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let names: Vec<String> = states.iter().map(|(s, _)| s.to_string()).collect();
        let sidx = |s: &str| names.iter().position(|x| x == s).ok_or_else(|| AutomatonError::UnknownState(s.into()));
        let aidx = |s: &str| alpha.iter().position(|x| x == s).ok_or_else(|| AutomatonError::UnknownLetter(s.into()));
        let inits = initials.iter().map(|s| sidx(s)).collect::<Result<Vec<_>, _>>()?;
        let trans = transitions
            .iter()
            .map(|&(q, a, l, r)| {
                Ok(Transition { from: sidx(q)?, letter: aidx(a)?, left: sidx(l)?, right: sidx(r)? })
            })
            .collect::<Result<Vec<_>, AutomatonError>>()?;
        Pta::new(name, alpha.clone(), names.clone(), states.iter().map(|s| s.1).collect(), inits, trans)
    }

    /// The explicit empty-language automaton.
    pub fn empty_marker(name: impl Into<String>, alphabet: Vec<String>) -> Self {
        Pta { name: name.into(), alphabet, states: vec![], colors: vec![], initials: vec![], transitions: vec![] }
    }

    pub fn is_empty_marker(&self) -> bool {
        self.states.is_empty()
    }

    fn normalize(&mut self) {
        self.transitions.sort_unstable();
        self.transitions.dedup();
        self.initials.sort_unstable();
        self.initials.dedup();
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter_index(&self, sym: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == sym)
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn table(&self) -> TransitionTable {
        let mut moves = vec![vec![Vec::new(); self.alphabet.len()]; self.states.len()];
        for t in &self.transitions {
            moves[t.from][t.letter].push((t.left, t.right));
        }
        for row in &mut moves {
            for m in row.iter_mut() {
                m.sort_unstable();
                m.dedup();
            }
        }
        TransitionTable { moves }
    }

    pub fn has_transition(&self, q: usize, a: usize, l: usize, r: usize) -> bool {
        self.transitions.binary_search(&Transition { from: q, letter: a, left: l, right: r }).is_ok()
    }

    /// Deterministic: at most one initial and at most one move per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.initials.len() <= 1 && self.table().moves.iter().flatten().all(|m| m.len() <= 1)
    }

    /// Index map from `self.alphabet` into `tree.alphabet`-indexed letters: `map[tree_letter] = Some(self_letter)`.
    pub fn letter_map_from(&self, tree_alphabet: &[String]) -> Vec<Option<usize>> {
        tree_alphabet.iter().map(|s| self.letter_index(s)).collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn same_alphabet(a: &[String], b: &[String]) -> bool {
    let x: BTreeSet<&String> = a.iter().collect();
    let y: BTreeSet<&String> = b.iter().collect();
    x == y
}

/// `A_{Q'}`: the initial set replaced by the named states.
pub fn restrict_initials(a: &Pta, initials: &[&str]) -> Result<Pta, AutomatonError> {
    let idx = initials
        .iter()
        .map(|s| a.state_index(s).ok_or_else(|| AutomatonError::UnknownState(s.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut b = a.clone();
    b.initials = idx;
    b.normalize();
    Ok(b)
}

/// Disjoint union with states prefixed by their automaton's name; runs add up.
pub fn union(a1: &Pta, a2: &Pta) -> Result<Pta, AutomatonError> {
    if !same_alphabet(&a1.alphabet, &a2.alphabet) {
        return Err(AutomatonError::AlphabetMismatch(format!("{} vs {}", a1.name, a2.name)));
    }
    let remap: Vec<usize> = a2.alphabet.iter().map(|s| a1.letter_index(s).expect("equal alphabets")).collect();
    let n1 = a1.states.len();
    let mut states: Vec<String> = a1.states.iter().map(|s| format!("{}.{}", a1.name, s)).collect();
    states.extend(a2.states.iter().map(|s| format!("{}.{}", a2.name, s)));
    let mut colors = a1.colors.clone();
    colors.extend(&a2.colors);
    let mut initials = a1.initials.clone();
    initials.extend(a2.initials.iter().map(|q| q + n1));
    let mut trans = a1.transitions.clone();
    trans.extend(a2.transitions.iter().map(|t| Transition {
        from: t.from + n1,
        letter: remap[t.letter],
        left: t.left + n1,
        right: t.right + n1,
    }));
    Pta::new(format!("{}_or_{}", a1.name, a2.name), a1.alphabet.clone(), states, colors, initials, trans)
}

/// One fresh initial state copying the outgoing moves of every old initial; color 1 (visited once).
pub fn single_initial(a: &Pta) -> Pta {
    if a.initials.len() == 1 {
        return a.clone();
    }
    let fresh = a.states.len();
    let mut name = "init".to_string();
    while a.states.contains(&name) {
        name.push('\'');
    }
    let mut b = a.clone();
    b.states.push(name);
    b.colors.push(1);
    for t in &a.transitions {
        if a.initials.contains(&t.from) {
            b.transitions.push(Transition { from: fresh, ..*t });
        }
    }
    b.initials = vec![fresh];
    b.normalize();
    b
}

/// `A1` over `M`'s input alphabet with `t ∈ L(A1) ⟺ F̂(t) ∈ L(A2)`; states `(q, p)` where `p` is
/// the machine state after the labels strictly above the current node.
pub fn moore_reduction(a2: &Pta, m: &MooreMachine) -> Result<Pta, AutomatonError> {
    let out_map = m
        .output
        .iter()
        .map(|s| a2.letter_index(s).ok_or_else(|| AutomatonError::AlphabetMismatch(s.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let table = a2.table();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |k: (usize, usize), keys: &mut Vec<(usize, usize)>, queue: &mut VecDeque<usize>| {
        *index.entry(k).or_insert_with(|| {
            keys.push(k);
            queue.push_back(keys.len() - 1);
            keys.len() - 1
        })
    };
    let initials: Vec<usize> =
        a2.initials.iter().map(|&q| intern((q, m.init), &mut keys, &mut queue)).collect();
    let mut trans = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (q, p) = keys[i];
        for a in 0..m.input.len() {
            let p2 = m.delta[p][a];
            for &(l, r) in table.get(q, out_map[m.out[p2]]) {
                let li = intern((l, p2), &mut keys, &mut queue);
                let ri = intern((r, p2), &mut keys, &mut queue);
                trans.push(Transition { from: i, letter: a, left: li, right: ri });
            }
        }
    }
    let states = keys.iter().map(|&(q, p)| format!("{}@{}", a2.states[q], m.states[p])).collect();
    let colors = keys.iter().map(|&(q, _)| a2.colors[q]).collect();
    Pta::new(format!("{}_via_{}", a2.name, m.name), m.input.clone(), states, colors, initials, trans)
}

/// Product with a parity-conjunction gadget over the compressed color images.
/// Colors are read from the gadget state, which lags one node behind.
pub fn intersect(a1: &Pta, a2: &Pta) -> Result<Pta, AutomatonError> {
    let alphabet: Vec<String> = a1.alphabet.iter().filter(|s| a2.alphabet.contains(s)).cloned().collect();
    if alphabet.is_empty() {
        return Err(AutomatonError::AlphabetMismatch(format!("{} and {} share no letter", a1.name, a2.name)));
    }
    let c1 = compress_colors(&a1.colors);
    let c2 = compress_colors(&a2.colors);
    let d1 = a1.colors.iter().map(|&c| c1[c as usize]).max().unwrap_or(0);
    let d2 = a2.colors.iter().map(|&c| c2[c as usize]).max().unwrap_or(0);
    let d = conjunction_dpw(d1, d2);
    let t1 = a1.table();
    let t2 = a2.table();
    let l1: Vec<usize> = alphabet.iter().map(|s| a1.letter_index(s).expect("common letter")).collect();
    let l2: Vec<usize> = alphabet.iter().map(|s| a2.letter_index(s).expect("common letter")).collect();

    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut keys = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |k: (usize, usize, usize), keys: &mut Vec<(usize, usize, usize)>, queue: &mut VecDeque<usize>| {
        *index.entry(k).or_insert_with(|| {
            keys.push(k);
            queue.push_back(keys.len() - 1);
            keys.len() - 1
        })
    };
    let mut initials = Vec::new();
    for &q in &a1.initials {
        for &p in &a2.initials {
            initials.push(intern((q, p, d.init), &mut keys, &mut queue));
        }
    }
    let mut trans = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (q, p, s) = keys[i];
        let letter = (c1[a1.colors[q] as usize] * (d2 + 1) + c2[a2.colors[p] as usize]) as usize;
        let s2 = d.delta[s][letter];
        for (a, (&x, &y)) in l1.iter().zip(&l2).enumerate() {
            for &(ql, qr) in t1.get(q, x) {
                for &(pl, pr) in t2.get(p, y) {
                    let li = intern((ql, pl, s2), &mut keys, &mut queue);
                    let ri = intern((qr, pr, s2), &mut keys, &mut queue);
                    trans.push(Transition { from: i, letter: a, left: li, right: ri });
                }
            }
        }
    }
    let states = keys
        .iter()
        .map(|&(q, p, s)| format!("{}.{}.{}.d{}", a1.name, a1.states[q], a2.states[p], s))
        .collect();
    let colors = keys.iter().map(|&(_, _, s)| d.colors[s]).collect();
    Pta::new(format!("{}_and_{}", a1.name, a2.name), alphabet, states, colors, initials, trans)
}

/// Deterministic automaton accepting exactly `{t}`; states are the tree machine's states, all color 0.
pub fn det_pta_for_tree(t: &RegularTree) -> Pta {
    let trans = (0..t.len())
        .map(|s| Transition { from: s, letter: t.out[s], left: t.next[s][0], right: t.next[s][1] })
        .collect();
    Pta::new(
        format!("only_{}", t.name),
        t.alphabet.clone(),
        t.states.clone(),
        vec![0; t.len()],
        vec![t.init],
        trans,
    )
    .expect("tree machine indices are in range")
}

/// Language-equivalent automaton in which every state occurs in some accepting run.
pub fn trim_useful(a: &Pta) -> Pta {
    let nonempty = crate::ambiguity::nonempty_states(a);
    let good: Vec<&Transition> =
        a.transitions.iter().filter(|t| nonempty[t.from] && nonempty[t.left] && nonempty[t.right]).collect();
    let mut reach = vec![false; a.states.len()];
    let mut stack: Vec<usize> = a.initials.iter().copied().filter(|&q| nonempty[q]).collect();
    for &q in &stack {
        reach[q] = true;
    }
    while let Some(q) = stack.pop() {
        for t in good.iter().filter(|t| t.from == q) {
            for c in [t.left, t.right] {
                if !reach[c] {
                    reach[c] = true;
                    stack.push(c);
                }
            }
        }
    }
    if !reach.iter().any(|&r| r) {
        return Pta::empty_marker(a.name.clone(), a.alphabet.clone());
    }
    let kept: Vec<usize> = (0..a.states.len()).filter(|&q| reach[q]).collect();
    let mut map = vec![usize::MAX; a.states.len()];
    for (i, &q) in kept.iter().enumerate() {
        map[q] = i;
    }
    let trans = good
        .iter()
        .filter(|t| reach[t.from])
        .map(|t| Transition { from: map[t.from], letter: t.letter, left: map[t.left], right: map[t.right] })
        .collect();
    Pta::new(
        a.name.clone(),
        a.alphabet.clone(),
        kept.iter().map(|&q| a.states[q].clone()).collect(),
        kept.iter().map(|&q| a.colors[q]).collect(),
        a.initials.iter().filter(|&&q| reach[q]).map(|&q| map[q]).collect(),
        trans,
    )
    .expect("trimmed indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_c(color: u32) -> Pta {
        Pta::from_names("loop", &["c"], &[("q", color)], &["q"], &[("q", "c", "q", "q")]).unwrap()
    }

    #[test]
    fn trim_keeps_useful_loop() {
        assert_eq!(trim_useful(&loop_c(0)), loop_c(0));
    }

    #[test]
    fn trim_drops_disconnected_state() {
        let a = Pta::from_names("loop", &["c"], &[("q", 0), ("x", 0)], &["q"], &[("q", "c", "q", "q")]).unwrap();
        assert_eq!(trim_useful(&a).len(), 1);
    }

    #[test]
    fn trim_drops_odd_trap() {
        let a = Pta::from_names(
            "trap",
            &["c"],
            &[("q1", 0), ("q2", 1)],
            &["q1"],
            &[("q1", "c", "q1", "q1"), ("q1", "c", "q2", "q1"), ("q2", "c", "q2", "q2")],
        )
        .unwrap();
        let t = trim_useful(&a);
        assert_eq!(t.states, vec!["q1".to_string()]);
        assert_eq!(t.transitions.len(), 1);
    }

    #[test]
    fn odd_loop_trims_to_empty_marker() {
        assert!(trim_useful(&loop_c(1)).is_empty_marker());
    }

    #[test]
    fn union_renames_and_keeps_all_initials() {
        let u = union(&loop_c(0).with_name("a"), &loop_c(0).with_name("b")).unwrap();
        assert_eq!(u.states, vec!["a.q".to_string(), "b.q".to_string()]);
        assert_eq!(u.initials, vec![0, 1]);
    }

    #[test]
    fn union_rejects_different_alphabets() {
        let other = Pta::from_names("o", &["a1"], &[("q", 0)], &["q"], &[]).unwrap();
        assert!(matches!(union(&loop_c(0), &other), Err(AutomatonError::AlphabetMismatch(_))));
    }

    #[test]
    fn single_initial_copies_moves() {
        let u = union(&loop_c(0).with_name("a"), &loop_c(0).with_name("b")).unwrap();
        let s = single_initial(&u);
        assert_eq!(s.initials, vec![2]);
        assert_eq!(s.colors[2], 1);
        assert_eq!(s.transitions.iter().filter(|t| t.from == 2).count(), 2);
    }

    #[test]
    fn restrict_rejects_unknown_state() {
        assert!(matches!(restrict_initials(&loop_c(0), &["nope"]), Err(AutomatonError::UnknownState(_))));
    }
}
