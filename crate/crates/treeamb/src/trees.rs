//! Regular infinite binary trees given by Moore machines over the directions `l` and `r`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("symbol `{0}` is not in the alphabet")]
    AlphabetMismatch(String),
    #[error("accepted words of `{0}` do not form an antichain")]
    AntichainViolation(String),
    #[error("invalid node path `{0}`")]
    BadPath(String),
    #[error("malformed machine: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub const BOTH: [Dir; 2] = [Dir::L, Dir::R];

    pub fn index(self) -> usize {
        match self {
            Dir::L => 0,
            Dir::R => 1,
        }
    }

    pub fn other(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Dir::L => "l",
            Dir::R => "r",
        }
    }

    pub fn parse(s: &str) -> Option<Dir> {
        match s {
            "l" => Some(Dir::L),
            "r" => Some(Dir::R),
            _ => None,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite word over `{l, r}` naming a node; the empty word is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(Vec<Dir>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn from_dirs(dirs: Vec<Dir>) -> Self {
        NodePath(dirs)
    }

    /// Accepts `""`, `"-"` and `"ε"` for the root, otherwise a word over `l`/`r`.
    pub fn parse(s: &str) -> Result<Self, TreeError> {
        if s.is_empty() || s == "-" || s == "ε" {
            return Ok(Self::root());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Dir::L),
                'r' => Ok(Dir::R),
                _ => Err(TreeError::BadPath(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(NodePath)
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// The root is the empty word.
    pub fn is_empty(&self) -> bool {
        self.is_root()
    }

    pub fn child(&self, d: Dir) -> NodePath {
        let mut v = self.0.clone();
        v.push(d);
        NodePath(v)
    }

    pub fn concat(&self, other: &NodePath) -> NodePath {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        NodePath(v)
    }

    pub fn parent(&self) -> Option<NodePath> {
        if self.0.is_empty() {
            None
        } else {
            Some(NodePath(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn is_prefix_of(&self, other: &NodePath) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn incomparable(&self, other: &NodePath) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// The word itself, with `-` standing for the root.
    pub fn to_word(&self) -> String {
        if self.0.is_empty() {
            "-".to_string()
        } else {
            self.0.iter().map(|d| d.as_str()).collect()
        }
    }

    /// All paths of length exactly `d`, in lexicographic order with `l < r`.
    pub fn all_of_length(d: usize) -> Vec<NodePath> {
        let mut out = vec![NodePath::root()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|p| [p.child(Dir::L), p.child(Dir::R)])
                .collect();
        }
        out
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            for d in &self.0 {
                f.write_str(d.as_str())?;
            }
            Ok(())
        }
    }
}

/// Explores the machine reachable from `start`; states are numbered in BFS order.
/// `step` returns the label of a key and its two successor keys.
pub(crate) fn explore<K, F>(start: K, mut step: F) -> (Vec<K>, Vec<usize>, Vec<[usize; 2]>)
where
    K: Clone + Eq + Hash,
    F: FnMut(&K) -> (usize, [K; 2]),
{
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut keys = vec![start.clone()];
    index.insert(start, 0);
    let mut out = Vec::new();
    let mut next = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (label, succ) = step(&keys[i]);
        let mut ids = [0usize; 2];
        for (slot, k) in succ.into_iter().enumerate() {
            let id = match index.get(&k) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    index.insert(k.clone(), id);
                    keys.push(k);
                    queue.push_back(id);
                    id
                }
            };
            ids[slot] = id;
        }
        if out.len() <= i {
            out.resize(i + 1, 0);
            next.resize(i + 1, [0, 0]);
        }
        out[i] = label;
        next[i] = ids;
    }
    (keys, out, next)
}

/// A Moore machine over `{l, r}` denoting the labeling `t(v) = out(next*(init, v))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularTree {
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub init: usize,
    pub next: Vec<[usize; 2]>,
    /// Index into `alphabet` for every state.
    pub out: Vec<usize>,
}

impl RegularTree {
    /// Checks totality and index ranges; does not trim.
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: Vec<String>,
        init: usize,
        next: Vec<[usize; 2]>,
        out: Vec<usize>,
    ) -> Result<Self, TreeError> {
        let n = states.len();
        if n == 0 || init >= n || next.len() != n || out.len() != n {
            return Err(TreeError::Malformed("state tables are not total".into()));
        }
        if next.iter().flatten().any(|&s| s >= n) {
            return Err(TreeError::Malformed("edge to an undeclared state".into()));
        }
        if let Some(&a) = out.iter().find(|&&a| a >= alphabet.len()) {
            return Err(TreeError::AlphabetMismatch(format!("#{a}")));
        }
        Ok(RegularTree { name: name.into(), alphabet, states, init, next, out })
    }

    /// The tree labeled `sym` everywhere.
    pub fn constant(name: impl Into<String>, alphabet: &[&str], sym: &str) -> Result<Self, TreeError> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let a = alphabet
            .iter()
            .position(|s| s == sym)
            .ok_or_else(|| TreeError::AlphabetMismatch(sym.to_string()))?;
        RegularTree::new(name, alphabet, vec!["s0".into()], 0, vec![[0, 0]], vec![a])
    }

    fn from_explored(name: String, alphabet: Vec<String>, out: Vec<usize>, next: Vec<[usize; 2]>) -> Self {
        let states = (0..out.len()).map(|i| format!("s{i}")).collect();
        RegularTree { name, alphabet, states, init: 0, next, out }
    }

    pub fn symbol_index(&self, sym: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == sym)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_at(&self, v: &NodePath) -> usize {
        v.dirs().iter().fold(self.init, |s, d| self.next[s][d.index()])
    }

    pub fn label_index(&self, v: &NodePath) -> usize {
        self.out[self.state_at(v)]
    }

    pub fn label(&self, v: &NodePath) -> &str {
        &self.alphabet[self.label_index(v)]
    }

    pub fn state_label(&self, s: usize) -> &str {
        &self.alphabet[self.out[s]]
    }

    /// Same denotation, unreachable states dropped, states renumbered in BFS order.
    pub fn trim(&self) -> RegularTree {
        let (keys, out, next) = explore(self.init, |&s| (self.out[s], self.next[s]));
        let states = keys.iter().map(|&s| self.states[s].clone()).collect();
        RegularTree { name: self.name.clone(), alphabet: self.alphabet.clone(), states, init: 0, next, out }
    }

    /// Same tree with the machine's initial state moved to `s`, trimmed.
    pub fn rooted_at_state(&self, s: usize) -> RegularTree {
        let mut t = self.clone();
        t.init = s;
        t.trim()
    }

    /// Labels of all nodes up to depth `d`, in breadth-first order.
    pub fn unfold(&self, d: usize) -> Vec<(NodePath, String)> {
        (0..=d)
            .flat_map(NodePath::all_of_length)
            .map(|p| {
                let l = self.label(&p).to_string();
                (p, l)
            })
            .collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn merged_alphabet(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for s in b {
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

fn symbol_map(from: &[String], to: &[String]) -> Vec<usize> {
    from.iter()
        .map(|s| to.iter().position(|x| x == s).expect("merged alphabet contains every symbol"))
        .collect()
}

/// `t_{≥v}`.
pub fn subtree_at(t: &RegularTree, v: &NodePath) -> RegularTree {
    let mut s = t.rooted_at_state(t.state_at(v));
    s.name = format!("{}_at_{}", t.name, v.to_word());
    s
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum GraftKey {
    Path(usize, usize),
    First(usize),
    Second(usize),
}

/// `t1[t2/v]`: labels of `t2` on the cone above `v`, labels of `t1` elsewhere.
pub fn graft_node(t1: &RegularTree, t2: &RegularTree, v: &NodePath) -> RegularTree {
    let alphabet = merged_alphabet(&t1.alphabet, &t2.alphabet);
    let m1 = symbol_map(&t1.alphabet, &alphabet);
    let m2 = symbol_map(&t2.alphabet, &alphabet);
    let word = v.dirs();
    let start = if word.is_empty() { GraftKey::Second(t2.init) } else { GraftKey::Path(0, t1.init) };
    let (_, out, next) = explore(start, |k| match *k {
        GraftKey::Path(i, s) => {
            let succ = Dir::BOTH.map(|d| {
                let n = t1.next[s][d.index()];
                if d != word[i] {
                    GraftKey::First(n)
                } else if i + 1 == word.len() {
                    GraftKey::Second(t2.init)
                } else {
                    GraftKey::Path(i + 1, n)
                }
            });
            (m1[t1.out[s]], succ)
        }
        GraftKey::First(s) => (m1[t1.out[s]], t1.next[s].map(GraftKey::First)),
        GraftKey::Second(s) => (m2[t2.out[s]], t2.next[s].map(GraftKey::Second)),
    });
    RegularTree::from_explored(format!("{}_graft_{}", t1.name, v.to_word()), alphabet, out, next)
}

/// A deterministic acceptor over `{l, r}` whose accepted words form an antichain.
/// A missing edge rejects every extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularAntichain {
    pub name: String,
    pub states: Vec<String>,
    pub init: usize,
    pub next: Vec<[Option<usize>; 2]>,
    pub accepting: Vec<bool>,
}

impl RegularAntichain {
    /// The acceptor of `l^*·r`.
    pub fn left_spine_right() -> Self {
        RegularAntichain {
            name: "lstar_r".into(),
            states: vec!["c0".into(), "c1".into()],
            init: 0,
            next: vec![[Some(0), Some(1)], [None, None]],
            accepting: vec![false, true],
        }
    }

    /// The acceptor of the empty set.
    pub fn empty() -> Self {
        RegularAntichain {
            name: "empty".into(),
            states: vec!["c0".into()],
            init: 0,
            next: vec![[None, None]],
            accepting: vec![false],
        }
    }

    /// The acceptor of the single word `v`.
    pub fn singleton(v: &NodePath) -> Self {
        let n = v.len();
        let mut next = vec![[None, None]; n + 1];
        for (i, d) in v.dirs().iter().enumerate() {
            next[i][d.index()] = Some(i + 1);
        }
        let mut accepting = vec![false; n + 1];
        accepting[n] = true;
        RegularAntichain {
            name: format!("at_{}", v.to_word()),
            states: (0..=n).map(|i| format!("c{i}")).collect(),
            init: 0,
            next,
            accepting,
        }
    }

    pub fn accepts(&self, v: &NodePath) -> bool {
        let mut s = self.init;
        for d in v.dirs() {
            match self.next[s][d.index()] {
                Some(n) => s = n,
                None => return false,
            }
        }
        self.accepting[s]
    }

    fn reachable_from(&self, starts: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = starts.to_vec();
        for &s in starts {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for n in self.next[s].iter().flatten() {
                if !seen[*n] {
                    seen[*n] = true;
                    stack.push(*n);
                }
            }
        }
        seen
    }

    /// No accepting state reaches an accepting state by a nonempty path inside the trimmed acceptor.
    pub fn is_antichain(&self) -> bool {
        let reach = self.reachable_from(&[self.init]);
        (0..self.states.len())
            .filter(|&s| reach[s] && self.accepting[s])
            .all(|s| {
                let succ: Vec<usize> = self.next[s].iter().flatten().copied().collect();
                let below = self.reachable_from(&succ);
                !(0..self.states.len()).any(|x| below[x] && self.accepting[x])
            })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ChainKey {
    Track(usize, usize),
    First(usize),
    Second(usize),
}

/// `t1[t2/Y]`: every subtree rooted at a word of `Y` replaced by `t2`.
pub fn graft_antichain(
    t1: &RegularTree,
    t2: &RegularTree,
    y: &RegularAntichain,
) -> Result<RegularTree, TreeError> {
    if !y.is_antichain() {
        return Err(TreeError::AntichainViolation(y.name.clone()));
    }
    let alphabet = merged_alphabet(&t1.alphabet, &t2.alphabet);
    let m1 = symbol_map(&t1.alphabet, &alphabet);
    let m2 = symbol_map(&t2.alphabet, &alphabet);
    let enter = |s1: usize, c: Option<usize>| match c {
        Some(c) if y.accepting[c] => ChainKey::Second(t2.init),
        Some(c) => ChainKey::Track(s1, c),
        None => ChainKey::First(s1),
    };
    let start = enter(t1.init, Some(y.init));
    let (_, out, next) = explore(start, |k| match *k {
        ChainKey::Track(s, c) => {
            let succ = Dir::BOTH.map(|d| enter(t1.next[s][d.index()], y.next[c][d.index()]));
            (m1[t1.out[s]], succ)
        }
        ChainKey::First(s) => (m1[t1.out[s]], t1.next[s].map(ChainKey::First)),
        ChainKey::Second(s) => (m2[t2.out[s]], t2.next[s].map(ChainKey::Second)),
    });
    Ok(RegularTree::from_explored(
        format!("{}_graft_{}", t1.name, y.name),
        alphabet,
        out,
        next,
    ))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum NodeKey {
    Root,
    Left(usize),
    Right(usize),
}

/// `Tree(a, t1, t2)`.
pub fn make_node(a: &str, t1: &RegularTree, t2: &RegularTree) -> Result<RegularTree, TreeError> {
    let alphabet = merged_alphabet(&t1.alphabet, &t2.alphabet);
    let root = alphabet
        .iter()
        .position(|s| s == a)
        .ok_or_else(|| TreeError::AlphabetMismatch(a.to_string()))?;
    let m1 = symbol_map(&t1.alphabet, &alphabet);
    let m2 = symbol_map(&t2.alphabet, &alphabet);
    let (_, out, next) = explore(NodeKey::Root, |k| match *k {
        NodeKey::Root => (root, [NodeKey::Left(t1.init), NodeKey::Right(t2.init)]),
        NodeKey::Left(s) => (m1[t1.out[s]], t1.next[s].map(NodeKey::Left)),
        NodeKey::Right(s) => (m2[t2.out[s]], t2.next[s].map(NodeKey::Right)),
    });
    Ok(RegularTree::from_explored(
        format!("node_{}_{}_{}", a, t1.name, t2.name),
        alphabet,
        out,
        next,
    ))
}

/// Whether the two machines denote the same labeling.
pub fn tree_equal(t1: &RegularTree, t2: &RegularTree) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![(t1.init, t2.init)];
    seen.insert((t1.init, t2.init));
    while let Some((a, b)) = stack.pop() {
        if t1.state_label(a) != t2.state_label(b) {
            return false;
        }
        for d in Dir::BOTH {
            let p = (t1.next[a][d.index()], t2.next[b][d.index()]);
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
    true
}

/// First node (breadth-first, `l` before `r`) where the two labelings differ.
pub fn first_difference(t1: &RegularTree, t2: &RegularTree) -> Option<NodePath> {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([(t1.init, t2.init, NodePath::root())]);
    seen.insert((t1.init, t2.init));
    while let Some((a, b, p)) = queue.pop_front() {
        if t1.state_label(a) != t2.state_label(b) {
            return Some(p);
        }
        for d in Dir::BOTH {
            let q = (t1.next[a][d.index()], t2.next[b][d.index()]);
            if seen.insert(q) {
                queue.push_back((q.0, q.1, p.child(d)));
            }
        }
    }
    None
}

/// A letter-to-letter Moore machine `F: Σ1* → Σ2`, `F(w) = out(δ*(init, w))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    pub name: String,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub states: Vec<String>,
    pub init: usize,
    /// `delta[p][a]` for every input letter `a`.
    pub delta: Vec<Vec<usize>>,
    pub out: Vec<usize>,
}

impl MooreMachine {
    pub fn new(
        name: impl Into<String>,
        input: Vec<String>,
        output: Vec<String>,
        states: Vec<String>,
        init: usize,
        delta: Vec<Vec<usize>>,
        out: Vec<usize>,
    ) -> Result<Self, TreeError> {
        let n = states.len();
        if n == 0 || init >= n || delta.len() != n || out.len() != n {
            return Err(TreeError::Malformed("moore tables are not total".into()));
        }
        if delta.iter().any(|row| row.len() != input.len() || row.iter().any(|&p| p >= n)) {
            return Err(TreeError::Malformed("moore transition table is not total".into()));
        }
        if out.iter().any(|&o| o >= output.len()) {
            return Err(TreeError::Malformed("moore output outside its alphabet".into()));
        }
        Ok(MooreMachine { name: name.into(), input, output, states, init, delta, out })
    }

    /// Outputs `sym` on every word.
    pub fn constant(input: &[String], sym: &str) -> Self {
        MooreMachine {
            name: format!("const_{sym}"),
            input: input.to_vec(),
            output: vec![sym.to_string()],
            states: vec!["p0".into()],
            init: 0,
            delta: vec![vec![0; input.len()]],
            out: vec![0],
        }
    }

    /// Outputs the last letter read (the empty word maps to the first letter).
    pub fn last_letter(alphabet: &[String]) -> Self {
        let n = alphabet.len();
        MooreMachine {
            name: "last_letter".into(),
            input: alphabet.to_vec(),
            output: alphabet.to_vec(),
            states: alphabet.iter().map(|a| format!("p_{a}")).collect(),
            init: 0,
            delta: vec![(0..n).collect(); n],
            out: (0..n).collect(),
        }
    }

    /// Outputs `yes` iff some letter of `hits` has been read, `no` otherwise.
    pub fn seen_any(alphabet: &[String], hits: &[&str], yes: &str, no: &str) -> Self {
        let row = |seen: bool| {
            alphabet
                .iter()
                .map(|a| usize::from(seen || hits.contains(&a.as_str())))
                .collect::<Vec<_>>()
        };
        MooreMachine {
            name: "seen_any".into(),
            input: alphabet.to_vec(),
            output: vec![no.to_string(), yes.to_string()],
            states: vec!["unseen".into(), "seen".into()],
            init: 0,
            delta: vec![row(false), row(true)],
            out: vec![0, 1],
        }
    }

    /// `F(σ1…σk) = a_{k−i+1}` where `σi` is the first `a1` and `k−i+1 ≤ m`, else `c`.
    pub fn first_a1_countdown(alphabet: &[String], m: usize) -> Self {
        let a1 = alphabet.iter().position(|a| a == "a1").unwrap_or(usize::MAX);
        let mut output = vec!["c".to_string()];
        output.extend((1..=m).map(|i| format!("a{i}")));
        // state 0: no a1 yet; state j in 1..=m: a1 seen j letters ago (inclusive); m+1: too far
        let far = m + 1;
        let mut delta = Vec::new();
        let mut out = Vec::new();
        for s in 0..=far {
            let row = (0..alphabet.len())
                .map(|a| match s {
                    0 if a == a1 => 1,
                    0 => 0,
                    j if j >= m => far,
                    j => j + 1,
                })
                .collect();
            delta.push(row);
            out.push(if s == 0 || s == far { 0 } else { s });
        }
        MooreMachine {
            name: format!("first_a1_countdown_{m}"),
            input: alphabet.to_vec(),
            output,
            states: (0..=far).map(|i| format!("p{i}")).collect(),
            init: 0,
            delta,
            out,
        }
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.init, |p, &a| self.delta[p][a])
    }
}

/// `F̂(t)`: the label of `v` is `F` applied to the labels on the path from the root to `v`, inclusive.
pub fn relabel(f: &MooreMachine, t: &RegularTree) -> Result<RegularTree, TreeError> {
    let map = t
        .alphabet
        .iter()
        .map(|s| {
            f.input
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| TreeError::AlphabetMismatch(s.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let start = (f.delta[f.init][map[t.out[t.init]]], t.init);
    let (_, out, next) = explore(start, |&(p, s)| {
        let succ = t.next[s].map(|n| (f.delta[p][map[t.out[n]]], n));
        (f.out[p], succ)
    });
    Ok(RegularTree::from_explored(
        format!("{}_{}", f.name, t.name),
        f.output.clone(),
        out,
        next,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ca() -> [&'static str; 3] {
        ["c", "a1", "a2"]
    }

    #[test]
    fn subtree_of_alternating_tree_swaps_phase() {
        let alt = RegularTree::new(
            "alt",
            vec!["c".into(), "a1".into()],
            vec!["even".into(), "odd".into()],
            0,
            vec![[1, 1], [0, 0]],
            vec![0, 1],
        )
        .unwrap();
        let swapped = RegularTree::new(
            "alt_swapped",
            vec!["c".into(), "a1".into()],
            vec!["odd".into(), "even".into()],
            0,
            vec![[1, 1], [0, 0]],
            vec![1, 0],
        )
        .unwrap();
        let sub = subtree_at(&alt, &NodePath::parse("l").unwrap());
        assert_eq!(sub.unfold(4), swapped.unfold(4));
        assert!(tree_equal(&sub, &swapped));
    }

    #[test]
    fn graft_label_table() {
        let tc = RegularTree::constant("tc", &ca(), "c").unwrap();
        let ta = RegularTree::constant("ta1", &ca(), "a1").unwrap();
        let g = graft_node(&tc, &ta, &NodePath::parse("rl").unwrap());
        assert_eq!(g.label(&NodePath::parse("rlr").unwrap()), "a1");
        assert_eq!(g.label(&NodePath::parse("r").unwrap()), "c");
        assert_eq!(g.label(&NodePath::parse("rr").unwrap()), "c");
    }

    #[test]
    fn spine_antichain_labels() {
        let tc = RegularTree::constant("tc", &ca(), "c").unwrap();
        let ta = RegularTree::constant("ta1", &ca(), "a1").unwrap();
        let g = graft_antichain(&tc, &ta, &RegularAntichain::left_spine_right()).unwrap();
        assert_eq!(g.label(&NodePath::parse("r").unwrap()), "a1");
        assert_eq!(g.label(&NodePath::parse("ll").unwrap()), "c");
        assert_eq!(g.label(&NodePath::parse("llrr").unwrap()), "a1");
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn non_antichain_is_rejected() {
        let tc = RegularTree::constant("tc", &ca(), "c").unwrap();
        let all_left = RegularAntichain {
            name: "lstar".into(),
            states: vec!["c0".into()],
            init: 0,
            next: vec![[Some(0), None]],
            accepting: vec![true],
        };
        assert!(matches!(
            graft_antichain(&tc, &tc, &all_left),
            Err(TreeError::AntichainViolation(_))
        ));
    }

    #[test]
    fn cone_relabeling_marks_nodes_above_lr() {
        let bits = ["0", "1"];
        let t0 = RegularTree::constant("t0", &bits, "0").unwrap();
        let t1 = RegularTree::constant("t1", &bits, "1").unwrap();
        let g = graft_node(&t0, &t1, &NodePath::parse("lr").unwrap());
        let f = MooreMachine::seen_any(&g.alphabet, &["1"], "1", "0");
        let r = relabel(&f, &g).unwrap();
        let lr = NodePath::parse("lr").unwrap();
        for (p, l) in r.unfold(4) {
            assert_eq!(l == "1", lr.is_prefix_of(&p), "at {p}");
        }
    }

    #[test]
    fn countdown_machine_marks_first_a1() {
        let alpha: Vec<String> = ["c", "a1"].iter().map(|s| s.to_string()).collect();
        let f = MooreMachine::first_a1_countdown(&alpha, 1);
        let w = |s: &[&str]| s.iter().map(|x| alpha.iter().position(|a| a == x).unwrap()).collect::<Vec<_>>();
        assert_eq!(f.output[f.out[f.run(&w(&["c", "a1"]))]], "a1");
        assert_eq!(f.output[f.out[f.run(&w(&["c", "a1", "a1"]))]], "c");
        assert_eq!(f.output[f.out[f.run(&w(&["c", "c"]))]], "c");
    }

    #[test]
    fn paths_parse_and_print() {
        assert_eq!(NodePath::parse("-").unwrap(), NodePath::root());
        assert_eq!(NodePath::parse("lrl").unwrap().to_word(), "lrl");
        assert!(NodePath::parse("lx").is_err());
        assert!(NodePath::parse("l").unwrap().incomparable(&NodePath::parse("r").unwrap()));
    }
}
