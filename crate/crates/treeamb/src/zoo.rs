//! Named automata and trees exhibiting each level of the ambiguity hierarchy.

use std::collections::HashMap;

use thiserror::Error;

use crate::automata::{det_pta_for_tree, fta_accepts, fta_is_unambiguous, AutomatonError, FiniteLabeledTree, Fta, Pta, Transition};
use crate::trees::{explore, graft_node, tree_equal, Dir, NodePath, RegularTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("the finite tree automaton of the representation is ambiguous")]
    AmbiguousRepresentation,
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// `{c, a1, …, ak}`.
pub fn sigma(k: usize) -> Vec<String> {
    std::iter::once("c".to_string()).chain((1..=k).map(|i| format!("a{i}"))).collect()
}

/// `t_sym` over `sigma(k)`.
pub fn constant_tree(sym: &str, k: usize) -> RegularTree {
    let alphabet = sigma(k);
    let a = alphabet.iter().position(|s| s == sym).expect("symbol is in sigma(k)");
    RegularTree { name: format!("t_{sym}"), alphabet, states: vec!["s0".into()], init: 0, next: vec![[0, 0]], out: vec![a] }
}

/// Incremental assembly of automata from named parts.
struct Builder {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    colors: Vec<u32>,
    initials: Vec<usize>,
    trans: Vec<Transition>,
}

impl Builder {
    fn new(name: impl Into<String>, alphabet: &[String]) -> Self {
        Builder {
            name: name.into(),
            alphabet: alphabet.to_vec(),
            states: vec![],
            colors: vec![],
            initials: vec![],
            trans: vec![],
        }
    }

    fn state(&mut self, name: impl Into<String>, color: u32) -> usize {
        self.states.push(name.into());
        self.colors.push(color);
        self.states.len() - 1
    }

    fn letter(&self, sym: &str) -> usize {
        self.alphabet.iter().position(|s| s == sym).expect("letter is in the alphabet")
    }

    fn add(&mut self, from: usize, sym: &str, left: usize, right: usize) {
        let letter = self.letter(sym);
        self.trans.push(Transition { from, letter, left, right });
    }

    /// Copies `a` with state names prefixed; returns the index offset.
    fn embed(&mut self, a: &Pta, prefix: &str) -> Result<usize, AutomatonError> {
        let off = self.states.len();
        let remap = a
            .alphabet
            .iter()
            .map(|s| {
                self.alphabet.iter().position(|x| x == s).ok_or_else(|| AutomatonError::AlphabetMismatch(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (s, &c) in a.states.iter().zip(&a.colors) {
            self.state(format!("{prefix}{s}"), c);
        }
        self.trans.extend(a.transitions.iter().map(|t| Transition {
            from: t.from + off,
            letter: remap[t.letter],
            left: t.left + off,
            right: t.right + off,
        }));
        Ok(off)
    }

    fn finish(self) -> Pta {
        Pta::new(self.name, self.alphabet, self.states, self.colors, self.initials, self.trans)
            .expect("zoo constructions use declared states and letters")
    }
}

/// One state `q` of color 0 reading every letter except `letter`: accepts `L_{¬letter}`.
pub fn det_not(letter: &str, alphabet: &[String]) -> Pta {
    let mut b = Builder::new(format!("not_{letter}"), alphabet);
    let q = b.state("q", 0);
    b.initials.push(q);
    for s in alphabet.iter().filter(|s| *s != letter) {
        b.add(q, s, q, q);
    }
    b.finish()
}

/// `L_{¬a1} ∪ … ∪ L_{¬ak}` over `sigma(k)` as a disjoint union of the deterministic summands.
pub fn neg_union(k: usize) -> Pta {
    let alphabet = sigma(k);
    let mut b = Builder::new(format!("neg_union{k}"), &alphabet);
    for i in 1..=k {
        let off = b.embed(&det_not(&format!("a{i}"), &alphabet), &format!("not_a{i}.")).expect("same alphabet");
        b.initials.push(off);
    }
    b.finish()
}

/// Accepts every tree except `t`: a searching copy follows one path and must leave it at a
/// node whose label differs from `t`; afterwards everything is accepted.
pub fn complement_singleton(t: &RegularTree) -> Pta {
    let t = t.trim();
    let n = t.len();
    let mut b = Builder::new(format!("not_only_{}", t.name), &t.alphabet);
    for p in 0..n {
        b.state(format!("q.{}", t.states[p]), 0);
    }
    for p in 0..n {
        b.state(format!("q'.{}", t.states[p]), 1);
    }
    let (done, search) = (|p: usize| p, |p: usize| n + p);
    b.initials.push(search(t.init));
    for p in 0..n {
        let [pl, pr] = t.next[p];
        for a in 0..t.alphabet.len() {
            let sym = t.alphabet[a].clone();
            b.add(done(p), &sym, done(pl), done(pr));
            if a != t.out[p] {
                b.add(search(p), &sym, done(pl), done(pr));
            } else {
                b.add(search(p), &sym, search(pl), done(pr));
                b.add(search(p), &sym, done(pl), search(pr));
            }
        }
    }
    b.finish()
}

/// `L_{∃a1}` over `{c, a1}`: the complement of `{t_c}`.
pub fn exists_a1() -> Pta {
    complement_singleton(&constant_tree("c", 1)).with_name("exists_a1")
}

/// Finitely but unboundedly ambiguous automaton for `L^fa` over `{c, a1, a2}`: `q1` runs
/// down the left spine, switches to `q2` while dispatching the right child to the
/// 2-ambiguous `L_{¬a1∨¬a2}` part, and `q2` must meet `a1`, below which `t_a1` is checked.
pub fn lfa() -> Pta {
    let alphabet = sigma(2);
    let mut b = Builder::new("lfa", &alphabet);
    let q1 = b.state("q1", 1);
    let q2 = b.state("q2", 1);
    b.initials.push(q1);
    let ac = b.embed(&det_pta_for_tree(&constant_tree("c", 2)), "c.").expect("same alphabet");
    let aa1 = b.embed(&det_pta_for_tree(&constant_tree("a1", 2)), "a1.").expect("same alphabet");
    let u = neg_union(2);
    let uoff = b.embed(&u, "u.").expect("same alphabet");
    b.add(q1, "c", q1, ac);
    for &p in &u.initials {
        b.add(q1, "c", q2, uoff + p);
    }
    b.add(q2, "c", q2, ac);
    b.add(q2, "a1", aa1, aa1);
    b.finish()
}

/// `t_c` over `sigma(2)` with `tprime` grafted at `l^k·r` and `t_a1` at `l^m`; requires `k < m`.
pub fn lfa_tree(k: usize, m: usize, tprime: &RegularTree) -> RegularTree {
    assert!(k < m, "the grafting positions require k < m");
    let spine = |n: usize| NodePath::from_dirs(vec![Dir::L; n]);
    let t = graft_node(&constant_tree("c", 2), tprime, &spine(k).child(Dir::R));
    graft_node(&t, &constant_tree("a1", 2), &spine(m)).with_name(format!("l_{k}_{m}_{}", tprime.name))
}

/// Automaton for the scheme language: `c` on the whole left spine, and at every `l^i·r` the
/// subtree is dispatched to `A0` or `Anb`, with infinitely many dispatches to `Anb`.
/// Spine states `S0` (color 1, dispatches to `A0`) and `Snb` (color 2, dispatches to `Anb`):
/// a spine is accepting iff `Snb` occurs infinitely often.
pub fn frak_scheme(a0: &Pta, anb: &Pta) -> Result<Pta, AutomatonError> {
    let mut x: Vec<&String> = a0.alphabet.iter().collect();
    let mut y: Vec<&String> = anb.alphabet.iter().collect();
    x.sort();
    y.sort();
    if x != y {
        return Err(AutomatonError::AlphabetMismatch(format!("{} vs {}", a0.name, anb.name)));
    }
    if !a0.alphabet.iter().any(|s| s == "c") {
        return Err(AutomatonError::AlphabetMismatch("the scheme needs the letter c".into()));
    }
    let mut b = Builder::new(format!("frak_{}_{}", a0.name, anb.name), &a0.alphabet);
    let s0 = b.state("S0", 1);
    let snb = b.state("Snb", 2);
    b.initials.extend([s0, snb]);
    let o0 = b.embed(a0, "0.")?;
    let onb = b.embed(anb, "nb.")?;
    for s in [s0, snb] {
        let targets: Vec<usize> = if s == s0 {
            a0.initials.iter().map(|q| q + o0).collect()
        } else {
            anb.initials.iter().map(|q| q + onb).collect()
        };
        for next in [s0, snb] {
            for &p in &targets {
                b.add(s, "c", next, p);
            }
        }
    }
    Ok(b.finish())
}

/// The standard instance: `L0 = {t_c}` and `L¬ba` the complement of `{t_c}`, over `{c, a1}`.
pub fn frak_standard() -> Pta {
    let tc = constant_tree("c", 1);
    frak_scheme(&det_pta_for_tree(&tc), &complement_singleton(&tc)).expect("same alphabet with c")
}

fn bits() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

/// `t[X]` trees with no maximal `1`-node. `n` checks; `s` owes a `1` strictly below along one
/// path; `s2` is `s` right after a discharge, so a branch with infinitely many discharges sees
/// color 2 infinitely often.
pub fn no_max() -> Pta {
    let mut b = Builder::new("no_max", &bits());
    let n = b.state("n", 0);
    let s = b.state("s", 1);
    let s2 = b.state("s2", 2);
    b.initials.push(n);
    b.add(n, "0", n, n);
    b.add(n, "1", s2, n);
    b.add(n, "1", n, s2);
    for q in [s, s2] {
        b.add(q, "0", s, n);
        b.add(q, "0", n, s);
        b.add(q, "1", s2, n);
        b.add(q, "1", n, s2);
    }
    b.finish()
}

/// Perfect `t[X]`. `s` owes a `1` at or below; `d` owes two incomparable `1`s strictly below,
/// which either split here into two `s` or move down one path. A `1`-node discharges `s` and
/// owes a new `d`; a carried `d` absorbs it. Primed states follow a discharge and have color 2.
pub fn perf() -> Pta {
    let mut b = Builder::new("perf", &bits());
    let n = b.state("n", 0);
    let s = b.state("s", 1);
    let s2 = b.state("s2", 2);
    let d = b.state("d", 1);
    let d2 = b.state("d2", 2);
    b.initials.push(s);
    b.add(n, "0", n, n);
    for q in [s, s2] {
        b.add(q, "0", s, n);
        b.add(q, "0", n, s);
    }
    for q in [n, s, s2] {
        b.add(q, "1", s2, s2);
        b.add(q, "1", d2, n);
        b.add(q, "1", n, d2);
    }
    for q in [d, d2] {
        for sym in ["0", "1"] {
            b.add(q, sym, s2, s2);
            b.add(q, sym, d, n);
            b.add(q, sym, n, d);
        }
    }
    b.finish()
}

/// Letters of `t[X, Y]`: the `X` bit then the `Y` bit.
pub fn pair_bits() -> Vec<String> {
    ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect()
}

/// `t[X, Y]` with every `X`-node below or at some `Y`-node. `s` owes a `Y`-node at or below.
pub fn x_subset_ydown() -> Pta {
    let mut b = Builder::new("x_subset_ydown", &pair_bits());
    let n = b.state("n", 0);
    let s = b.state("s", 1);
    b.initials.push(n);
    for sym in ["00", "01", "11"] {
        b.add(n, sym, n, n);
    }
    for sym in ["10", "00"] {
        let q = if sym == "10" { n } else { s };
        b.add(q, sym, s, n);
        b.add(q, sym, n, s);
    }
    for sym in ["01", "11"] {
        b.add(s, sym, n, n);
    }
    b.finish()
}

/// Two interchangeable states over `{c}`: every `{q1, q2}`-labeling of `t_c` is accepting.
pub fn free2() -> Pta {
    let mut b = Builder::new("free2", &["c".to_string()]);
    let q = [b.state("q1", 0), b.state("q2", 0)];
    b.initials.extend(q);
    for &x in &q {
        for &l in &q {
            for &r in &q {
                b.add(x, "c", l, r);
            }
        }
    }
    b.finish()
}

/// A countable language given as `M[t1/x1, …, tn/xn]` with `M` accepted by `fta`; the leaf
/// letter `fta.leaf_alphabet[i]` is substituted by `trees[i]`.
#[derive(Debug, Clone)]
pub struct NiwinskiRepresentation {
    pub fta: Fta,
    pub trees: Vec<RegularTree>,
}

impl NiwinskiRepresentation {
    /// The tree alphabet: inner letters, then any further tree letters.
    pub fn alphabet(&self) -> Vec<String> {
        let mut out = self.fta.inner_alphabet.clone();
        for t in &self.trees {
            for s in &t.alphabet {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    fn check(&self) -> Result<(), ZooError> {
        self.fta.validate()?;
        if self.trees.len() != self.fta.leaf_alphabet.len() {
            return Err(ZooError::Malformed(format!(
                "{} leaf letters but {} trees",
                self.fta.leaf_alphabet.len(),
                self.trees.len()
            )));
        }
        Ok(())
    }

    /// `τ[t1/x1, …]` as a regular tree.
    pub fn substitute(&self, tau: &FiniteLabeledTree) -> Result<RegularTree, ZooError> {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum Key {
            Node(NodePath),
            Tree(usize, usize),
        }
        let alphabet = self.alphabet();
        let sym = |s: &str| alphabet.iter().position(|x| x == s);
        for (v, l) in &tau.labels {
            let ok = if tau.is_leaf(v) { self.fta.leaf_index(l).is_some() } else { sym(l).is_some() };
            if !ok {
                return Err(ZooError::Malformed(format!("label `{l}` at node {v}")));
            }
        }
        let enter = |v: NodePath| match self.fta.leaf_index(&tau.labels[&v]) {
            Some(i) if tau.is_leaf(&v) => Key::Tree(i, self.trees[i].init),
            _ => Key::Node(v),
        };
        let (_, out, next) = explore(enter(NodePath::root()), |k| match k {
            Key::Node(v) => (sym(&tau.labels[v]).expect("checked"), Dir::BOTH.map(|d| enter(v.child(d)))),
            Key::Tree(i, s) => {
                let t = &self.trees[*i];
                (sym(t.state_label(*s)).expect("tree letters are in the alphabet"), t.next[*s].map(|n| Key::Tree(*i, n)))
            }
        });
        let states = (0..out.len()).map(|i| format!("s{i}")).collect();
        Ok(RegularTree { name: format!("{}_subst", self.fta.name), alphabet, states, init: 0, next, out })
    }

    /// Uniqueness obligation on samples: distinct finite trees of `M` substitute to distinct trees.
    pub fn unique_on(&self, taus: &[FiniteLabeledTree]) -> Result<bool, ZooError> {
        let mut accepted = Vec::new();
        for t in taus {
            if fta_accepts(&self.fta, t)? {
                accepted.push(t.clone());
            }
        }
        let taus = &accepted;
        let subs = taus.iter().map(|t| self.substitute(t)).collect::<Result<Vec<_>, _>>()?;
        for i in 0..taus.len() {
            for j in i + 1..taus.len() {
                if taus[i] != taus[j] && tree_equal(&subs[i], &subs[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `t ∈ M[t1/x1, …]` decided on the tree machine directly: the least set of pairs `(m, q)`
/// such that some finite tree accepted from `q` substitutes to `t_{≥m}`.
pub fn member_by_substitution(rep: &NiwinskiRepresentation, t: &RegularTree) -> bool {
    let b = &rep.fta;
    let n = b.states.len();
    let leaf_ok: Vec<Vec<bool>> = (0..t.len())
        .map(|m| {
            let sub = t.rooted_at_state(m);
            rep.trees.iter().map(|ti| tree_equal(&sub, ti)).collect()
        })
        .collect();
    let mut s = vec![vec![false; n]; t.len()];
    for m in 0..t.len() {
        for &(q, x) in &b.leaves {
            if leaf_ok[m][x] {
                s[m][q] = true;
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for m in 0..t.len() {
            let [ml, mr] = t.next[m];
            for &(q, a, l, r) in &b.transitions {
                if !s[m][q] && b.inner_alphabet[a] == t.state_label(m) && s[ml][l] && s[mr][r] {
                    s[m][q] = true;
                    changed = true;
                }
            }
        }
    }
    b.initials.iter().any(|&q| s[t.init][q])
}

/// PTA for `M[t1/x1, …]`: the FTA's inner transitions with color 1 on its states, the
/// deterministic automata of the `ti` with color 0, and every FTA child that may be a leaf
/// `xi` replaced, alternatively, by the initial state of the automaton of `ti`.
pub fn niwinski_unambiguous(rep: &NiwinskiRepresentation) -> Result<Pta, ZooError> {
    rep.check()?;
    if !fta_is_unambiguous(&rep.fta) {
        return Err(ZooError::AmbiguousRepresentation);
    }
    let bfta = &rep.fta;
    let alphabet = rep.alphabet();
    let mut b = Builder::new(format!("niw_{}", bfta.name), &alphabet);
    for s in &bfta.states {
        b.state(format!("b.{s}"), 1);
    }
    let mut det_init = Vec::new();
    for (i, t) in rep.trees.iter().enumerate() {
        let d = det_pta_for_tree(t);
        let off = b.embed(&d, &format!("t{}.", i + 1))?;
        det_init.push(off + d.initials[0]);
    }
    // alternatives for a child in FTA state q: q itself and every tree initial of a leaf at q
    let mut alts: HashMap<usize, Vec<usize>> = HashMap::new();
    for q in 0..bfta.states.len() {
        let mut v = vec![q];
        v.extend(bfta.leaves.iter().filter(|&&(p, _)| p == q).map(|&(_, x)| det_init[x]));
        alts.insert(q, v);
    }
    for &q in &bfta.initials {
        b.initials.extend(alts[&q].iter().copied());
    }
    for &(q, a, l, r) in &bfta.transitions {
        let sym = bfta.inner_alphabet[a].clone();
        for &x in &alts[&l] {
            for &y in &alts[&r] {
                b.add(q, &sym, x, y);
            }
        }
    }
    Ok(b.finish())
}

fn fta_from(
    name: &str,
    leaf: &[&str],
    inner: &[&str],
    states: &[&str],
    initials: &[&str],
    leaves: &[(&str, &str)],
    trans: &[(&str, &str, &str, &str)],
) -> Fta {
    let s = |x: &str| states.iter().position(|y| *y == x).expect("declared state");
    let li = |x: &str| leaf.iter().position(|y| *y == x).expect("declared leaf letter");
    let ii = |x: &str| inner.iter().position(|y| *y == x).expect("declared inner letter");
    Fta {
        name: name.into(),
        leaf_alphabet: leaf.iter().map(|x| x.to_string()).collect(),
        inner_alphabet: inner.iter().map(|x| x.to_string()).collect(),
        states: states.iter().map(|x| x.to_string()).collect(),
        initials: initials.iter().map(|x| s(x)).collect(),
        leaves: leaves.iter().map(|&(q, x)| (s(q), li(x))).collect(),
        transitions: trans.iter().map(|&(q, a, l, r)| (s(q), ii(a), s(l), s(r))).collect(),
    }
}

/// Shipped representations: `{x1}` with `t_c`; `{x1, c(x1, x1)}` with `t_a1`; and the left
/// combs `c(…c(x2, x1)…, x1)` with `t_c` and `t_a1`.
pub fn niwinski_examples() -> Vec<NiwinskiRepresentation> {
    let single = NiwinskiRepresentation {
        fta: fta_from("single", &["x1"], &["c", "a1"], &["b"], &["b"], &[("b", "x1")], &[]),
        trees: vec![constant_tree("c", 1)],
    };
    let two_level = NiwinskiRepresentation {
        fta: fta_from(
            "two_level",
            &["x1"],
            &["c", "a1"],
            &["top", "leaf"],
            &["top"],
            &[("top", "x1"), ("leaf", "x1")],
            &[("top", "c", "leaf", "leaf")],
        ),
        trees: vec![constant_tree("a1", 1)],
    };
    let comb = NiwinskiRepresentation {
        fta: fta_from(
            "comb",
            &["x1", "x2"],
            &["c", "a1"],
            &["m", "s1"],
            &["m"],
            &[("m", "x2"), ("s1", "x1")],
            &[("m", "c", "m", "s1")],
        ),
        trees: vec![constant_tree("c", 1), constant_tree("a1", 1)],
    };
    vec![single, two_level, comb]
}

/// Zoo automata by CLI name; `k` parameterizes `neg_union`.
pub fn by_name(name: &str, k: usize) -> Option<Pta> {
    Some(match name {
        "neg_union" => neg_union(k),
        "exists_a1" => exists_a1(),
        "complement_singleton" => complement_singleton(&constant_tree("c", 1)),
        "lfa" => lfa(),
        "frak" => frak_standard(),
        "no_max" => no_max(),
        "perf" => perf(),
        "x_subset_ydown" => x_subset_ydown(),
        "free2" => free2(),
        "det_not" => det_not("a1", &sigma(k.max(1))),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "neg_union",
    "exists_a1",
    "complement_singleton",
    "lfa",
    "frak",
    "no_max",
    "perf",
    "x_subset_ydown",
    "free2",
    "det_not",
];
