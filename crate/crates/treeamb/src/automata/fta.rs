//! Top-down finite tree automata over ranked alphabets with leaf and binary letters.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::AutomatonError;
use crate::trees::{Dir, NodePath};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fta {
    pub name: String,
    pub leaf_alphabet: Vec<String>,
    pub inner_alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initials: Vec<usize>,
    /// `(q, leaf letter)`.
    pub leaves: Vec<(usize, usize)>,
    /// `(q, inner letter, q_l, q_r)`.
    pub transitions: Vec<(usize, usize, usize, usize)>,
}

/// A finite binary tree: every node has zero or two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLabeledTree {
    pub labels: BTreeMap<NodePath, String>,
}

impl FiniteLabeledTree {
    pub fn new(labels: BTreeMap<NodePath, String>) -> Result<Self, AutomatonError> {
        if !labels.contains_key(&NodePath::root()) {
            return Err(AutomatonError::Malformed("finite tree has no root".into()));
        }
        for v in labels.keys() {
            if let Some(p) = v.parent() {
                if !labels.contains_key(&p) {
                    return Err(AutomatonError::Malformed(format!("node {v} has no parent")));
                }
            }
            let l = labels.contains_key(&v.child(Dir::L));
            let r = labels.contains_key(&v.child(Dir::R));
            if l != r {
                return Err(AutomatonError::Malformed(format!("node {v} has exactly one child")));
            }
        }
        Ok(FiniteLabeledTree { labels })
    }

    pub fn leaf(sym: &str) -> Self {
        FiniteLabeledTree { labels: BTreeMap::from([(NodePath::root(), sym.to_string())]) }
    }

    /// `a(t1, t2)`.
    pub fn node(a: &str, t1: &FiniteLabeledTree, t2: &FiniteLabeledTree) -> Self {
        let mut labels = BTreeMap::from([(NodePath::root(), a.to_string())]);
        for (d, t) in [(Dir::L, t1), (Dir::R, t2)] {
            for (v, s) in &t.labels {
                labels.insert(NodePath::from_dirs(vec![d]).concat(v), s.clone());
            }
        }
        FiniteLabeledTree { labels }
    }

    pub fn is_leaf(&self, v: &NodePath) -> bool {
        !self.labels.contains_key(&v.child(Dir::L))
    }

    pub fn label(&self, v: &NodePath) -> Option<&str> {
        self.labels.get(v).map(|s| s.as_str())
    }

    /// Nodes ordered so that children come before parents.
    pub fn bottom_up(&self) -> Vec<NodePath> {
        let mut nodes: Vec<NodePath> = self.labels.keys().cloned().collect();
        nodes.sort_by_key(|v| std::cmp::Reverse(v.len()));
        nodes
    }
}

impl Fta {
    pub fn leaf_index(&self, s: &str) -> Option<usize> {
        self.leaf_alphabet.iter().position(|x| x == s)
    }

    pub fn inner_index(&self, s: &str) -> Option<usize> {
        self.inner_alphabet.iter().position(|x| x == s)
    }

    pub fn state_index(&self, s: &str) -> Option<usize> {
        self.states.iter().position(|x| x == s)
    }

    pub fn validate(&self) -> Result<(), AutomatonError> {
        let n = self.states.len();
        let bad_state = self.initials.iter().any(|&q| q >= n)
            || self.leaves.iter().any(|&(q, _)| q >= n)
            || self.transitions.iter().any(|&(q, _, l, r)| q >= n || l >= n || r >= n);
        if bad_state {
            return Err(AutomatonError::Malformed("reference to an undeclared state".into()));
        }
        let bad_letter = self.leaves.iter().any(|&(_, a)| a >= self.leaf_alphabet.len())
            || self.transitions.iter().any(|&(_, a, _, _)| a >= self.inner_alphabet.len());
        if bad_letter {
            return Err(AutomatonError::Malformed("reference to an undeclared letter".into()));
        }
        Ok(())
    }

    fn leaf_states(&self, a: usize) -> BTreeSet<usize> {
        self.leaves.iter().filter(|&&(_, b)| b == a).map(|&(q, _)| q).collect()
    }
}

/// Bottom-up evaluation: the set of states from which the subtree at each node has a computation.
fn reachable_sets(b: &Fta, tau: &FiniteLabeledTree) -> Result<BTreeMap<NodePath, BTreeSet<usize>>, AutomatonError> {
    let mut sets: BTreeMap<NodePath, BTreeSet<usize>> = BTreeMap::new();
    for v in tau.bottom_up() {
        let label = tau.label(&v).expect("node of the tree");
        let set = if tau.is_leaf(&v) {
            let a = b.leaf_index(label).ok_or_else(|| AutomatonError::SortMismatch(v.to_word()))?;
            b.leaf_states(a)
        } else {
            let a = b.inner_index(label).ok_or_else(|| AutomatonError::SortMismatch(v.to_word()))?;
            let sl = &sets[&v.child(Dir::L)];
            let sr = &sets[&v.child(Dir::R)];
            b.transitions
                .iter()
                .filter(|&&(_, x, l, r)| x == a && sl.contains(&l) && sr.contains(&r))
                .map(|&(q, _, _, _)| q)
                .collect()
        };
        sets.insert(v, set);
    }
    Ok(sets)
}

pub fn fta_accepts(b: &Fta, tau: &FiniteLabeledTree) -> Result<bool, AutomatonError> {
    let sets = reachable_sets(b, tau)?;
    Ok(b.initials.iter().any(|q| sets[&NodePath::root()].contains(q)))
}

/// How a pair of computations on one tree was derived.
#[derive(Clone)]
enum PairProof {
    Leaf(usize),
    Node(usize, (usize, usize, bool), (usize, usize, bool)),
}

/// Least fixpoint over `(q1, q2, differ)`: some finite tree has a computation from `q1` and one
/// from `q2` that differ somewhere iff `differ`. Returns the witnessing tree when two
/// initial-rooted computations differ.
pub fn fta_ambiguity_witness(b: &Fta) -> Option<FiniteLabeledTree> {
    let mut proofs: HashMap<(usize, usize, bool), PairProof> = HashMap::new();
    for &(q1, a1) in &b.leaves {
        for &(q2, a2) in &b.leaves {
            if a1 == a2 {
                proofs.entry((q1, q2, q1 != q2)).or_insert(PairProof::Leaf(a1));
            }
        }
    }
    loop {
        let mut added = false;
        for &(q1, a1, l1, r1) in &b.transitions {
            for &(q2, a2, l2, r2) in &b.transitions {
                if a1 != a2 {
                    continue;
                }
                for dl in [false, true] {
                    for dr in [false, true] {
                        let kl = (l1, l2, dl);
                        let kr = (r1, r2, dr);
                        if !proofs.contains_key(&kl) || !proofs.contains_key(&kr) {
                            continue;
                        }
                        let key = (q1, q2, q1 != q2 || dl || dr);
                        if let std::collections::hash_map::Entry::Vacant(e) = proofs.entry(key) {
                            e.insert(PairProof::Node(a1, kl, kr));
                            added = true;
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let root = b
        .initials
        .iter()
        .flat_map(|&q1| b.initials.iter().map(move |&q2| (q1, q2, true)))
        .find(|k| proofs.contains_key(k))?;
    let mut labels = BTreeMap::new();
    let mut stack = vec![(NodePath::root(), root)];
    while let Some((v, k)) = stack.pop() {
        match &proofs[&k] {
            PairProof::Leaf(a) => {
                labels.insert(v, b.leaf_alphabet[*a].clone());
            }
            PairProof::Node(a, kl, kr) => {
                labels.insert(v.clone(), b.inner_alphabet[*a].clone());
                stack.push((v.child(Dir::L), *kl));
                stack.push((v.child(Dir::R), *kr));
            }
        }
    }
    Some(FiniteLabeledTree { labels })
}

pub fn fta_is_unambiguous(b: &Fta) -> bool {
    fta_ambiguity_witness(b).is_none()
}

/// Bottom-up subset construction read top-down: state `S` is the exact set of original states
/// that admit a computation on the subtree, so every tree has one computation. No run-count
/// relation to the input is claimed.
pub fn fta_determinize(b: &Fta) -> Fta {
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut leaves = Vec::new();
    let mut fresh = VecDeque::new();
    let mut intern = |s: BTreeSet<usize>, sets: &mut Vec<BTreeSet<usize>>, fresh: &mut VecDeque<usize>| {
        *index.entry(s.clone()).or_insert_with(|| {
            sets.push(s);
            fresh.push_back(sets.len() - 1);
            sets.len() - 1
        })
    };
    for a in 0..b.leaf_alphabet.len() {
        let s = b.leaf_states(a);
        if !s.is_empty() {
            let id = intern(s, &mut sets, &mut fresh);
            leaves.push((id, a));
        }
    }
    let mut transitions = Vec::new();
    let mut done: Vec<usize> = Vec::new();
    while let Some(i) = fresh.pop_front() {
        done.push(i);
        let pairs: Vec<(usize, usize)> = done.iter().flat_map(|&j| [(i, j), (j, i)]).collect();
        for (x, y) in pairs {
            for a in 0..b.inner_alphabet.len() {
                let s: BTreeSet<usize> = b
                    .transitions
                    .iter()
                    .filter(|&&(_, c, l, r)| c == a && sets[x].contains(&l) && sets[y].contains(&r))
                    .map(|&(q, _, _, _)| q)
                    .collect();
                if !s.is_empty() {
                    let id = intern(s, &mut sets, &mut fresh);
                    transitions.push((id, a, x, y));
                }
            }
        }
    }
    transitions.sort_unstable();
    transitions.dedup();
    let initials = (0..sets.len()).filter(|&i| b.initials.iter().any(|q| sets[i].contains(q))).collect();
    let states = sets
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|&q| b.states[q].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    Fta {
        name: format!("{}_det", b.name),
        leaf_alphabet: b.leaf_alphabet.clone(),
        inner_alphabet: b.inner_alphabet.clone(),
        states,
        initials,
        leaves,
        transitions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fta(states: &[&str], inits: &[usize], leaves: &[(usize, usize)], trans: &[(usize, usize, usize, usize)]) -> Fta {
        Fta {
            name: "b".into(),
            leaf_alphabet: vec!["x1".into(), "x2".into()],
            inner_alphabet: vec!["c".into()],
            states: states.iter().map(|s| s.to_string()).collect(),
            initials: inits.to_vec(),
            leaves: leaves.to_vec(),
            transitions: trans.to_vec(),
        }
    }

    #[test]
    fn leaf_acceptance() {
        let b = fta(&["qi"], &[0], &[(0, 0)], &[]);
        assert!(fta_accepts(&b, &FiniteLabeledTree::leaf("x1")).unwrap());
        assert!(!fta_accepts(&b, &FiniteLabeledTree::leaf("x2")).unwrap());
    }

    #[test]
    fn three_node_tree() {
        let b = fta(&["qi", "q1"], &[0], &[(1, 0)], &[(0, 0, 1, 1)]);
        let x = FiniteLabeledTree::leaf("x1");
        assert!(fta_accepts(&b, &FiniteLabeledTree::node("c", &x, &x)).unwrap());
    }

    #[test]
    fn wrong_sort_is_reported() {
        let b = fta(&["qi"], &[0], &[(0, 0)], &[]);
        assert!(matches!(fta_accepts(&b, &FiniteLabeledTree::leaf("c")), Err(AutomatonError::SortMismatch(_))));
    }

    #[test]
    fn two_initials_on_one_leaf_are_ambiguous() {
        let b = fta(&["p", "q"], &[0, 1], &[(0, 0), (1, 0)], &[]);
        assert!(!fta_is_unambiguous(&b));
    }

    #[test]
    fn merged_leaf_states_are_ambiguous() {
        let b = fta(&["qi", "q", "q'"], &[0], &[(1, 0), (2, 0)], &[(0, 0, 1, 1), (0, 0, 2, 2)]);
        let w = fta_ambiguity_witness(&b).unwrap();
        assert_eq!(w.labels.len(), 3);
        let d = fta_determinize(&b);
        assert!(fta_is_unambiguous(&d));
        assert!(fta_accepts(&d, &w).unwrap());
    }
}
