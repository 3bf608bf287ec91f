//! Finite quotient of a membership-style game: tree-machine states times automaton-side states.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::games::{Arena, Player};
use crate::trees::RegularTree;

/// Rules of the automaton side of a product game.
pub trait ProductRules {
    type S: Clone + Eq + Hash;
    fn color(&self, s: &Self::S) -> u32;
    /// Pairs `(s_l, s_r)` Automaton may choose at tree-machine state `m` in state `s`.
    fn moves(&self, t: &RegularTree, m: usize, s: &Self::S) -> Vec<(Self::S, Self::S)>;
    fn name(&self, s: &Self::S) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductVertex<S> {
    /// Automaton picks one of several roots; color 0.
    Choice,
    Auto(usize, S),
    /// Pathfinder picks a direction; color 0.
    Path(usize, S, S),
}

#[derive(Debug, Clone)]
pub struct Product<S> {
    pub arena: Arena,
    pub vertex: Vec<ProductVertex<S>>,
    pub auto_index: HashMap<(usize, S), usize>,
    /// Arena vertex of every requested root, in request order.
    pub roots: Vec<usize>,
}

impl<S: Clone + Eq + Hash> Product<S> {
    pub fn auto(&self, m: usize, s: &S) -> Option<usize> {
        self.auto_index.get(&(m, s.clone())).copied()
    }

    /// The Automaton vertices reached from Pathfinder vertex `v`, left then right.
    pub fn path_children(&self, v: usize) -> [usize; 2] {
        let succ = &self.arena.succ[v];
        match &self.vertex[v] {
            ProductVertex::Path(..) if succ.len() == 2 => [succ[0], succ[1]],
            ProductVertex::Path(..) => [succ[0], succ[0]],
            _ => panic!("not a Pathfinder vertex"),
        }
    }
}

/// Explores the product reachable from `(t.init, root)` for every root.
/// With one root the arena starts there; otherwise a choice vertex starts the arena.
pub fn build_product<R: ProductRules>(rules: &R, t: &RegularTree, roots: &[R::S]) -> Product<R::S> {
    let rooted: Vec<(usize, R::S)> = roots.iter().map(|s| (t.init, s.clone())).collect();
    build_product_rooted(rules, t, &rooted)
}

/// As [`build_product`] with an explicit tree-machine state for every root.
pub fn build_product_rooted<R: ProductRules>(rules: &R, t: &RegularTree, roots: &[(usize, R::S)]) -> Product<R::S> {
    let mut arena = Arena::new(format!("product_{}", t.name));
    let mut vertex: Vec<ProductVertex<R::S>> = Vec::new();
    let mut auto_index: HashMap<(usize, R::S), usize> = HashMap::new();
    let mut path_index: HashMap<(usize, R::S, R::S), usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let choice = if roots.len() == 1 {
        None
    } else {
        vertex.push(ProductVertex::Choice);
        Some(arena.add_vertex("root", Player::Automaton, 0))
    };

    let mut intern_auto = |m: usize,
                           s: R::S,
                           arena: &mut Arena,
                           vertex: &mut Vec<ProductVertex<R::S>>,
                           queue: &mut VecDeque<usize>|
     -> usize {
        if let Some(&v) = auto_index.get(&(m, s.clone())) {
            return v;
        }
        let v = arena.add_vertex(format!("{}.{}", t.states[m], rules.name(&s)), Player::Automaton, rules.color(&s));
        vertex.push(ProductVertex::Auto(m, s.clone()));
        auto_index.insert((m, s), v);
        queue.push_back(v);
        v
    };

    let root_ids: Vec<usize> = roots
        .iter()
        .map(|(m, s)| intern_auto(*m, s.clone(), &mut arena, &mut vertex, &mut queue))
        .collect();
    if let Some(c) = choice {
        for &r in &root_ids {
            arena.add_edge(c, r);
        }
        arena.init = c;
    } else {
        arena.init = root_ids[0];
    }

    while let Some(v) = queue.pop_front() {
        let ProductVertex::Auto(m, s) = vertex[v].clone() else { unreachable!("queue holds Automaton vertices") };
        let [ml, mr] = t.next[m];
        let mut moves = rules.moves(t, m, &s);
        dedup_in_order(&mut moves);
        for (sl, sr) in moves {
            let key = (m, sl.clone(), sr.clone());
            let p = match path_index.get(&key) {
                Some(&p) => p,
                None => {
                    let p = arena.add_vertex(
                        format!("{}.{}.{}", t.states[m], rules.name(&sl), rules.name(&sr)),
                        Player::Pathfinder,
                        0,
                    );
                    vertex.push(ProductVertex::Path(m, sl.clone(), sr.clone()));
                    path_index.insert(key, p);
                    let l = intern_auto(ml, sl, &mut arena, &mut vertex, &mut queue);
                    let r = intern_auto(mr, sr, &mut arena, &mut vertex, &mut queue);
                    arena.add_edge(p, l);
                    arena.add_edge(p, r);
                    p
                }
            };
            arena.push_edge(v, p);
        }
    }
    arena.finish();
    Product { arena, vertex, auto_index, roots: root_ids }
}

fn dedup_in_order<T: Clone + Eq + Hash>(v: &mut Vec<T>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|x| seen.insert(x.clone()));
}
