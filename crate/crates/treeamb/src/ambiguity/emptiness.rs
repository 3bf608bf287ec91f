//! Emptiness as a game: Automaton picks a letter and a state pair, Pathfinder a direction.

use std::collections::HashMap;

use crate::automata::Pta;
use crate::games::{solve, Arena, Player, WinningAnalysis};
use crate::trees::{explore, RegularTree};

/// Arena whose vertices `0..|Q|` are the states; the rest are pairs `(q_l, q_r)`.
struct EmptinessGame {
    arena: Arena,
    pairs: Vec<(usize, usize)>,
}

fn emptiness_game(a: &Pta) -> EmptinessGame {
    let mut arena = Arena::new(format!("emptiness_{}", a.name));
    for q in 0..a.len() {
        arena.add_vertex(a.states[q].clone(), Player::Automaton, a.colors[q]);
    }
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    for t in &a.transitions {
        let p = *index.entry((t.left, t.right)).or_insert_with(|| {
            let p = arena.add_vertex(format!("{}|{}", a.states[t.left], a.states[t.right]), Player::Pathfinder, 0);
            arena.add_edge(p, t.left);
            arena.add_edge(p, t.right);
            pairs.push((t.left, t.right));
            p
        });
        arena.add_edge(t.from, p);
    }
    arena.finish();
    EmptinessGame { arena, pairs }
}

fn solved(a: &Pta) -> Option<(EmptinessGame, WinningAnalysis)> {
    if a.is_empty() {
        return None;
    }
    let g = emptiness_game(a);
    let w = solve(&g.arena).expect("emptiness arenas are well formed");
    Some((g, w))
}

/// For every state `q`: whether `L(A_q)` is nonempty.
pub fn nonempty_states(a: &Pta) -> Vec<bool> {
    match solved(a) {
        None => vec![],
        Some((_, w)) => (0..a.len()).map(|q| w.winner[q] == Player::Automaton).collect(),
    }
}

/// A regular tree in `L(A)`, read off Automaton's positional strategy, or `None` if `L(A) = ∅`.
/// Each node carries the least letter realizing the chosen state pair.
pub fn emptiness(a: &Pta) -> Option<RegularTree> {
    let (g, w) = solved(a)?;
    let root = a.initials.iter().copied().find(|&q| w.winner[q] == Player::Automaton)?;
    let n = a.len();
    let (keys, out, next) = explore(root, |&q| {
        let p = w.choice[q].expect("winning state has a move");
        let (l, r) = g.pairs[p - n];
        let letter = a
            .transitions
            .iter()
            .filter(|t| t.from == q && t.left == l && t.right == r)
            .map(|t| t.letter)
            .min()
            .expect("pair vertex comes from a transition");
        (letter, [l, r])
    });
    Some(RegularTree {
        name: format!("witness_{}", a.name),
        alphabet: a.alphabet.clone(),
        states: keys.iter().map(|&q| a.states[q].clone()).collect(),
        init: 0,
        next,
        out,
    })
}
