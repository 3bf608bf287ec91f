//! Membership games of a parity tree automaton on a regular tree, runs and strategies.
//!
//! Invalid moves are not arena edges: an Automaton vertex without a transition on the current
//! letter is a sink, which loses for its owner exactly as a play containing an invalid move does.

mod leads;
mod product;
mod run;

use thiserror::Error;

use crate::automata::{single_initial, Pta, TransitionTable};
use crate::games::{solve, Arena, GameError, Player, Strategy, WinningAnalysis};
use crate::trees::{Dir, RegularTree};

pub use leads::leads;
pub use product::{build_product, build_product_rooted, Product, ProductRules, ProductVertex};
pub use run::{run_check, run_graft, run_is_accepting, runs_differ, RegularRun};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembershipError {
    #[error("alphabet mismatch: tree letter `{0}` is unknown to the automaton")]
    AlphabetMismatch(String),
    #[error("the tree is not accepted by the automaton")]
    NotMember,
    #[error("the tree is accepted by the automaton")]
    IsMember,
    #[error("inconsistent run: {0}")]
    InconsistentRun(String),
    #[error("state mismatch: {0}")]
    StateMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Product rules of a plain automaton: the state is an automaton state.
pub struct PtaRules<'a> {
    pub a: &'a Pta,
    pub table: TransitionTable,
    /// Automaton letter for each tree letter.
    pub letters: Vec<Option<usize>>,
}

impl<'a> PtaRules<'a> {
    pub fn new(a: &'a Pta, t: &RegularTree) -> Self {
        PtaRules { a, table: a.table(), letters: a.letter_map_from(&t.alphabet) }
    }
}

impl ProductRules for PtaRules<'_> {
    type S = usize;

    fn color(&self, s: &usize) -> u32 {
        self.a.colors[*s]
    }

    fn moves(&self, t: &RegularTree, m: usize, s: &usize) -> Vec<(usize, usize)> {
        match self.letters[t.out[m]] {
            Some(a) => self.table.get(*s, a).to_vec(),
            None => Vec::new(),
        }
    }

    fn name(&self, s: &usize) -> String {
        self.a.states[*s].clone()
    }
}

/// `G_{t,A}` for the single-initial normalization of `A`.
#[derive(Debug, Clone)]
pub struct MembershipGame {
    pub original: Pta,
    /// `single_initial(original)`; equal to it when there is one initial state.
    pub automaton: Pta,
    pub tree: RegularTree,
    pub product: Product<usize>,
}

impl MembershipGame {
    pub fn arena(&self) -> &Arena {
        &self.product.arena
    }

    /// The normalization's fresh root state, if one was added.
    pub fn fresh_root(&self) -> Option<usize> {
        (self.automaton.len() > self.original.len()).then_some(self.original.len())
    }

    /// Back-map of an arena vertex: `(m, q)` or `(m, q_l, q_r)`.
    pub fn describe(&self, v: usize) -> &ProductVertex<usize> {
        &self.product.vertex[v]
    }
}

fn check_alphabet(a: &Pta, t: &RegularTree) -> Result<(), MembershipError> {
    for s in 0..t.len() {
        let sym = t.state_label(s);
        if a.letter_index(sym).is_none() {
            return Err(MembershipError::AlphabetMismatch(sym.to_string()));
        }
    }
    Ok(())
}

pub fn build_game(a: &Pta, t: &RegularTree) -> Result<MembershipGame, MembershipError> {
    check_alphabet(a, t)?;
    let automaton = single_initial(a);
    let roots = automaton.initials.clone();
    let product = if roots.is_empty() {
        // no initial state: a lone losing Automaton sink
        let mut arena = Arena::new(format!("product_{}", t.name));
        arena.add_vertex("noinit", Player::Automaton, 1);
        arena.finish();
        Product {
            arena,
            vertex: vec![ProductVertex::Choice],
            auto_index: Default::default(),
            roots: vec![],
        }
    } else {
        build_product(&PtaRules::new(&automaton, t), t, &roots)
    };
    Ok(MembershipGame { original: a.clone(), automaton, tree: t.clone(), product })
}

/// Winner of the initial vertex of the membership game; letters unknown to `A` reject.
pub fn member(a: &Pta, t: &RegularTree) -> bool {
    if a.initials.is_empty() {
        return false;
    }
    let product = build_product(&PtaRules::new(a, t), t, &a.initials);
    let w = solve(&product.arena).expect("product arenas are well formed");
    w.winner[product.arena.init] == Player::Automaton
}

/// For every tree-machine state `m` and automaton state `q`: whether `A_q` accepts `t_{≥m}`.
pub fn winning_table(a: &Pta, t: &RegularTree) -> Vec<Vec<bool>> {
    let mut table = vec![vec![false; a.len()]; t.len()];
    if a.is_empty() {
        return table;
    }
    let roots: Vec<(usize, usize)> = (0..t.len()).flat_map(|m| (0..a.len()).map(move |q| (m, q))).collect();
    let product = build_product_rooted(&PtaRules::new(a, t), t, &roots);
    let w = solve(&product.arena).expect("product arenas are well formed");
    for (&(m, q), &v) in &product.auto_index {
        table[m][q] = w.winner[v] == Player::Automaton;
    }
    table
}

pub fn solve_game(g: &MembershipGame) -> Result<WinningAnalysis, MembershipError> {
    Ok(solve(g.arena())?)
}

/// The run read off a positional winning strategy of Automaton.
pub fn automaton_strategy_to_run(g: &MembershipGame, w: &WinningAnalysis) -> Result<RegularRun, MembershipError> {
    let arena = g.arena();
    if w.winner[arena.init] != Player::Automaton {
        return Err(MembershipError::NotMember);
    }
    let a = &g.automaton;
    let fresh = g.fresh_root();
    let t = &g.tree;
    let child_pair = |v: usize| -> (usize, [usize; 2]) {
        let p = w.choice[v].expect("winning Automaton vertex has a move");
        (p, g.product.path_children(p))
    };
    let (_, out, next) = crate::trees::explore(arena.init, |&v| {
        let ProductVertex::Auto(m, q) = g.product.vertex[v] else { unreachable!("run states are Automaton vertices") };
        let (p, kids) = child_pair(v);
        let ProductVertex::Path(_, ql, qr) = g.product.vertex[p] else { unreachable!("moves lead to Pathfinder vertices") };
        let label = if Some(q) == fresh {
            let letter = a.letter_index(t.state_label(m)).expect("alphabet checked");
            *g.original
                .initials
                .iter()
                .find(|&&q0| g.original.has_transition(q0, letter, ql, qr))
                .expect("fresh root moves come from an original initial")
        } else {
            q
        };
        (label, kids)
    });
    let machine = RegularTree {
        name: format!("run_{}_{}", g.original.name, t.name),
        alphabet: g.original.states.clone(),
        states: (0..out.len()).map(|i| format!("r{i}")).collect(),
        init: 0,
        next,
        out,
    };
    Ok(RegularRun { machine, of: g.original.name.clone(), on: t.name.clone() })
}

/// Some accepting run of `A` on `t`, if `t ∈ L(A)`.
pub fn some_run(a: &Pta, t: &RegularTree) -> Result<RegularRun, MembershipError> {
    let g = build_game(a, t)?;
    let w = solve_game(&g)?;
    automaton_strategy_to_run(&g, &w)
}

/// A regular positional Pathfinder strategy: a machine over `{l, r}` whose states carry a
/// total map `(q_l, q_r) → direction` over the automaton's states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathfinderStrategyTree {
    pub name: String,
    pub of: String,
    pub automaton_states: Vec<String>,
    pub states: Vec<String>,
    pub init: usize,
    pub next: Vec<[usize; 2]>,
    /// `dirs[state][q_l * n + q_r]` with `n` the number of automaton states.
    pub dirs: Vec<Vec<Dir>>,
}

impl PathfinderStrategyTree {
    pub fn dir(&self, state: usize, ql: usize, qr: usize) -> Dir {
        self.dirs[state][ql * self.automaton_states.len() + qr]
    }

    /// The arena strategy it induces on the Pathfinder vertices of `region`.
    /// Requires the strategy machine to be the tree machine of the game.
    pub fn as_arena_strategy(&self, g: &MembershipGame, region: &[bool]) -> Strategy {
        let arena = g.arena();
        let choice = (0..arena.len())
            .map(|v| match g.product.vertex[v] {
                ProductVertex::Path(m, ql, qr) if region[v] => {
                    let kids = g.product.path_children(v);
                    Some(kids[self.dir(m, ql, qr).index()])
                }
                _ => None,
            })
            .collect();
        Strategy { player: Player::Pathfinder, region: region.to_vec(), choice }
    }
}

/// Pathfinder's winning strategy on the finite quotient, lifted to the tree machine's states.
pub fn pathfinder_strategy_with_game(
    a: &Pta,
    t: &RegularTree,
) -> Result<(MembershipGame, WinningAnalysis, PathfinderStrategyTree), MembershipError> {
    let g = build_game(a, t)?;
    let w = solve_game(&g)?;
    if w.winner[g.arena().init] == Player::Automaton {
        return Err(MembershipError::IsMember);
    }
    let n = a.len();
    let mut dirs = vec![vec![Dir::L; n * n]; t.len()];
    for v in 0..g.arena().len() {
        if let ProductVertex::Path(m, ql, qr) = g.product.vertex[v] {
            if w.winner[v] != Player::Pathfinder || ql >= n || qr >= n {
                continue;
            }
            let kids = g.product.path_children(v);
            if let Some(c) = w.choice[v] {
                dirs[m][ql * n + qr] = if c == kids[0] { Dir::L } else { Dir::R };
            }
        }
    }
    let s = PathfinderStrategyTree {
        name: format!("str_{}_{}", a.name, t.name),
        of: a.name.clone(),
        automaton_states: a.states.clone(),
        states: t.states.clone(),
        init: t.init,
        next: t.next.clone(),
        dirs,
    };
    Ok((g, w, s))
}

pub fn pathfinder_strategy(a: &Pta, t: &RegularTree) -> Result<PathfinderStrategyTree, MembershipError> {
    pathfinder_strategy_with_game(a, t).map(|(_, _, s)| s)
}

#[cfg(test)]
mod tests;
