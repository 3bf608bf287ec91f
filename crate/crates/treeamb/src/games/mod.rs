//! Finite two-player parity games between Automaton (even) and Pathfinder (odd).

mod dot;
mod spm;
mod verify;
mod zielonka;

use thiserror::Error;

pub use dot::to_dot;
pub use spm::solve_oracle;
pub use verify::{cycle_with_max_parity, sccs, verify_strategy};
pub use zielonka::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Automaton,
    Pathfinder,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Automaton => Player::Pathfinder,
            Player::Pathfinder => Player::Automaton,
        }
    }

    /// The player who wins when `color` is the largest recurring color.
    pub fn of_parity(color: u32) -> Player {
        if color.is_multiple_of(2) {
            Player::Automaton
        } else {
            Player::Pathfinder
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Player::Automaton => "A",
            Player::Pathfinder => "P",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("malformed arena: {0}")]
    MalformedArena(String),
    #[error("strategy has no move at vertex {0}")]
    IncompleteStrategy(String),
}

/// A finite parity game. A sink has no moves and loses for its owner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    pub name: String,
    pub names: Vec<String>,
    pub owner: Vec<Player>,
    pub color: Vec<u32>,
    pub sink: Vec<bool>,
    pub succ: Vec<Vec<usize>>,
    pub init: usize,
}

impl Arena {
    pub fn new(name: impl Into<String>) -> Self {
        Arena {
            name: name.into(),
            names: vec![],
            owner: vec![],
            color: vec![],
            sink: vec![],
            succ: vec![],
            init: 0,
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, owner: Player, color: u32) -> usize {
        self.names.push(name.into());
        self.owner.push(owner);
        self.color.push(color);
        self.sink.push(false);
        self.succ.push(Vec::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if !self.succ[u].contains(&v) {
            self.succ[u].push(v);
        }
    }

    /// Appends an edge the caller knows to be new.
    pub fn push_edge(&mut self, u: usize, v: usize) {
        self.succ[u].push(v);
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertices with no moves become sinks; checks index ranges.
    pub fn finish(&mut self) {
        for v in 0..self.len() {
            if self.succ[v].is_empty() {
                self.sink[v] = true;
            }
        }
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let n = self.len();
        if n == 0 {
            return Err(GameError::MalformedArena("no vertices".into()));
        }
        if self.init >= n {
            return Err(GameError::MalformedArena("initial vertex out of range".into()));
        }
        if self.owner.len() != n || self.color.len() != n || self.sink.len() != n || self.succ.len() != n {
            return Err(GameError::MalformedArena("vertex tables differ in length".into()));
        }
        for v in 0..n {
            if self.succ[v].iter().any(|&w| w >= n) {
                return Err(GameError::MalformedArena(format!("edge from {} leaves the arena", self.names[v])));
            }
            if self.succ[v].is_empty() != self.sink[v] {
                return Err(GameError::MalformedArena(format!(
                    "vertex {} must have moves or be a declared sink",
                    self.names[v]
                )));
            }
        }
        Ok(())
    }

    /// Sinks as self-loops whose color makes the owner lose.
    pub(crate) fn effective(&self) -> (Vec<Vec<usize>>, Vec<u32>) {
        let mut succ = self.succ.clone();
        let mut color = self.color.clone();
        for v in 0..self.len() {
            if self.sink[v] {
                succ[v] = vec![v];
                color[v] = match self.owner[v] {
                    Player::Automaton => 1,
                    Player::Pathfinder => 0,
                };
            }
        }
        (succ, color)
    }
}

/// Winners for every vertex and a positional strategy for the winner of each non-sink vertex it owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinningAnalysis {
    pub winner: Vec<Player>,
    pub choice: Vec<Option<usize>>,
}

impl WinningAnalysis {
    pub fn region(&self, p: Player) -> Vec<bool> {
        self.winner.iter().map(|&w| w == p).collect()
    }

    pub fn strategy(&self, g: &Arena, p: Player) -> Strategy {
        let region = self.region(p);
        let choice = (0..g.len())
            .map(|v| if region[v] && g.owner[v] == p { self.choice[v] } else { None })
            .collect();
        Strategy { player: p, region, choice }
    }
}

/// A positional strategy of `player` on `region`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub player: Player,
    pub region: Vec<bool>,
    pub choice: Vec<Option<usize>>,
}
