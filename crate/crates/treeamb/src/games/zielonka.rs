//! Recursive attractor decomposition with positional strategy extraction.

use super::{Arena, GameError, Player, WinningAnalysis};
use crate::automata::compress_colors;

pub(crate) struct Game {
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    pub color: Vec<u32>,
    pub owner: Vec<Player>,
}

impl Game {
    pub(crate) fn from_arena(g: &Arena) -> Self {
        let (succ, color) = g.effective();
        let table = compress_colors(&color);
        let color = color.iter().map(|&c| table[c as usize]).collect();
        let mut pred = vec![Vec::new(); succ.len()];
        for (v, ws) in succ.iter().enumerate() {
            for &w in ws {
                pred[w].push(v);
            }
        }
        Game { succ, pred, color, owner: g.owner.clone() }
    }

    /// Attractor of `target` for `p` inside `sub`, with the move of every attracted `p`-vertex:
    /// its lowest-index successor of strictly smaller rank.
    pub(crate) fn attractor(&self, sub: &[bool], target: &[usize], p: Player) -> (Vec<bool>, Vec<(usize, usize)>) {
        let n = self.succ.len();
        let mut inside = vec![false; n];
        let mut rank = vec![usize::MAX; n];
        let mut remaining: Vec<usize> = vec![0; n];
        let mut frontier = Vec::new();
        for &t in target {
            if sub[t] && !inside[t] {
                inside[t] = true;
                rank[t] = 0;
                frontier.push(t);
            }
        }
        let mut attracted = Vec::new();
        let mut layer = 0;
        while !frontier.is_empty() {
            layer += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &self.pred[u] {
                    if !sub[v] || inside[v] {
                        continue;
                    }
                    let pulled = if self.owner[v] == p {
                        true
                    } else {
                        if remaining[v] == 0 {
                            remaining[v] = self.succ[v].iter().filter(|&&w| sub[w]).count() + 1;
                        }
                        remaining[v] -= 1;
                        remaining[v] == 1
                    };
                    if pulled {
                        inside[v] = true;
                        rank[v] = layer;
                        next.push(v);
                        attracted.push(v);
                    }
                }
            }
            frontier = next;
        }
        let moves = attracted
            .into_iter()
            .filter(|&v| self.owner[v] == p)
            .map(|v| {
                let w = self.succ[v]
                    .iter()
                    .copied()
                    .filter(|&w| sub[w] && rank[w] < rank[v])
                    .min()
                    .expect("attracted vertex has a lower-rank successor");
                (v, w)
            })
            .collect();
        (inside, moves)
    }

    pub(crate) fn zielonka(&self, sub: &[bool], winner: &mut [Player], choice: &mut [Option<usize>]) {
        let verts: Vec<usize> = (0..sub.len()).filter(|&v| sub[v]).collect();
        let Some(top) = verts.iter().map(|&v| self.color[v]).max() else {
            return;
        };
        let p = Player::of_parity(top);
        let q = p.opponent();
        let tops: Vec<usize> = verts.iter().copied().filter(|&v| self.color[v] == top).collect();
        let (a, a_moves) = self.attractor(sub, &tops, p);
        let rest: Vec<bool> = (0..sub.len()).map(|v| sub[v] && !a[v]).collect();
        self.zielonka(&rest, winner, choice);
        let lost: Vec<usize> = verts.iter().copied().filter(|&v| rest[v] && winner[v] == q).collect();
        if lost.is_empty() {
            for &v in &verts {
                if a[v] {
                    winner[v] = p;
                    choice[v] = None;
                }
            }
            for (v, w) in a_moves {
                choice[v] = Some(w);
            }
            for &v in &tops {
                if self.owner[v] == p {
                    choice[v] = self.succ[v].iter().copied().filter(|&w| sub[w]).min();
                }
            }
            return;
        }
        let (b, b_moves) = self.attractor(sub, &lost, q);
        for &v in &verts {
            if b[v] && !(rest[v] && winner[v] == q) {
                winner[v] = q;
                choice[v] = None;
            }
        }
        for (v, w) in b_moves {
            choice[v] = Some(w);
        }
        let remaining: Vec<bool> = (0..sub.len()).map(|v| sub[v] && !b[v]).collect();
        self.zielonka(&remaining, winner, choice);
    }
}

pub fn solve(g: &Arena) -> Result<WinningAnalysis, GameError> {
    g.validate()?;
    let game = Game::from_arena(g);
    let n = g.len();
    let mut winner = vec![Player::Automaton; n];
    let mut choice = vec![None; n];
    game.zielonka(&vec![true; n], &mut winner, &mut choice);
    for v in 0..n {
        if g.sink[v] || g.owner[v] != winner[v] {
            choice[v] = None;
        }
    }
    Ok(WinningAnalysis { winner, choice })
}
