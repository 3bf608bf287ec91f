//! Small progress measures, used as an independent check of the recursive solver.

use super::zielonka::Game;
use super::{Arena, GameError, Player, WinningAnalysis};

/// Progress measures for the even player: `None` is the top element.
struct Measures {
    /// Bound for each odd color `2i+1`: the number of vertices of that color.
    bounds: Vec<u32>,
}

type Measure = Option<Vec<u32>>;

impl Measures {
    /// Least measure `m` with `m ≥_c succ`, strict when `c` is odd; comparison on odd colors ≥ `c`.
    fn prog(&self, succ: &Measure, c: u32) -> Measure {
        let s = succ.as_ref()?;
        let k = self.bounds.len();
        // odd color 2i+1 lives at index i; truncate to indices with 2i+1 >= c
        let lo = (c / 2) as usize;
        let mut m = vec![0u32; k];
        m[lo..k].copy_from_slice(&s[lo..k]);
        if c.is_multiple_of(2) {
            return Some(m);
        }
        // strictly increase the truncated vector, least significant is index lo
        for i in lo..k {
            if m[i] < self.bounds[i] {
                m[i] += 1;
                for x in m.iter_mut().take(i).skip(lo) {
                    *x = 0;
                }
                return Some(m);
            }
        }
        None
    }
}

/// Lexicographic order with the highest color most significant; `None` is the maximum.
fn less(a: &Measure, b: &Measure) -> bool {
    match (a, b) {
        (_, None) => a.is_some(),
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x.iter().rev().lt(y.iter().rev()),
    }
}

/// Even player's winning region and a strategy choosing the successor of least progress.
fn solve_even(game: &Game) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = game.succ.len();
    let top = game.color.iter().copied().max().unwrap_or(0);
    let k = (top / 2 + 1) as usize;
    let mut bounds = vec![0u32; k];
    for &c in &game.color {
        if c % 2 == 1 {
            bounds[(c / 2) as usize] += 1;
        }
    }
    let pm = Measures { bounds };
    let mut rho: Vec<Measure> = vec![Some(vec![0; k]); n];
    let lift = |rho: &Vec<Measure>, v: usize| -> Measure {
        let mut best: Option<Measure> = None;
        for &w in &game.succ[v] {
            let p = pm.prog(&rho[w], game.color[v]);
            best = Some(match best {
                None => p,
                Some(b) => {
                    let take_new = match game.owner[v] {
                        Player::Automaton => less(&p, &b),
                        Player::Pathfinder => less(&b, &p),
                    };
                    if take_new {
                        p
                    } else {
                        b
                    }
                }
            });
        }
        best.expect("effective arena has no dead ends")
    };
    let mut dirty: Vec<bool> = vec![true; n];
    let mut work: Vec<usize> = (0..n).collect();
    while let Some(v) = work.pop() {
        dirty[v] = false;
        let new = lift(&rho, v);
        if less(&rho[v], &new) {
            rho[v] = new;
            for &u in &game.pred[v] {
                if !dirty[u] {
                    dirty[u] = true;
                    work.push(u);
                }
            }
        }
    }
    let win: Vec<bool> = rho.iter().map(|m| m.is_some()).collect();
    let choice = (0..n)
        .map(|v| {
            if !win[v] || game.owner[v] != Player::Automaton {
                return None;
            }
            let mut best: Option<(Measure, usize)> = None;
            for &w in &game.succ[v] {
                let p = pm.prog(&rho[w], game.color[v]);
                if best.as_ref().is_none_or(|(b, bw)| less(&p, b) || (!less(b, &p) && w < *bw)) {
                    best = Some((p, w));
                }
            }
            best.map(|(_, w)| w)
        })
        .collect();
    (win, choice)
}

pub fn solve_oracle(g: &Arena) -> Result<WinningAnalysis, GameError> {
    g.validate()?;
    let game = Game::from_arena(g);
    let (even, even_choice) = solve_even(&game);
    let dual = Game {
        succ: game.succ.clone(),
        pred: game.pred.clone(),
        color: game.color.iter().map(|c| c + 1).collect(),
        owner: game.owner.iter().map(|p| p.opponent()).collect(),
    };
    let (odd, odd_choice) = solve_even(&dual);
    let n = g.len();
    let mut winner = Vec::with_capacity(n);
    let mut choice = Vec::with_capacity(n);
    for v in 0..n {
        if even[v] == odd[v] {
            return Err(GameError::MalformedArena(format!("measures disagree at {}", g.names[v])));
        }
        let (w, c) = if even[v] { (Player::Automaton, even_choice[v]) } else { (Player::Pathfinder, odd_choice[v]) };
        winner.push(w);
        choice.push(if g.sink[v] { None } else { c });
    }
    Ok(WinningAnalysis { winner, choice })
}
