//! Checks a positional strategy by cycle search in the graph it induces.

use super::{Arena, GameError, Player, Strategy};

/// Strongly connected components of the subgraph on `keep` (iterative Tarjan).
/// Returns, for each vertex, its component id or `usize::MAX` when not kept.
pub fn sccs(succ: &[Vec<usize>], keep: &[bool]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if !keep[root] || index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if !keep[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack holds the component");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Whether some cycle through the kept vertices has maximal color of the given parity.
pub fn cycle_with_max_parity(succ: &[Vec<usize>], color: &[u32], reach: &[bool], parity: u32) -> bool {
    let mut bad: Vec<u32> = (0..succ.len()).filter(|&v| reach[v] && color[v] % 2 == parity).map(|v| color[v]).collect();
    bad.sort_unstable();
    bad.dedup();
    for c in bad {
        let keep: Vec<bool> = (0..succ.len()).map(|v| reach[v] && color[v] <= c).collect();
        let comp = sccs(succ, &keep);
        let mut size = std::collections::HashMap::new();
        for v in 0..succ.len() {
            if keep[v] {
                *size.entry(comp[v]).or_insert(0usize) += 1;
            }
        }
        let found = (0..succ.len()).any(|v| {
            keep[v]
                && color[v] == c
                && (size[&comp[v]] > 1 || succ[v].contains(&v))
        });
        if found {
            return true;
        }
    }
    false
}

/// True iff every play from the region consistent with the strategy is won by its player.
pub fn verify_strategy(g: &Arena, s: &Strategy) -> Result<bool, GameError> {
    g.validate()?;
    let n = g.len();
    let me = s.player;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if !s.region[v] || g.sink[v] {
            continue;
        }
        if g.owner[v] == me {
            let w = s.choice[v].ok_or_else(|| GameError::IncompleteStrategy(g.names[v].clone()))?;
            if !g.succ[v].contains(&w) {
                return Err(GameError::IncompleteStrategy(g.names[v].clone()));
            }
            succ[v] = vec![w];
        } else {
            succ[v] = g.succ[v].clone();
        }
    }
    let mut reach = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| s.region[v]).collect();
    for &v in &stack {
        reach[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !s.region[w] {
                return Ok(false);
            }
            if !reach[w] {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    if (0..n).any(|v| reach[v] && g.sink[v] && g.owner[v] == me) {
        return Ok(false);
    }
    let wrong = match me {
        Player::Automaton => 1,
        Player::Pathfinder => 0,
    };
    Ok(!cycle_with_max_parity(&succ, &g.color, &reach, wrong))
}
