//! Graphviz export: boxes for Automaton, diamonds for Pathfinder, fill by winner, bold strategy edges.

use std::fmt::Write;

use super::{Arena, Player, WinningAnalysis};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &Arena, analysis: Option<&WinningAnalysis>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&g.name));
    let _ = writeln!(out, "  node [style=filled, fillcolor=white];");
    for v in 0..g.len() {
        let shape = match g.owner[v] {
            Player::Automaton => "box",
            Player::Pathfinder => "diamond",
        };
        let fill = match analysis.map(|a| a.winner[v]) {
            Some(Player::Automaton) => "palegreen",
            Some(Player::Pathfinder) => "lightpink",
            None => "white",
        };
        let periph = if v == g.init { ", peripheries=2" } else { "" };
        let sink = if g.sink[v] { ", style=\"filled,dashed\"" } else { "" };
        let _ = writeln!(
            out,
            "  {} [shape={shape}, label={}, fillcolor={fill}{periph}{sink}];",
            v,
            quote(&format!("{}:{}", g.names[v], g.color[v]))
        );
    }
    for v in 0..g.len() {
        for &w in &g.succ[v] {
            let bold = analysis.is_some_and(|a| a.choice[v] == Some(w) && a.winner[v] == g.owner[v]);
            let style = if bold { " [style=bold, penwidth=2]" } else { "" };
            let _ = writeln!(out, "  {v} -> {w}{style};");
        }
    }
    out.push_str("}\n");
    out
}
