//! Line-oriented text formats. Blank lines and lines starting with `#` are ignored; every
//! other line is a keyword followed by whitespace-separated fields.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;
use treeamb::automata::{FiniteLabeledTree, Fta, Pta, Transition};
use treeamb::games::{Arena, Player};
use treeamb::membership::{PathfinderStrategyTree, RegularRun};
use treeamb::trees::{Dir, MooreMachine, NodePath, RegularAntichain, RegularTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{file}:{line}: expected {expected}, found `{found}`")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub expected: String,
    pub found: String,
}

type Line<'a> = (usize, Vec<&'a str>);

struct Reader<'a> {
    file: &'a str,
    lines: Vec<Line<'a>>,
    /// Line number reported for errors detected after the last line.
    end: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, file: &'a str) -> Self {
        let lines: Vec<Line<'a>> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty() && !toks[0].starts_with('#'))
            .collect();
        Reader { file, lines, end: text.lines().count().max(1) }
    }

    fn err(&self, line: usize, expected: impl Into<String>, found: impl Into<String>) -> ParseError {
        ParseError { file: self.file.to_string(), line, expected: expected.into(), found: found.into() }
    }

    /// Checks the header line `<keyword> <name> [extra…]` and returns its tokens.
    fn header(&self, keyword: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let Some((n, toks)) = self.lines.first() else {
            return Err(self.err(1, format!("`{keyword} <name>`"), "end of file"));
        };
        if toks[0] != keyword || toks.len() < 2 {
            return Err(self.err(*n, format!("`{keyword} <name>`"), toks.join(" ")));
        }
        Ok((*n, toks.clone()))
    }

    fn body(&self) -> &[Line<'a>] {
        &self.lines[1..]
    }

    fn arity(&self, line: &Line<'_>, n: usize, shape: &str) -> Result<(), ParseError> {
        if line.1.len() != n {
            return Err(self.err(line.0, format!("`{shape}`"), line.1.join(" ")));
        }
        Ok(())
    }
}

fn key_value<'a>(tok: &'a str, key: &str) -> Option<&'a str> {
    tok.strip_prefix(key).and_then(|r| r.strip_prefix('='))
}

fn lookup(names: &HashMap<String, usize>, r: &Reader<'_>, line: usize, what: &str, id: &str) -> Result<usize, ParseError> {
    names.get(id).copied().ok_or_else(|| r.err(line, format!("declared {what}"), id))
}

fn declare(names: &mut HashMap<String, usize>, r: &Reader<'_>, line: usize, id: &str) -> Result<usize, ParseError> {
    if names.contains_key(id) {
        return Err(r.err(line, "a fresh state id", id));
    }
    let i = names.len();
    names.insert(id.to_string(), i);
    Ok(i)
}

fn parse_dir(r: &Reader<'_>, line: usize, tok: &str) -> Result<Dir, ParseError> {
    Dir::parse(tok).ok_or_else(|| r.err(line, "`l` or `r`", tok))
}

fn index_of(list: &[String], r: &Reader<'_>, line: usize, what: &str, tok: &str) -> Result<usize, ParseError> {
    list.iter().position(|s| s == tok).ok_or_else(|| r.err(line, format!("a letter of the {what}"), tok))
}

/// Machine over `{l, r}` shared by trees, runs, antichains and strategies.
struct Machine {
    ids: Vec<String>,
    names: HashMap<String, usize>,
    decl_line: Vec<usize>,
    init: Option<usize>,
    next: Vec<[Option<usize>; 2]>,
}

impl Machine {
    fn new() -> Self {
        Machine { ids: vec![], names: HashMap::new(), decl_line: vec![], init: None, next: vec![] }
    }

    fn state(&mut self, r: &Reader<'_>, line: usize, id: &str) -> Result<usize, ParseError> {
        let i = declare(&mut self.names, r, line, id)?;
        self.ids.push(id.to_string());
        self.decl_line.push(line);
        self.next.push([None, None]);
        Ok(i)
    }

    fn edge(&mut self, r: &Reader<'_>, l: &Line<'_>) -> Result<(), ParseError> {
        r.arity(l, 4, "edge <src> l|r <dst>")?;
        let src = lookup(&self.names, r, l.0, "state", l.1[1])?;
        let d = parse_dir(r, l.0, l.1[2])?;
        let dst = lookup(&self.names, r, l.0, "state", l.1[3])?;
        let slot = &mut self.next[src][d.index()];
        if slot.is_some() {
            return Err(r.err(l.0, format!("one {d} edge per state"), l.1.join(" ")));
        }
        *slot = Some(dst);
        Ok(())
    }

    fn init(&mut self, r: &Reader<'_>, l: &Line<'_>) -> Result<(), ParseError> {
        r.arity(l, 2, "init <id>")?;
        if self.init.is_some() {
            return Err(r.err(l.0, "a single init line", l.1.join(" ")));
        }
        self.init = Some(lookup(&self.names, r, l.0, "state", l.1[1])?);
        Ok(())
    }

    fn init_or_err(&self, r: &Reader<'_>) -> Result<usize, ParseError> {
        self.init.ok_or_else(|| r.err(r.end, "an `init <id>` line", "end of file"))
    }

    fn total(&self, r: &Reader<'_>) -> Result<Vec<[usize; 2]>, ParseError> {
        if self.ids.is_empty() {
            return Err(r.err(r.end, "at least one state", "end of file"));
        }
        self.next
            .iter()
            .enumerate()
            .map(|(i, n)| match n {
                [Some(a), Some(b)] => Ok([*a, *b]),
                _ => Err(r.err(self.decl_line[i], "one l-edge and one r-edge", format!("state {}", self.ids[i]))),
            })
            .collect()
    }
}

fn write_edges(s: &mut String, ids: &[String], next: &[[usize; 2]]) {
    for (i, n) in next.iter().enumerate() {
        for d in Dir::BOTH {
            let _ = writeln!(s, "edge {} {} {}", ids[i], d, ids[n[d.index()]]);
        }
    }
}

pub fn parse_mtree(text: &str, file: &str) -> Result<RegularTree, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("mtree")?;
    if h.len() != 2 {
        return Err(r.err(n, "`mtree <name>`", h.join(" ")));
    }
    parse_tree_body(&r, h[1], r.body())
}

fn parse_tree_body(r: &Reader<'_>, name: &str, body: &[Line<'_>]) -> Result<RegularTree, ParseError> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut m = Machine::new();
    let mut out = Vec::new();
    for l in body {
        match l.1[0] {
            "alphabet" if alphabet.is_none() => alphabet = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "state" => {
                let alpha = alphabet.as_ref().ok_or_else(|| r.err(l.0, "an `alphabet` line first", "state"))?;
                r.arity(l, 3, "state <id> out=<sym>")?;
                let sym = key_value(l.1[2], "out").ok_or_else(|| r.err(l.0, "out=<sym>", l.1[2]))?;
                out.push(index_of(alpha, r, l.0, "alphabet", sym)?);
                m.state(r, l.0, l.1[1])?;
            }
            "init" => m.init(r, l)?,
            "edge" => m.edge(r, l)?,
            k => return Err(r.err(l.0, "one of alphabet, state, init, edge", k)),
        }
    }
    let alphabet = alphabet.ok_or_else(|| r.err(r.end, "an `alphabet` line", "end of file"))?;
    let next = m.total(r)?;
    let init = m.init_or_err(r)?;
    Ok(RegularTree { name: name.to_string(), alphabet, states: m.ids, init, next, out })
}

pub fn write_mtree(t: &RegularTree) -> String {
    let mut s = format!("mtree {}\nalphabet {}\n", t.name, t.alphabet.join(" "));
    for (i, id) in t.states.iter().enumerate() {
        let _ = writeln!(s, "state {} out={}", id, t.alphabet[t.out[i]]);
    }
    let _ = writeln!(s, "init {}", t.states[t.init]);
    write_edges(&mut s, &t.states, &t.next);
    s
}

pub fn parse_run(text: &str, file: &str) -> Result<RegularRun, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("run")?;
    let bad = || r.err(n, "`run of=<pta> on=<tree>`", h.join(" "));
    if h.len() != 3 {
        return Err(bad());
    }
    let of = key_value(h[1], "of").ok_or_else(bad)?;
    let on = key_value(h[2], "on").ok_or_else(bad)?;
    let body = r.body();
    let Some(first) = body.first() else {
        return Err(r.err(r.end, "`mtree <name>`", "end of file"));
    };
    if first.1[0] != "mtree" || first.1.len() != 2 {
        return Err(r.err(first.0, "`mtree <name>`", first.1.join(" ")));
    }
    let machine = parse_tree_body(&r, first.1[1], &body[1..])?;
    Ok(RegularRun { machine, of: of.to_string(), on: on.to_string() })
}

pub fn write_run(run: &RegularRun) -> String {
    format!("run of={} on={}\n{}", run.of, run.on, write_mtree(&run.machine))
}

pub fn parse_chain(text: &str, file: &str) -> Result<RegularAntichain, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("chain")?;
    if h.len() != 2 {
        return Err(r.err(n, "`chain <name>`", h.join(" ")));
    }
    let mut m = Machine::new();
    let mut accepting = Vec::new();
    for l in r.body() {
        match l.1[0] {
            "state" => {
                let acc = match l.1.len() {
                    2 => false,
                    3 if l.1[2] == "accept" => true,
                    _ => return Err(r.err(l.0, "`state <id> [accept]`", l.1.join(" "))),
                };
                m.state(&r, l.0, l.1[1])?;
                accepting.push(acc);
            }
            "init" => m.init(&r, l)?,
            "edge" => m.edge(&r, l)?,
            k => return Err(r.err(l.0, "one of state, init, edge", k)),
        }
    }
    let init = m.init_or_err(&r)?;
    Ok(RegularAntichain { name: h[1].to_string(), states: m.ids, init, next: m.next, accepting })
}

pub fn write_chain(y: &RegularAntichain) -> String {
    let mut s = format!("chain {}\n", y.name);
    for (i, id) in y.states.iter().enumerate() {
        let _ = writeln!(s, "state {}{}", id, if y.accepting[i] { " accept" } else { "" });
    }
    let _ = writeln!(s, "init {}", y.states[y.init]);
    for (i, n) in y.next.iter().enumerate() {
        for d in Dir::BOTH {
            if let Some(t) = n[d.index()] {
                let _ = writeln!(s, "edge {} {} {}", y.states[i], d, y.states[t]);
            }
        }
    }
    s
}

pub fn parse_pta(text: &str, file: &str) -> Result<Pta, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("pta")?;
    if h.len() != 2 {
        return Err(r.err(n, "`pta <name>`", h.join(" ")));
    }
    let mut alphabet: Option<Vec<String>> = None;
    let mut names = HashMap::new();
    let (mut states, mut colors, mut initials, mut trans) = (vec![], vec![], vec![], vec![]);
    for l in r.body() {
        match l.1[0] {
            "alphabet" if alphabet.is_none() => alphabet = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "state" => {
                r.arity(l, 3, "state <id> color=<nat>")?;
                let c = key_value(l.1[2], "color")
                    .and_then(|c| c.parse::<u32>().ok())
                    .ok_or_else(|| r.err(l.0, "color=<nat>", l.1[2]))?;
                declare(&mut names, &r, l.0, l.1[1])?;
                states.push(l.1[1].to_string());
                colors.push(c);
            }
            "init" => {
                for id in &l.1[1..] {
                    initials.push(lookup(&names, &r, l.0, "state", id)?);
                }
            }
            "trans" => {
                r.arity(l, 5, "trans <q> <sym> <ql> <qr>")?;
                let alpha = alphabet.as_ref().ok_or_else(|| r.err(l.0, "an `alphabet` line first", "trans"))?;
                let from = lookup(&names, &r, l.0, "state", l.1[1])?;
                let letter = index_of(alpha, &r, l.0, "alphabet", l.1[2])?;
                let left = lookup(&names, &r, l.0, "state", l.1[3])?;
                let right = lookup(&names, &r, l.0, "state", l.1[4])?;
                trans.push(Transition { from, letter, left, right });
            }
            k => return Err(r.err(l.0, "one of alphabet, state, init, trans", k)),
        }
    }
    let alphabet = alphabet.ok_or_else(|| r.err(r.end, "an `alphabet` line", "end of file"))?;
    Pta::new(h[1], alphabet, states, colors, initials, trans).map_err(|e| r.err(r.end, "a well-formed automaton", e.to_string()))
}

pub fn write_pta(a: &Pta) -> String {
    let mut s = format!("pta {}\nalphabet {}\n", a.name, a.alphabet.join(" "));
    for (q, c) in a.states.iter().zip(&a.colors) {
        let _ = writeln!(s, "state {q} color={c}");
    }
    if !a.initials.is_empty() {
        let ids: Vec<&str> = a.initials.iter().map(|&q| a.states[q].as_str()).collect();
        let _ = writeln!(s, "init {}", ids.join(" "));
    }
    for t in &a.transitions {
        let _ = writeln!(
            s,
            "trans {} {} {} {}",
            a.states[t.from], a.alphabet[t.letter], a.states[t.left], a.states[t.right]
        );
    }
    s
}

pub fn parse_fta(text: &str, file: &str) -> Result<Fta, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("fta")?;
    if h.len() != 2 {
        return Err(r.err(n, "`fta <name>`", h.join(" ")));
    }
    let (mut leaf_alpha, mut inner_alpha): (Option<Vec<String>>, Option<Vec<String>>) = (None, None);
    let mut names = HashMap::new();
    let (mut states, mut initials, mut leaves, mut trans) = (vec![], vec![], vec![], vec![]);
    for l in r.body() {
        match l.1[0] {
            "leafalpha" if leaf_alpha.is_none() => leaf_alpha = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "innalpha" if inner_alpha.is_none() => inner_alpha = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "state" => {
                r.arity(l, 2, "state <id>")?;
                declare(&mut names, &r, l.0, l.1[1])?;
                states.push(l.1[1].to_string());
            }
            "init" => {
                for id in &l.1[1..] {
                    initials.push(lookup(&names, &r, l.0, "state", id)?);
                }
            }
            "leaf" => {
                r.arity(l, 3, "leaf <q> <sym>")?;
                let alpha = leaf_alpha.as_ref().ok_or_else(|| r.err(l.0, "a `leafalpha` line first", "leaf"))?;
                leaves.push((lookup(&names, &r, l.0, "state", l.1[1])?, index_of(alpha, &r, l.0, "leaf alphabet", l.1[2])?));
            }
            "trans" => {
                r.arity(l, 5, "trans <q> <sym> <ql> <qr>")?;
                let alpha = inner_alpha.as_ref().ok_or_else(|| r.err(l.0, "an `innalpha` line first", "trans"))?;
                trans.push((
                    lookup(&names, &r, l.0, "state", l.1[1])?,
                    index_of(alpha, &r, l.0, "inner alphabet", l.1[2])?,
                    lookup(&names, &r, l.0, "state", l.1[3])?,
                    lookup(&names, &r, l.0, "state", l.1[4])?,
                ));
            }
            k => return Err(r.err(l.0, "one of leafalpha, innalpha, state, init, leaf, trans", k)),
        }
    }
    Ok(Fta {
        name: h[1].to_string(),
        leaf_alphabet: leaf_alpha.ok_or_else(|| r.err(r.end, "a `leafalpha` line", "end of file"))?,
        inner_alphabet: inner_alpha.ok_or_else(|| r.err(r.end, "an `innalpha` line", "end of file"))?,
        states,
        initials,
        leaves,
        transitions: trans,
    })
}

pub fn write_fta(b: &Fta) -> String {
    let mut s = format!(
        "fta {}\nleafalpha {}\ninnalpha {}\n",
        b.name,
        b.leaf_alphabet.join(" "),
        b.inner_alphabet.join(" ")
    );
    for q in &b.states {
        let _ = writeln!(s, "state {q}");
    }
    if !b.initials.is_empty() {
        let ids: Vec<&str> = b.initials.iter().map(|&q| b.states[q].as_str()).collect();
        let _ = writeln!(s, "init {}", ids.join(" "));
    }
    for &(q, x) in &b.leaves {
        let _ = writeln!(s, "leaf {} {}", b.states[q], b.leaf_alphabet[x]);
    }
    for &(q, a, l, r) in &b.transitions {
        let _ = writeln!(s, "trans {} {} {} {}", b.states[q], b.inner_alphabet[a], b.states[l], b.states[r]);
    }
    s
}

pub fn parse_ftree(text: &str, file: &str) -> Result<FiniteLabeledTree, ParseError> {
    let r = Reader::new(text, file);
    let mut labels = BTreeMap::new();
    for l in &r.lines {
        if l.1[0] != "node" {
            return Err(r.err(l.0, "`node <path|-> <label>`", l.1[0]));
        }
        r.arity(l, 3, "node <path|-> <label>")?;
        let v = NodePath::parse(l.1[1]).map_err(|_| r.err(l.0, "a path over l and r, or -", l.1[1]))?;
        if labels.insert(v, l.1[2].to_string()).is_some() {
            return Err(r.err(l.0, "one line per node", l.1[1]));
        }
    }
    FiniteLabeledTree::new(labels).map_err(|e| r.err(r.end, "a finite binary tree", e.to_string()))
}

pub fn write_ftree(t: &FiniteLabeledTree) -> String {
    let mut s = String::new();
    for (v, l) in &t.labels {
        let _ = writeln!(s, "node {} {}", v.to_word(), l);
    }
    s
}

pub fn parse_game(text: &str, file: &str) -> Result<Arena, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("game")?;
    if h.len() != 2 {
        return Err(r.err(n, "`game <name>`", h.join(" ")));
    }
    let mut g = Arena::new(h[1]);
    let mut names = HashMap::new();
    let mut declared_sink = Vec::new();
    let mut init = None;
    for l in r.body() {
        match l.1[0] {
            "vertex" => {
                let shape = "vertex <id> owner=A|P color=<nat> [sink]";
                if !(l.1.len() == 4 || (l.1.len() == 5 && l.1[4] == "sink")) {
                    return Err(r.err(l.0, format!("`{shape}`"), l.1.join(" ")));
                }
                let owner = match key_value(l.1[2], "owner") {
                    Some("A") => Player::Automaton,
                    Some("P") => Player::Pathfinder,
                    _ => return Err(r.err(l.0, "owner=A|P", l.1[2])),
                };
                let c = key_value(l.1[3], "color")
                    .and_then(|c| c.parse::<u32>().ok())
                    .ok_or_else(|| r.err(l.0, "color=<nat>", l.1[3]))?;
                declare(&mut names, &r, l.0, l.1[1])?;
                g.add_vertex(l.1[1], owner, c);
                declared_sink.push((l.0, l.1.len() == 5));
            }
            "init" => {
                r.arity(l, 2, "init <id>")?;
                init = Some(lookup(&names, &r, l.0, "vertex", l.1[1])?);
            }
            "edge" => {
                r.arity(l, 3, "edge <u> <v>")?;
                let u = lookup(&names, &r, l.0, "vertex", l.1[1])?;
                let v = lookup(&names, &r, l.0, "vertex", l.1[2])?;
                g.add_edge(u, v);
            }
            k => return Err(r.err(l.0, "one of vertex, init, edge", k)),
        }
    }
    g.init = init.ok_or_else(|| r.err(r.end, "an `init <id>` line", "end of file"))?;
    g.finish();
    for (v, &(line, sink)) in declared_sink.iter().enumerate() {
        if sink != g.sink[v] {
            let expected = if sink { "no edges from a sink" } else { "a `sink` flag on a vertex without edges" };
            return Err(r.err(line, expected, g.names[v].clone()));
        }
    }
    Ok(g)
}

/// Vertex ids: arena names when they are unique and whitespace-free, `v<i>` otherwise.
fn game_ids(g: &Arena) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let usable = g.names.iter().all(|n| !n.is_empty() && !n.contains(char::is_whitespace) && seen.insert(n.as_str()));
    if usable {
        g.names.clone()
    } else {
        (0..g.len()).map(|i| format!("v{i}")).collect()
    }
}

pub fn write_game(g: &Arena) -> String {
    let ids = game_ids(g);
    let mut s = format!("game {}\n", g.name);
    for v in 0..g.len() {
        let owner = if g.owner[v] == Player::Automaton { "A" } else { "P" };
        let _ = writeln!(s, "vertex {} owner={} color={}{}", ids[v], owner, g.color[v], if g.sink[v] { " sink" } else { "" });
    }
    let _ = writeln!(s, "init {}", ids[g.init]);
    for v in 0..g.len() {
        for &w in &g.succ[v] {
            let _ = writeln!(s, "edge {} {}", ids[v], ids[w]);
        }
    }
    s
}

/// Strategy machines are checked against the automaton's states: the `out` map must be total.
pub fn parse_straj(text: &str, file: &str, a: &Pta) -> Result<PathfinderStrategyTree, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("straj")?;
    let of = (h.len() == 3).then(|| key_value(h[2], "of")).flatten();
    let Some(of) = of else {
        return Err(r.err(n, "`straj <name> of=<pta>`", h.join(" ")));
    };
    let q = a.len();
    let mut m = Machine::new();
    let mut dirs: Vec<Vec<Option<Dir>>> = Vec::new();
    let state = |id: &str, line: usize| a.state_index(id).ok_or_else(|| r.err(line, format!("a state of {}", a.name), id));
    for l in r.body() {
        match l.1[0] {
            "state" => {
                r.arity(l, 2, "state <id>")?;
                m.state(&r, l.0, l.1[1])?;
                dirs.push(vec![None; q * q]);
            }
            "init" => m.init(&r, l)?,
            "edge" => m.edge(&r, l)?,
            "out" => {
                r.arity(l, 5, "out <state> <ql> <qr> l|r")?;
                let s = lookup(&m.names, &r, l.0, "state", l.1[1])?;
                let (ql, qr) = (state(l.1[2], l.0)?, state(l.1[3], l.0)?);
                let slot = &mut dirs[s][ql * q + qr];
                if slot.is_some() {
                    return Err(r.err(l.0, "one out line per (state, ql, qr)", l.1.join(" ")));
                }
                *slot = Some(parse_dir(&r, l.0, l.1[4])?);
            }
            k => return Err(r.err(l.0, "one of state, init, edge, out", k)),
        }
    }
    let next = m.total(&r)?;
    let init = m.init_or_err(&r)?;
    let dirs = dirs
        .into_iter()
        .enumerate()
        .map(|(s, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, d)| {
                    d.ok_or_else(|| {
                        r.err(
                            m.decl_line[s],
                            "a total out map",
                            format!("no direction for ({}, {}, {})", m.ids[s], a.states[i / q], a.states[i % q]),
                        )
                    })
                })
                .collect::<Result<Vec<Dir>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PathfinderStrategyTree {
        name: h[1].to_string(),
        of: of.to_string(),
        automaton_states: a.states.clone(),
        states: m.ids,
        init,
        next,
        dirs,
    })
}

pub fn write_straj(s: &PathfinderStrategyTree) -> String {
    let mut out = format!("straj {} of={}\n", s.name, s.of);
    for id in &s.states {
        let _ = writeln!(out, "state {id}");
    }
    let _ = writeln!(out, "init {}", s.states[s.init]);
    write_edges(&mut out, &s.states, &s.next);
    let q = s.automaton_states.len();
    for (i, id) in s.states.iter().enumerate() {
        for ql in 0..q {
            for qr in 0..q {
                let _ = writeln!(
                    out,
                    "out {} {} {} {}",
                    id, s.automaton_states[ql], s.automaton_states[qr], s.dirs[i][ql * q + qr]
                );
            }
        }
    }
    out
}

pub fn parse_moore(text: &str, file: &str) -> Result<MooreMachine, ParseError> {
    let r = Reader::new(text, file);
    let (n, h) = r.header("moore")?;
    if h.len() != 2 {
        return Err(r.err(n, "`moore <name>`", h.join(" ")));
    }
    let (mut input, mut output): (Option<Vec<String>>, Option<Vec<String>>) = (None, None);
    let mut names = HashMap::new();
    let (mut states, mut out, mut delta_lines) = (vec![], vec![], vec![]);
    let mut init = None;
    for l in r.body() {
        match l.1[0] {
            "input" if input.is_none() => input = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "output" if output.is_none() => output = Some(l.1[1..].iter().map(|s| s.to_string()).collect()),
            "state" => {
                r.arity(l, 3, "state <id> out=<sym>")?;
                let o = output.as_ref().ok_or_else(|| r.err(l.0, "an `output` line first", "state"))?;
                let sym = key_value(l.1[2], "out").ok_or_else(|| r.err(l.0, "out=<sym>", l.1[2]))?;
                out.push(index_of(o, &r, l.0, "output alphabet", sym)?);
                declare(&mut names, &r, l.0, l.1[1])?;
                states.push(l.1[1].to_string());
            }
            "init" => {
                r.arity(l, 2, "init <id>")?;
                init = Some(lookup(&names, &r, l.0, "state", l.1[1])?);
            }
            "delta" => {
                r.arity(l, 4, "delta <p> <sym> <p'>")?;
                delta_lines.push(l.clone());
            }
            k => return Err(r.err(l.0, "one of input, output, state, init, delta", k)),
        }
    }
    let input = input.ok_or_else(|| r.err(r.end, "an `input` line", "end of file"))?;
    let output = output.ok_or_else(|| r.err(r.end, "an `output` line", "end of file"))?;
    let mut delta = vec![vec![None; input.len()]; states.len()];
    let mut decl = vec![r.end; states.len()];
    for l in &delta_lines {
        let p = lookup(&names, &r, l.0, "state", l.1[1])?;
        let a = index_of(&input, &r, l.0, "input alphabet", l.1[2])?;
        let t = lookup(&names, &r, l.0, "state", l.1[3])?;
        if delta[p][a].replace(t).is_some() {
            return Err(r.err(l.0, "one delta line per (state, letter)", l.1.join(" ")));
        }
        decl[p] = l.0;
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(p, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, t)| t.ok_or_else(|| r.err(decl[p], "a total delta", format!("({}, {})", states[p], input[a]))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let init = init.ok_or_else(|| r.err(r.end, "an `init <id>` line", "end of file"))?;
    MooreMachine::new(h[1], input, output, states, init, delta, out)
        .map_err(|e| r.err(r.end, "a well-formed Moore machine", e.to_string()))
}

pub fn write_moore(m: &MooreMachine) -> String {
    let mut s = format!("moore {}\ninput {}\noutput {}\n", m.name, m.input.join(" "), m.output.join(" "));
    for (i, id) in m.states.iter().enumerate() {
        let _ = writeln!(s, "state {} out={}", id, m.output[m.out[i]]);
    }
    let _ = writeln!(s, "init {}", m.states[m.init]);
    for (p, row) in m.delta.iter().enumerate() {
        for (a, &t) in row.iter().enumerate() {
            let _ = writeln!(s, "delta {} {} {}", m.states[p], m.input[a], m.states[t]);
        }
    }
    s
}

/// Representation manifest: `fta <file>` once, then `tree <leaf> <file>` per leaf letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepManifest {
    pub fta: String,
    pub trees: Vec<(String, String)>,
}

pub fn parse_rep(text: &str, file: &str) -> Result<RepManifest, ParseError> {
    let r = Reader::new(text, file);
    let mut fta = None;
    let mut trees = Vec::new();
    for l in &r.lines {
        match l.1[0] {
            "fta" if fta.is_none() => {
                r.arity(l, 2, "fta <file>")?;
                fta = Some(l.1[1].to_string());
            }
            "tree" => {
                r.arity(l, 3, "tree <leaf> <file>")?;
                trees.push((l.1[1].to_string(), l.1[2].to_string()));
            }
            k => return Err(r.err(l.0, "one of fta, tree", k)),
        }
    }
    let fta = fta.ok_or_else(|| r.err(r.end, "an `fta <file>` line", "end of file"))?;
    Ok(RepManifest { fta, trees })
}

pub fn write_rep(m: &RepManifest) -> String {
    let mut s = format!("fta {}\n", m.fta);
    for (x, f) in &m.trees {
        let _ = writeln!(s, "tree {x} {f}");
    }
    s
}
