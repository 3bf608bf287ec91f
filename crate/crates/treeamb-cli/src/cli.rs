//! Command-line front end. Exit codes: 0 success, 1 negative membership verdict, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;
use treeamb::ambiguity::{classify, emptiness, is_k_ambiguous, AmbiguityError, AmbiguityVerdict, RegenerationWitness};
use treeamb::automata::{
    intersect, moore_reduction, restrict_initials, single_initial, union, AutomatonError, FiniteLabeledTree, Fta, Pta,
};
use treeamb::games::{solve, to_dot, Arena, GameError, Player};
use treeamb::membership::{build_game, leads, member, pathfinder_strategy, some_run, MembershipError, PathfinderStrategyTree, RegularRun};
use treeamb::trees::{graft_antichain, graft_node, MooreMachine, NodePath, RegularAntichain, RegularTree, TreeError};
use treeamb::zoo::{self, NiwinskiRepresentation, ZooError};

use crate::formats::{self, ParseError};
use crate::suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Membership(#[from] MembershipError),
    #[error(transparent)]
    Ambiguity(#[from] AmbiguityError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
}

#[derive(Debug, Parser)]
#[command(name = "treeamb", version, about = "Ambiguity of parity tree automata on regular trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a file (format chosen by extension) or a representation directory.
    Validate {
        file: PathBuf,
        /// Automaton that a `.straj` file refers to.
        #[arg(short = 'a', long)]
        automaton: Option<PathBuf>,
    },
    /// Decide whether the automaton accepts the tree.
    Member {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(short = 't', long)]
        tree: PathBuf,
        /// Write an accepting run when the tree is accepted.
        #[arg(long)]
        run: Option<PathBuf>,
        /// Write a winning Pathfinder strategy when the tree is rejected.
        #[arg(long)]
        straj: Option<PathBuf>,
    },
    /// Count accepting runs: exact, at_least, infinite or uncountable.
    Classify {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(short = 't', long)]
        tree: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether every tree has at most k accepting runs.
    Ambiguous {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide emptiness of the language.
    Empty {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        /// Write a regular tree of the language when it is nonempty.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build automata and trees from others.
    Construct {
        #[command(subcommand)]
        op: Construct,
    },
    /// Emit a named automaton, or the unambiguous automaton of a representation directory.
    Zoo {
        /// One of the zoo names, or `niwinski` together with `--rep`.
        name: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Membership games.
    Game {
        #[command(subcommand)]
        op: GameCmd,
    },
    /// Play a run-induced strategy against a Pathfinder strategy; print the first bad node.
    Leads {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(long)]
        t0: PathBuf,
        #[arg(long)]
        tprime: PathBuf,
        #[arg(long)]
        run: PathBuf,
        #[arg(long)]
        straj: PathBuf,
    },
    /// Run the acceptance criteria.
    Suite {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    Union {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'b')]
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Intersect {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'b')]
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    SingleInit {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Restrict {
        #[arg(short = 'a')]
        a: PathBuf,
        /// Comma-separated initial states to keep.
        #[arg(long, value_delimiter = ',', required = true)]
        init: Vec<String>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Preimage of an automaton under a Moore relabeling.
    Reduce {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'm')]
        moore: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Graft `--with` into `-t` at one node or at every node of an antichain.
    Graft {
        #[arg(short = 't')]
        t: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[arg(long, conflicts_with = "chain")]
        at: Option<String>,
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Build the membership game of an automaton and a tree.
    Build {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(short = 't', long)]
        tree: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Solve a game file and report the winner of its initial vertex.
    Solve {
        #[arg(short = 'g', long)]
        game: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes to `out`, or prints when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

pub fn load_pta(path: &Path) -> Result<Pta, CliError> {
    Ok(formats::parse_pta(&read(path)?, &label(path))?)
}

pub fn load_tree(path: &Path) -> Result<RegularTree, CliError> {
    Ok(formats::parse_mtree(&read(path)?, &label(path))?)
}

fn load_run(path: &Path) -> Result<RegularRun, CliError> {
    Ok(formats::parse_run(&read(path)?, &label(path))?)
}

fn load_chain(path: &Path) -> Result<RegularAntichain, CliError> {
    Ok(formats::parse_chain(&read(path)?, &label(path))?)
}

fn load_fta(path: &Path) -> Result<Fta, CliError> {
    let b = formats::parse_fta(&read(path)?, &label(path))?;
    b.validate()?;
    Ok(b)
}

fn load_ftree(path: &Path) -> Result<FiniteLabeledTree, CliError> {
    Ok(formats::parse_ftree(&read(path)?, &label(path))?)
}

fn load_game(path: &Path) -> Result<Arena, CliError> {
    let g = formats::parse_game(&read(path)?, &label(path))?;
    g.validate()?;
    Ok(g)
}

fn load_moore(path: &Path) -> Result<MooreMachine, CliError> {
    Ok(formats::parse_moore(&read(path)?, &label(path))?)
}

fn load_straj(path: &Path, a: &Pta) -> Result<PathfinderStrategyTree, CliError> {
    Ok(formats::parse_straj(&read(path)?, &label(path), a)?)
}

/// A representation directory holds a `rep` manifest; its paths are relative to the directory.
pub fn load_rep(dir: &Path) -> Result<NiwinskiRepresentation, CliError> {
    let manifest_path = dir.join("rep");
    let manifest = formats::parse_rep(&read(&manifest_path)?, &label(&manifest_path))?;
    let fta = load_fta(&dir.join(&manifest.fta))?;
    let mut trees = Vec::new();
    for x in &fta.leaf_alphabet {
        let Some((_, file)) = manifest.trees.iter().find(|(y, _)| y == x) else {
            return Err(CliError::Input(format!("{}: no tree for leaf letter `{x}`", label(&manifest_path))));
        };
        trees.push(load_tree(&dir.join(file))?);
    }
    if let Some((y, _)) = manifest.trees.iter().find(|(y, _)| !fta.leaf_alphabet.contains(y)) {
        return Err(CliError::Input(format!("{}: `{y}` is not a leaf letter", label(&manifest_path))));
    }
    Ok(NiwinskiRepresentation { fta, trees })
}

pub fn witness_json(a: &Pta, t: &RegularTree, w: &RegenerationWitness) -> Value {
    let vertex = |(m, q): (usize, usize)| json!({"tree_state": t.states[m], "state": a.states[q]});
    let fragment: Vec<Value> = w
        .fragment
        .iter()
        .map(|s| {
            json!({
                "tree_state": t.states[s.m],
                "state": a.states[s.q],
                "left": a.states[s.left],
                "right": a.states[s.right],
                "dir": s.dir.as_str(),
            })
        })
        .collect();
    json!({
        "mode": w.mode.as_str(),
        "p": vertex(w.p),
        "branch": vertex(w.branch),
        "offshoot": w.offshoot,
        "fragment": fragment,
        "spine_max_color": w.spine_max_color(a),
        "runs": [formats::write_run(&w.runs[0]), formats::write_run(&w.runs[1])],
        "residual": formats::write_mtree(&w.residual),
    })
}

/// `{"n", "verdict", "witness"}` with keys in sorted order.
pub fn verdict_json(a: &Pta, t: &RegularTree, v: &AmbiguityVerdict) -> Value {
    json!({
        "verdict": v.kind(),
        "n": v.count(),
        "witness": v.witness().map(|w| witness_json(a, t, w)),
    })
}

fn verdict_text(a: &Pta, t: &RegularTree, v: &AmbiguityVerdict) -> String {
    match v {
        AmbiguityVerdict::Exact(n) => format!("exact {n}\n"),
        AmbiguityVerdict::AtLeast(n) => format!("at_least {n}\n"),
        AmbiguityVerdict::Infinite(w) | AmbiguityVerdict::Uncountable(w) => {
            let mut s = format!(
                "{} p=({}, {}) loop={} branch=({}, {})\n",
                v.kind(),
                t.states[w.p.0],
                a.states[w.p.1],
                w.fragment.len(),
                t.states[w.branch.0],
                a.states[w.branch.1]
            );
            for r in &w.runs {
                s.push_str(&formats::write_run(r));
            }
            s
        }
    }
}

fn validate(file: &Path, automaton: Option<&Path>) -> Result<String, CliError> {
    if file.is_dir() {
        let rep = load_rep(file)?;
        return Ok(format!("ok rep {} ({} trees)", rep.fta.name, rep.trees.len()));
    }
    let ext = file.extension().and_then(|e| e.to_str()).unwrap_or("");
    Ok(match ext {
        "pta" => {
            let a = load_pta(file)?;
            format!("ok pta {} ({} states)", a.name, a.len())
        }
        "mtree" => {
            let t = load_tree(file)?;
            format!("ok mtree {} ({} states)", t.name, t.len())
        }
        "run" => {
            let r = load_run(file)?;
            format!("ok run of={} on={} ({} states)", r.of, r.on, r.machine.len())
        }
        "chain" => {
            let y = load_chain(file)?;
            if !y.is_antichain() {
                return Err(TreeError::AntichainViolation(y.name).into());
            }
            format!("ok chain {} ({} states)", y.name, y.states.len())
        }
        "fta" => {
            let b = load_fta(file)?;
            format!("ok fta {} ({} states)", b.name, b.states.len())
        }
        "ftree" => {
            let t = load_ftree(file)?;
            format!("ok ftree ({} nodes)", t.labels.len())
        }
        "game" => {
            let g = load_game(file)?;
            format!("ok game {} ({} vertices)", g.name, g.len())
        }
        "moore" => {
            let m = load_moore(file)?;
            format!("ok moore {} ({} states)", m.name, m.states.len())
        }
        "straj" => {
            let Some(a) = automaton else {
                return Err(CliError::Input("validating a .straj file needs -a <pta>".into()));
            };
            let s = load_straj(file, &load_pta(a)?)?;
            format!("ok straj {} ({} states)", s.name, s.states.len())
        }
        other => return Err(CliError::Input(format!("{}: unknown file kind `{other}`", label(file)))),
    })
}

fn construct(op: &Construct) -> Result<(), CliError> {
    let (text, out) = match op {
        Construct::Union { a, b, out } => (formats::write_pta(&union(&load_pta(a)?, &load_pta(b)?)?), out),
        Construct::Intersect { a, b, out } => (formats::write_pta(&intersect(&load_pta(a)?, &load_pta(b)?)?), out),
        Construct::SingleInit { a, out } => (formats::write_pta(&single_initial(&load_pta(a)?)), out),
        Construct::Restrict { a, init, out } => {
            let ids: Vec<&str> = init.iter().map(String::as_str).collect();
            (formats::write_pta(&restrict_initials(&load_pta(a)?, &ids)?), out)
        }
        Construct::Reduce { a, moore, out } => {
            (formats::write_pta(&moore_reduction(&load_pta(a)?, &load_moore(moore)?)?), out)
        }
        Construct::Graft { t, with, at, chain, out } => {
            let (t1, t2) = (load_tree(t)?, load_tree(with)?);
            let g = match (at, chain) {
                (Some(v), None) => graft_node(&t1, &t2, &NodePath::parse(v)?),
                (None, Some(c)) => graft_antichain(&t1, &t2, &load_chain(c)?)?,
                _ => return Err(CliError::Input("graft needs exactly one of --at or --chain".into())),
            };
            (formats::write_mtree(&g), out)
        }
    };
    emit(out.as_deref(), &text)
}

fn game(op: &GameCmd) -> Result<(), CliError> {
    match op {
        GameCmd::Build { automaton, tree, dot, out } => {
            let g = build_game(&load_pta(automaton)?, &load_tree(tree)?)?;
            if let Some(d) = dot {
                write(d, &to_dot(g.arena(), None))?;
            }
            emit(out.as_deref(), &formats::write_game(g.arena()))
        }
        GameCmd::Solve { game, dot, json } => {
            let g = load_game(game)?;
            let w = solve(&g)?;
            if let Some(d) = dot {
                write(d, &to_dot(&g, Some(&w)))?;
            }
            let count = |p: Player| w.winner.iter().filter(|&&x| x == p).count();
            let init = w.winner[g.init];
            if *json {
                let v = json!({
                    "init_winner": init.letter(),
                    "automaton_region": count(Player::Automaton),
                    "pathfinder_region": count(Player::Pathfinder),
                });
                println!("{v}");
            } else {
                println!(
                    "winner {} automaton_region={} pathfinder_region={}",
                    init.letter(),
                    count(Player::Automaton),
                    count(Player::Pathfinder)
                );
            }
            Ok(())
        }
    }
}

fn zoo_cmd(name: &str, k: usize, rep: Option<&Path>, out: Option<&Path>) -> Result<(), CliError> {
    let a = if name == "niwinski" {
        let Some(dir) = rep else {
            return Err(CliError::Input("`zoo niwinski` needs --rep <dir>".into()));
        };
        zoo::niwinski_unambiguous(&load_rep(dir)?)?
    } else {
        zoo::by_name(name, k).ok_or_else(|| {
            CliError::Input(format!("unknown zoo automaton `{name}`; expected one of {}, niwinski", zoo::NAMES.join(", ")))
        })?
    };
    emit(out, &formats::write_pta(&a))
}

/// Runs one command and returns its exit code.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate { file, automaton } => println!("{}", validate(&file, automaton.as_deref())?),
        Command::Member { automaton, tree, run, straj } => {
            let (a, t) = (load_pta(&automaton)?, load_tree(&tree)?);
            let accepted = member(&a, &t);
            println!("{accepted}");
            if let (true, Some(p)) = (accepted, &run) {
                write(p, &formats::write_run(&some_run(&a, &t)?))?;
            }
            if let (false, Some(p)) = (accepted, &straj) {
                write(p, &formats::write_straj(&pathfinder_strategy(&a, &t)?))?;
            }
            if !accepted {
                return Ok(1);
            }
        }
        Command::Classify { automaton, tree, max_k, json } => {
            let (a, t) = (load_pta(&automaton)?, load_tree(&tree)?);
            let v = classify(&a, &t, max_k);
            if json {
                println!("{}", verdict_json(&a, &t, &v));
            } else {
                print!("{}", verdict_text(&a, &t, &v));
            }
        }
        Command::Ambiguous { automaton, k, json } => {
            let a = load_pta(&automaton)?;
            let yes = is_k_ambiguous(&a, k);
            if json {
                println!("{}", json!({"k": k, "k_ambiguous": yes}));
            } else {
                println!("{yes}");
            }
        }
        Command::Empty { automaton, witness } => {
            let a = load_pta(&automaton)?;
            match emptiness(&a) {
                None => println!("empty"),
                Some(w) => {
                    println!("nonempty");
                    if let Some(p) = witness {
                        write(&p, &formats::write_mtree(&w))?;
                    }
                }
            }
        }
        Command::Construct { op } => construct(&op)?,
        Command::Zoo { name, k, rep, out } => zoo_cmd(&name, k, rep.as_deref(), out.as_deref())?,
        Command::Game { op } => game(&op)?,
        Command::Leads { automaton, t0, tprime, run, straj } => {
            let a = load_pta(&automaton)?;
            let s = load_straj(&straj, &a)?;
            let v = leads(&a, &load_tree(&t0)?, &s, &load_tree(&tprime)?, &load_run(&run)?)?;
            println!("{}", v.to_word());
        }
        Command::Suite { json } => {
            let report = suite::run_all();
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", suite::table(&report));
            }
            if report.iter().any(|r| !r.passed) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Parses `args` and runs; usage errors and input errors both exit with 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
