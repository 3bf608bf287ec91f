//! The acceptance criteria, each with its time limit. A criterion passes when its check holds
//! and it finishes within the limit.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use treeamb::ambiguity::{at_least_k, classify, is_k_ambiguous, validate_witness, AmbiguityVerdict};
use treeamb::automata::{conjunction_dpw, det_pta_for_tree, dpw_accepts_lasso, lasso_accepts, FiniteLabeledTree, Pta, Transition};
use treeamb::games::{solve, solve_oracle, verify_strategy, Arena, Player};
use treeamb::membership::{leads, member, pathfinder_strategy, some_run};
use treeamb::trees::{graft_antichain, make_node, RegularAntichain, RegularTree};
use treeamb::zoo::{self, NiwinskiRepresentation};

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub limit_seconds: f64,
    pub check: fn() -> (bool, String),
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let (ok, detail) = (self.check)();
        let seconds = start.elapsed().as_secs_f64();
        CriterionResult { id: self.id, name: self.name, passed: ok && seconds < self.limit_seconds, detail, seconds, limit_seconds: self.limit_seconds }
    }
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.2}s / {:.0}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "k-hierarchy on t_c", limit_seconds: 10.0, check: k_hierarchy },
        Criterion { id: 2, name: "union automaton is exactly 2-ambiguous", limit_seconds: 30.0, check: two_ambiguity },
        Criterion { id: 3, name: "lfa run counts", limit_seconds: 60.0, check: lfa_counts },
        Criterion { id: 4, name: "lfa is unboundedly ambiguous", limit_seconds: 120.0, check: lfa_unbounded },
        Criterion { id: 5, name: "scheme automaton on the l*r spine", limit_seconds: 60.0, check: uncountable_scheme },
        Criterion { id: 6, name: "countably infinite instance", limit_seconds: 30.0, check: countable_instance },
        Criterion { id: 7, name: "unambiguous automata of representations", limit_seconds: 60.0, check: representations },
        Criterion { id: 8, name: "solver cross-validation", limit_seconds: 60.0, check: solvers },
        Criterion { id: 9, name: "conjunction gadget on lassos", limit_seconds: 60.0, check: conjunction },
        Criterion { id: 10, name: "leads contract", limit_seconds: 30.0, check: leads_contract },
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}

pub fn table(results: &[CriterionResult]) -> String {
    let mut s = String::new();
    for r in results {
        let _ = writeln!(s, "{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", results.len());
    s
}

fn verdict(v: &AmbiguityVerdict) -> String {
    match v.count() {
        Some(n) => format!("{}({n})", v.kind()),
        None => v.kind().to_string(),
    }
}

fn tc(k: usize) -> RegularTree {
    zoo::constant_tree("c", k)
}

fn spine_a1() -> RegularTree {
    graft_antichain(&tc(1), &zoo::constant_tree("a1", 1), &RegularAntichain::left_spine_right()).expect("same alphabet")
}

/// `t_c` with `a1` exactly at `l` and `r`.
fn two_differences() -> RegularTree {
    let leaf = make_node("a1", &tc(1), &tc(1)).expect("same alphabet");
    make_node("c", &leaf, &leaf).expect("same alphabet").with_name("two_diff")
}

fn k_hierarchy() -> (bool, String) {
    let mut ok = true;
    let mut parts = vec![];
    for k in 1..=3 {
        let v = classify(&zoo::neg_union(k), &tc(k), 5);
        ok &= matches!(v, AmbiguityVerdict::Exact(n) if n == k);
        parts.push(format!("k={k}: {}", verdict(&v)));
    }
    (ok, parts.join(", "))
}

fn two_ambiguity() -> (bool, String) {
    let a = zoo::neg_union(2);
    let (one, two) = (is_k_ambiguous(&a, 1), is_k_ambiguous(&a, 2));
    (!one && two, format!("1-ambiguous={one}, 2-ambiguous={two}"))
}

fn lfa_counts() -> (bool, String) {
    let a = zoo::lfa();
    let mut ok = true;
    let mut parts = vec![];
    for m in 2..=3 {
        for k in 0..m {
            let v = classify(&a, &zoo::lfa_tree(k, m, &tc(2)), 8);
            ok &= matches!(v, AmbiguityVerdict::Exact(n) if n == 2 * m);
            parts.push(format!("L_{k},{m}: {}", verdict(&v)));
        }
    }
    (ok, parts.join(", "))
}

fn lfa_unbounded() -> (bool, String) {
    let a = zoo::lfa();
    let results: Vec<bool> = (2..=5).map(|m| at_least_k(&a, &zoo::lfa_tree(0, m, &tc(2)), m)).collect();
    (results.iter().all(|&x| x), format!("at_least m on L_m for m=2..5: {results:?}"))
}

fn uncountable_scheme() -> (bool, String) {
    let a = zoo::frak_standard();
    let t = spine_a1();
    let v = classify(&a, &t, 4);
    let ok = match &v {
        AmbiguityVerdict::Uncountable(w) => validate_witness(&a, &t, w).is_ok(),
        _ => false,
    };
    let amb = graft_antichain(&tc(1), &two_differences(), &RegularAntichain::left_spine_right()).expect("same alphabet");
    let va = classify(&a, &amb, 4);
    let valid = va.witness().is_some_and(|w| validate_witness(&a, &amb, w).is_ok());
    (
        ok,
        format!(
            "t_a1 on l*r: {}; two-difference tree on l*r: {} (witness valid: {valid})",
            verdict(&v),
            verdict(&va)
        ),
    )
}

fn countable_instance() -> (bool, String) {
    let a = zoo::complement_singleton(&tc(1));
    let t = spine_a1();
    let v = classify(&a, &t, 8);
    let inf = matches!(&v, AmbiguityVerdict::Infinite(w) if validate_witness(&a, &t, w).is_ok());
    let v2 = classify(&a, &two_differences(), 8);
    let two = matches!(v2, AmbiguityVerdict::Exact(2));
    (inf && two, format!("spine: {}, two-difference: {}", verdict(&v), verdict(&v2)))
}

/// Five finite trees over the representation's leaves; some lie outside its language.
fn finite_samples(rep: &NiwinskiRepresentation) -> Vec<FiniteLabeledTree> {
    let xs = &rep.fta.leaf_alphabet;
    let first = FiniteLabeledTree::leaf(&xs[0]);
    let last = FiniteLabeledTree::leaf(&xs[xs.len() - 1]);
    let c = |l: &FiniteLabeledTree, r: &FiniteLabeledTree| FiniteLabeledTree::node("c", l, r);
    vec![first.clone(), last.clone(), c(&first, &first), c(&last, &first), c(&c(&last, &first), &first)]
}

fn representations() -> (bool, String) {
    let mut ok = true;
    let mut parts = vec![];
    for rep in zoo::niwinski_examples() {
        let a = match zoo::niwinski_unambiguous(&rep) {
            Ok(a) => a,
            Err(e) => return (false, format!("{}: {e}", rep.fta.name)),
        };
        let unamb = is_k_ambiguous(&a, 1);
        let mut agree = 0;
        for tau in finite_samples(&rep) {
            let t = rep.substitute(&tau).expect("samples use the representation's letters");
            agree += usize::from(member(&a, &t) == zoo::member_by_substitution(&rep, &t));
        }
        ok &= unamb && agree == 5;
        parts.push(format!("{}: unambiguous={unamb}, agree {agree}/5", rep.fta.name));
    }
    (ok, parts.join(", "))
}

fn player(b: bool) -> Player {
    if b {
        Player::Automaton
    } else {
        Player::Pathfinder
    }
}

/// Both solvers agree and each winner's extracted strategy verifies.
fn cross_check(g: &Arena) -> bool {
    let (Ok(w), Ok(o)) = (solve(g), solve_oracle(g)) else {
        return false;
    };
    w.winner == o.winner
        && [Player::Automaton, Player::Pathfinder]
            .into_iter()
            .all(|p| verify_strategy(g, &w.strategy(g, p)).unwrap_or(false))
}

fn arena(labels: &[(bool, u32)], succ: &[Vec<usize>]) -> Arena {
    let mut g = Arena::new("g");
    for (v, &(o, c)) in labels.iter().enumerate() {
        g.add_vertex(format!("v{v}"), player(o), c);
    }
    for (v, s) in succ.iter().enumerate() {
        for &w in s {
            g.add_edge(v, w);
        }
    }
    g.finish();
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Arenas with at most 4 vertices, colors in 0..=2 and out-degree at most 2, one per
/// isomorphism class: labels are sorted, and an edge structure is kept only if no
/// label-preserving permutation maps it to a smaller encoding.
fn small_arenas(mut visit: impl FnMut(&Arena) -> bool) -> (usize, bool) {
    let labels: Vec<(bool, u32)> = [false, true].iter().flat_map(|&o| (0..=2).map(move |c| (o, c))).collect();
    let mut count = 0;
    for n in 1..=4usize {
        let masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() <= 2).collect();
        let perms = permutations(n);
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            seqs = seqs
                .into_iter()
                .flat_map(|s| {
                    let lo = s.last().copied().unwrap_or(0);
                    (lo..labels.len()).map(move |l| {
                        let mut t = s.clone();
                        t.push(l);
                        t
                    })
                })
                .collect();
        }
        for seq in &seqs {
            let autos: Vec<&Vec<usize>> =
                perms.iter().filter(|p| p.iter().enumerate().all(|(i, &j)| seq[i] == seq[j]) && !p.iter().enumerate().all(|(i, &j)| i == j)).collect();
            let lab: Vec<(bool, u32)> = seq.iter().map(|&l| labels[l]).collect();
            let mut idx = vec![0usize; n];
            loop {
                let enc: Vec<u32> = idx.iter().map(|&i| masks[i]).collect();
                let canonical = autos.iter().all(|p| {
                    let mut img = vec![0u32; n];
                    for (i, &m) in enc.iter().enumerate() {
                        img[p[i]] = (0..n).filter(|&b| m >> b & 1 == 1).fold(0, |acc, b| acc | 1 << p[b]);
                    }
                    img >= enc
                });
                if canonical {
                    let succ: Vec<Vec<usize>> = enc.iter().map(|&m| (0..n).filter(|&b| m >> b & 1 == 1).collect()).collect();
                    count += 1;
                    if !visit(&arena(&lab, &succ)) {
                        return (count, false);
                    }
                }
                let mut i = 0;
                while i < n {
                    idx[i] += 1;
                    if idx[i] < masks.len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    (count, true)
}

fn random_arena(rng: &mut ChaCha8Rng) -> Arena {
    let n = rng.gen_range(1..=8);
    let labels: Vec<(bool, u32)> = (0..n).map(|_| (rng.gen(), rng.gen_range(0..=4))).collect();
    let succ: Vec<Vec<usize>> = (0..n).map(|_| (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect()).collect();
    arena(&labels, &succ)
}

fn solvers() -> (bool, String) {
    let (count, small_ok) = small_arenas(cross_check);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_ok = (0..200).all(|_| cross_check(&random_arena(&mut rng)));
    (small_ok && random_ok, format!("{count} small arenas agree={small_ok}, 200 random arenas agree={random_ok}"))
}

fn conjunction() -> (bool, String) {
    let d = conjunction_dpw(2, 2);
    let letters: Vec<Vec<u32>> = (0..=2).flat_map(|x| (0..=2).map(move |y| vec![x, y])).collect();
    let mut checked = 0usize;
    for total in 1..=6usize {
        let mut word = vec![0usize; total];
        loop {
            let w: Vec<Vec<u32>> = word.iter().map(|&i| letters[i].clone()).collect();
            for stem in 0..total {
                let (s, c) = w.split_at(stem);
                if dpw_accepts_lasso(&d, s, c) != lasso_accepts(c) {
                    return (false, format!("disagree on stem {s:?} cycle {c:?}"));
                }
                checked += 1;
            }
            let mut i = 0;
            while i < total {
                word[i] += 1;
                if word[i] < letters.len() {
                    break;
                }
                word[i] = 0;
                i += 1;
            }
            if i == total {
                break;
            }
        }
    }
    (true, format!("{checked} lassos agree on a {}-state automaton", d.len()))
}

fn random_tree(rng: &mut ChaCha8Rng, alphabet: &[String]) -> RegularTree {
    let n = rng.gen_range(1..=3);
    RegularTree::new(
        "t",
        alphabet.to_vec(),
        (0..n).map(|i| format!("s{i}")).collect(),
        0,
        (0..n).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect(),
        (0..n).map(|_| rng.gen_range(0..alphabet.len())).collect(),
    )
    .expect("indices are in range")
}

fn random_pta(rng: &mut ChaCha8Rng, alphabet: &[String]) -> Pta {
    let n = rng.gen_range(1..=3);
    let trans = (0..rng.gen_range(n..=3 * n + 2))
        .map(|_| Transition {
            from: rng.gen_range(0..n),
            letter: rng.gen_range(0..alphabet.len()),
            left: rng.gen_range(0..n),
            right: rng.gen_range(0..n),
        })
        .collect();
    let colors = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    Pta::new("a", alphabet.to_vec(), (0..n).map(|i| format!("q{i}")).collect(), colors, vec![0], trans)
        .expect("indices are in range")
}

fn leads_contract() -> (bool, String) {
    let alphabet = zoo::sigma(1);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut found = 0;
    let mut attempts = 0;
    while found < 10 && attempts < 20_000 {
        attempts += 1;
        let a = random_pta(&mut rng, &alphabet);
        let (t0, tprime) = (random_tree(&mut rng, &alphabet), random_tree(&mut rng, &alphabet));
        if member(&a, &t0) || !member(&a, &tprime) {
            continue;
        }
        let (Ok(phi), Ok(s)) = (some_run(&a, &tprime), pathfinder_strategy(&a, &t0)) else {
            return (false, "could not extract a run or a strategy".into());
        };
        match leads(&a, &t0, &s, &tprime, &phi) {
            Ok(v) if t0.label(&v) != tprime.label(&v) => found += 1,
            Ok(v) => return (false, format!("equal labels at {}", v.to_word())),
            Err(e) => return (false, e.to_string()),
        }
    }
    // the deterministic automaton of a tree rejects every other tree
    let tc = tc(1);
    let a = det_pta_for_tree(&tc);
    let t0 = spine_a1();
    let fixed = match (some_run(&a, &tc), pathfinder_strategy(&a, &t0)) {
        (Ok(phi), Ok(s)) => leads(&a, &t0, &s, &tc, &phi).is_ok_and(|v| t0.label(&v) != tc.label(&v)),
        _ => false,
    };
    (found == 10 && fixed, format!("{found} random instances from {attempts} candidates, fixed instance ok={fixed}"))
}
