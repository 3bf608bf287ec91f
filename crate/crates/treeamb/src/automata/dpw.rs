//! Deterministic parity word automata and the latest-appearance-record conjunction gadget.

use std::collections::{BTreeMap, HashMap, VecDeque};

/// A deterministic parity word automaton whose letters are color tuples.
/// The color of a run position is the color of the state reached after reading it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpw {
    pub letters: Vec<Vec<u32>>,
    pub init: usize,
    /// `delta[state][letter]`, total.
    pub delta: Vec<Vec<usize>>,
    pub colors: Vec<u32>,
}

impl Dpw {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn letter_index(&self, letter: &[u32]) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// Maps each color to the least color with the same relative order and parity.
/// The returned table is indexed by the original color, up to the largest one given.
pub fn compress_colors(colors: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let top = distinct.last().copied().unwrap_or(0) as usize;
    let mut table = vec![0u32; top + 1];
    let mut cur: Option<u32> = None;
    for &c in &distinct {
        let next = match cur {
            None => c % 2,
            Some(prev) if prev % 2 == c % 2 => prev,
            Some(prev) => prev + 1,
        };
        table[c as usize] = next;
        cur = Some(next);
    }
    // colors absent from the input keep a parity-correct image for totality
    for c in 0..=top {
        if !distinct.contains(&(c as u32)) {
            let below = distinct.iter().rev().find(|&&d| d < c as u32).map(|&d| table[d as usize]);
            table[c] = match below {
                Some(b) if b % 2 == (c as u32) % 2 => b,
                Some(b) => b + 1,
                None => (c as u32) % 2,
            };
        }
    }
    table
}

/// Record over the entries `(coordinate, color)`, listed by coordinate tag from most to least
/// recently touched. Each coordinate's entries appear in ascending color order, so the tag
/// sequence determines the record.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Record {
    tags: Vec<u8>,
    hit: Option<usize>,
}

/// Deterministic parity automaton over `{0..d1} × {0..d2}` accepting the words whose
/// coordinatewise maximal infinitely-recurring colors are both even.
pub fn conjunction_dpw(d1: u32, d2: u32) -> Dpw {
    let dims = [d1 as usize + 1, d2 as usize + 1];
    let letters: Vec<Vec<u32>> = (0..=d1).flat_map(|a| (0..=d2).map(move |b| vec![a, b])).collect();
    let mut tags = vec![0u8; dims[0]];
    tags.extend(std::iter::repeat_n(1u8, dims[1]));
    let start = Record { tags, hit: None };

    let step = |r: &Record, letter: &[u32]| -> Record {
        // entry i of coordinate c holds color (number of earlier c-tags)
        let mut seen = [0usize; 2];
        let mut touched = Vec::new();
        let mut rest = Vec::new();
        let mut hit = 0;
        for (pos, &tag) in r.tags.iter().enumerate() {
            let color = seen[tag as usize];
            seen[tag as usize] += 1;
            if color as u32 <= letter[tag as usize] {
                touched.push(tag);
                hit = pos;
            } else {
                rest.push(tag);
            }
        }
        touched.extend(rest);
        Record { tags: touched, hit: Some(hit) }
    };
    let color = |r: &Record| -> u32 {
        match r.hit {
            None => 0,
            Some(h) => {
                let mut count = [0usize; 2];
                for &tag in &r.tags[..=h] {
                    count[tag as usize] += 1;
                }
                // a coordinate with no entry in the prefix has max color below zero: impossible,
                // since every letter touches color 0 of both coordinates
                let good = count.iter().all(|&n| n >= 1 && (n - 1) % 2 == 0);
                2 * h as u32 + u32::from(!good)
            }
        }
    };

    let mut index: HashMap<Record, usize> = HashMap::new();
    let mut records = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(letters.len());
        for letter in &letters {
            let n = step(&records[i], letter);
            let id = *index.entry(n.clone()).or_insert_with(|| {
                records.push(n);
                queue.push_back(records.len() - 1);
                records.len() - 1
            });
            row.push(id);
        }
        if delta.len() <= i {
            delta.resize(i + 1, Vec::new());
        }
        delta[i] = row;
    }
    let colors = records.iter().map(color).collect();
    Dpw { letters, init: 0, delta, colors }
}

/// Whether the lasso `stem · cycle^ω` over color tuples satisfies "every coordinate's
/// maximal infinitely-recurring color is even".
pub fn lasso_accepts(cycle: &[Vec<u32>]) -> bool {
    let k = cycle.first().map_or(0, |l| l.len());
    (0..k).all(|i| cycle.iter().map(|l| l[i]).max().unwrap_or(0) % 2 == 0)
}

/// Runs `d` on `stem · cycle^ω` and reports whether the maximal recurring state color is even.
pub fn dpw_accepts_lasso(d: &Dpw, stem: &[Vec<u32>], cycle: &[Vec<u32>]) -> bool {
    let idx = |l: &Vec<u32>| d.letter_index(l).expect("letter in the automaton's alphabet");
    let mut s = stem.iter().fold(d.init, |s, l| d.delta[s][idx(l)]);
    // iterate the cycle until the state at the cycle start repeats
    let mut starts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut maxes = Vec::new();
    loop {
        if let Some(&first) = starts.get(&s) {
            return maxes[first..].iter().copied().max().unwrap_or(0) % 2 == 0;
        }
        starts.insert(s, maxes.len());
        let mut m = 0;
        for l in cycle {
            s = d.delta[s][idx(l)];
            m = m.max(d.colors[s]);
        }
        maxes.push(m);
    }
}

/// Conjunction of `k` parity conditions by iterated binary conjunction.
/// Stage `j` reads the compressed color of stage `j−1` (or coordinate 0) together with coordinate `j`.
#[derive(Debug, Clone)]
pub struct ParityConjunction {
    pub dims: Vec<u32>,
    stages: Vec<Dpw>,
    /// Compression table applied to the previous stage's output color before stage `j` reads it.
    feeds: Vec<Vec<u32>>,
}

impl ParityConjunction {
    pub fn new(dims: &[u32]) -> Self {
        let mut stages = Vec::new();
        let mut feeds = Vec::new();
        if dims.len() >= 2 {
            let mut prev_max = dims[0];
            let mut feed: Vec<u32> = (0..=dims[0]).collect();
            for &d in &dims[1..] {
                let dpw = conjunction_dpw(prev_max, d);
                feeds.push(feed);
                feed = compress_colors(&dpw.colors);
                prev_max = feed.iter().copied().max().unwrap_or(0);
                stages.push(dpw);
            }
        }
        ParityConjunction { dims: dims.to_vec(), stages, feeds }
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn initial(&self) -> Vec<usize> {
        self.stages.iter().map(|d| d.init).collect()
    }

    /// Successor after reading one color per coordinate.
    pub fn step(&self, state: &[usize], colors: &[u32]) -> Vec<usize> {
        let mut next = Vec::with_capacity(self.stages.len());
        let mut carried = colors.first().copied().unwrap_or(0);
        for (j, dpw) in self.stages.iter().enumerate() {
            let left = self.feeds[j][carried as usize];
            let letter = (left * (self.dims[j + 1] + 1) + colors[j + 1]) as usize;
            let s = dpw.delta[state[j]][letter];
            next.push(s);
            carried = dpw.colors[s];
        }
        next
    }

    /// Parity color of a position whose record is `state` and whose own colors are `colors`.
    pub fn color(&self, state: &[usize], colors: &[u32]) -> u32 {
        match self.stages.last() {
            Some(dpw) => dpw.colors[*state.last().expect("one state per stage")],
            None => colors.first().copied().unwrap_or(0),
        }
    }

    pub fn max_color(&self) -> u32 {
        match self.stages.last() {
            Some(d) => d.max_color(),
            None => self.dims.first().copied().unwrap_or(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_lassos() {
        let d = conjunction_dpw(2, 2);
        assert!(dpw_accepts_lasso(&d, &[], &[vec![0, 0]]));
        assert!(!dpw_accepts_lasso(&d, &[], &[vec![1, 0], vec![0, 0]]));
        assert!(dpw_accepts_lasso(&d, &[], &[vec![2, 1], vec![0, 2]]));
    }

    #[test]
    fn compression_keeps_order_and_parity() {
        let t = compress_colors(&[3, 5, 6, 9]);
        assert_eq!((t[3], t[5], t[6], t[9]), (1, 1, 2, 3));
        let t = compress_colors(&[0, 2, 4]);
        assert_eq!((t[0], t[2], t[4]), (0, 0, 0));
    }

    /// `(stem, cycle)` pairs.
    type Lasso = (Vec<Vec<u32>>, Vec<Vec<u32>>);

    fn lassos(len: usize, dims: &[u32]) -> Vec<Lasso> {
        let mut letters: Vec<Vec<u32>> = vec![vec![]];
        for &d in dims {
            letters = letters
                .into_iter()
                .flat_map(|l| {
                    (0..=d).map(move |c| {
                        let mut l = l.clone();
                        l.push(c);
                        l
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for total in 1..=len {
            for cyc in 1..=total {
                let mut words: Vec<Vec<Vec<u32>>> = vec![vec![]];
                for _ in 0..total {
                    words = words
                        .into_iter()
                        .flat_map(|w| {
                            letters.iter().map(move |l| {
                                let mut w = w.clone();
                                w.push(l.clone());
                                w
                            })
                        })
                        .collect();
                }
                for w in words {
                    let (s, c) = w.split_at(total - cyc);
                    out.push((s.to_vec(), c.to_vec()));
                }
            }
        }
        out
    }

    #[test]
    fn three_way_conjunction_matches_lassos() {
        let pc = ParityConjunction::new(&[1, 2, 1]);
        for (stem, cycle) in lassos(3, &[1, 2, 1]) {
            let mut s = pc.initial();
            for l in &stem {
                s = pc.step(&s, l);
            }
            let mut starts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut maxes = Vec::new();
            let verdict = loop {
                if let Some(&f) = starts.get(&s) {
                    break maxes[f..].iter().copied().max().unwrap_or(0) % 2 == 0;
                }
                starts.insert(s.clone(), maxes.len());
                let mut m = 0;
                for l in &cycle {
                    s = pc.step(&s, l);
                    m = m.max(pc.color(&s, l));
                }
                maxes.push(m);
            };
            assert_eq!(verdict, lasso_accepts(&cycle), "stem {stem:?} cycle {cycle:?}");
        }
    }
}
