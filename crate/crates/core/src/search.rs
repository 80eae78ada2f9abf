//! Bounded search over integer weightings for the fewest intervals.
//!
//! Exhaustive mode walks `{0..=W}^n` in lexicographic order (`w_0` most
//! significant); random mode draws `trials` uniform vectors from a seeded
//! ChaCha stream per trial. Either way the work is cut into fixed-size
//! blocks that are evaluated in parallel and merged by `(k, weights)`, so
//! the result does not depend on the number of worker threads.
//!
//! A lower bound found here holds only for weights up to `W`. Integer
//! weights lose no generality, but nothing bounds the weights a witness
//! may need, so a search result is evidence rather than proof.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::star::{min_intervals_for_weights, OracleOutcome, RunCounter, WeightedStar, Witness};

/// Largest `(W + 1)^n` accepted in exhaustive mode.
pub const MAX_EXHAUSTIVE: u64 = 1_000_000_000;

/// Weight vectors per work block.
const BLOCK: u64 = 4096;
/// Blocks evaluated between early-exit checks.
const BLOCKS_PER_ROUND: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_weight: u64,
    pub mode: SearchMode,
    /// Number of random vectors (random mode only).
    pub trials: u64,
    pub seed: u64,
    /// Stop once a witness with at most this many intervals is found.
    pub target_k: Option<usize>,
    /// Worker threads; `0` uses rayon's default.
    pub jobs: usize,
    /// Skip weightings whose vertex 0 is not a lightest vertex. Only allowed
    /// on vertex-transitive graphs, where an automorphism maps any weighting
    /// to one that is kept.
    pub prune_symmetry: bool,
}

impl SearchConfig {
    /// Exhaustive search with the default bound `W = 2n`.
    pub fn for_graph(g: &Graph) -> Self {
        SearchConfig {
            max_weight: 2 * g.n() as u64,
            mode: SearchMode::Exhaustive,
            trials: 100_000,
            seed: 0,
            target_k: None,
            jobs: 0,
            prune_symmetry: false,
        }
    }

    pub fn exhaustive(max_weight: u64) -> Self {
        SearchConfig {
            max_weight,
            mode: SearchMode::Exhaustive,
            trials: 1,
            seed: 0,
            target_k: None,
            jobs: 0,
            prune_symmetry: false,
        }
    }

    pub fn random(max_weight: u64, trials: u64, seed: u64) -> Self {
        SearchConfig {
            max_weight,
            mode: SearchMode::Random,
            trials,
            seed,
            target_k: None,
            jobs: 0,
            prune_symmetry: false,
        }
    }
}

/// Minimum interval count over the explored weightings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// `None` when every explored weighting was infeasible.
    pub best_k: Option<usize>,
    pub infeasible_everywhere: bool,
    pub best_witness: Option<Witness>,
    /// Number of weight vectors evaluated.
    pub explored: u64,
    /// True when every vector in `{0..=W}^n` was covered (up to symmetry).
    pub exhaustive_within_bound: bool,
    /// How many explored vectors needed each `k`.
    #[serde(serialize_with = "histogram_keys")]
    pub histogram: BTreeMap<Option<usize>, u64>,
}

fn histogram_keys<S: Serializer>(
    h: &BTreeMap<Option<usize>, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let named: BTreeMap<String, u64> = h
        .iter()
        .map(|(k, c)| {
            (
                k.map_or_else(|| "infeasible".to_string(), |k| k.to_string()),
                *c,
            )
        })
        .collect();
    named.serialize(s)
}

/// Per-block partial result. `best` is `(k, weights)` ordered so that the
/// smallest is the one to report.
#[derive(Default)]
struct Partial {
    best: Option<(usize, Vec<u64>)>,
    explored: u64,
    histogram: BTreeMap<Option<usize>, u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.explored += other.explored;
        for (k, c) in other.histogram {
            *self.histogram.entry(k).or_default() += c;
        }
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    fn record(&mut self, k: Option<usize>, w: &[u64]) {
        self.explored += 1;
        *self.histogram.entry(k).or_default() += 1;
        if let Some(k) = k {
            let better = match &self.best {
                None => true,
                Some((bk, bw)) => (k, w) < (*bk, bw.as_slice()),
            };
            if better {
                self.best = Some((k, w.to_vec()));
            }
        }
    }
}

/// Searches weightings of `g` for the fewest intervals.
pub fn search_min_k(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    if cfg.max_weight == 0 {
        return Err(Error::invalid("max weight must be at least 1"));
    }
    WeightedStar::new(vec![cfg.max_weight; 2]).check_sums()?;
    let total = match cfg.mode {
        SearchMode::Exhaustive => space_size(n, cfg.max_weight)?,
        SearchMode::Random => {
            if cfg.trials == 0 {
                return Err(Error::invalid("random search needs at least one trial"));
            }
            cfg.trials
        }
    };
    if cfg.prune_symmetry && !is_vertex_transitive(g) {
        return Err(Error::invalid(
            "symmetry pruning needs a vertex-transitive graph",
        ));
    }

    let run = || evaluate(g, cfg, total);
    let merged = if cfg.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(run)
    };

    let finished = merged.explored_all;
    let partial = merged.partial;
    let best_witness = match &partial.best {
        Some((_, w)) => {
            let star = WeightedStar::new(w.clone());
            match min_intervals_for_weights(g, &star)? {
                OracleOutcome::Feasible { intervals, .. } => Some(Witness::new(star, intervals)),
                OracleOutcome::Infeasible { .. } => unreachable!("best vector was feasible"),
            }
        }
        None => None,
    };
    let best_k = partial.best.as_ref().map(|(k, _)| *k);
    Ok(SearchResult {
        best_k,
        infeasible_everywhere: best_k.is_none(),
        best_witness,
        explored: partial.explored,
        exhaustive_within_bound: cfg.mode == SearchMode::Exhaustive && finished,
        histogram: partial.histogram,
    })
}

fn space_size(n: usize, max_weight: u64) -> Result<u64> {
    let base = max_weight
        .checked_add(1)
        .ok_or_else(|| Error::SearchSpace("max weight too large".into()))?;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(base)
            .filter(|&t| t <= MAX_EXHAUSTIVE)
            .ok_or_else(|| {
                Error::SearchSpace(format!(
                    "({} + 1)^{n} exceeds {MAX_EXHAUSTIVE} weight vectors",
                    max_weight
                ))
            })?;
    }
    Ok(total)
}

struct Merged {
    partial: Partial,
    explored_all: bool,
}

fn evaluate(g: &Graph, cfg: &SearchConfig, total: u64) -> Merged {
    let blocks = total.div_ceil(BLOCK);
    let mut acc = Partial::default();
    let mut next = 0;
    while next < blocks {
        let end = (next + BLOCKS_PER_ROUND).min(blocks);
        let round = (next..end)
            .into_par_iter()
            .map(|b| evaluate_block(g, cfg, b * BLOCK, ((b + 1) * BLOCK).min(total)))
            .reduce(Partial::default, Partial::merge);
        acc = acc.merge(round);
        next = end;
        let done = matches!((&acc.best, cfg.target_k), (Some((k, _)), Some(t)) if *k <= t);
        if done {
            break;
        }
    }
    Merged {
        partial: acc,
        explored_all: next == blocks,
    }
}

fn evaluate_block(g: &Graph, cfg: &SearchConfig, start: u64, end: u64) -> Partial {
    let n = g.n();
    let mut counter = RunCounter::new(g);
    let mut out = Partial::default();
    let mut w = vec![0u64; n];
    match cfg.mode {
        SearchMode::Exhaustive => {
            decode(start, cfg.max_weight + 1, &mut w);
            for _ in start..end {
                if !cfg.prune_symmetry || w.iter().all(|&x| x >= w[0]) {
                    let k = counter.min_k(&w);
                    out.record(k, &w);
                }
                increment(&mut w, cfg.max_weight);
            }
        }
        SearchMode::Random => {
            for trial in start..end {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(trial);
                for x in w.iter_mut() {
                    *x = rng.gen_range(0..=cfg.max_weight);
                }
                if !cfg.prune_symmetry || w.iter().all(|&x| x >= w[0]) {
                    let k = counter.min_k(&w);
                    out.record(k, &w);
                }
            }
        }
    }
    out
}

/// Mixed-radix digits of `index`, most significant first.
fn decode(mut index: u64, base: u64, w: &mut [u64]) {
    for x in w.iter_mut().rev() {
        *x = index % base;
        index /= base;
    }
}

/// Lexicographic successor in `{0..=max}^n`, wrapping to all zeros.
fn increment(w: &mut [u64], max: u64) {
    for x in w.iter_mut().rev() {
        if *x < max {
            *x += 1;
            return;
        }
        *x = 0;
    }
}

/// True when every vertex can be mapped onto vertex 0 by an automorphism.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    (0..g.n()).all(|v| automorphism_with(g, 0, v).is_some())
}

/// An automorphism of `g` sending `from` to `to`, found by backtracking.
pub fn automorphism_with(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if g.degree(from) != g.degree(to) {
        return None;
    }
    // map vertices in BFS order from `from` so each new vertex has a mapped neighbor
    let mut order = vec![from];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut head = 0;
    while order.len() < n {
        if head == order.len() {
            let v = (0..n).find(|&v| !seen[v]).expect("unseen vertex");
            seen[v] = true;
            order.push(v);
        }
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[from] = to;
    used[to] = true;
    extend(g, &order, 1, &mut map, &mut used).then_some(map)
}

fn extend(g: &Graph, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for image in 0..g.n() {
        if used[image] || g.degree(image) != g.degree(u) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| g.has_edge(u, p) == g.has_edge(image, map[p]));
        if !consistent {
            continue;
        }
        map[u] = image;
        used[image] = true;
        if extend(g, order, depth + 1, map, used) {
            return true;
        }
        used[image] = false;
        map[u] = usize::MAX;
    }
    false
}

/// A search result with the bound it was computed under.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub edges: usize,
    pub mode: SearchMode,
    pub max_weight: u64,
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub result: SearchResult,
    pub caveat: &'static str,
}

const CAVEAT: &str =
    "lower bounds are evidence for weights in [0, max_weight] only, not a proof over all weights";

pub fn search_report(g: &Graph, cfg: &SearchConfig) -> Result<SearchReport> {
    let result = search_min_k(g, cfg)?;
    Ok(SearchReport {
        n: g.n(),
        edges: g.edge_count(),
        mode: cfg.mode,
        max_weight: cfg.max_weight,
        seed: (cfg.mode == SearchMode::Random).then_some(cfg.seed),
        result,
        caveat: CAVEAT,
    })
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.result;
        writeln!(
            f,
            "graph: n = {}, |E| = {}; {:?} search, weights 0..={}",
            self.n, self.edges, self.mode, self.max_weight
        )?;
        match (r.best_k, &r.best_witness) {
            (Some(k), Some(w)) => {
                writeln!(f, "best k = {k}")?;
                writeln!(f, "weights: {:?}", w.weights.weights())?;
                let iv: Vec<String> = w
                    .intervals
                    .intervals()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                writeln!(f, "intervals: {}", iv.join(" "))?;
            }
            _ => writeln!(f, "no feasible weighting found")?,
        }
        writeln!(f, "explored: {}", r.explored)?;
        for (k, c) in &r.histogram {
            match k {
                Some(k) => writeln!(f, "  k = {k}: {c}")?,
                None => writeln!(f, "  infeasible: {c}")?,
            }
        }
        let scope = if r.exhaustive_within_bound {
            "every weighting within the bound was checked"
        } else {
            "the bound was not covered exhaustively"
        };
        writeln!(f, "{scope}; {}", self.caveat)
    }
}
