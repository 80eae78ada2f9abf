//! Weighted stars, interval sets and the exact minimum-interval oracle.
//!
//! In a star the distance between two leaves is the sum of their two edge
//! weights, so a witness `(w, I)` realizes the graph with edge set
//! `{ {i, j} : w_i + w_j ∈ I_1 ∪ .. ∪ I_k }`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::graph::Graph;

/// Leaf-edge weights, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedStar(Vec<u64>);

impl WeightedStar {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightedStar(weights)
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.0[v]
    }

    /// Weights of `subset`, in the order given.
    pub fn restrict(&self, subset: &[usize]) -> WeightedStar {
        WeightedStar(subset.iter().map(|&v| self.0[v]).collect())
    }

    /// Fails if some leaf-to-leaf distance does not fit in a `u64`.
    pub fn check_sums(&self) -> Result<()> {
        let (mut a, mut b) = (0u64, 0u64);
        for &w in &self.0 {
            if w > a {
                b = a;
                a = w;
            } else if w > b {
                b = w;
            }
        }
        a.checked_add(b)
            .map(|_| ())
            .ok_or_else(|| Error::Overflow(format!("weights {a} + {b} exceed u64")))
    }
}

impl From<Vec<u64>> for WeightedStar {
    fn from(v: Vec<u64>) -> Self {
        WeightedStar(v)
    }
}

/// Closed integer interval `[lo, hi]`, serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 2]", into = "[u64; 2]")]
pub struct Interval {
    lo: u64,
    hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: u64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl TryFrom<[u64; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [u64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [u64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Pairwise disjoint intervals in strictly increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalSet(Vec<Interval>);

impl IntervalSet {
    /// Sorts the intervals and rejects overlapping ones.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        intervals.sort();
        for pair in intervals.windows(2) {
            if pair[0].hi >= pair[1].lo {
                return Err(Error::invalid(format!(
                    "intervals {} and {} overlap",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(IntervalSet(intervals))
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()
            .and_then(IntervalSet::new)
    }

    pub fn empty() -> Self {
        IntervalSet(Vec::new())
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    /// Number of intervals, `k`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        // first interval whose upper end is >= x
        let t = self.0.partition_point(|i| i.hi < x);
        t < self.0.len() && self.0[t].lo <= x
    }

    pub fn to_pairs(&self) -> Vec<(u64, u64)> {
        self.0.iter().map(|i| (i.lo, i.hi)).collect()
    }
}

impl TryFrom<Vec<Interval>> for IntervalSet {
    type Error = Error;

    fn try_from(v: Vec<Interval>) -> Result<Self> {
        IntervalSet::new(v)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(s: IntervalSet) -> Self {
        s.0
    }
}

/// A weighted star together with its distance intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub weights: WeightedStar,
    pub intervals: IntervalSet,
}

impl Witness {
    pub fn new(weights: impl Into<WeightedStar>, intervals: IntervalSet) -> Self {
        Witness {
            weights: weights.into(),
            intervals,
        }
    }

    /// Number of intervals.
    pub fn k(&self) -> usize {
        self.intervals.len()
    }

    /// The graph on `n` vertices realized by this witness.
    pub fn realize(&self, n: usize) -> Result<Graph> {
        check_size(n, self.weights.len())?;
        self.weights.check_sums()?;
        let w = self.weights.weights();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.intervals.contains(w[i] + w[j]) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    /// Compares the realized graph against `g`.
    pub fn verify(&self, g: &Graph) -> Result<VerifyReport> {
        let realized = self.realize(g.n())?;
        let mut missing = Vec::new();
        let mut extra = Vec::new();
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                match (g.has_edge(i, j), realized.has_edge(i, j)) {
                    (true, false) => missing.push([i, j]),
                    (false, true) => extra.push([i, j]),
                    _ => {}
                }
            }
        }
        Ok(VerifyReport {
            equal: missing.is_empty() && extra.is_empty(),
            missing,
            extra,
        })
    }

    /// Restriction to `subset`: weights of the kept leaves, same intervals.
    pub fn restrict(&self, subset: &[usize]) -> Witness {
        Witness {
            weights: self.weights.restrict(subset),
            intervals: self.intervals.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization is infallible")
    }
}

/// Result of comparing a realized graph with a target graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub equal: bool,
    /// Edges of the target that the witness does not realize.
    pub missing: Vec<[usize; 2]>,
    /// Realized edges that are not in the target.
    pub extra: Vec<[usize; 2]>,
}

/// Minimum number of intervals for a fixed weighting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// `intervals` is the canonical tight set with exactly `k` intervals.
    Feasible { k: usize, intervals: IntervalSet },
    /// `edge` and `non_edge` have the same weight sum, so no interval set
    /// separates them.
    Infeasible {
        edge: (usize, usize),
        non_edge: (usize, usize),
    },
}

impl OracleOutcome {
    pub fn min_k(&self) -> Option<usize> {
        match self {
            OracleOutcome::Feasible { k, .. } => Some(*k),
            OracleOutcome::Infeasible { .. } => None,
        }
    }

    /// True when no interval set with at most `k` intervals realizes the graph.
    pub fn needs_more_than(&self, k: usize) -> bool {
        self.min_k().is_none_or(|m| m > k)
    }
}

/// Exact minimum interval count for `g` under the fixed weighting `star`.
///
/// All pair sums are sorted and equal sums merged into one point. A point
/// carrying both an edge and a non-edge is fatal. Otherwise every maximal
/// run of edge points must lie in its own interval and one interval per
/// run suffices, so `k` is the number of runs.
pub fn min_intervals_for_weights(g: &Graph, star: &WeightedStar) -> Result<OracleOutcome> {
    check_size(g.n(), star.len())?;
    star.check_sums()?;
    let w = star.weights();
    let n = g.n();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((w[i] + w[j], i, j));
        }
    }
    pairs.sort_unstable();

    let mut runs: Vec<Interval> = Vec::new();
    let mut in_run = false;
    let mut start = 0;
    while start < pairs.len() {
        let sum = pairs[start].0;
        let end = start + pairs[start..].partition_point(|p| p.0 == sum);
        let group = &pairs[start..end];
        let first_edge = group.iter().find(|p| g.has_edge(p.1, p.2));
        let first_non_edge = group.iter().find(|p| !g.has_edge(p.1, p.2));
        match (first_edge, first_non_edge) {
            (Some(e), Some(ne)) => {
                return Ok(OracleOutcome::Infeasible {
                    edge: (e.1, e.2),
                    non_edge: (ne.1, ne.2),
                })
            }
            (Some(_), None) => {
                if in_run {
                    runs.last_mut().expect("open run").hi = sum;
                } else {
                    runs.push(Interval::point(sum));
                    in_run = true;
                }
            }
            _ => in_run = false,
        }
        start = end;
    }
    Ok(OracleOutcome::Feasible {
        k: runs.len(),
        intervals: IntervalSet(runs),
    })
}

/// Allocation-free variant of [`min_intervals_for_weights`] for hot loops:
/// reuses its buffers and only reports the count (`None` = infeasible).
pub(crate) struct RunCounter {
    n: usize,
    edge: Vec<bool>,
    buf: Vec<(u64, bool)>,
}

impl RunCounter {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.n();
        RunCounter {
            n,
            edge: g.adjacency_matrix(),
            buf: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        }
    }

    /// Caller guarantees `w.len() == n` and that pair sums fit in `u64`.
    pub(crate) fn min_k(&mut self, w: &[u64]) -> Option<usize> {
        debug_assert_eq!(w.len(), self.n);
        self.buf.clear();
        for i in 0..self.n {
            for j in i + 1..self.n {
                self.buf.push((w[i] + w[j], self.edge[i * self.n + j]));
            }
        }
        self.buf.sort_unstable();
        let mut k = 0;
        let mut in_run = false;
        let mut t = 0;
        while t < self.buf.len() {
            let (sum, is_edge) = self.buf[t];
            // (sum, false) sorts before (sum, true): a mixed group shows up
            // as a non-edge immediately followed by an edge with equal sum
            let mut end = t + 1;
            while end < self.buf.len() && self.buf[end].0 == sum {
                if self.buf[end].1 != is_edge {
                    return None;
                }
                end += 1;
            }
            if is_edge {
                if !in_run {
                    k += 1;
                    in_run = true;
                }
            } else {
                in_run = false;
            }
            t = end;
        }
        Some(k)
    }
}

/// Witness with `w_i = 2^i` and one singleton interval per edge sum. Every
/// pair sum is distinct, so this realizes any graph with `k = |E|`.
pub fn universal_witness(g: &Graph) -> Result<Witness> {
    let weights = (0..g.n())
        .map(|i| {
            1u64.checked_shl(i as u32).ok_or_else(|| {
                Error::Overflow(format!(
                    "2^{i} does not fit in u64; n = {} is too large",
                    g.n()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let star = WeightedStar(weights);
    star.check_sums()?;
    let mut sums: Vec<u64> = g.edges().map(|(u, v)| star.0[u] + star.0[v]).collect();
    sums.sort_unstable();
    let intervals = IntervalSet::new(sums.into_iter().map(Interval::point).collect())?;
    Ok(Witness::new(star, intervals))
}
