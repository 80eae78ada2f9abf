//! Test-only oracles, independent of the library's run-counting path.

#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use star_pcg::Graph;

/// Pairs `{i, j}` with `w_i + w_j` in one of `intervals`, by direct scan.
pub fn naive_realize(n: usize, w: &[u64], intervals: &[(u64, u64)]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = w[i] + w[j];
            if intervals.iter().any(|&(lo, hi)| lo <= s && s <= hi) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Fewest intervals (endpoints drawn from the pair-sum values) whose union
/// realizes `g` under `w`, found by enumerating interval sets of growing
/// size. `None` when no interval set of any size works.
///
/// Intervals covering a non-edge sum are skipped since they can never be
/// part of a realizing set.
pub fn naive_min_intervals(g: &Graph, w: &[u64]) -> Option<(usize, Vec<(u64, u64)>)> {
    let n = g.n();
    let target: Vec<(usize, usize)> = g.edges().collect();
    let mut values: Vec<u64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| w[i] + w[j])
        .collect();
    values.sort_unstable();
    values.dedup();
    let non_edge_sums: Vec<u64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.has_edge(i, j))
        .map(|(i, j)| w[i] + w[j])
        .collect();

    for k in 0..=values.len() {
        let mut chosen = Vec::new();
        if let Some(found) = pick(k, 0, &values, &non_edge_sums, &mut chosen, &mut |set| {
            naive_realize(n, w, set) == target
        }) {
            return Some((k, found));
        }
    }
    None
}

type Accept<'a> = dyn FnMut(&[(u64, u64)]) -> bool + 'a;

fn pick(
    k: usize,
    start: usize,
    values: &[u64],
    forbidden: &[u64],
    chosen: &mut Vec<(u64, u64)>,
    accept: &mut Accept<'_>,
) -> Option<Vec<(u64, u64)>> {
    if chosen.len() == k {
        return accept(chosen).then(|| chosen.clone());
    }
    for a in start..values.len() {
        for b in a..values.len() {
            let (lo, hi) = (values[a], values[b]);
            if forbidden.iter().any(|&s| lo <= s && s <= hi) {
                break;
            }
            chosen.push((lo, hi));
            if let Some(found) = pick(k, b + 1, values, forbidden, chosen, accept) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

/// True if some set of at most `k` intervals with pair-sum endpoints
/// realizes `g`.
pub fn naive_realizable_with(g: &Graph, w: &[u64], k: usize) -> bool {
    naive_min_intervals(g, w).is_some_and(|(m, _)| m <= k)
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_weights<R: Rng>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// `n` pairwise distinct weights from `0..=max`.
pub fn distinct_weights<R: Rng>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    sample(rng, max as usize + 1, n)
        .into_iter()
        .map(|x| x as u64)
        .collect()
}
