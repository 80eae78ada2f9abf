//! Certificates that a fixed weighting cannot realize a graph with `k`
//! intervals.
//!
//! An interleaving certificate is a vertex `x`, neighbors `v_1..v_{k+1}` and
//! non-neighbors `u_1..u_k` of `x` (all distinct from `x`) with
//!
//! ```text
//! w(v_1) <= w(u_1) <= w(v_2) <= .. <= w(u_k) <= w(v_{k+1})
//! ```
//!
//! Then `w(x) + w(u_t)` lies between the edge sums `w(x) + w(v_t)` and
//! `w(x) + w(v_{t+1})`, so those two edges cannot share an interval and the
//! `k + 1` edges at `x` need `k + 1` distinct intervals.

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::graph::{make_cycle, make_grid, Graph, GridCoord, GridShape};
use crate::star::WeightedStar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Interleaving neighbors and non-neighbors of `x`.
    #[serde(rename = "lemma1")]
    Interleaving,
    /// `N(x) = {v, v'}` is a non-edge with `w(v) <= w(x) <= w(v')`: the
    /// non-edge sum `w(v) + w(v')` lies between the two edge sums at `x`.
    #[serde(rename = "cycle-triangle-free")]
    TriangleFree,
}

/// A witness that no `k`-interval set realizes a graph under a weighting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub x: usize,
    /// Neighbors of `x`, weight-sorted.
    pub vs: Vec<usize>,
    /// Non-neighbors of `x`, interleaved with `vs`.
    pub us: Vec<usize>,
    pub k: usize,
}

impl Certificate {
    /// Re-checks every membership and ordering constraint against `g` and
    /// `star`.
    pub fn check(&self, g: &Graph, star: &WeightedStar) -> Result<()> {
        check_size(g.n(), star.len())?;
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        let n = g.n();
        if self.x >= n || self.vs.iter().chain(&self.us).any(|&v| v >= n) {
            return bad("vertex out of range".into());
        }
        let w = |v: usize| star.weight(v);
        match self.kind {
            CertificateKind::Interleaving => {
                if self.k == 0 || self.vs.len() != self.k + 1 || self.us.len() != self.k {
                    return bad(format!(
                        "k = {} needs {} neighbors and {} non-neighbors, got {} and {}",
                        self.k,
                        self.k + 1,
                        self.k,
                        self.vs.len(),
                        self.us.len()
                    ));
                }
                for &v in &self.vs {
                    if !g.has_edge(self.x, v) {
                        return bad(format!("{v} is not a neighbor of {}", self.x));
                    }
                }
                for &u in &self.us {
                    if u == self.x || g.has_edge(self.x, u) {
                        return bad(format!("{u} is {} or a neighbor of it", self.x));
                    }
                }
                if has_duplicates(&self.vs) || has_duplicates(&self.us) {
                    return bad("repeated vertex".into());
                }
                let chain: Vec<usize> = self
                    .vs
                    .iter()
                    .zip(self.us.iter().map(Some).chain([None]))
                    .flat_map(|(&v, u)| std::iter::once(v).chain(u.copied()))
                    .collect();
                if let Some(pair) = chain.windows(2).find(|p| w(p[0]) > w(p[1])) {
                    return bad(format!(
                        "w({}) = {} > w({}) = {}",
                        pair[0],
                        w(pair[0]),
                        pair[1],
                        w(pair[1])
                    ));
                }
                Ok(())
            }
            CertificateKind::TriangleFree => {
                let [v, vp] = self.vs[..] else {
                    return bad("triangle-free certificate needs exactly two neighbors".into());
                };
                if self.k != 1 || !self.us.is_empty() {
                    return bad("triangle-free certificate has k = 1 and no non-neighbors".into());
                }
                let mut want = [v, vp];
                want.sort_unstable();
                if g.neighbors(self.x) != want {
                    return bad(format!("N({}) is not {{{v}, {vp}}}", self.x));
                }
                if g.has_edge(v, vp) {
                    return bad(format!("{{{v}, {vp}}} is an edge"));
                }
                // w(x) + w(v) <= w(v) + w(v') <= w(x) + w(v')
                if !(w(v) <= w(vp) && w(v) <= w(self.x) && w(self.x) <= w(vp)) {
                    return bad(format!(
                        "weights {} <= {} <= {} do not sandwich",
                        w(v),
                        w(self.x),
                        w(vp)
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization is infallible")
    }
}

fn has_duplicates(ids: &[usize]) -> bool {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|p| p[0] == p[1])
}

/// Greedy interleaving search at a single vertex `x`. Taking the lightest
/// admissible vertex at every step never rules out a chain that exists.
pub fn interleaving_at(g: &Graph, star: &WeightedStar, x: usize, k: usize) -> Option<Certificate> {
    let by_weight = |mut ids: Vec<usize>| {
        ids.sort_unstable_by_key(|&v| (star.weight(v), v));
        ids
    };
    let nbrs = by_weight(g.neighbors(x).to_vec());
    let others = by_weight(
        (0..g.n())
            .filter(|&u| u != x && !g.has_edge(x, u))
            .collect(),
    );

    let mut vs = Vec::with_capacity(k + 1);
    let mut us = Vec::with_capacity(k);
    let mut nbr_iter = nbrs.into_iter();
    let mut other_iter = others.into_iter();
    let first = nbr_iter.next()?;
    vs.push(first);
    let mut floor = star.weight(first);
    for _ in 0..k {
        let u = other_iter.find(|&u| star.weight(u) >= floor)?;
        floor = star.weight(u);
        let v = nbr_iter.find(|&v| star.weight(v) >= floor)?;
        floor = star.weight(v);
        us.push(u);
        vs.push(v);
    }
    Some(Certificate {
        kind: CertificateKind::Interleaving,
        x,
        vs,
        us,
        k,
    })
}

/// First vertex (by id) admitting an interleaving certificate for `k`.
pub fn lemma1_certificate(g: &Graph, star: &WeightedStar, k: usize) -> Result<Option<Certificate>> {
    check_size(g.n(), star.len())?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok((0..g.n()).find_map(|x| interleaving_at(g, star, x, k)))
}

/// Certificate that `C_n` (`n >= 5`) cannot be realized with one interval
/// under `star`.
///
/// Returns an interleaving certificate when one exists. Otherwise some `x`
/// with `N(x) = {v, v'}` has `w(v) <= w(x) <= w(v')`, and since `{v, v'}`
/// is a non-edge its sum sits between the two edge sums at `x`.
pub fn cycle_star1_obstruction(n: usize, star: &WeightedStar) -> Result<Certificate> {
    if n < 5 {
        return Err(Error::invalid(format!(
            "cycle obstruction needs n >= 5, got {n}"
        )));
    }
    check_size(n, star.len())?;
    let g = make_cycle(n)?;
    if let Some(cert) = lemma1_certificate(&g, star, 1)? {
        return Ok(cert);
    }
    for x in 0..n {
        let mut vs = g.neighbors(x).to_vec();
        vs.sort_unstable_by_key(|&v| (star.weight(v), v));
        if star.weight(vs[0]) <= star.weight(x) && star.weight(x) <= star.weight(vs[1]) {
            return Ok(Certificate {
                kind: CertificateKind::TriangleFree,
                x,
                vs,
                us: Vec::new(),
                k: 1,
            });
        }
    }
    Err(Error::NoCertificate(format!(
        "no one-interval obstruction for C_{n} under {:?}",
        star.weights()
    )))
}

/// How [`replay_grid4`] arrived at its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum ReplayRoute {
    /// The centre `a = (1,1,1,1)` itself interleaves.
    Centre,
    /// Weight ties among the 81 vertices; the generic search was used.
    TieFallback,
    /// The case analysis on the sorted neighbors `b_1 < .. < b_8` of `a`.
    CaseAnalysis(CaseTrace),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReplayCase {
    /// No non-neighbor of `a` is weighted strictly between `b_1` and `b_8`.
    NoInnerVertex,
    /// All inner non-neighbors lie between `b_gap` and `b_{gap+1}`,
    /// `gap ∈ {1, 2}` (after mirroring).
    LowGap { gap: usize },
    /// As above with `gap ∈ {3, 4}`.
    HighGap { gap: usize },
}

/// Where the chosen `v ∈ N(y)` falls relative to the `b`s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexBand {
    BelowAll,
    InGap,
    AboveAll,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTrace {
    pub case: ReplayCase,
    /// Gaps 5..7 are handled as gaps 3..1 with the weight order reversed.
    pub mirrored: bool,
    /// 1-based ranks `(p, q)` of the non-opposed pair `b_p, b_q`.
    pub pair: (usize, usize),
    /// True when the first listed pair was opposed and the second was used.
    pub alternate_pair: bool,
    pub y: usize,
    pub v: usize,
    pub band: VertexBand,
    /// False when the itemized choice failed validation and the greedy
    /// search at `y` supplied the certificate instead.
    pub itemized_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid4Replay {
    pub certificate: Certificate,
    #[serde(flatten)]
    pub route: ReplayRoute,
}

/// Vertex of `G_{3,3,3,3}` playing the role of `a = (1,1,1,1)`.
pub const GRID4_CENTRE: [usize; 4] = [1, 1, 1, 1];

/// Slot of an itemized chain: the chosen `v`, or `b_r` by 1-based rank
/// (`Second` is the second member of the chosen pair).
#[derive(Clone, Copy)]
enum Slot {
    V,
    B(usize),
    Second,
}

use Slot::{Second, B, V};

type Item = ([Slot; 3], [Slot; 2]);

/// Itemized `(v_1, v_2, v_3; u_1, u_2)` per case and band. `None` when the
/// band cannot occur in that case.
fn itemized(case: ReplayCase, band: VertexBand) -> Option<Item> {
    use ReplayCase::*;
    use VertexBand::*;
    Some(match (case, band) {
        (NoInnerVertex, BelowAll) => ([V, B(2), Second], [B(1), B(3)]),
        (NoInnerVertex, AboveAll) => ([B(2), Second, V], [B(3), B(5)]),
        (NoInnerVertex, InGap) => return None,
        (LowGap { .. }, BelowAll) => ([V, B(4), Second], [B(1), B(5)]),
        (LowGap { .. }, InGap) => ([V, B(4), Second], [B(3), B(5)]),
        (LowGap { .. }, AboveAll) => ([B(4), Second, V], [B(5), B(8)]),
        (HighGap { .. }, BelowAll) => ([V, B(2), Second], [B(1), B(5)]),
        (HighGap { .. }, InGap) => ([B(2), V, Second], [B(3), B(5)]),
        (HighGap { .. }, AboveAll) => ([B(2), Second, V], [B(5), B(8)]),
    })
}

/// Candidate pairs for each case, in the order they are tried.
fn candidate_pairs(case: ReplayCase) -> [(usize, usize); 2] {
    match case {
        ReplayCase::NoInnerVertex => [(2, 4), (2, 5)],
        ReplayCase::LowGap { .. } => [(4, 6), (4, 7)],
        ReplayCase::HighGap { .. } => [(2, 6), (2, 7)],
    }
}

/// Two-interval obstruction for `G_{3,3,3,3}`; see [`replay_grid4`].
pub fn grid4_certificate(star: &WeightedStar) -> Result<Certificate> {
    replay_grid4(star).map(|r| r.certificate)
}

/// Deterministic replay of the argument that `G_{3,3,3,3}` needs three
/// intervals under every weighting, producing a `k = 2` certificate.
///
/// 1. If `a = (1,1,1,1)` interleaves, done.
/// 2. With all weights distinct, sort `N(a)` as `b_1 < .. < b_8`. Since `a`
///    does not interleave, the non-neighbors weighted inside `(b_1, b_8)`
///    all fall in one gap `(b_i, b_{i+1})`, or there are none.
///    Gaps `i >= 5` are mirrored onto `8 - i` by reversing the order.
/// 3. Pick the first non-opposed pair `b_p, b_q` listed for the case, take
///    `y = Q(a; b_p, b_q)` and the smallest-id `v ∈ N(y) \ {b_p, b_q}`, then
///    read the chain off the table for the band `v` falls in.
///
/// Each result is re-checked. An itemized chain that fails the check is
/// recorded in the trace and replaced by the greedy search at `y`.
pub fn replay_grid4(star: &WeightedStar) -> Result<Grid4Replay> {
    let shape = GridShape::new(vec![3; 4]).expect("valid shape");
    let g = make_grid(&shape);
    check_size(g.n(), star.len())?;
    let a = shape.id(&GridCoord::from(GRID4_CENTRE))?;
    let checked = |cert: Certificate, route: ReplayRoute| -> Result<Grid4Replay> {
        cert.check(&g, star)?;
        Ok(Grid4Replay {
            certificate: cert,
            route,
        })
    };

    if let Some(cert) = interleaving_at(&g, star, a, 2) {
        return checked(cert, ReplayRoute::Centre);
    }

    let mut sorted = star.weights().to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        let cert = lemma1_certificate(&g, star, 2)?.ok_or_else(|| {
            Error::NoCertificate("weights have ties and no vertex interleaves".into())
        })?;
        return checked(cert, ReplayRoute::TieFallback);
    }

    let mut b = g.neighbors(a).to_vec();
    b.sort_unstable_by_key(|&v| star.weight(v));
    let w = |v: usize| star.weight(v);
    let (lo, hi) = (w(b[0]), w(b[7]));
    let mut gaps = (0..g.n())
        .filter(|&u| u != a && !g.has_edge(a, u))
        .filter(|&u| lo < w(u) && w(u) < hi)
        .map(|u| b.iter().filter(|&&bv| w(bv) < w(u)).count());
    let gap = match gaps.next() {
        None => None,
        Some(first) => {
            if gaps.any(|other| other != first) {
                return Err(Error::NoCertificate(
                    "inner non-neighbors in two gaps, yet the centre does not interleave".into(),
                ));
            }
            Some(first)
        }
    };

    let mirrored = gap.is_some_and(|i| i >= 5);
    if mirrored {
        b.reverse();
    }
    // rank order in the (possibly mirrored) view
    let key = |v: usize| -> i128 {
        if mirrored {
            -(w(v) as i128)
        } else {
            w(v) as i128
        }
    };
    let case = match gap.map(|i| if mirrored { 8 - i } else { i }) {
        None => ReplayCase::NoInnerVertex,
        Some(i @ 1..=2) => ReplayCase::LowGap { gap: i },
        Some(i) => ReplayCase::HighGap { gap: i },
    };
    let rank = |r: usize| b[r - 1];

    let coord = |v: usize| shape.coord(v);
    let ca = coord(a);
    let candidates = candidate_pairs(case);
    let (pair, alternate_pair) =
        if !shape.opposed(&coord(rank(candidates[0].0)), &coord(rank(candidates[0].1))) {
            (candidates[0], false)
        } else {
            (candidates[1], true)
        };
    let (bp, bq) = (rank(pair.0), rank(pair.1));
    let y = shape.id(&shape.q_vertex(&ca, &coord(bp), &coord(bq))?)?;
    let v = *g
        .neighbors(y)
        .iter()
        .find(|&&v| v != bp && v != bq)
        .expect("y has neighbors outside N(a)");

    let band = if key(v) < key(rank(1)) {
        VertexBand::BelowAll
    } else if key(v) > key(rank(8)) {
        VertexBand::AboveAll
    } else {
        VertexBand::InGap
    };
    let resolve = |s: Slot| match s {
        V => v,
        B(r) => rank(r),
        Second => bq,
    };
    let itemized_cert = itemized(case, band).map(|(vs, us)| {
        let mut vs: Vec<usize> = vs.iter().map(|&s| resolve(s)).collect();
        let mut us: Vec<usize> = us.iter().map(|&s| resolve(s)).collect();
        if mirrored {
            vs.reverse();
            us.reverse();
        }
        Certificate {
            kind: CertificateKind::Interleaving,
            x: y,
            vs,
            us,
            k: 2,
        }
    });
    let mut trace = CaseTrace {
        case,
        mirrored,
        pair,
        alternate_pair,
        y,
        v,
        band,
        itemized_valid: true,
    };
    if let Some(cert) = itemized_cert.filter(|c| c.check(&g, star).is_ok()) {
        return checked(cert, ReplayRoute::CaseAnalysis(trace));
    }
    trace.itemized_valid = false;
    let cert = interleaving_at(&g, star, y, 2)
        .ok_or_else(|| Error::NoCertificate(format!("no interleaving at y = {y}")))?;
    checked(cert, ReplayRoute::CaseAnalysis(trace))
}
