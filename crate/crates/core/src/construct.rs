//! Closed-form witnesses for cycles, paths and 2-d grids.
//!
//! Cycles and grids with both sides at least 3 get two intervals; paths and
//! grids with a side of length at most 2 get one. Vertex ids follow
//! [`crate::graph`]: cycle vertex `v_i` (1-based) is id `i - 1`, grid
//! vertices are row-major.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Family, GridShape};
use crate::star::{IntervalSet, Witness};

/// Which closed form produced a witness, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum Construction {
    CycleEven { n: usize },
    CycleOdd { n: usize },
    Path { n: usize },
    TwoRowGrid { n1: usize, n2: usize },
    SquareGrid { h: usize },
    GridRestriction { n1: usize, n2: usize, h: usize },
}

/// A witness tagged with the construction that produced it. Serializes as
/// the witness JSON plus the provenance fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constructed {
    #[serde(flatten)]
    pub provenance: Construction,
    #[serde(flatten)]
    pub witness: Witness,
}

fn intervals(pairs: &[(u64, u64)]) -> IntervalSet {
    IntervalSet::from_pairs(pairs).expect("construction intervals are disjoint")
}

/// Two-interval witness for `C_n`, `n >= 3`.
///
/// Even `n` (1-based `i`): `w_i = 3n/2 - (i-1)/2` for odd `i`, `i/2` for even
/// `i`; intervals `[3n/2, 3n/2 + 1]` and `[2n, 2n]`.
///
/// Odd `n`: `w_i = n - i` for even `i`, `n + i` for odd `i < n`, `w_n = n - 1`;
/// intervals `[2n - 1, 2n + 1]` and `[n, n]`.
pub fn cycle_witness(n: usize) -> Result<Witness> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let n64 = n as u64;
    let (weights, set) = if n.is_multiple_of(2) {
        let w = (1..=n64)
            .map(|i| {
                if i % 2 == 1 {
                    n64 + n64 / 2 - (i - 1) / 2
                } else {
                    i / 2
                }
            })
            .collect::<Vec<_>>();
        let base = n64 + n64 / 2;
        (w, intervals(&[(base, base + 1), (2 * n64, 2 * n64)]))
    } else {
        let w = (1..=n64)
            .map(|i| match i {
                i if i == n64 => n64 - 1,
                i if i % 2 == 0 => n64 - i,
                i => n64 + i,
            })
            .collect::<Vec<_>>();
        (w, intervals(&[(n64, n64), (2 * n64 - 1, 2 * n64 + 1)]))
    };
    Ok(Witness::new(weights, set))
}

/// Weight of `(i, j)` in the one-interval weighting of `G_{n1,2}`.
fn two_row_weight(n1: usize, i: usize, j: usize) -> u64 {
    if (i + j).is_multiple_of(2) {
        (2 * n1 - i) as u64
    } else {
        (i + 1) as u64
    }
}

fn two_row_interval(n1: usize) -> IntervalSet {
    let base = 2 * n1 as u64;
    intervals(&[(base, base + 2)])
}

/// One-interval witness for `G_{n1,2}`: `w(i, j) = 2n1 - i` when `i + j` is
/// even, `i + 1` otherwise; interval `[2n1, 2n1 + 2]`.
pub fn grid2_witness(n1: usize) -> Result<Witness> {
    if n1 < 1 {
        return Err(Error::invalid("two-row grid needs n1 >= 1"));
    }
    let weights = (0..n1)
        .flat_map(|i| (0..2).map(move |j| two_row_weight(n1, i, j)))
        .collect::<Vec<_>>();
    Ok(Witness::new(weights, two_row_interval(n1)))
}

/// One-interval witness for `P_n`: row `j = 0` of the `G_{n,2}` weighting.
pub fn path_witness(n: usize) -> Result<Witness> {
    if n < 1 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    let weights = (0..n).map(|i| two_row_weight(n, i, 0)).collect::<Vec<_>>();
    Ok(Witness::new(weights, two_row_interval(n)))
}

/// Weight of `(i, j)` in the two-interval weighting of `G_{h,h}`:
/// `(i+j-1)h/2 + i` when `i + j` is odd, `(2h-1)h - (i+j)h/2 - i + 1` when
/// even.
///
/// Every grid edge joins an odd and an even vertex, and the four edge
/// directions produce the four sums `2h(h-1) + {0, 1, h+1, h+2}`. Without
/// the `-1` / `+1` class offsets the even pair `(h-1, h-3)`, `(h-1, h-1)`
/// would also sum to `2h(h-1) + h + 2`; the offsets leave cross-class sums
/// unchanged and push same-class sums away from both intervals.
fn square_weight(h: usize, i: usize, j: usize) -> u64 {
    let (h, i, j) = (h as u64, i as u64, j as u64);
    if (i + j) % 2 == 1 {
        (i + j - 1) * h / 2 + i
    } else {
        // at least h^2 - h + 2 for i, j < h
        (2 * h - 1) * h - (i + j) * h / 2 - i + 1
    }
}

fn square_intervals(h: usize) -> IntervalSet {
    let h = h as u64;
    let base = 2 * h * (h - 1);
    intervals(&[(base, base + 1), (base + h + 1, base + h + 2)])
}

/// Two-interval witness for the square grid `G_{h,h}`, `h >= 1`.
pub fn square_grid_witness(h: usize) -> Result<Witness> {
    restricted_square(h, h, h)
}

fn restricted_square(n1: usize, n2: usize, h: usize) -> Result<Witness> {
    if n1 < 1 || n2 < 1 || n1 > h || n2 > h {
        return Err(Error::invalid(format!(
            "cannot cut a {n1}x{n2} grid out of {h}x{h}"
        )));
    }
    let weights = (0..n1)
        .flat_map(|i| (0..n2).map(move |j| square_weight(h, i, j)))
        .collect::<Vec<_>>();
    Ok(Witness::new(weights, square_intervals(h)))
}

/// Witness for `G_{n1,n2}` with the fewest intervals known to suffice: one
/// interval when `min(n1, n2) <= 2`, otherwise the `h x h` weighting with
/// `h = max(n1, n2)` restricted to the coordinates `i < n1`, `j < n2`.
pub fn grid_witness(n1: usize, n2: usize) -> Result<Witness> {
    grid_constructed(n1, n2).map(|c| c.witness)
}

fn grid_constructed(n1: usize, n2: usize) -> Result<Constructed> {
    if n1 < 1 || n2 < 1 {
        return Err(Error::invalid(format!(
            "grid sides must be >= 1, got {n1}x{n2}"
        )));
    }
    let (provenance, witness) = match (n1, n2) {
        (1, n) | (n, 1) => (Construction::Path { n }, path_witness(n)?),
        (n, 2) => (Construction::TwoRowGrid { n1, n2 }, grid2_witness(n)?),
        (2, n) => {
            // transpose: vertex (i, j) of G_{2,n} is (j, i) of G_{n,2}
            let weights = (0..2)
                .flat_map(|i| (0..n).map(move |j| two_row_weight(n, j, i)))
                .collect::<Vec<_>>();
            (
                Construction::TwoRowGrid { n1, n2 },
                Witness::new(weights, two_row_interval(n)),
            )
        }
        _ => {
            let h = n1.max(n2);
            let provenance = if n1 == n2 {
                Construction::SquareGrid { h }
            } else {
                Construction::GridRestriction { n1, n2, h }
            };
            (provenance, restricted_square(n1, n2, h)?)
        }
    };
    Ok(Constructed {
        provenance,
        witness,
    })
}

/// Closed-form witness for a family member. Grid dimensions of size 1 are
/// dropped first (this keeps row-major ids unchanged); grids with three or
/// more non-trivial dimensions have no construction.
pub fn construct(family: &Family) -> Result<Constructed> {
    match family {
        Family::Cycle(n) => {
            let provenance = if n.is_multiple_of(2) {
                Construction::CycleEven { n: *n }
            } else {
                Construction::CycleOdd { n: *n }
            };
            Ok(Constructed {
                provenance,
                witness: cycle_witness(*n)?,
            })
        }
        Family::Path(n) => Ok(Constructed {
            provenance: Construction::Path { n: *n },
            witness: path_witness(*n)?,
        }),
        Family::Grid(shape) => construct_grid(shape),
    }
}

fn construct_grid(shape: &GridShape) -> Result<Constructed> {
    let sides: Vec<usize> = shape.dims().iter().copied().filter(|&d| d > 1).collect();
    match sides[..] {
        [] => Ok(Constructed {
            provenance: Construction::Path { n: 1 },
            witness: path_witness(1)?,
        }),
        [n] => Ok(Constructed {
            provenance: Construction::Path { n },
            witness: path_witness(n)?,
        }),
        [n1, n2] => grid_constructed(n1, n2),
        _ => Err(Error::invalid(format!(
            "no closed-form witness for the {}-dimensional grid {:?}",
            sides.len(),
            shape.dims()
        ))),
    }
}

impl Constructed {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization is infallible")
    }
}
