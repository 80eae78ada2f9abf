//! Star-k pairwise compatibility graphs.
//!
//! A graph `G` is a star-k-PCG when there is a star whose leaves are the
//! vertices of `G`, non-negative leaf-edge weights `w`, and `k` pairwise
//! disjoint intervals such that `{u, v}` is an edge exactly when
//! `w(u) + w(v)` falls in one of the intervals.
//!
//! The crate provides:
//!
//! - [`graph`]: graphs, cycle/path/grid generators and grid geometry
//!   (opposed vertices, Q-vertices, induced subgraphs).
//! - [`star`]: weighted stars, interval sets, realization, verification and
//!   the exact minimum-interval oracle for fixed weights.
//! - [`construct`]: closed-form witnesses for cycles, paths and 2-d grids.
//! - [`obstruction`]: interleaving certificates proving that no `k`
//!   intervals suffice for a given weighting.
//! - [`search`]: bounded exhaustive / seeded random search over integer
//!   weightings.
//! - [`cli`]: the `star-pcg` command line front end.

pub mod cli;
pub mod construct;
pub mod error;
pub mod graph;
pub mod obstruction;
pub mod search;
pub mod star;

pub use error::{Error, Result};
pub use graph::{Family, Graph, GridCoord, GridShape};
pub use star::{Interval, IntervalSet, OracleOutcome, VerifyReport, WeightedStar, Witness};
