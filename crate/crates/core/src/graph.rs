//! Simple undirected graphs, family generators and grid geometry.
//!
//! Vertices are `0..n`. Grid vertices are numbered row-major: the flat id of
//! `(i_1, .., i_d)` is its mixed-radix value with `i_1` most significant.

use std::fmt::{self, Write as _};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Wire form: `{"n": <int>, "edges": [[u, v], ...]}` with `u < v`, sorted.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {{{u}, {v}}} out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Dense row-major adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let n = self.n();
        let mut m = vec![false; n * n];
        for (u, v) in self.edges() {
            m[u * n + v] = true;
            m[v * n + u] = true;
        }
        m
    }

    /// Induced subgraph on `subset`; vertex `subset[t]` becomes `t`.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut relabel = vec![usize::MAX; n];
        for (t, &v) in subset.iter().enumerate() {
            if v >= n {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if relabel[v] != usize::MAX {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
            relabel[v] = t;
        }
        let edges = subset.iter().enumerate().flat_map(|(t, &v)| {
            let relabel = &relabel;
            self.adj[v].iter().filter_map(move |&w| {
                (relabel[w] != usize::MAX && relabel[w] > t).then_some((t, relabel[w]))
            })
        });
        Graph::from_edges(subset.len(), edges.collect::<Vec<_>>())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    /// Graphviz DOT. `labels`, when given, must have one entry per vertex.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            match labels.and_then(|l| l.get(v)) {
                Some(label) => writeln!(out, "  {v} [label=\"{label}\"];").unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The cycle `C_n`: edges `{i, (i + 1) mod n}`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path `P_n` on vertices `0..n`.
pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// The grid graph on `[n_1] x .. x [n_d]`: two vertices are adjacent when
/// they differ in exactly one coordinate, by exactly 1.
pub fn make_grid(shape: &GridShape) -> Graph {
    let mut edges = Vec::new();
    for id in 0..shape.len() {
        for dim in 0..shape.dims().len() {
            let stride = shape.stride(dim);
            if (id / stride) % shape.dims()[dim] + 1 < shape.dims()[dim] {
                edges.push((id, id + stride));
            }
        }
    }
    Graph::from_edges(shape.len(), edges).expect("grid edges are in range")
}

/// Dimension vector `[n_1, .., n_d]` of a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridShape {
    dims: Vec<usize>,
}

impl GridShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("grid needs at least one dimension"));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::invalid(format!("grid dimension {pos} has size 0")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Overflow(format!("grid {dims:?} has too many vertices")))?;
        Ok(GridShape { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn stride(&self, dim: usize) -> usize {
        self.dims[dim + 1..].iter().product()
    }

    pub fn contains(&self, c: &GridCoord) -> bool {
        c.len() == self.dims.len() && c.iter().zip(&self.dims).all(|(&x, &n)| x < n)
    }

    pub fn coord(&self, id: usize) -> GridCoord {
        assert!(id < self.len(), "vertex {id} outside grid {:?}", self.dims);
        let mut rest = id;
        let mut c = vec![0; self.dims.len()];
        for dim in (0..self.dims.len()).rev() {
            c[dim] = rest % self.dims[dim];
            rest /= self.dims[dim];
        }
        GridCoord(c)
    }

    pub fn id(&self, c: &GridCoord) -> Result<usize> {
        self.check(c)?;
        Ok(c.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &n)| acc * n + x))
    }

    fn check(&self, c: &GridCoord) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "coordinate {c} is not in grid {:?}",
                self.dims
            )))
        }
    }

    /// `u` and `v` differ in exactly one coordinate, by exactly 2.
    pub fn opposed(&self, u: &GridCoord, v: &GridCoord) -> bool {
        single_difference(u, v).is_some_and(|(_, delta)| delta.abs() == 2)
    }

    /// The unique vertex `x != u` with `N(u) ∩ N(x) = {v, v'}`, for two
    /// distinct, non-opposed neighbors `v`, `v'` of `u`. It is `u` moved by
    /// both unit displacements `u -> v` and `u -> v'`.
    pub fn q_vertex(&self, u: &GridCoord, v: &GridCoord, v_prime: &GridCoord) -> Result<GridCoord> {
        self.check(u)?;
        self.check(v)?;
        self.check(v_prime)?;
        if v == v_prime {
            return Err(Error::invalid(format!(
                "q-vertex needs two distinct neighbors, got {v} twice"
            )));
        }
        if self.opposed(v, v_prime) {
            return Err(Error::invalid(format!("{v} and {v_prime} are opposed")));
        }
        let step = |w: &GridCoord| match single_difference(u, w) {
            Some((dim, delta)) if delta.abs() == 1 => Ok((dim, delta)),
            _ => Err(Error::invalid(format!("{w} is not a neighbor of {u}"))),
        };
        let (d1, s1) = step(v)?;
        let (d2, s2) = step(v_prime)?;
        let mut x = u.0.clone();
        x[d1] = (x[d1] as i64 + s1) as usize;
        x[d2] = (x[d2] as i64 + s2) as usize;
        Ok(GridCoord(x))
    }
}

/// `Some((dim, v[dim] - u[dim]))` when `u` and `v` differ in exactly one
/// coordinate.
fn single_difference(u: &GridCoord, v: &GridCoord) -> Option<(usize, i64)> {
    if u.len() != v.len() {
        return None;
    }
    let mut diff = None;
    for (dim, (&a, &b)) in u.iter().zip(v.iter()).enumerate() {
        if a != b {
            if diff.is_some() {
                return None;
            }
            diff = Some((dim, b as i64 - a as i64));
        }
    }
    diff
}

/// A grid coordinate `(i_1, .., i_d)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridCoord(pub Vec<usize>);

impl Deref for GridCoord {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for GridCoord {
    fn from(v: Vec<usize>) -> Self {
        GridCoord(v)
    }
}

impl<const D: usize> From<[usize; D]> for GridCoord {
    fn from(v: [usize; D]) -> Self {
        GridCoord(v.to_vec())
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (t, x) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The graph families the generators and constructions know about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Grid(GridShape),
}

impl Family {
    /// Parses `cycle N`, `path N` or `grid N1 .. Nd`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let single = |what: &str| match params {
            [n] => Ok(*n),
            _ => Err(Error::invalid(format!(
                "{what} takes exactly one size, got {params:?}"
            ))),
        };
        match name {
            "cycle" => {
                let n = single("cycle")?;
                if n < 3 {
                    return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
                }
                Ok(Family::Cycle(n))
            }
            "path" => {
                let n = single("path")?;
                if n < 1 {
                    return Err(Error::invalid("path needs n >= 1"));
                }
                Ok(Family::Path(n))
            }
            "grid" => Ok(Family::Grid(GridShape::new(params.to_vec())?)),
            other => Err(Error::invalid(format!(
                "unknown family {other:?} (expected cycle, path or grid)"
            ))),
        }
    }

    pub fn graph(&self) -> Graph {
        match self {
            Family::Cycle(n) => make_cycle(*n).expect("validated at construction"),
            Family::Path(n) => make_path(*n).expect("validated at construction"),
            Family::Grid(shape) => make_grid(shape),
        }
    }

    /// Per-vertex display labels (grid coordinates), if the family has them.
    pub fn labels(&self) -> Option<Vec<String>> {
        match self {
            Family::Grid(shape) => Some(
                (0..shape.len())
                    .map(|id| shape.coord(id).to_string())
                    .collect(),
            ),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(dims: &[usize]) -> GridShape {
        GridShape::new(dims.to_vec()).unwrap()
    }

    fn assert_simple(g: &Graph) {
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                assert_ne!(u, v, "loop at {u}");
                assert!(v < g.n());
                assert!(g.has_edge(v, u), "asymmetric edge {u}-{v}");
            }
        }
    }

    #[test]
    fn cycle_examples() {
        let c3 = make_cycle(3).unwrap();
        assert_eq!(c3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        let c4 = make_cycle(4).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let c8 = make_cycle(8).unwrap();
        assert_eq!((c8.n(), c8.edge_count()), (8, 8));
        assert!(matches!(make_cycle(2), Err(Error::InvalidArgument(_))));
    }

    /// Edge count of a grid by brute force over all vertex pairs.
    fn grid_edges_by_pairs(s: &GridShape) -> usize {
        let mut count = 0;
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                let (ca, cb) = (s.coord(a), s.coord(b));
                let l1: usize = ca.iter().zip(cb.iter()).map(|(&x, &y)| x.abs_diff(y)).sum();
                if l1 == 1 {
                    count += 1;
                }
            }
        }
        count
    }

    fn grid_edge_formula(dims: &[usize]) -> usize {
        (0..dims.len())
            .map(|j| {
                (dims[j] - 1)
                    * dims
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != j)
                        .map(|(_, &n)| n)
                        .product::<usize>()
            })
            .sum()
    }

    #[test]
    fn grid_examples() {
        let g = make_grid(&shape(&[4, 2]));
        assert_eq!((g.n(), g.edge_count()), (8, 10));
        let p = make_grid(&shape(&[5]));
        assert_eq!(p, make_path(5).unwrap());
        let g4 = make_grid(&shape(&[3, 3, 3, 3]));
        assert_eq!((g4.n(), g4.edge_count()), (81, 216));
        assert!(GridShape::new(vec![]).is_err());
        assert!(GridShape::new(vec![3, 0]).is_err());
    }

    #[test]
    fn grid_edges_match_pairwise_definition() {
        for dims in [
            &[1][..],
            &[2, 3],
            &[4, 1, 2],
            &[3, 3, 3],
            &[2, 2, 2, 2],
            &[3, 3, 3, 3],
        ] {
            let s = shape(dims);
            let g = make_grid(&s);
            assert_simple(&g);
            assert_eq!(g.edge_count(), grid_edges_by_pairs(&s), "{dims:?}");
            assert_eq!(g.edge_count(), grid_edge_formula(dims), "{dims:?}");
        }
    }

    #[test]
    fn coord_round_trip_is_row_major() {
        let s = shape(&[3, 4, 2]);
        assert_eq!(s.coord(0).0, vec![0, 0, 0]);
        assert_eq!(s.coord(1).0, vec![0, 0, 1]);
        assert_eq!(s.coord(2).0, vec![0, 1, 0]);
        for id in 0..s.len() {
            assert_eq!(s.id(&s.coord(id)).unwrap(), id);
        }
        assert!(s.id(&GridCoord::from([3, 0, 0])).is_err());
    }

    #[test]
    fn opposed_examples() {
        let s = shape(&[3, 3]);
        assert!(s.opposed(&[0, 0].into(), &[2, 0].into()));
        assert!(!s.opposed(&[0, 0].into(), &[1, 1].into()));
        assert!(!s.opposed(&[1, 1].into(), &[1, 1].into()));
        assert!(!s.opposed(&[0, 0].into(), &[1, 0].into()));
    }

    #[test]
    fn neighbors_pair_up_into_opposed_pairs() {
        for dims in [&[3, 3][..], &[3, 3, 3], &[3, 3, 3, 3], &[4, 2, 3]] {
            let s = shape(dims);
            let g = make_grid(&s);
            for u in 0..g.n() {
                let nbrs: Vec<GridCoord> = g.neighbors(u).iter().map(|&v| s.coord(v)).collect();
                let mut paired = vec![false; nbrs.len()];
                let mut pairs = 0;
                for a in 0..nbrs.len() {
                    for b in a + 1..nbrs.len() {
                        if s.opposed(&nbrs[a], &nbrs[b]) {
                            assert!(!paired[a] && !paired[b], "neighbor opposed to two others");
                            paired[a] = true;
                            paired[b] = true;
                            pairs += 1;
                        }
                    }
                }
                assert!(pairs <= dims.len());
                if dims.iter().all(|&n| n == 3) && s.coord(u).iter().all(|&x| x == 1) {
                    assert_eq!(pairs, dims.len());
                    assert!(paired.iter().all(|&p| p));
                }
            }
        }
    }

    /// Finds `x != u` with `N(u) ∩ N(x) = {v, v'}` by scanning every vertex.
    fn q_vertex_by_enumeration(g: &Graph, u: usize, v: usize, vp: usize) -> Vec<usize> {
        let mut want = vec![v, vp];
        want.sort_unstable();
        (0..g.n())
            .filter(|&x| x != u)
            .filter(|&x| {
                let common: Vec<usize> = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&y| g.has_edge(x, y))
                    .collect();
                common == want
            })
            .collect()
    }

    #[test]
    fn q_vertex_examples() {
        let s = shape(&[3, 3]);
        let x = s
            .q_vertex(&[1, 1].into(), &[0, 1].into(), &[1, 0].into())
            .unwrap();
        assert_eq!(x.0, vec![0, 0]);
        assert!(s
            .q_vertex(&[1, 1].into(), &[1, 0].into(), &[1, 2].into())
            .is_err());
        assert!(s
            .q_vertex(&[1, 1].into(), &[0, 0].into(), &[1, 0].into())
            .is_err());
        assert!(s
            .q_vertex(&[1, 1].into(), &[1, 0].into(), &[1, 0].into())
            .is_err());

        let s4 = shape(&[3, 3, 3, 3]);
        let x = s4
            .q_vertex(
                &[1, 1, 1, 1].into(),
                &[0, 1, 1, 1].into(),
                &[1, 0, 1, 1].into(),
            )
            .unwrap();
        assert_eq!(x.0, vec![0, 0, 1, 1]);
        let g4 = make_grid(&s4);
        let ids = |c: [usize; 4]| s4.id(&c.into()).unwrap();
        assert_eq!(
            q_vertex_by_enumeration(&g4, ids([1, 1, 1, 1]), ids([0, 1, 1, 1]), ids([1, 0, 1, 1])),
            vec![ids([0, 0, 1, 1])]
        );
    }

    #[test]
    fn q_vertex_agrees_with_enumeration_on_all_triples() {
        for dims in [&[3, 3][..], &[3, 3, 3]] {
            let s = shape(dims);
            let g = make_grid(&s);
            for u in 0..g.n() {
                let cu = s.coord(u);
                for &v in g.neighbors(u) {
                    for &vp in g.neighbors(u) {
                        let (cv, cvp) = (s.coord(v), s.coord(vp));
                        let got = s.q_vertex(&cu, &cv, &cvp);
                        if v == vp || s.opposed(&cv, &cvp) {
                            assert!(got.is_err());
                            continue;
                        }
                        let x = s.id(&got.unwrap()).unwrap();
                        assert_ne!(x, u);
                        let common = g.neighbors(u).iter().filter(|&&y| g.has_edge(x, y)).count();
                        assert_eq!(common, 2);
                        assert_eq!(q_vertex_by_enumeration(&g, u, v, vp), vec![x]);
                    }
                }
            }
        }
    }

    #[test]
    fn border_of_3x3_grid_induces_c8() {
        let s = shape(&[3, 3]);
        let g = make_grid(&s);
        let border: Vec<usize> = [
            [0, 0],
            [0, 1],
            [0, 2],
            [1, 2],
            [2, 2],
            [2, 1],
            [2, 0],
            [1, 0],
        ]
        .iter()
        .map(|&c| s.id(&c.into()).unwrap())
        .collect();
        let sub = g.induced_subgraph(&border).unwrap();
        // identity map onto C_8 is an isomorphism because the border is listed in cyclic order
        assert_eq!(sub, make_cycle(8).unwrap());
    }

    #[test]
    fn induced_subgraph_edge_cases() {
        let g = make_grid(&shape(&[3, 4]));
        let all: Vec<usize> = (0..g.n()).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
        let one = g.induced_subgraph(&[5]).unwrap();
        assert_eq!((one.n(), one.edge_count()), (1, 0));
        assert!(g.induced_subgraph(&[0, 99]).is_err());
        assert!(g.induced_subgraph(&[1, 1]).is_err());
    }

    #[test]
    fn json_is_canonical() {
        let g = make_cycle(4).unwrap();
        assert_eq!(g.to_json(), r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let parsed: Graph =
            serde_json::from_str(r#"{"n":4,"edges":[[1,0],[3,0],[2,1],[2,3],[0,1]]}"#).unwrap();
        assert_eq!(parsed, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn dot_export() {
        let g = make_path(3).unwrap();
        assert_eq!(
            g.to_dot(None),
            "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n"
        );
        let fam = Family::parse("grid", &[2, 1]).unwrap();
        let dot = fam.graph().to_dot(fam.labels().as_deref());
        assert!(dot.contains("1 [label=\"(1,0)\"];"));
    }

    #[test]
    fn family_parse_errors() {
        assert!(Family::parse("cycle", &[2]).is_err());
        assert!(Family::parse("cycle", &[4, 4]).is_err());
        assert!(Family::parse("path", &[0]).is_err());
        assert!(Family::parse("grid", &[]).is_err());
        assert!(Family::parse("star", &[3]).is_err());
    }
}
