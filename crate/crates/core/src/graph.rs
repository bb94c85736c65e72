//! Weighted undirected multigraphs, cuts, and the 1-sum / 2-sum constructors.
//!
//! Vertices are dense indices `0..n`. Every edge carries a stable [`EdgeId`];
//! edges are stored sorted by id, so ids may have gaps (dropped loops,
//! contractions) but are never reused for a different edge.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Stable identifier of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Real,
    /// Marker edge recording where two parts were glued. Weight 0.
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
    pub weight: u64,
    pub kind: EdgeKind,
}

impl Edge {
    /// The endpoint opposite to `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            assert_eq!(self.v, x, "vertex {x} is not an endpoint of {}", self.id);
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index}: endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: negative weight {weight}")]
    NegativeWeight { index: usize, weight: i64 },
    #[error("edge {index}: weight 0 is only accepted when zero weights are enabled")]
    ZeroWeight { index: usize },
    #[error("total edge weight overflows 64 bits")]
    WeightOverflow,
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {vertex} out of range for {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("vertex set must be a nonempty proper subset of the vertices")]
    TrivialSide,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Accept weight-0 edges. Only meaningful for maximisation.
    pub allow_zero_weight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    loops_dropped: usize,
}

/// Builds a normalized graph from `(u, v, weight)` triples. Edge `i` of the
/// input receives id `i`; self-loops are dropped and counted.
pub fn build_graph(n: usize, triples: &[(usize, usize, i64)]) -> Result<Graph, GraphError> {
    build_graph_with(n, triples, BuildOptions::default())
}

pub fn build_graph_with(
    n: usize,
    triples: &[(usize, usize, i64)],
    opts: BuildOptions,
) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(triples.len());
    let mut loops_dropped = 0;
    let mut total: u64 = 0;
    for (index, &(u, v, w)) in triples.iter().enumerate() {
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::EndpointOutOfRange { index, vertex, n });
            }
        }
        if w < 0 {
            return Err(GraphError::NegativeWeight { index, weight: w });
        }
        if w == 0 && !opts.allow_zero_weight {
            return Err(GraphError::ZeroWeight { index });
        }
        if u == v {
            loops_dropped += 1;
            continue;
        }
        let weight = w as u64;
        total = total.checked_add(weight).ok_or(GraphError::WeightOverflow)?;
        edges.push(Edge { id: EdgeId(index), u, v, weight, kind: EdgeKind::Real });
    }
    // Forced-edge boosting doubles the total in the worst case.
    if total > u64::MAX / 2 {
        return Err(GraphError::WeightOverflow);
    }
    Ok(Graph { n, edges, loops_dropped })
}

impl Graph {
    /// Assembles a graph from already-normalized edges. Edges are sorted by id;
    /// loops are dropped.
    pub fn from_edges(n: usize, mut edges: Vec<Edge>) -> Graph {
        let before = edges.len();
        edges.retain(|e| e.u != e.v);
        let loops_dropped = before - edges.len();
        edges.sort_by_key(|e| e.id);
        debug_assert!(edges.windows(2).all(|w| w[0].id != w[1].id), "duplicate edge ids");
        debug_assert!(edges.iter().all(|e| e.u < n && e.v < n));
        Graph { n, edges, loops_dropped }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn loops_dropped(&self) -> usize {
        self.loops_dropped
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    pub fn next_edge_id(&self) -> usize {
        self.edges.last().map_or(0, |e| e.id.0 + 1)
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> =
            self.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    /// Incident edge positions per vertex, in edge-id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            inc[e.v].push(i);
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Returns a copy with every edge weight replaced by `f(edge)`.
    pub fn map_weights(&self, mut f: impl FnMut(&Edge) -> u64) -> Graph {
        let edges = self.edges.iter().map(|e| Edge { weight: f(e), ..*e }).collect();
        Graph { n: self.n, edges, loops_dropped: self.loops_dropped }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let all = vec![true; self.n];
        component_size(self, &all, 0) == self.n
    }

    fn side_mask(&self, side: &[usize]) -> Result<Vec<bool>, GraphError> {
        let mut mask = vec![false; self.n];
        let mut count = 0;
        for &v in side {
            if v >= self.n {
                return Err(GraphError::UnknownVertex { vertex: v, n: self.n });
            }
            if !mask[v] {
                mask[v] = true;
                count += 1;
            }
        }
        if count == 0 || count == self.n {
            return Err(GraphError::TrivialSide);
        }
        Ok(mask)
    }
}

/// Size of the component containing `start` in the subgraph induced by `mask`.
fn component_size(g: &Graph, mask: &[bool], start: usize) -> usize {
    let inc = g.incidence();
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut size = 0;
    while let Some(x) = queue.pop_front() {
        size += 1;
        for &i in &inc[x] {
            let y = g.edges[i].other(x);
            if mask[y] && !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    size
}

/// The edges with exactly one endpoint in `side`, sorted by id.
pub fn delta(g: &Graph, side: &[usize]) -> Result<Vec<EdgeId>, GraphError> {
    let mask = g.side_mask(side)?;
    Ok(delta_mask(g, &mask))
}

pub(crate) fn delta_mask(g: &Graph, mask: &[bool]) -> Vec<EdgeId> {
    g.edges.iter().filter(|e| mask[e.u] != mask[e.v]).map(|e| e.id).collect()
}

/// True iff both `G[side]` and `G[V \ side]` are connected.
pub fn is_connected_cut(g: &Graph, side: &[usize]) -> Result<bool, GraphError> {
    let mask = g.side_mask(side)?;
    Ok(is_connected_cut_mask(g, &mask))
}

pub(crate) fn is_connected_cut_mask(g: &Graph, mask: &[bool]) -> bool {
    let inside = mask.iter().filter(|&&b| b).count();
    let a = mask.iter().position(|&b| b).expect("nonempty side");
    let b = mask.iter().position(|&b| !b).expect("proper side");
    let complement: Vec<bool> = mask.iter().map(|&b| !b).collect();
    component_size(g, mask, a) == inside && component_size(g, &complement, b) == g.n - inside
}

/// A cut together with the bipartition inducing it.
///
/// `side_a` always holds vertex 0 (the smallest id); both sides are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    pub edge_ids: Vec<EdgeId>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Cut {
    /// Canonical cut of the bipartition `(mask, !mask)`.
    pub fn from_mask(g: &Graph, mask: &[bool]) -> Cut {
        let flip = !mask[0];
        let mut side_a = Vec::new();
        let mut side_b = Vec::new();
        for (v, &m) in mask.iter().enumerate() {
            if m != flip {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        Cut { edge_ids: delta_mask(g, mask), side_a, side_b }
    }

    pub fn weight(&self, g: &Graph) -> u64 {
        self.edge_ids.iter().map(|&id| g.edge(id).map_or(0, |e| e.weight)).sum()
    }
}

/// Merges the endpoints of `e`. The larger endpoint is folded into the smaller
/// one and higher vertex indices shift down by one; loops created by the merge
/// are removed, parallel edges are kept.
pub fn contract_edge(g: &Graph, e: EdgeId) -> Result<Graph, GraphError> {
    let edge = *g.edge(e).ok_or(GraphError::UnknownEdge(e))?;
    let (keep, gone) = (edge.u.min(edge.v), edge.u.max(edge.v));
    let relabel = |x: usize| match x.cmp(&gone) {
        std::cmp::Ordering::Less => x,
        std::cmp::Ordering::Equal => keep,
        std::cmp::Ordering::Greater => x - 1,
    };
    let edges = g
        .edges
        .iter()
        .map(|f| Edge { u: relabel(f.u), v: relabel(f.v), ..*f })
        .filter(|f| f.u != f.v)
        .collect();
    Ok(Graph { n: g.n - 1, edges, loops_dropped: g.loops_dropped })
}

/// Identifies `v1 ∈ g1` with `v2 ∈ g2`.
///
/// Vertices of `g1` keep their indices; `g2`'s other vertices follow in order.
/// Edges of `g2` are renumbered after `g1`'s ids.
pub fn one_sum(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Graph, GraphError> {
    if v1 >= g1.n {
        return Err(GraphError::UnknownVertex { vertex: v1, n: g1.n });
    }
    if v2 >= g2.n {
        return Err(GraphError::UnknownVertex { vertex: v2, n: g2.n });
    }
    let map = |x: usize| match x.cmp(&v2) {
        std::cmp::Ordering::Equal => v1,
        std::cmp::Ordering::Less => g1.n + x,
        std::cmp::Ordering::Greater => g1.n + x - 1,
    };
    Ok(glue(g1, g2, map, g1.n + g2.n - 1, &[]))
}

/// How the endpoints of the two glued edges are matched in a 2-sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `u1 ~ u2`, `v1 ~ v2`.
    #[default]
    Aligned,
    /// `u1 ~ v2`, `v1 ~ u2`.
    Crossed,
}

/// Glues `g1` and `g2` along `e1` and `e2` and deletes both glued edges.
pub fn two_sum(
    g1: &Graph,
    e1: EdgeId,
    g2: &Graph,
    e2: EdgeId,
    orientation: Orientation,
) -> Result<Graph, GraphError> {
    let a = *g1.edge(e1).ok_or(GraphError::UnknownEdge(e1))?;
    let b = *g2.edge(e2).ok_or(GraphError::UnknownEdge(e2))?;
    let (x2, y2) = match orientation {
        Orientation::Aligned => (b.u, b.v),
        Orientation::Crossed => (b.v, b.u),
    };
    let mut next = g1.n;
    let mut table = vec![usize::MAX; g2.n];
    for (x, slot) in table.iter_mut().enumerate() {
        if x == x2 {
            *slot = a.u;
        } else if x == y2 {
            *slot = a.v;
        } else {
            *slot = next;
            next += 1;
        }
    }
    Ok(glue(g1, g2, |x| table[x], g1.n + g2.n - 2, &[e1, e2]))
}

fn glue(g1: &Graph, g2: &Graph, map: impl Fn(usize) -> usize, n: usize, skip: &[EdgeId]) -> Graph {
    let offset = g1.next_edge_id();
    let mut edges: Vec<Edge> = g1.edges.iter().filter(|e| Some(&e.id) != skip.first()).copied().collect();
    edges.extend(g2.edges.iter().filter(|e| Some(&e.id) != skip.get(1)).map(|e| Edge {
        id: EdgeId(offset + e.id.0),
        u: map(e.u),
        v: map(e.v),
        ..*e
    }));
    Graph::from_edges(n, edges)
}

/// Standard families used by tests, the generator and the enumerator tables.
pub mod families {
    use super::{build_graph, Graph};

    fn unit(n: usize, pairs: &[(usize, usize)]) -> Graph {
        let triples: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, 1)).collect();
        build_graph(n, &triples).expect("valid family graph")
    }

    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        unit(n, &pairs)
    }

    pub fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        unit(n, &pairs)
    }

    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        unit(n, &pairs)
    }

    /// `W_n`: hub 0 joined to the rim cycle `1..n`.
    pub fn wheel(n: usize) -> Graph {
        assert!(n >= 4, "wheels have at least 4 vertices");
        let k = n - 1;
        let mut pairs: Vec<_> = (0..k).map(|i| (1 + i, 1 + (i + 1) % k)).collect();
        pairs.extend((1..n).map(|i| (0, i)));
        unit(n, &pairs)
    }

    /// Triangles `0 1 2` and `3 4 5` joined by the matching `i ~ i+3`.
    pub fn prism() -> Graph {
        unit(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..a {
            for v in 0..b {
                pairs.push((u, a + v));
            }
        }
        unit(a + b, &pairs)
    }

    /// `K5` minus the edge `{3, 4}`.
    pub fn k5_minus_edge() -> Graph {
        let pairs: Vec<_> = complete(5)
            .edges()
            .iter()
            .map(|e| (e.u, e.v))
            .filter(|&p| p != (3, 4))
            .collect();
        unit(5, &pairs)
    }

    /// Vertices `u=0, v=1, a=2, b=3` with edges `uv ua va ub vb`.
    pub fn diamond() -> Graph {
        unit(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    }

    pub fn petersen() -> Graph {
        let mut pairs: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        pairs.extend((0..5).map(|i| (i, i + 5)));
        pairs.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        unit(10, &pairs)
    }
}
