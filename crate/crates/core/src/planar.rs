//! Face tracing, planar duals, and the Hamiltonicity test through the dual's
//! maximum-cardinality connected cut.
//!
//! A planar 2-connected graph on `n` vertices has a Hamiltonian cycle iff its
//! dual has a connected cut with `n` edges: connected cuts of the dual are
//! exactly the cycles of the primal.

use thiserror::Error;

use crate::decompose::{decompose, DecomposeError};
use crate::enumerate::PartKind;
use crate::graph::{Edge, EdgeId, EdgeKind, Graph};
use crate::oracle::{BruteOutcome, Oracle, OracleError};
use crate::solver::{solve, SolveError};
use crate::Mode;

/// Cyclic order of incident edges around every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("invalid rotation at vertex {vertex}: {reason}")]
    InvalidRotation { vertex: usize, reason: String },
    #[error("rotation traces {faces} faces but a sphere embedding needs {expected}")]
    NotPlanarEmbedding { faces: usize, expected: i64 },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is outside the class")]
    NotInClass,
    #[error("graph has a K3,3 part")]
    HasK33,
    #[error("dual is outside the class and has {vertices} vertices, above the oracle limit {limit}")]
    Unsupported { vertices: usize, limit: usize },
    #[error("solver failed on the dual: {0}")]
    Solver(String),
}

impl RotationSystem {
    /// Validates that every vertex lists each incident edge exactly once.
    pub fn new(g: &Graph, order: Vec<Vec<EdgeId>>) -> Result<Self, PlanarError> {
        if order.len() != g.vertex_count() {
            return Err(PlanarError::InvalidRotation {
                vertex: order.len().min(g.vertex_count()),
                reason: format!("{} rotations for {} vertices", order.len(), g.vertex_count()),
            });
        }
        let inc = g.incidence();
        for (v, rot) in order.iter().enumerate() {
            let mut expected: Vec<EdgeId> = inc[v].iter().map(|&i| g.edges()[i].id).collect();
            let mut got = rot.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(PlanarError::InvalidRotation {
                    vertex: v,
                    reason: "neighbour list is not a permutation of the incident edges".into(),
                });
            }
        }
        Ok(RotationSystem { order })
    }

    pub fn at(&self, v: usize) -> &[EdgeId] {
        &self.order[v]
    }

    /// Same embedding seen from the other side of the sphere.
    pub fn mirrored(&self) -> RotationSystem {
        RotationSystem { order: self.order.iter().map(|r| r.iter().rev().copied().collect()).collect() }
    }
}

/// Faces as edge-id cycles, plus the face on each side of every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    pub boundaries: Vec<Vec<EdgeId>>,
    /// For edge position `i`: faces left of `u -> v` and of `v -> u`.
    pub sides: Vec<(usize, usize)>,
}

/// Traces the faces of `rot`; rejects rotations that do not embed `g` in the
/// sphere (Euler: `n - m + f = 2`).
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Faces, PlanarError> {
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let m = g.edge_count();
    let mut pos = vec![(usize::MAX, usize::MAX); m];
    for v in 0..g.vertex_count() {
        for (k, &id) in rot.at(v).iter().enumerate() {
            let i = g.edge_index(id).expect("validated rotation");
            let e = &g.edges()[i];
            if e.u == v {
                pos[i].0 = k;
            } else {
                pos[i].1 = k;
            }
        }
    }
    // Dart 2i runs u -> v along edge position i, dart 2i+1 runs v -> u.
    let head = |d: usize| {
        let e = &g.edges()[d / 2];
        if d.is_multiple_of(2) {
            e.v
        } else {
            e.u
        }
    };
    let next = |d: usize| {
        let h = head(d);
        let i = d / 2;
        let k = if g.edges()[i].u == h { pos[i].0 } else { pos[i].1 };
        let r = rot.at(h);
        let out = g.edge_index(r[(k + 1) % r.len()]).expect("validated rotation");
        if g.edges()[out].u == h {
            2 * out
        } else {
            2 * out + 1
        }
    };
    let mut face_of = vec![usize::MAX; 2 * m];
    let mut boundaries = Vec::new();
    for start in 0..2 * m {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = boundaries.len();
        let mut boundary = Vec::new();
        let mut d = start;
        while face_of[d] == usize::MAX {
            face_of[d] = f;
            boundary.push(g.edges()[d / 2].id);
            d = next(d);
        }
        boundaries.push(boundary);
    }
    let expected = 2 - g.vertex_count() as i64 + m as i64;
    if boundaries.len() as i64 != expected {
        return Err(PlanarError::NotPlanarEmbedding { faces: boundaries.len(), expected });
    }
    let sides = (0..m).map(|i| (face_of[2 * i], face_of[2 * i + 1])).collect();
    Ok(Faces { boundaries, sides })
}

/// Planar dual with unit weights; dual edge ids equal primal edge ids.
pub fn dual(g: &Graph, rot: &RotationSystem) -> Result<Graph, PlanarError> {
    dual_embedding(g, rot).map(|(d, _)| d)
}

/// Dual graph together with the rotation induced by face traversal order.
pub fn dual_embedding(g: &Graph, rot: &RotationSystem) -> Result<(Graph, RotationSystem), PlanarError> {
    let f = faces(g, rot)?;
    let mut edges = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = f.sides[i];
        if a == b {
            return Err(PlanarError::NotTwoConnected);
        }
        edges.push(Edge { id: e.id, u: a, v: b, weight: 1, kind: EdgeKind::Real });
    }
    let d = Graph::from_edges(f.boundaries.len(), edges);
    let order = f.boundaries.clone();
    let rot = RotationSystem::new(&d, order)?;
    Ok((d, rot))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcMethod {
    Solver,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcReport {
    pub hamiltonian: bool,
    /// Maximum cardinality of a connected cut of the dual.
    pub dual_value: u64,
    pub dual_vertices: usize,
    pub method: HcMethod,
}

/// Decides Hamiltonicity of a simple, 2-connected, embedded graph in the class
/// with no `K3,3` part.
pub fn decide_hamiltonian(g: &Graph, rot: &RotationSystem, oracle_limit: usize) -> Result<HcReport, PlanarError> {
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    if !g.is_simple() {
        return Err(PlanarError::NotSimple);
    }
    let tree = match decompose(g, false) {
        Ok(t) => t,
        Err(DecomposeError::Disconnected) => return Err(PlanarError::Disconnected),
        Err(DecomposeError::NotInClass(_)) => return Err(PlanarError::NotInClass),
    };
    if g.vertex_count() < 3 || tree.blocks.len() != 1 {
        return Err(PlanarError::NotTwoConnected);
    }
    if tree.parts.iter().any(|p| p.kind() == PartKind::K33) {
        return Err(PlanarError::HasK33);
    }
    let d = dual(g, rot)?;
    let n = g.vertex_count() as u64;
    let (dual_value, method) = match solve(&d, Mode::Max) {
        Ok(s) => (s.value, HcMethod::Solver),
        Err(SolveError::NotInClass(_)) => match Oracle::new(oracle_limit).best_cut_brute(&d, Mode::Max, &[]) {
            Ok(BruteOutcome::Optimal { value, .. }) => (value, HcMethod::Oracle),
            Ok(BruteOutcome::Infeasible) => return Err(PlanarError::Solver("dual has no cut".into())),
            Err(OracleError::TooLarge { n, limit }) => {
                return Err(PlanarError::Unsupported { vertices: n, limit })
            }
            Err(e) => return Err(PlanarError::Solver(e.to_string())),
        },
        Err(e) => return Err(PlanarError::Solver(e.to_string())),
    };
    Ok(HcReport { hamiltonian: dual_value == n, dual_value, dual_vertices: d.vertex_count(), method })
}

/// Embeddings of small standard graphs, matching [`crate::graph::families`].
pub mod embedded {
    use super::RotationSystem;
    use crate::graph::{families, EdgeId, Graph};

    /// Rotation from per-vertex neighbour orders of a simple graph.
    pub fn from_neighbours(g: &Graph, neighbours: &[Vec<usize>]) -> RotationSystem {
        let order = neighbours
            .iter()
            .enumerate()
            .map(|(v, ns)| {
                ns.iter()
                    .map(|&w| {
                        g.edges()
                            .iter()
                            .find(|e| (e.u, e.v) == (v, w) || (e.u, e.v) == (w, v))
                            .map(|e| e.id)
                            .expect("listed neighbour is adjacent")
                    })
                    .collect::<Vec<EdgeId>>()
            })
            .collect();
        RotationSystem::new(g, order).expect("family rotation is valid")
    }

    pub fn cycle(n: usize) -> (Graph, RotationSystem) {
        let g = families::cycle(n);
        let ns: Vec<_> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        let r = from_neighbours(&g, &ns);
        (g, r)
    }

    pub fn wheel(n: usize) -> (Graph, RotationSystem) {
        let g = families::wheel(n);
        let k = n - 1;
        let mut ns = vec![(1..n).collect::<Vec<_>>()];
        for i in 0..k {
            ns.push(vec![1 + (i + 1) % k, 0, 1 + (i + k - 1) % k]);
        }
        let r = from_neighbours(&g, &ns);
        (g, r)
    }

    pub fn prism() -> (Graph, RotationSystem) {
        let g = families::prism();
        let ns = vec![
            vec![1, 3, 2],
            vec![2, 4, 0],
            vec![0, 5, 1],
            vec![5, 0, 4],
            vec![3, 1, 5],
            vec![4, 2, 3],
        ];
        let r = from_neighbours(&g, &ns);
        (g, r)
    }

    /// `K2,n` with hubs `0, 1` and middle vertices `2..n+2`.
    pub fn k2n(n: usize) -> (Graph, RotationSystem) {
        let g = families::complete_bipartite(2, n);
        let mut ns = vec![(2..n + 2).collect::<Vec<_>>(), (2..n + 2).rev().collect()];
        for _ in 0..n {
            ns.push(vec![0, 1]);
        }
        let r = from_neighbours(&g, &ns);
        (g, r)
    }
}
