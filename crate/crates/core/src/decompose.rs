//! Part trees: blocks glued at articulation vertices, and inside each block
//! bonds, cycles and rigid base graphs glued along virtual-edge twins.
//!
//! Splitting works on one 2-connected piece `H` at a time. For a vertex `u`
//! of `H`, every articulation vertex `a` of `H - u` gives a separation pair
//! `{u, a}`; all of them are split at once along the block structure of
//! `H - u`. A vertex for which `H - u` stays 2-connected is marked clean, and
//! clean marks survive into every piece split off later, so each vertex copy
//! costs one articulation scan. A piece with only clean vertices is
//! 3-connected and must be one of the registered rigid kinds.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::enumerate::{CutFamily, KindRegistry, PartGraph, PartKind};
use crate::graph::{Edge, EdgeId, EdgeKind, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    Real { id: EdgeId, weight: u64 },
    Virtual { pair: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartEdge {
    pub a: usize,
    pub b: usize,
    pub label: EdgeLabel,
}

pub struct Part {
    pub block: usize,
    /// Global vertex ids, ascending; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<PartEdge>,
    family: Arc<dyn CutFamily>,
}

impl fmt::Debug for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Part")
            .field("kind", &self.kind())
            .field("block", &self.block)
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Part {
    pub fn kind(&self) -> PartKind {
        self.family.kind()
    }

    pub fn family(&self) -> &dyn CutFamily {
        self.family.as_ref()
    }

    pub fn part_graph(&self) -> PartGraph {
        PartGraph { n: self.vertices.len(), edges: self.edges.iter().map(|e| (e.a, e.b)).collect() }
    }

    /// The part as a standalone [`Graph`] on local vertices. Edge ids are local
    /// edge indices; virtual edges have weight 0.
    pub fn graph(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| match e.label {
                EdgeLabel::Real { weight, .. } => {
                    Edge { id: EdgeId(i), u: e.a, v: e.b, weight, kind: EdgeKind::Real }
                }
                EdgeLabel::Virtual { .. } => {
                    Edge { id: EdgeId(i), u: e.a, v: e.b, weight: 0, kind: EdgeKind::Virtual }
                }
            })
            .collect();
        Graph::from_edges(self.vertices.len(), edges)
    }

    pub fn real_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| matches!(e.label, EdgeLabel::Real { .. })).count()
    }

    /// Global id of the wheel hub, if this part is a wheel.
    pub fn hub_vertex(&self) -> Option<usize> {
        match self.kind() {
            PartKind::Wheel { hub } => Some(self.vertices[hub]),
            _ => None,
        }
    }
}

/// Two virtual edges, one per adjacent part, recording a 2-sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinPair {
    /// `(part, local edge)` of both copies.
    pub ends: [(usize, usize); 2],
    /// Whether the `a` endpoints of both copies are the same glued vertex.
    pub aligned: bool,
}

impl TwinPair {
    /// The copy opposite to `part`.
    pub fn across(&self, part: usize) -> (usize, usize) {
        if self.ends[0].0 == part {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub parts: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// An articulation vertex of the input, with one `(part, local vertex)`
/// occurrence per block containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Articulation {
    pub vertex: usize,
    pub slots: Vec<(usize, usize)>,
}

#[derive(Debug)]
pub struct PartTree {
    pub vertex_count: usize,
    pub blocks: Vec<Block>,
    pub parts: Vec<Part>,
    pub twins: Vec<TwinPair>,
    pub articulations: Vec<Articulation>,
    edge_owner: BTreeMap<EdgeId, (usize, usize)>,
}

impl PartTree {
    /// `(part, local edge)` holding the real edge `id`.
    pub fn owner(&self, id: EdgeId) -> Option<(usize, usize)> {
        self.edge_owner.get(&id).copied()
    }

    pub fn rigid_kinds(&self) -> Vec<PartKind> {
        let mut v: Vec<_> = self.parts.iter().map(|p| p.kind()).filter(|k| k.is_rigid()).collect();
        v.sort();
        v
    }

    /// Neighbouring part across local edge `edge` of `part`, if it is virtual.
    pub fn across(&self, part: usize, edge: usize) -> Option<(usize, usize)> {
        match self.parts[part].edges[edge].label {
            EdgeLabel::Virtual { pair } => Some(self.twins[pair].across(part)),
            EdgeLabel::Real { .. } => None,
        }
    }
}

/// A 3-connected piece that is none of the allowed base graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    /// Global endpoints; `None` marks a virtual edge.
    pub edges: Vec<(usize, usize, Option<EdgeId>)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is outside the class: 3-connected piece on {} vertices is not a base graph", .0.vertices.len())]
    NotInClass(Box<Witness>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecomposeError {
    #[error("twin pair {0} does not join two virtual copies of itself")]
    TwinMismatch(usize),
}

/// Edge-partition into biconnected components, skipping `skip` and its edges.
fn biconnected(n: usize, ends: &[(usize, usize)], skip: Option<usize>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in ends.iter().enumerate() {
        if Some(a) == skip || Some(b) == skip {
            continue;
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut cursor = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN || Some(root) == skip {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, usize::MAX));
        while let Some(&(v, via)) = frames.last() {
            if cursor[v] < adj[v].len() {
                let (w, e) = adj[v][cursor[v]];
                cursor[v] += 1;
                if e == via {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, e));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == via {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Vertices touched by the given edges, ascending.
fn touched(ends: &[(usize, usize)], edges: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = edges.iter().flat_map(|&e| [ends[e].0, ends[e].1]).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// A piece under construction, in global vertex coordinates for its edges'
/// labels and local coordinates for endpoints.
struct Work {
    verts: Vec<usize>,
    edges: Vec<PartEdge>,
    clean: Vec<bool>,
}

impl Work {
    fn new(mut verts: Vec<usize>, global_edges: Vec<(usize, usize, EdgeLabel)>, clean: impl Fn(usize) -> bool) -> Work {
        verts.sort_unstable();
        verts.dedup();
        let local = |g: usize| verts.binary_search(&g).expect("edge endpoint among piece vertices");
        let edges = global_edges.iter().map(|&(a, b, label)| PartEdge { a: local(a), b: local(b), label }).collect();
        let clean = verts.iter().map(|&v| clean(v)).collect();
        Work { verts, edges, clean }
    }

    fn ends(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    fn global_edge(&self, i: usize) -> (usize, usize, EdgeLabel) {
        let e = self.edges[i];
        (self.verts[e.a], self.verts[e.b], e.label)
    }

    fn is_cycle(&self) -> bool {
        let mut deg = vec![0; self.verts.len()];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        self.verts.len() >= 3 && deg.iter().all(|&d| d == 2)
    }

    fn part_graph(&self) -> PartGraph {
        PartGraph { n: self.verts.len(), edges: self.ends() }
    }
}

struct Splitter<'r> {
    registry: &'r KindRegistry,
    pair_count: usize,
    parts: Vec<Part>,
}

impl Splitter<'_> {
    fn new_pair(&mut self) -> usize {
        self.pair_count += 1;
        self.pair_count - 1
    }

    fn finish(&mut self, work: Work, block: usize) -> Result<(), DecomposeError> {
        let Some(family) = self.registry.classify(&work.part_graph()) else {
            let edges = (0..work.edges.len())
                .map(|i| {
                    let (a, b, label) = work.global_edge(i);
                    let id = match label {
                        EdgeLabel::Real { id, .. } => Some(id),
                        EdgeLabel::Virtual { .. } => None,
                    };
                    (a, b, id)
                })
                .collect();
            return Err(DecomposeError::NotInClass(Box::new(Witness { vertices: work.verts, edges })));
        };
        self.parts.push(Part { block, vertices: work.verts, edges: work.edges, family });
        Ok(())
    }

    /// Replaces each bundle of parallel edges by one virtual edge twinned with
    /// a bond holding the bundle.
    fn split_bundles(&mut self, work: Work, pending: &mut Vec<Work>) -> Work {
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in work.edges.iter().enumerate() {
            groups.entry((e.a.min(e.b), e.a.max(e.b))).or_default().push(i);
        }
        if groups.values().all(|g| g.len() == 1) {
            return work;
        }
        let mut kept = Vec::new();
        for ((a, b), group) in groups {
            if group.len() == 1 {
                kept.push(work.global_edge(group[0]));
                continue;
            }
            let pair = self.new_pair();
            let (ga, gb) = (work.verts[a], work.verts[b]);
            let mut bond: Vec<_> = group.iter().map(|&i| work.global_edge(i)).collect();
            bond.push((ga, gb, EdgeLabel::Virtual { pair }));
            pending.push(Work::new(vec![ga, gb], bond, |_| false));
            kept.push((ga, gb, EdgeLabel::Virtual { pair }));
        }
        let verts = work.verts.clone();
        Work::new(verts, kept, |_| false)
    }

    /// Splits `h` at every separation pair `{u, a}`; `None` when `u` is clean.
    fn split_at(&mut self, h: &Work, u: usize) -> Option<Vec<Work>> {
        let ends = h.ends();
        let blocks = biconnected(h.verts.len(), &ends, Some(u));
        if blocks.len() <= 1 {
            return None;
        }
        let n = h.verts.len();
        let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
        let block_verts: Vec<Vec<usize>> = blocks.iter().map(|b| touched(&ends, b)).collect();
        for (j, vs) in block_verts.iter().enumerate() {
            for &v in vs {
                member[v].push(j);
            }
        }
        let mut block_edges: Vec<Vec<(usize, usize, EdgeLabel)>> =
            blocks.iter().map(|b| b.iter().map(|&e| h.global_edge(e)).collect()).collect();
        let mut direct: Vec<Vec<(usize, usize, EdgeLabel)>> = vec![Vec::new(); n];
        for (i, &(a, b)) in ends.iter().enumerate() {
            if a != u && b != u {
                continue;
            }
            let x = if a == u { b } else { a };
            if member[x].len() >= 2 {
                direct[x].push(h.global_edge(i));
            } else {
                block_edges[member[x][0]].push(h.global_edge(i));
            }
        }
        let gu = h.verts[u];
        let mut out = Vec::new();
        for a in 0..n {
            if member[a].len() < 2 {
                continue;
            }
            let ga = h.verts[a];
            if member[a].len() == 2 && direct[a].is_empty() {
                let pair = self.new_pair();
                for &j in &member[a] {
                    block_edges[j].push((gu, ga, EdgeLabel::Virtual { pair }));
                }
                continue;
            }
            let mut bond = std::mem::take(&mut direct[a]);
            for &j in &member[a] {
                let pair = self.new_pair();
                block_edges[j].push((gu, ga, EdgeLabel::Virtual { pair }));
                bond.push((gu, ga, EdgeLabel::Virtual { pair }));
            }
            out.push(Work::new(vec![gu, ga], bond, |_| false));
        }
        for (j, edges) in block_edges.into_iter().enumerate() {
            let mut verts: Vec<usize> = block_verts[j].iter().map(|&v| h.verts[v]).collect();
            verts.push(gu);
            let parent_clean = |g: usize| g == gu || h.verts.binary_search(&g).is_ok_and(|i| h.clean[i]);
            out.push(Work::new(verts, edges, parent_clean));
        }
        Some(out)
    }

    fn decompose_block(&mut self, block: usize, work: Work) -> Result<(), DecomposeError> {
        let mut pending = Vec::new();
        if work.verts.len() == 2 {
            return self.finish(work, block);
        }
        let work = self.split_bundles(work, &mut pending);
        pending.push(work);
        while let Some(mut h) = pending.pop() {
            if h.verts.len() == 2 || h.is_cycle() {
                self.finish(h, block)?;
                continue;
            }
            let mut split = None;
            for u in 0..h.verts.len() {
                if h.clean[u] {
                    continue;
                }
                match self.split_at(&h, u) {
                    Some(pieces) => {
                        split = Some(pieces);
                        break;
                    }
                    None => h.clean[u] = true,
                }
            }
            match split {
                Some(pieces) => pending.extend(pieces.into_iter().rev()),
                None => self.finish(h, block)?,
            }
        }
        Ok(())
    }
}

/// Decomposes a connected graph into its part tree.
///
/// Fails with [`DecomposeError::NotInClass`] carrying the first 3-connected
/// piece that no registered kind recognizes.
pub fn decompose(g: &Graph, allow_k5: bool) -> Result<PartTree, DecomposeError> {
    decompose_with(g, &KindRegistry::for_flags(allow_k5))
}

pub fn decompose_with(g: &Graph, registry: &KindRegistry) -> Result<PartTree, DecomposeError> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(DecomposeError::Disconnected);
    }
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let edge_blocks = biconnected(n, &ends, None);
    let mut splitter = Splitter { registry, pair_count: 0, parts: Vec::new() };
    let mut blocks = Vec::new();
    for (b, edges) in edge_blocks.iter().enumerate() {
        let verts = touched(&ends, edges);
        let labelled = edges
            .iter()
            .map(|&i| {
                let e = &g.edges()[i];
                (e.u, e.v, EdgeLabel::Real { id: e.id, weight: e.weight })
            })
            .collect();
        let first = splitter.parts.len();
        splitter.decompose_block(b, Work::new(verts.clone(), labelled, |_| false))?;
        blocks.push(Block { parts: (first..splitter.parts.len()).collect(), vertices: verts });
    }
    let parts = splitter.parts;

    let mut pair_ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); splitter.pair_count];
    let mut edge_owner = BTreeMap::new();
    for (p, part) in parts.iter().enumerate() {
        for (i, e) in part.edges.iter().enumerate() {
            match e.label {
                EdgeLabel::Virtual { pair } => pair_ends[pair].push((p, i)),
                EdgeLabel::Real { id, .. } => {
                    edge_owner.insert(id, (p, i));
                }
            }
        }
    }
    let twins = pair_ends
        .into_iter()
        .map(|ends| {
            assert_eq!(ends.len(), 2, "virtual edge without a twin");
            let (p, i) = ends[0];
            let (q, j) = ends[1];
            let a1 = parts[p].vertices[parts[p].edges[i].a];
            let a2 = parts[q].vertices[parts[q].edges[j].a];
            TwinPair { ends: [ends[0], ends[1]], aligned: a1 == a2 }
        })
        .collect();

    let mut occurrences: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for block in &blocks {
        for &v in &block.vertices {
            let slot = block.parts.iter().find_map(|&p| {
                parts[p].vertices.binary_search(&v).ok().map(|local| (p, local))
            });
            occurrences.entry(v).or_default().push(slot.expect("block vertex appears in a part"));
        }
    }
    let articulations = occurrences
        .into_iter()
        .filter(|(_, slots)| slots.len() >= 2)
        .map(|(vertex, slots)| Articulation { vertex, slots })
        .collect();

    Ok(PartTree { vertex_count: n, blocks, parts, twins, articulations, edge_owner })
}

/// Glues the parts back together: twin copies are identified endpoint by
/// endpoint and dropped, blocks are identified at articulation slots.
///
/// Uses only the tree's gluing records, not the parts' global vertex ids, so
/// it independently reconstructs the graph up to vertex relabeling.
pub fn recompose(tree: &PartTree) -> Result<Graph, RecomposeError> {
    let mut offset = Vec::with_capacity(tree.parts.len());
    let mut total = 0;
    for p in &tree.parts {
        offset.push(total);
        total += p.vertices.len();
    }
    let mut uf = UnionFind::new(total);
    for (pair, twin) in tree.twins.iter().enumerate() {
        let [(p, i), (q, j)] = twin.ends;
        for &(part, edge) in &twin.ends {
            if tree.parts[part].edges[edge].label != (EdgeLabel::Virtual { pair }) {
                return Err(RecomposeError::TwinMismatch(pair));
            }
        }
        let (e, f) = (tree.parts[p].edges[i], tree.parts[q].edges[j]);
        let (fa, fb) = if twin.aligned { (f.a, f.b) } else { (f.b, f.a) };
        uf.union(offset[p] + e.a, offset[q] + fa);
        uf.union(offset[p] + e.b, offset[q] + fb);
    }
    for art in &tree.articulations {
        let (p0, l0) = art.slots[0];
        for &(p, l) in &art.slots[1..] {
            uf.union(offset[p0] + l0, offset[p] + l);
        }
    }
    let mut class = vec![usize::MAX; total];
    let mut next = 0;
    let mut vertex_of = |slot: usize, uf: &mut UnionFind| {
        let r = uf.find(slot);
        if class[r] == usize::MAX {
            class[r] = next;
            next += 1;
        }
        class[r]
    };
    let mut edges = Vec::new();
    for (p, part) in tree.parts.iter().enumerate() {
        for e in &part.edges {
            if let EdgeLabel::Real { id, weight } = e.label {
                let u = vertex_of(offset[p] + e.a, &mut uf);
                let v = vertex_of(offset[p] + e.b, &mut uf);
                edges.push(Edge { id, u, v, weight, kind: EdgeKind::Real });
            }
        }
    }
    // A one-vertex graph has no parts.
    let n = if tree.parts.is_empty() { tree.vertex_count } else { next };
    Ok(Graph::from_edges(n, edges))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, families};

    fn kinds(t: &PartTree) -> Vec<PartKind> {
        let mut v: Vec<_> = t.parts.iter().map(|p| p.kind()).collect();
        v.sort();
        v
    }

    #[test]
    fn base_cases() {
        let t = decompose(&families::cycle(4), false).unwrap();
        assert_eq!(kinds(&t), [PartKind::Cycle]);
        let t = decompose(&families::wheel(6), false).unwrap();
        assert_eq!(kinds(&t), [PartKind::Wheel { hub: 0 }]);
        assert_eq!(t.parts[0].hub_vertex(), Some(0));
    }

    #[test]
    fn diamond_splits_into_bond_and_two_triangles() {
        let t = decompose(&families::diamond(), false).unwrap();
        assert_eq!(kinds(&t), [PartKind::Bond, PartKind::Cycle, PartKind::Cycle]);
        let bond = t.parts.iter().find(|p| p.kind() == PartKind::Bond).unwrap();
        assert_eq!(bond.vertices, [0, 1]);
        assert_eq!(bond.edges.len(), 3);
        assert_eq!(bond.real_edge_count(), 1);
        assert_eq!(t.twins.len(), 2);
    }

    #[test]
    fn bowtie_has_two_blocks() {
        let bowtie = crate::graph::one_sum(&families::complete(3), 0, &families::complete(3), 0).unwrap();
        let t = decompose(&bowtie, false).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.articulations.len(), 1);
        assert_eq!(t.articulations[0].vertex, 0);
    }

    #[test]
    fn rejects_k5_minus_edge() {
        let err = decompose(&families::k5_minus_edge(), true).unwrap_err();
        let DecomposeError::NotInClass(w) = err else { panic!("expected witness") };
        assert_eq!(w.vertices.len(), 5);
        assert_eq!(w.edges.len(), 9);
    }

    #[test]
    fn k5_needs_flag() {
        assert!(matches!(decompose(&families::complete(5), false), Err(DecomposeError::NotInClass(_))));
        let t = decompose(&families::complete(5), true).unwrap();
        assert_eq!(kinds(&t), [PartKind::K5]);
    }

    #[test]
    fn petersen_rejected() {
        assert!(matches!(decompose(&families::petersen(), false), Err(DecomposeError::NotInClass(_))));
    }

    #[test]
    fn parallel_edges_become_bonds() {
        let g = build_graph(3, &[(0, 1, 1), (0, 1, 2), (1, 2, 3), (2, 0, 4)]).unwrap();
        let t = decompose(&g, false).unwrap();
        assert_eq!(kinds(&t), [PartKind::Bond, PartKind::Cycle]);
        let g = build_graph(2, &[(0, 1, 5), (0, 1, 7)]).unwrap();
        assert_eq!(kinds(&decompose(&g, false).unwrap()), [PartKind::Bond]);
    }

    #[test]
    fn disconnected_rejected() {
        let g = build_graph(3, &[(0, 1, 1)]).unwrap();
        assert_eq!(decompose(&g, false).unwrap_err(), DecomposeError::Disconnected);
    }

    #[test]
    fn recompose_sizes() {
        for g in [families::diamond(), families::cycle(4), families::wheel(7), families::path(5)] {
            let r = recompose(&decompose(&g, false).unwrap()).unwrap();
            assert_eq!((r.vertex_count(), r.edge_count()), (g.vertex_count(), g.edge_count()));
        }
        let single = families::path(1);
        assert_eq!(recompose(&decompose(&single, false).unwrap()).unwrap().vertex_count(), 1);
    }

    #[test]
    fn twin_mismatch_detected() {
        let mut t = decompose(&families::diamond(), false).unwrap();
        t.twins[0].ends[1] = t.twins[1].ends[1];
        assert!(matches!(recompose(&t), Err(RecomposeError::TwinMismatch(_))));
    }
}
