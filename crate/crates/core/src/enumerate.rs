//! Connected-cut families of the base graphs.
//!
//! Each base kind (bond, cycle, wheel, prism, `K3,3`, `K5`) is a [`BaseKind`]
//! registered by name in a [`KindRegistry`]. Recognizing a part yields a
//! [`CutFamily`], which knows every connected cut of that part and can walk
//! them with incremental accumulation, so a wheel on `n` vertices costs
//! `O(n^2)` accumulator steps rather than one pass per cut.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::graph::{families, Graph};
use crate::oracle::Oracle;

/// A part's underlying multigraph on local vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl PartGraph {
    pub fn from_graph(g: &Graph) -> PartGraph {
        PartGraph { n: g.vertex_count(), edges: g.edges().iter().map(|e| (e.u, e.v)).collect() }
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn is_simple(&self) -> bool {
        let mut pairs: Vec<_> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1]) && self.edges.iter().all(|&(a, b)| a != b)
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    }

    fn other(&self, edge: usize, x: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == x {
            b
        } else {
            a
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartKind {
    Bond,
    Cycle,
    /// Hub given as a local vertex of the part.
    Wheel { hub: usize },
    Prism,
    K33,
    K5,
}

impl PartKind {
    pub fn name(&self) -> &'static str {
        match self {
            PartKind::Bond => "bond",
            PartKind::Cycle => "cycle",
            PartKind::Wheel { .. } => "wheel",
            PartKind::Prism => "prism",
            PartKind::K33 => "k33",
            PartKind::K5 => "k5",
        }
    }

    pub fn is_rigid(&self) -> bool {
        !matches!(self, PartKind::Bond | PartKind::Cycle)
    }
}

impl fmt::Display for PartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accumulator machine driven by [`CutFamily::walk`].
///
/// Registers start undefined; `clear` sets one to the neutral element,
/// `extend` stores `src ⊗ value(edge)` into `dst`, and `emit` reports a
/// finished cut whose accumulated value sits in `reg`.
pub trait CutWalker {
    fn clear(&mut self, reg: usize);
    fn extend(&mut self, dst: usize, src: usize, edge: usize);
    fn emit(&mut self, reg: usize, cut: usize);
}

/// Registers a walker must provide.
pub const WALK_REGISTERS: usize = 2;

/// The connected cuts `C(P)` of one recognized part.
///
/// Cuts are indexed `0..cut_count()`; edges are local edge indices.
pub trait CutFamily: fmt::Debug + Send + Sync {
    fn kind(&self) -> PartKind;
    fn cut_count(&self) -> usize;
    /// Sorted local edges of cut `index`.
    fn cut_edges(&self, index: usize) -> Vec<usize>;
    /// One side of cut `index` as a local vertex mask.
    fn cut_side(&self, index: usize) -> Vec<bool>;
    /// Visits every cut, in index order.
    fn walk(&self, walker: &mut dyn CutWalker);
}

/// Recognizer for one base kind.
pub trait BaseKind: Send + Sync {
    fn name(&self) -> &'static str;
    fn recognize(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>>;
}

/// Named base kinds, tried in registration order.
pub struct KindRegistry {
    kinds: Vec<Box<dyn BaseKind>>,
}

impl fmt::Debug for KindRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl KindRegistry {
    pub fn empty() -> Self {
        KindRegistry { kinds: Vec::new() }
    }

    /// Bonds, cycles, wheels, the prism and `K3,3`.
    pub fn standard() -> Self {
        let mut r = KindRegistry::empty();
        r.register(Box::new(BondKind));
        r.register(Box::new(CycleKind));
        r.register(Box::new(WheelKind));
        r.register(Box::new(TableKind::prism()));
        r.register(Box::new(TableKind::k33()));
        r
    }

    /// [`KindRegistry::standard`] plus `K5`.
    pub fn with_k5() -> Self {
        let mut r = KindRegistry::standard();
        r.register(Box::new(TableKind::k5()));
        r
    }

    pub fn for_flags(allow_k5: bool) -> Self {
        if allow_k5 {
            KindRegistry::with_k5()
        } else {
            KindRegistry::standard()
        }
    }

    pub fn register(&mut self, kind: Box<dyn BaseKind>) {
        self.kinds.retain(|k| k.name() != kind.name());
        self.kinds.push(kind);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kinds.iter().map(|k| k.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn BaseKind> {
        self.kinds.iter().find(|k| k.name() == name).map(|k| k.as_ref())
    }

    pub fn classify(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>> {
        self.kinds.iter().find_map(|k| k.recognize(part))
    }
}

/// Kind of `h` under the full registry (including `K5`), or `None` if `h` is
/// none of the base graphs.
pub fn classify_part(h: &PartGraph) -> Option<PartKind> {
    KindRegistry::with_k5().classify(h).map(|f| f.kind())
}

/// All connected cuts of a part, as sorted local edge lists.
pub fn enum_part_cuts(family: &dyn CutFamily) -> Vec<Vec<usize>> {
    (0..family.cut_count()).map(|i| family.cut_edges(i)).collect()
}

// --- bond ------------------------------------------------------------------

struct BondKind;

#[derive(Debug)]
struct BondCuts {
    m: usize,
}

impl BaseKind for BondKind {
    fn name(&self) -> &'static str {
        "bond"
    }

    fn recognize(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>> {
        let ok = part.n == 2 && !part.edges.is_empty() && part.edges.iter().all(|&(a, b)| a != b);
        ok.then(|| Arc::new(BondCuts { m: part.edges.len() }) as Arc<dyn CutFamily>)
    }
}

impl CutFamily for BondCuts {
    fn kind(&self) -> PartKind {
        PartKind::Bond
    }

    fn cut_count(&self) -> usize {
        1
    }

    fn cut_edges(&self, _index: usize) -> Vec<usize> {
        (0..self.m).collect()
    }

    fn cut_side(&self, _index: usize) -> Vec<bool> {
        vec![true, false]
    }

    fn walk(&self, w: &mut dyn CutWalker) {
        w.clear(0);
        for e in 0..self.m {
            w.extend(0, 0, e);
        }
        w.emit(0, 0);
    }
}

// --- cycle -----------------------------------------------------------------

struct CycleKind;

/// `edges[i]` joins `order[i]` and `order[i + 1 mod k]`.
#[derive(Debug)]
struct CycleCuts {
    order: Vec<usize>,
    edges: Vec<usize>,
}

/// Walks a closed trail through degree-2 vertices, starting at `start`.
fn trace_cycle(part: &PartGraph, inc: &[Vec<usize>], start: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = *inc[start].first()?;
    let mut order = vec![start];
    let mut edges = vec![first];
    let mut at = part.other(first, start);
    let mut came = first;
    while at != start {
        let next = inc[at].iter().copied().find(|&e| e != came && !edges.contains(&e))?;
        order.push(at);
        edges.push(next);
        came = next;
        at = part.other(next, at);
        if order.len() > part.n {
            return None;
        }
    }
    Some((order, edges))
}

impl BaseKind for CycleKind {
    fn name(&self) -> &'static str {
        "cycle"
    }

    fn recognize(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>> {
        if part.n < 3 || part.edges.len() != part.n || part.degrees().iter().any(|&d| d != 2) {
            return None;
        }
        if part.edges.iter().any(|&(a, b)| a == b) {
            return None;
        }
        let (order, edges) = trace_cycle(part, &part.incidence(), 0)?;
        (order.len() == part.n).then(|| Arc::new(CycleCuts { order, edges }) as Arc<dyn CutFamily>)
    }
}

impl CycleCuts {
    fn pair(&self, index: usize) -> (usize, usize) {
        let k = self.order.len();
        let mut rest = index;
        for i in 0..k {
            let row = k - 1 - i;
            if rest < row {
                return (i, i + 1 + rest);
            }
            rest -= row;
        }
        panic!("cycle cut index {index} out of range");
    }
}

impl CutFamily for CycleCuts {
    fn kind(&self) -> PartKind {
        PartKind::Cycle
    }

    fn cut_count(&self) -> usize {
        let k = self.order.len();
        k * (k - 1) / 2
    }

    fn cut_edges(&self, index: usize) -> Vec<usize> {
        let (i, j) = self.pair(index);
        let mut v = vec![self.edges[i], self.edges[j]];
        v.sort_unstable();
        v
    }

    fn cut_side(&self, index: usize) -> Vec<bool> {
        let (i, j) = self.pair(index);
        let mut side = vec![false; self.order.len()];
        for &x in &self.order[i + 1..=j] {
            side[x] = true;
        }
        side
    }

    fn walk(&self, w: &mut dyn CutWalker) {
        let k = self.order.len();
        let mut index = 0;
        for i in 0..k {
            w.clear(0);
            w.extend(0, 0, self.edges[i]);
            for j in i + 1..k {
                w.extend(1, 0, self.edges[j]);
                w.emit(1, index);
                index += 1;
            }
        }
    }
}

// --- wheel -----------------------------------------------------------------

struct WheelKind;

/// Hub plus rim `rim[0..k]`; `rim_edges[i]` joins `rim[i]` and `rim[i+1 mod k]`,
/// `spokes[i]` joins the hub and `rim[i]`.
#[derive(Debug)]
struct WheelCuts {
    n: usize,
    hub: usize,
    rim: Vec<usize>,
    rim_edges: Vec<usize>,
    spokes: Vec<usize>,
}

impl BaseKind for WheelKind {
    fn name(&self) -> &'static str {
        "wheel"
    }

    fn recognize(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>> {
        let n = part.n;
        if n < 4 || part.edges.len() != 2 * (n - 1) || !part.is_simple() {
            return None;
        }
        let deg = part.degrees();
        let inc = part.incidence();
        let hub = (0..n).find(|&h| deg[h] == n - 1 && (0..n).all(|v| v == h || deg[v] == 3))?;
        let start = if hub == 0 { 1 } else { 0 };
        let mut spoke_of = vec![usize::MAX; n];
        for &e in &inc[hub] {
            spoke_of[part.other(e, hub)] = e;
        }
        // Rim walk avoiding the hub's edges.
        let mut rim = vec![start];
        let mut rim_edges = Vec::new();
        let mut prev_edge = usize::MAX;
        let mut at = start;
        loop {
            let next = inc[at]
                .iter()
                .copied()
                .find(|&e| e != prev_edge && spoke_of[at] != e && !rim_edges.contains(&e))?;
            rim_edges.push(next);
            prev_edge = next;
            at = part.other(next, at);
            if at == start {
                break;
            }
            if at == hub || rim.len() >= n - 1 {
                return None;
            }
            rim.push(at);
        }
        if rim.len() != n - 1 {
            return None;
        }
        let spokes = rim.iter().map(|&r| spoke_of[r]).collect();
        Some(Arc::new(WheelCuts { n, hub, rim, rim_edges, spokes }))
    }
}

impl WheelCuts {
    fn k(&self) -> usize {
        self.rim.len()
    }

    /// `(start, len)` of the rim arc, or `None` for the hub star.
    fn arc(&self, index: usize) -> Option<(usize, usize)> {
        let k = self.k();
        if index == k * (k - 1) {
            None
        } else {
            Some((index / (k - 1), index % (k - 1) + 1))
        }
    }
}

impl CutFamily for WheelCuts {
    fn kind(&self) -> PartKind {
        PartKind::Wheel { hub: self.hub }
    }

    fn cut_count(&self) -> usize {
        let k = self.k();
        k * (k - 1) + 1
    }

    fn cut_edges(&self, index: usize) -> Vec<usize> {
        let k = self.k();
        let mut v = match self.arc(index) {
            None => self.spokes.clone(),
            Some((start, len)) => {
                let mut v: Vec<usize> = (0..len).map(|q| self.spokes[(start + q) % k]).collect();
                v.push(self.rim_edges[(start + k - 1) % k]);
                v.push(self.rim_edges[(start + len - 1) % k]);
                v
            }
        };
        v.sort_unstable();
        v
    }

    fn cut_side(&self, index: usize) -> Vec<bool> {
        let k = self.k();
        let mut side = vec![false; self.n];
        match self.arc(index) {
            None => side[self.hub] = true,
            Some((start, len)) => {
                for q in 0..len {
                    side[self.rim[(start + q) % k]] = true;
                }
            }
        }
        side
    }

    fn walk(&self, w: &mut dyn CutWalker) {
        let k = self.k();
        for start in 0..k {
            let before = self.rim_edges[(start + k - 1) % k];
            w.clear(0);
            for len in 1..k {
                w.extend(0, 0, self.spokes[(start + len - 1) % k]);
                w.extend(1, 0, before);
                w.extend(1, 1, self.rim_edges[(start + len - 1) % k]);
                w.emit(1, start * (k - 1) + len - 1);
            }
        }
        w.clear(0);
        for &s in &self.spokes {
            w.extend(0, 0, s);
        }
        w.emit(0, k * (k - 1));
    }
}

// --- fixed tables: prism, K3,3, K5 ---------------------------------------------

/// Rigid kind with a fixed cut table, computed once by the oracle on a
/// canonical copy and transported through an explicit isomorphism.
struct TableKind {
    kind: PartKind,
    canonical: fn() -> Graph,
    table: &'static OnceLock<Vec<u64>>,
}

static PRISM_TABLE: OnceLock<Vec<u64>> = OnceLock::new();
static K33_TABLE: OnceLock<Vec<u64>> = OnceLock::new();
static K5_TABLE: OnceLock<Vec<u64>> = OnceLock::new();

fn prism_canonical() -> Graph {
    families::prism()
}

fn k33_canonical() -> Graph {
    families::complete_bipartite(3, 3)
}

fn k5_canonical() -> Graph {
    families::complete(5)
}

impl TableKind {
    fn prism() -> Self {
        TableKind { kind: PartKind::Prism, canonical: prism_canonical, table: &PRISM_TABLE }
    }

    fn k33() -> Self {
        TableKind { kind: PartKind::K33, canonical: k33_canonical, table: &K33_TABLE }
    }

    fn k5() -> Self {
        TableKind { kind: PartKind::K5, canonical: k5_canonical, table: &K5_TABLE }
    }

    /// Canonical vertex masks of the side holding canonical vertex 0.
    fn sides(&self) -> &'static [u64] {
        self.table.get_or_init(|| {
            let g = (self.canonical)();
            Oracle::default()
                .enum_connected_cuts(&g)
                .expect("canonical base graph is small and connected")
                .into_iter()
                .map(|c| c.side_a.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect()
        })
    }
}

/// Finds `phi` with `phi[c]` the part vertex playing canonical vertex `c`.
fn find_isomorphism(canon: &PartGraph, part: &PartGraph) -> Option<Vec<usize>> {
    let n = canon.n;
    if part.n != n || part.edges.len() != canon.edges.len() || !part.is_simple() {
        return None;
    }
    let adjacency = |g: &PartGraph| {
        let mut a = vec![0u64; n];
        for &(x, y) in &g.edges {
            a[x] |= 1 << y;
            a[y] |= 1 << x;
        }
        a
    };
    let ca = adjacency(canon);
    let pa = adjacency(part);
    let mut cdeg: Vec<u32> = ca.iter().map(|m| m.count_ones()).collect();
    let mut pdeg: Vec<u32> = pa.iter().map(|m| m.count_ones()).collect();
    let (cd, pd) = (cdeg.clone(), pdeg.clone());
    cdeg.sort_unstable();
    pdeg.sort_unstable();
    if cdeg != pdeg {
        return None;
    }
    fn extend(c: usize, phi: &mut Vec<usize>, used: u64, ca: &[u64], pa: &[u64], cd: &[u32], pd: &[u32]) -> bool {
        let n = ca.len();
        if c == n {
            return true;
        }
        for p in 0..n {
            if used >> p & 1 == 1 || cd[c] != pd[p] {
                continue;
            }
            let consistent = (0..c).all(|d| (ca[c] >> d & 1) == (pa[p] >> phi[d] & 1));
            if consistent {
                phi.push(p);
                if extend(c + 1, phi, used | 1 << p, ca, pa, cd, pd) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    let mut phi = Vec::with_capacity(n);
    extend(0, &mut phi, 0, &ca, &pa, &cd, &pd).then_some(phi)
}

#[derive(Debug)]
struct TableCuts {
    kind: PartKind,
    sides: Vec<Vec<bool>>,
    edges: Vec<Vec<usize>>,
}

impl BaseKind for TableKind {
    fn name(&self) -> &'static str {
        self.kind.name()
    }

    fn recognize(&self, part: &PartGraph) -> Option<Arc<dyn CutFamily>> {
        let canon = PartGraph::from_graph(&(self.canonical)());
        let phi = find_isomorphism(&canon, part)?;
        let mut sides = Vec::new();
        let mut edges = Vec::new();
        for &mask in self.sides() {
            let mut side = vec![false; part.n];
            for (c, &p) in phi.iter().enumerate() {
                side[p] = mask >> c & 1 == 1;
            }
            let crossing: Vec<usize> =
                (0..part.edges.len()).filter(|&i| side[part.edges[i].0] != side[part.edges[i].1]).collect();
            sides.push(side);
            edges.push(crossing);
        }
        Some(Arc::new(TableCuts { kind: self.kind, sides, edges }))
    }
}

impl CutFamily for TableCuts {
    fn kind(&self) -> PartKind {
        self.kind
    }

    fn cut_count(&self) -> usize {
        self.edges.len()
    }

    fn cut_edges(&self, index: usize) -> Vec<usize> {
        self.edges[index].clone()
    }

    fn cut_side(&self, index: usize) -> Vec<bool> {
        self.sides[index].clone()
    }

    fn walk(&self, w: &mut dyn CutWalker) {
        for (index, cut) in self.edges.iter().enumerate() {
            w.clear(0);
            for &e in cut {
                w.extend(0, 0, e);
            }
            w.emit(0, index);
        }
    }
}

/// Number of cuts per kind name, for reporting.
pub fn kind_histogram<'a>(kinds: impl IntoIterator<Item = &'a PartKind>) -> BTreeMap<&'static str, usize> {
    let mut h = BTreeMap::new();
    for k in kinds {
        *h.entry(k.name()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn pg(g: &Graph) -> PartGraph {
        PartGraph::from_graph(g)
    }

    /// Counts cuts through the walker interface.
    struct Counter(usize, Vec<usize>);

    impl CutWalker for Counter {
        fn clear(&mut self, _reg: usize) {}
        fn extend(&mut self, _dst: usize, _src: usize, _edge: usize) {}
        fn emit(&mut self, _reg: usize, cut: usize) {
            self.0 += 1;
            self.1.push(cut);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_part(&pg(&families::complete(4))), Some(PartKind::Wheel { hub: 0 }));
        assert_eq!(classify_part(&pg(&families::prism())), Some(PartKind::Prism));
        assert_eq!(classify_part(&pg(&families::complete_bipartite(3, 3))), Some(PartKind::K33));
        assert_eq!(classify_part(&pg(&families::complete(5))), Some(PartKind::K5));
        assert_eq!(classify_part(&pg(&families::petersen())), None);
        assert_eq!(classify_part(&pg(&families::k5_minus_edge())), None);
        assert_eq!(classify_part(&pg(&families::cycle(5))), Some(PartKind::Cycle));
        assert_eq!(classify_part(&pg(&families::wheel(7))), Some(PartKind::Wheel { hub: 0 }));
        assert!(KindRegistry::standard().classify(&pg(&families::complete(5))).is_none());
    }

    #[test]
    fn registry_names() {
        assert_eq!(KindRegistry::standard().names(), ["bond", "cycle", "wheel", "prism", "k33"]);
        let r = KindRegistry::with_k5();
        assert!(r.get("k5").is_some() && r.get("petersen").is_none());
    }

    #[test]
    fn counts() {
        let bond = build_graph(2, &[(0, 1, 1), (0, 1, 1), (0, 1, 1)]).unwrap();
        let f = KindRegistry::standard().classify(&pg(&bond)).unwrap();
        assert_eq!(enum_part_cuts(f.as_ref()), vec![vec![0, 1, 2]]);
        let f = KindRegistry::standard().classify(&pg(&families::cycle(4))).unwrap();
        assert_eq!(f.cut_count(), 6);
        let f = KindRegistry::standard().classify(&pg(&families::complete_bipartite(3, 3))).unwrap();
        assert_eq!(f.cut_count(), 24);
        for (n, expected) in [(4, 7), (5, 13), (6, 21)] {
            let f = KindRegistry::standard().classify(&pg(&families::wheel(n))).unwrap();
            assert_eq!(f.cut_count(), expected);
        }
    }

    #[test]
    fn w5_single_vertex_arcs() {
        let f = KindRegistry::standard().classify(&pg(&families::wheel(5))).unwrap();
        let singles: Vec<_> = (0..f.cut_count())
            .filter(|&i| f.cut_side(i).iter().filter(|&&b| b).count() == 1 && !f.cut_side(i)[0])
            .collect();
        assert_eq!(singles.len(), 4);
        assert!(singles.iter().all(|&i| f.cut_edges(i).len() == 3));
    }

    #[test]
    fn walk_visits_each_index_once() {
        for g in [families::wheel(8), families::cycle(6), families::prism()] {
            let f = KindRegistry::standard().classify(&pg(&g)).unwrap();
            let mut c = Counter(0, Vec::new());
            f.walk(&mut c);
            assert_eq!(c.0, f.cut_count());
            let mut seen = c.1.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..f.cut_count()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn wheel_with_displaced_hub() {
        // Wheel whose hub is local vertex 3.
        let g = build_graph(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 4, 1), (4, 0, 1), (3, 0, 1), (3, 1, 1), (3, 2, 1), (3, 4, 1)],
        )
        .unwrap();
        assert_eq!(classify_part(&pg(&g)), Some(PartKind::Wheel { hub: 3 }));
    }
}
