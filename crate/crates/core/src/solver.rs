//! Dynamic program over the part tree.
//!
//! Each block's part tree is rooted and processed bottom-up. For a child part
//! `Q` hanging off its parent through the twin `e_Q`, the state `B(Q)` is the
//! best cut of `Q`'s whole subtree that separates the two glued vertices: the
//! best cut `c` of `Q` with `e_Q ∈ c`, valued as the real weight of `c` plus
//! `B` of every other virtual edge in `c`. A connected cut of the block is
//! counted exactly once, at the highest part it touches, which is a cut of
//! that part avoiding its parent twin. For counting, `(opt, +)` becomes
//! `(+, ×)`.
//!
//! Ties are resolved toward the cut whose sorted edge-id sequence is
//! lexicographically smallest. For positive weights two tied cuts are never
//! nested, so the smaller one is the one holding the least edge of the
//! symmetric difference; this comparison factors through the tree, with each
//! subtree represented by its least chosen edge.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::decompose::{decompose, DecomposeError, EdgeLabel, PartTree, Witness};
use crate::enumerate::{kind_histogram, CutWalker, WALK_REGISTERS};
use crate::graph::{Cut, EdgeId, Graph};
use crate::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has fewer than two vertices; no cut exists")]
    NoCutExists,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is outside the class")]
    NotInClass(Box<Witness>),
    #[error("no connected cut contains edge {0}")]
    Infeasible(EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("zero-weight edge {0} is not allowed when minimizing")]
    ZeroWeight(EdgeId),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<DecomposeError> for SolveError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::Disconnected => SolveError::Disconnected,
            DecomposeError::NotInClass(w) => SolveError::NotInClass(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub allow_k5: bool,
    /// Worker threads for independent blocks; 1 runs inline.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { allow_k5: false, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stats {
    pub blocks: usize,
    pub parts: usize,
    /// Rigid part kinds with multiplicity, sorted by name.
    pub rigid_kinds: Vec<(String, usize)>,
    pub elapsed_ms: u64,
}

impl Stats {
    fn of(tree: &PartTree, start: Instant) -> Stats {
        let rigid = tree.rigid_kinds();
        Stats {
            blocks: tree.blocks.len(),
            parts: tree.parts.len(),
            rigid_kinds: kind_histogram(&rigid).into_iter().map(|(k, c)| (k.to_string(), c)).collect(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub mode: Mode,
    pub value: u64,
    pub cut: Cut,
    pub stats: Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSolution {
    pub value: BigUint,
    pub stats: Stats,
}

/// What each local edge of a part contributes while walking its cuts.
#[derive(Debug, Clone, Copy)]
struct EdgeVal {
    weight: u64,
    required: bool,
    excluded: bool,
}

impl EdgeVal {
    const NEUTRAL: EdgeVal = EdgeVal { weight: 0, required: false, excluded: false };
}

/// Best cut found in one walk, before tie resolution.
struct OptWalker<'a> {
    vals: &'a [EdgeVal],
    mode: Mode,
    need_required: bool,
    regs: [Option<(u64, bool)>; WALK_REGISTERS],
    best: Option<u64>,
    ties: Vec<usize>,
}

impl CutWalker for OptWalker<'_> {
    fn clear(&mut self, reg: usize) {
        self.regs[reg] = Some((0, false));
    }

    fn extend(&mut self, dst: usize, src: usize, edge: usize) {
        let v = self.vals[edge];
        self.regs[dst] = match self.regs[src] {
            Some((w, r)) if !v.excluded => Some((w + v.weight, r || v.required)),
            _ => None,
        };
    }

    fn emit(&mut self, reg: usize, cut: usize) {
        let Some((w, r)) = self.regs[reg] else { return };
        if self.need_required && !r {
            return;
        }
        match self.best {
            Some(b) if b == w => self.ties.push(cut),
            Some(b) if !self.mode.better(w, b) => {}
            _ => {
                self.best = Some(w);
                self.ties.clear();
                self.ties.push(cut);
            }
        }
    }
}

struct CountWalker<'a> {
    vals: &'a [Option<BigUint>],
    required: Option<usize>,
    excluded: Option<usize>,
    regs: [Option<(BigUint, bool)>; WALK_REGISTERS],
    total: BigUint,
}

impl CutWalker for CountWalker<'_> {
    fn clear(&mut self, reg: usize) {
        self.regs[reg] = Some((BigUint::one(), false));
    }

    fn extend(&mut self, dst: usize, src: usize, edge: usize) {
        if Some(edge) == self.excluded {
            self.regs[dst] = None;
            return;
        }
        let hit = Some(edge) == self.required;
        let next = match (&self.regs[src], &self.vals[edge]) {
            (None, _) => None,
            (Some((c, r)), None) => Some((c.clone(), *r || hit)),
            (Some((c, r)), Some(f)) => Some((c * f, *r || hit)),
        };
        self.regs[dst] = next;
    }

    fn emit(&mut self, reg: usize, _cut: usize) {
        if let Some((c, r)) = &self.regs[reg] {
            if self.required.is_none() || *r {
                self.total += c;
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct State {
    value: u64,
    cut: usize,
    least: EdgeId,
}

/// A rooted block: BFS order and parent twin per part.
struct Rooting {
    order: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
}

fn root_block(tree: &PartTree, block: usize, root: usize) -> Rooting {
    let n = tree.parts.len();
    let mut parent_edge = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let p = order[head];
        head += 1;
        for (i, _) in tree.parts[p].edges.iter().enumerate() {
            if let Some((q, j)) = tree.across(p, i) {
                if !seen[q] {
                    debug_assert_eq!(tree.parts[q].block, block);
                    seen[q] = true;
                    parent_edge[q] = Some(j);
                    order.push(q);
                }
            }
        }
    }
    Rooting { order, parent_edge }
}

/// Least element of the symmetric difference of two sorted sequences.
fn least_difference(a: &[EdgeId], b: &[EdgeId]) -> Option<(EdgeId, bool)> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) => return Some(if x < y { (*x, true) } else { (*y, false) }),
            (Some(x), None) => return Some((*x, true)),
            (None, Some(y)) => return Some((*y, false)),
            (None, None) => return None,
        }
    }
}

struct BlockDp<'t> {
    tree: &'t PartTree,
    mode: Mode,
    rooting: Rooting,
    states: Vec<Option<State>>,
}

impl<'t> BlockDp<'t> {
    fn new(tree: &'t PartTree, block: usize, root: usize, mode: Mode) -> Self {
        let rooting = root_block(tree, block, root);
        let mut dp = BlockDp { tree, mode, rooting, states: vec![None; tree.parts.len()] };
        for idx in (1..dp.rooting.order.len()).rev() {
            let p = dp.rooting.order[idx];
            let parent = dp.rooting.parent_edge[p];
            dp.states[p] = dp.best_in_part(p, parent, None);
        }
        dp
    }

    /// Per-edge contributions for a walk of `part`.
    fn values(&self, part: usize, required: Option<usize>, excluded: Option<usize>) -> Vec<EdgeVal> {
        let parent = self.rooting.parent_edge[part];
        self.tree.parts[part]
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut v = match e.label {
                    EdgeLabel::Real { weight, .. } => EdgeVal { weight, ..EdgeVal::NEUTRAL },
                    EdgeLabel::Virtual { .. } if Some(i) == parent => EdgeVal::NEUTRAL,
                    EdgeLabel::Virtual { .. } => {
                        let (q, _) = self.tree.across(part, i).expect("virtual edge has a twin");
                        match self.states[q] {
                            Some(s) => EdgeVal { weight: s.value, ..EdgeVal::NEUTRAL },
                            None => EdgeVal { excluded: true, ..EdgeVal::NEUTRAL },
                        }
                    }
                };
                v.required = Some(i) == required;
                v.excluded |= Some(i) == excluded;
                v
            })
            .collect()
    }

    /// Tie-break key of cut `cut` of `part`: real edge ids plus the least
    /// chosen edge of every child subtree it enters.
    fn signature(&self, part: usize, cut: usize) -> Vec<EdgeId> {
        let p = &self.tree.parts[part];
        let parent = self.rooting.parent_edge[part];
        let mut sig: Vec<EdgeId> = p
            .family()
            .cut_edges(cut)
            .into_iter()
            .filter(|&i| Some(i) != parent)
            .map(|i| match p.edges[i].label {
                EdgeLabel::Real { id, .. } => id,
                EdgeLabel::Virtual { .. } => {
                    let (q, _) = self.tree.across(part, i).expect("twin");
                    self.states[q].expect("feasible child").least
                }
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    fn best_in_part(
        &self,
        part: usize,
        required: Option<usize>,
        excluded: Option<usize>,
    ) -> Option<State> {
        let vals = self.values(part, required, excluded);
        let mut w = OptWalker {
            vals: &vals,
            mode: self.mode,
            need_required: required.is_some(),
            regs: [None; WALK_REGISTERS],
            best: None,
            ties: Vec::new(),
        };
        self.tree.parts[part].family().walk(&mut w);
        let value = w.best?;
        let mut best_cut = w.ties[0];
        let mut best_sig = self.signature(part, best_cut);
        for &c in &w.ties[1..] {
            let sig = self.signature(part, c);
            if let Some((_, false)) = least_difference(&best_sig, &sig) {
                best_cut = c;
                best_sig = sig;
            }
        }
        let least = *best_sig.first()?;
        Some(State { value, cut: best_cut, least })
    }

    /// Best cut of the block whose highest part is `part`.
    fn top_of(&self, part: usize, forced: Option<usize>) -> Option<State> {
        let parent = self.rooting.parent_edge[part];
        self.best_in_part(part, forced, parent)
    }

    /// Sorted real edge ids of the cut chosen at `part` with cut `cut`.
    fn expand(&self, part: usize, cut: usize) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack = vec![(part, cut)];
        while let Some((p, c)) = stack.pop() {
            let parent = self.rooting.parent_edge[p];
            for i in self.tree.parts[p].family().cut_edges(c) {
                if Some(i) == parent {
                    continue;
                }
                match self.tree.parts[p].edges[i].label {
                    EdgeLabel::Real { id, .. } => out.push(id),
                    EdgeLabel::Virtual { .. } => {
                        let (q, _) = self.tree.across(p, i).expect("twin");
                        stack.push((q, self.states[q].expect("feasible child").cut));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Best `(value, edges)` of one block, or of the forced edge's part only.
fn solve_block(tree: &PartTree, block: usize, mode: Mode, forced: Option<(usize, usize)>) -> Option<(u64, Vec<EdgeId>)> {
    let parts = &tree.blocks[block].parts;
    let root = forced.map_or(parts[0], |(p, _)| p);
    let dp = &BlockDp::new(tree, block, root, mode);
    let tops: Vec<(usize, State)> = match forced {
        Some((p, e)) => dp.top_of(p, Some(e)).map(|s| (p, s)).into_iter().collect(),
        None => parts.iter().filter_map(|&p| dp.top_of(p, None).map(|s| (p, s))).collect(),
    };
    pick(mode, tops.into_iter().map(|(p, s)| (s.value, move || dp.expand(p, s.cut))))
}

/// Optimum over candidates, lexicographically smallest edge list on ties.
/// Edge lists are only built for candidates tied at the optimum.
fn pick<F: FnOnce() -> Vec<EdgeId>>(mode: Mode, candidates: impl Iterator<Item = (u64, F)>) -> Option<(u64, Vec<EdgeId>)> {
    let mut best: Option<u64> = None;
    let mut tied: Vec<F> = Vec::new();
    for (value, edges) in candidates {
        match best {
            Some(b) if b == value => tied.push(edges),
            Some(b) if !mode.better(value, b) => {}
            _ => {
                best = Some(value);
                tied.clear();
                tied.push(edges);
            }
        }
    }
    let value = best?;
    let edges = tied.into_iter().map(|f| f()).min()?;
    Some((value, edges))
}

fn check_input(g: &Graph, mode: Mode) -> Result<(), SolveError> {
    if g.vertex_count() < 2 {
        return Err(SolveError::NoCutExists);
    }
    if mode == Mode::Min {
        if let Some(e) = g.edges().iter().find(|e| e.weight == 0) {
            return Err(SolveError::ZeroWeight(e.id));
        }
    }
    Ok(())
}

/// Computes both sides of `edges` and checks that they form a connected cut
/// of `g` of total weight `value`.
fn certify(g: &Graph, mode: Mode, value: u64, edges: Vec<EdgeId>, stats: Stats) -> Result<Solution, SolveError> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let is_cut: Vec<bool> = {
        let mut m = vec![false; g.edge_count()];
        for &id in &edges {
            m[g.edge_index(id).ok_or(SolveError::UnknownEdge(id))?] = true;
        }
        m
    };
    let mut label = vec![usize::MAX; n];
    let mut components = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = components;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &i in &inc[x] {
                if is_cut[i] {
                    continue;
                }
                let y = g.edges()[i].other(x);
                if label[y] == usize::MAX {
                    label[y] = components;
                    stack.push(y);
                }
            }
        }
        components += 1;
    }
    if components != 2 {
        return Err(SolveError::Internal(format!("cut leaves {components} components")));
    }
    let mask: Vec<bool> = label.iter().map(|&l| l == 0).collect();
    let cut = Cut::from_mask(g, &mask);
    if cut.edge_ids != edges {
        return Err(SolveError::Internal("cut edges do not match the bipartition".into()));
    }
    let weight = cut.weight(g);
    if weight != value {
        return Err(SolveError::Internal(format!("cut weighs {weight}, expected {value}")));
    }
    Ok(Solution { mode, value, cut, stats })
}

fn run_blocks<T: Send>(jobs: usize, blocks: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if jobs <= 1 || blocks <= 1 {
        return (0..blocks).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| (0..blocks).into_par_iter().map(&f).collect()),
        Err(_) => (0..blocks).map(f).collect(),
    }
}

/// Optimal connected cut of `g` (maximum or minimum weight).
pub fn solve(g: &Graph, mode: Mode) -> Result<Solution, SolveError> {
    solve_with(g, mode, SolveOptions::default())
}

pub fn solve_with(g: &Graph, mode: Mode, opts: SolveOptions) -> Result<Solution, SolveError> {
    let start = Instant::now();
    check_input(g, mode)?;
    let tree = decompose(g, opts.allow_k5)?;
    solve_tree(g, &tree, mode, opts.jobs, start)
}

/// Solves on an existing decomposition of `g`.
pub fn solve_tree(g: &Graph, tree: &PartTree, mode: Mode, jobs: usize, start: Instant) -> Result<Solution, SolveError> {
    check_input(g, mode)?;
    let per_block = run_blocks(jobs, tree.blocks.len(), |b| solve_block(tree, b, mode, None));
    let best = pick(mode, per_block.into_iter().flatten().map(|(v, e)| (v, move || e)));
    let (value, edges) = best.ok_or_else(|| SolveError::Internal("no cut found".into()))?;
    certify(g, mode, value, edges, Stats::of(tree, start))
}

/// Optimal connected cut containing the real edge `forced`.
pub fn solve_forced(g: &Graph, mode: Mode, forced: EdgeId) -> Result<Solution, SolveError> {
    solve_forced_with(g, mode, forced, SolveOptions::default())
}

pub fn solve_forced_with(g: &Graph, mode: Mode, forced: EdgeId, opts: SolveOptions) -> Result<Solution, SolveError> {
    let start = Instant::now();
    check_input(g, mode)?;
    g.edge(forced).ok_or(SolveError::UnknownEdge(forced))?;
    let tree = decompose(g, opts.allow_k5)?;
    let owner = tree.owner(forced).ok_or(SolveError::UnknownEdge(forced))?;
    let block = tree.parts[owner.0].block;
    let (value, edges) = solve_block(&tree, block, mode, Some(owner)).ok_or(SolveError::Infeasible(forced))?;
    certify(g, mode, value, edges, Stats::of(&tree, start))
}

fn count_block(tree: &PartTree, block: usize) -> BigUint {
    let parts = &tree.blocks[block].parts;
    let rooting = root_block(tree, block, parts[0]);
    let mut counts: Vec<Option<BigUint>> = vec![None; tree.parts.len()];
    let walk = |p: usize, counts: &[Option<BigUint>], required: Option<usize>, excluded: Option<usize>| {
        let parent = rooting.parent_edge[p];
        let vals: Vec<Option<BigUint>> = tree.parts[p]
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| match e.label {
                EdgeLabel::Virtual { .. } if Some(i) != parent => {
                    let (q, _) = tree.across(p, i).expect("twin");
                    Some(counts[q].clone().expect("child counted before parent"))
                }
                _ => None,
            })
            .collect();
        let mut w = CountWalker {
            vals: &vals,
            required,
            excluded,
            regs: [None, None],
            total: BigUint::zero(),
        };
        tree.parts[p].family().walk(&mut w);
        w.total
    };
    for idx in (1..rooting.order.len()).rev() {
        let p = rooting.order[idx];
        counts[p] = Some(walk(p, &counts, rooting.parent_edge[p], None));
    }
    parts.iter().map(|&p| walk(p, &counts, None, rooting.parent_edge[p])).sum()
}

/// `|C(G)|`, the number of connected cuts.
pub fn count_cuts(g: &Graph) -> Result<CountSolution, SolveError> {
    count_cuts_with(g, SolveOptions::default())
}

pub fn count_cuts_with(g: &Graph, opts: SolveOptions) -> Result<CountSolution, SolveError> {
    let start = Instant::now();
    if g.vertex_count() < 2 {
        return Err(SolveError::NoCutExists);
    }
    let tree = decompose(g, opts.allow_k5)?;
    let per_block = run_blocks(opts.jobs, tree.blocks.len(), |b| count_block(&tree, b));
    let value = per_block.into_iter().sum();
    Ok(CountSolution { value, stats: Stats::of(&tree, start) })
}

/// Cut count of every part, in part order.
pub fn per_part_counts(tree: &PartTree) -> Vec<usize> {
    tree.parts.iter().map(|p| p.family().cut_count()).collect()
}
