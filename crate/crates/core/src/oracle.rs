//! Exhaustive ground truth for small graphs.
//!
//! Every routine here walks all `2^(n-1)` bipartitions `{U, V \ U}` with
//! vertex 0 in `U`. Vertex sets are `u64` masks and connectivity is a
//! bitmask flood fill, so nothing in this module shares code with the
//! decomposition-based solver it is used to check.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::graph::{Cut, EdgeId, Graph};
use crate::Mode;

pub const DEFAULT_LIMIT: usize = 22;
/// Width of the vertex masks.
pub const MAX_LIMIT: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    NoCut,
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteOutcome {
    Optimal { cut: Cut, value: u64 },
    /// No connected cut contains all forced edges.
    Infeasible,
}

impl BruteOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            BruteOutcome::Optimal { value, .. } => Some(*value),
            BruteOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { limit: DEFAULT_LIMIT }
    }
}

struct Masks {
    n: usize,
    adj: Vec<u64>,
    ends: Vec<(u64, u64)>,
}

impl Masks {
    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn connected(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let mut reach = set & set.wrapping_neg();
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & set & !reach;
            reach |= frontier;
        }
        reach == set
    }

    fn crosses(&self, edge: usize, set: u64) -> bool {
        let (a, b) = self.ends[edge];
        (a & set != 0) != (b & set != 0)
    }

    /// Calls `f` with every `U ∋ 0` that induces a connected cut.
    fn for_each_connected(&self, mut f: impl FnMut(u64)) {
        let full = self.full();
        let rest = self.n - 1;
        for bits in 0..(1u64 << rest) - 1 {
            let set = (bits << 1) | 1;
            if self.connected(set) && self.connected(full & !set) {
                f(set);
            }
        }
    }
}

impl Oracle {
    pub fn new(limit: usize) -> Self {
        Oracle { limit: limit.min(MAX_LIMIT) }
    }

    fn masks(&self, g: &Graph) -> Result<Masks, OracleError> {
        let n = g.vertex_count();
        if n > self.limit {
            return Err(OracleError::TooLarge { n, limit: self.limit });
        }
        if n < 2 {
            return Err(OracleError::NoCut);
        }
        let mut adj = vec![0u64; n];
        let mut ends = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
            ends.push((1 << e.u, 1 << e.v));
        }
        let m = Masks { n, adj, ends };
        if !m.connected(m.full()) {
            return Err(OracleError::Disconnected);
        }
        Ok(m)
    }

    fn to_cut(g: &Graph, set: u64) -> Cut {
        let mask: Vec<bool> = (0..g.vertex_count()).map(|v| set >> v & 1 == 1).collect();
        Cut::from_mask(g, &mask)
    }

    /// `C(G)`: one canonical cut per connected bipartition, in mask order.
    pub fn enum_connected_cuts(&self, g: &Graph) -> Result<Vec<Cut>, OracleError> {
        let m = self.masks(g)?;
        let mut cuts = Vec::new();
        m.for_each_connected(|set| cuts.push(Self::to_cut(g, set)));
        Ok(cuts)
    }

    pub fn count_connected_cuts(&self, g: &Graph) -> Result<u64, OracleError> {
        let m = self.masks(g)?;
        let mut count = 0;
        m.for_each_connected(|_| count += 1);
        Ok(count)
    }

    /// Optimal connected cut containing every edge in `forced`.
    ///
    /// Ties go to the lexicographically smallest sorted edge-id sequence.
    pub fn best_cut_brute(
        &self,
        g: &Graph,
        mode: Mode,
        forced: &[EdgeId],
    ) -> Result<BruteOutcome, OracleError> {
        let m = self.masks(g)?;
        let forced_pos = forced
            .iter()
            .map(|&id| g.edge_index(id).ok_or(OracleError::UnknownEdge(id)))
            .collect::<Result<Vec<_>, _>>()?;
        let weights: Vec<u64> = g.edges().iter().map(|e| e.weight).collect();
        let mut best: Option<(u64, Vec<EdgeId>, u64)> = None;
        m.for_each_connected(|set| {
            if !forced_pos.iter().all(|&i| m.crosses(i, set)) {
                return;
            }
            let mut value = 0;
            let mut ids = Vec::new();
            for (i, e) in g.edges().iter().enumerate() {
                if m.crosses(i, set) {
                    value += weights[i];
                    ids.push(e.id);
                }
            }
            let better = match &best {
                None => true,
                Some((bv, bids, _)) => {
                    let by_value = match mode {
                        Mode::Max => value > *bv,
                        Mode::Min => value < *bv,
                    };
                    by_value || (value == *bv && ids < *bids)
                }
            };
            if better {
                best = Some((value, ids, set));
            }
        });
        Ok(match best {
            Some((value, _, set)) => BruteOutcome::Optimal { cut: Self::to_cut(g, set), value },
            None => BruteOutcome::Infeasible,
        })
    }

    /// Minimum of `w(δ(U))` over every bipartition, connected or not.
    pub fn min_over_all_bipartitions(&self, g: &Graph) -> Result<u64, OracleError> {
        let m = self.masks(g)?;
        let rest = m.n - 1;
        let mut best = u64::MAX;
        for bits in 0..(1u64 << rest) - 1 {
            let set = (bits << 1) | 1;
            let w: u64 = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| m.crosses(*i, set))
                .map(|(_, e)| e.weight)
                .sum();
            best = best.min(w);
        }
        Ok(best)
    }
}

/// Closed form for `|C(K_n)|` as published, both parity branches verbatim.
///
/// Only the odd branch agrees with enumeration; for even `n` the subtracted
/// binomial term does not match the true count (`K_4` has 7 connected cuts,
/// the expression gives 4). Kept for comparison output only.
pub fn complete_count_formula(n: u32) -> BigUint {
    assert!(n >= 2, "formula is stated for n >= 2");
    let base = (BigUint::one() << (n - 1)) - BigUint::one();
    if n % 2 == 1 {
        return base;
    }
    let half = n / 2;
    let mut binom = BigUint::one();
    for i in 0..half {
        binom = binom * (n - i) / (i + 1);
    }
    base - (binom >> 1)
}

/// True count of connected cuts of `K_n`: every proper bipartition qualifies.
pub fn complete_count_exact(n: u32) -> BigUint {
    (BigUint::one() << (n - 1)) - BigUint::one()
}
