//! Seeded generator of in-class instances.
//!
//! Instances are built from a random base graph by repeatedly attaching a
//! fresh base graph through a 1-sum at a uniform vertex or a 2-sum at a
//! uniform live edge. The recipe is returned alongside the graph so tests know
//! which 3-connected parts the decomposition must find.
//!
//! # PRNG
//!
//! The state is seeded with one round of SplitMix64,
//!
//! ```text
//! z = seed + 0x9E3779B97F4A7C15
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! s = z ^ (z >> 31)            (s = 1 if this is 0)
//! ```
//!
//! and each draw advances it with xorshift64*,
//!
//! ```text
//! s ^= s >> 12;  s ^= s << 25;  s ^= s >> 27
//! out = s * 0x2545F4914F6CDD1D
//! ```
//!
//! all arithmetic modulo 2^64. A draw below `k` is `(out * k) >> 64` computed
//! in 128 bits.

use thiserror::Error;

use crate::graph::{build_graph, families, one_sum, two_sum, EdgeId, Graph, Orientation};

#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn seeded(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        let s = z ^ (z >> 31);
        XorShift64Star { state: if s == 0 { 1 } else { s } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut s = self.state;
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        self.state = s;
        s.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform draw in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        ((self.next_u64() as u128 * k as u128) >> 64) as u64
    }

    /// Uniform draw in `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        match (hi - lo).checked_add(1) {
            Some(span) => lo + self.below(span),
            None => self.next_u64(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Wheel(usize),
    Prism,
    K3,
    K33,
    K5,
}

impl Base {
    pub fn graph(self) -> Graph {
        match self {
            Base::Wheel(n) => families::wheel(n),
            Base::Prism => families::prism(),
            Base::K3 => families::complete(3),
            Base::K33 => families::complete_bipartite(3, 3),
            Base::K5 => families::complete(5),
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Base::Wheel(n) => n,
            Base::Prism | Base::K33 => 6,
            Base::K3 => 3,
            Base::K5 => 5,
        }
    }

    /// Name of the 3-connected part this base becomes, if any.
    pub fn rigid_name(self) -> Option<&'static str> {
        match self {
            Base::Wheel(_) => Some("wheel"),
            Base::Prism => Some("prism"),
            Base::K33 => Some("k33"),
            Base::K5 => Some("k5"),
            Base::K3 => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glue {
    Start,
    /// Identify vertex `at` of the graph so far with vertex `with` of the base.
    OneSum { at: usize, with: usize },
    /// 2-sum live edge `at` with base edge `with`.
    TwoSum { at: EdgeId, with: EdgeId, orientation: Orientation },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub base: Base,
    pub glue: Glue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub parts: usize,
    /// Wheel sizes are drawn from `min_size..=max_size`.
    pub min_size: usize,
    pub max_size: usize,
    pub weight_min: u64,
    pub weight_max: u64,
    pub allow_k5: bool,
    /// Chance in percent that an attachment is a 1-sum.
    pub one_sum_percent: u8,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            parts: 4,
            min_size: 4,
            max_size: 8,
            weight_min: 1,
            weight_max: 100,
            allow_k5: false,
            one_sum_percent: 30,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("at least one part is required")]
    NoParts,
    #[error("empty size range {min}..={max}")]
    EmptySizeRange { min: usize, max: usize },
    #[error("wheels need at least 4 vertices, got minimum {0}")]
    WheelTooSmall(usize),
    #[error("empty weight range {min}..={max}")]
    EmptyWeightRange { min: u64, max: u64 },
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("weights of {0} edges may overflow")]
    WeightOverflow(usize),
    #[error("recipe step {0} does not apply")]
    BadStep(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub vertex_count: usize,
    pub one_sums: usize,
    pub two_sums: usize,
    /// Sorted names of the 3-connected parts.
    pub rigid_kinds: Vec<&'static str>,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub recipe: Vec<Step>,
    pub summary: Summary,
}

impl GenConfig {
    fn validate(&self) -> Result<(), GenError> {
        if self.parts == 0 {
            return Err(GenError::NoParts);
        }
        if self.min_size > self.max_size {
            return Err(GenError::EmptySizeRange { min: self.min_size, max: self.max_size });
        }
        if self.min_size < 4 {
            return Err(GenError::WheelTooSmall(self.min_size));
        }
        if self.weight_min > self.weight_max {
            return Err(GenError::EmptyWeightRange { min: self.weight_min, max: self.weight_max });
        }
        if self.weight_min == 0 {
            return Err(GenError::ZeroWeight);
        }
        Ok(())
    }
}

fn draw_base(rng: &mut XorShift64Star, cfg: &GenConfig) -> Base {
    let kinds = if cfg.allow_k5 { 5 } else { 4 };
    match rng.below(kinds) {
        0 => Base::Wheel(rng.range(cfg.min_size as u64, cfg.max_size as u64) as usize),
        1 => Base::Prism,
        2 => Base::K3,
        3 => Base::K33,
        _ => Base::K5,
    }
}

/// Draws a recipe with `cfg.parts` bases.
pub fn gen_recipe(cfg: &GenConfig) -> Result<Vec<Step>, GenError> {
    cfg.validate()?;
    Ok(draw_recipe(cfg, |_, parts| parts >= cfg.parts))
}

/// Attaches bases until `done(vertices, parts)` holds.
fn draw_recipe(cfg: &GenConfig, done: impl Fn(usize, usize) -> bool) -> Vec<Step> {
    let mut rng = XorShift64Star::seeded(cfg.seed);
    let first = draw_base(&mut rng, cfg);
    let mut recipe = vec![Step { base: first, glue: Glue::Start }];
    let mut n = first.vertex_count();
    let mut live: Vec<EdgeId> = (0..first.graph().edge_count()).map(EdgeId).collect();
    // Mirrors `Graph::next_edge_id` of the graph built so far.
    let mut next_id = live.len();
    while !done(n, recipe.len()) {
        let base = draw_base(&mut rng, cfg);
        let bn = base.vertex_count();
        let bm = base.graph().edge_count();
        let one = live.is_empty() || rng.below(100) < cfg.one_sum_percent as u64;
        let glue = if one {
            let at = rng.below(n as u64) as usize;
            let with = rng.below(bn as u64) as usize;
            n += bn - 1;
            live.extend((next_id..next_id + bm).map(EdgeId));
            next_id += bm;
            Glue::OneSum { at, with }
        } else {
            let slot = rng.below(live.len() as u64) as usize;
            let at = live.swap_remove(slot);
            let with = EdgeId(rng.below(bm as u64) as usize);
            let orientation = if rng.below(2) == 0 { Orientation::Aligned } else { Orientation::Crossed };
            n += bn - 2;
            live.extend((0..bm).filter(|&i| i != with.0).map(|i| EdgeId(next_id + i)));
            // Base edges outnumber the one deleted, so the largest id is new.
            next_id += if with.0 == bm - 1 { bm - 1 } else { bm };
            Glue::TwoSum { at, with, orientation }
        };
        recipe.push(Step { base, glue });
    }
    recipe
}

/// Builds the unit-weight graph described by `recipe`. Edge ids follow the
/// sum constructors, so deleted glue edges leave gaps.
pub fn compose(recipe: &[Step]) -> Result<Graph, GenError> {
    let mut steps = recipe.iter().enumerate();
    let g = match steps.next() {
        Some((_, Step { base, glue: Glue::Start })) => base.graph(),
        Some(_) => return Err(GenError::BadStep(0)),
        None => return Err(GenError::NoParts),
    };
    steps.try_fold(g, |g, (i, step)| {
        let h = step.base.graph();
        match step.glue {
            Glue::Start => Err(GenError::BadStep(i)),
            Glue::OneSum { at, with } => one_sum(&g, at, &h, with).map_err(|_| GenError::BadStep(i)),
            Glue::TwoSum { at, with, orientation } => {
                two_sum(&g, at, &h, with, orientation).map_err(|_| GenError::BadStep(i))
            }
        }
    })
}

pub fn summarize(recipe: &[Step]) -> Summary {
    let mut rigid_kinds: Vec<_> = recipe.iter().filter_map(|s| s.base.rigid_name()).collect();
    rigid_kinds.sort_unstable();
    let mut vertex_count = 0;
    let (mut one_sums, mut two_sums) = (0, 0);
    for s in recipe {
        vertex_count += s.base.vertex_count();
        match s.glue {
            Glue::Start => {}
            Glue::OneSum { .. } => {
                one_sums += 1;
                vertex_count -= 1;
            }
            Glue::TwoSum { .. } => {
                two_sums += 1;
                vertex_count -= 2;
            }
        }
    }
    Summary { vertex_count, one_sums, two_sums, rigid_kinds }
}

/// Renumbers edges `0..m` in id order and draws weights.
fn finish(g: &Graph, cfg: &GenConfig, rng: &mut XorShift64Star) -> Result<Graph, GenError> {
    let triples: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, rng.range(cfg.weight_min, cfg.weight_max) as i64))
        .collect();
    if cfg.weight_max > i64::MAX as u64 {
        return Err(GenError::WeightOverflow(triples.len()));
    }
    build_graph(g.vertex_count(), &triples).map_err(|_| GenError::WeightOverflow(triples.len()))
}

pub fn gen_instance(cfg: &GenConfig) -> Result<Instance, GenError> {
    build(cfg, gen_recipe(cfg)?)
}

/// Keeps attaching parts until the graph has at least `vertices` vertices.
/// `cfg.parts` is ignored.
pub fn gen_with_vertices(cfg: &GenConfig, vertices: usize) -> Result<Instance, GenError> {
    GenConfig { parts: 1, ..cfg.clone() }.validate()?;
    let recipe = draw_recipe(cfg, |n, _| n >= vertices);
    build(cfg, recipe)
}

fn build(cfg: &GenConfig, recipe: Vec<Step>) -> Result<Instance, GenError> {
    let unit = compose(&recipe)?;
    let mut rng = XorShift64Star::seeded(cfg.seed ^ 0x5745_4947_4854_5321);
    let graph = finish(&unit, cfg, &mut rng)?;
    let summary = summarize(&recipe);
    Ok(Instance { graph, recipe, summary })
}
