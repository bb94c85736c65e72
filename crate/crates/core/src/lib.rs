//! Connected maximum cut, minimum cut and connected-cut counting for graphs
//! with no `K5 \ e` minor.
//!
//! Such graphs are exactly the 1-sums and 2-sums of wheels, the triangular
//! prism, `K3` and `K3,3`. [`decompose`](decompose::decompose) recovers that
//! structure, [`enumerate`] lists the connected cuts of each base graph, and
//! [`solver`] combines them with a dynamic program over the part tree.

pub mod cli;
pub mod decompose;
pub mod enumerate;
pub mod formats;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod planar;
pub mod solver;

pub use decompose::{decompose, recompose, PartTree};
pub use graph::{build_graph, Cut, EdgeId, Graph};
pub use solver::{count_cuts, solve, solve_forced, Solution};

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Max,
    Min,
}

impl Mode {
    /// Whether `a` strictly beats `b`.
    pub fn better(self, a: u64, b: u64) -> bool {
        match self {
            Mode::Max => a > b,
            Mode::Min => a < b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Max => "max",
            Mode::Min => "min",
        }
    }
}
