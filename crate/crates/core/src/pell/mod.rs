//! Pell equations and the basepoint-freeness threshold of abelian surfaces.

pub mod solve;
pub mod surface;

use thiserror::Error;

pub use solve::{is_square, nth_solution, solve_pell, PellSolution};
pub use surface::{
    middle_bound, rojas_beta, verify_surface_bound, verify_surface_row, BetaCandidate, RowVerdict, SurfaceBeta,
    SurfaceBranch, SurfaceReport, SurfaceRow,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("N = {0} is a perfect square (or < 2); x² − N y² = 1 has no positive solution")]
    PerfectSquareInput(u64),
    #[error("solution index must be at least 1")]
    ZeroIndex,
    #[error("({x}, {y}) does not solve x² − {n} y² = 1")]
    NotASolution { n: u64, x: String, y: String },
    #[error("{0}")]
    InvalidArgument(String),
}
