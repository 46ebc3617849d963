//! Markov partitions and topological entropy.

mod curve;
mod entropy;
mod laps;
mod partition;

use thiserror::Error;

use crate::kneading::KneadingError;
use crate::newton::NewtonError;
use crate::poly::PolyError;
use crate::symbolic::SymbolicError;

pub use curve::{entropy_at, entropy_curve, CurveBudget, CurvePoint};
pub use entropy::{
    entropy_from_charpoly, entropy_from_kneading, max_entropy, smallest_root_in_band, t_star_min,
    EntropyMethod, EntropyResult, ROOT_TOL,
};
pub use laps::{lap_counts, lap_growth_estimate, LapCounts};
pub use partition::{
    char_poly, checked_char_poly, markov_partition, transition_matrix, BoundaryPoint,
    MarkovPartition, PartitionInterval, PointKind, TransitionMatrix, COLLISION_TOL, MARKOV_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarkovError {
    #[error("partition has no intervals")]
    EmptyPartition,
    #[error("partition intervals are not increasing")]
    Unsorted,
    #[error("critical orbit is not periodic")]
    NotPeriodic,
    #[error("orbit point {value} collides with a frame point")]
    Collision { value: f64 },
    #[error("matrix is not square 0/1")]
    BadMatrix,
    #[error("image of interval {interval} does not land on boundary points")]
    NotMarkov { interval: usize },
    #[error("overlap of interval {from} with interval {to} is within tolerance")]
    Ambiguous { from: usize, to: usize },
    #[error("lap depth must be at least 4, got {0}")]
    Depth(usize),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Kneading(#[from] KneadingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
