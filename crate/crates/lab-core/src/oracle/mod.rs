//! Brute-force ground truth on finite slices of the curve graph.

pub mod graph;
pub mod universe;

pub use graph::{
    all_geodesics, bfs_distance, bfs_from, components_outside_ball, criterion_check, Component, CriterionReport,
    FiniteGraphSlice,
};
pub use universe::{build_universe, forget_path, is_path, Universe, UniverseSpec};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("vertex budget of {0} exceeded")]
    Exhausted(usize),
    #[error("vertex {0} is not in the slice")]
    VertexMissing(String),
    #[error("more than the cap of {} geodesics", .partial.len())]
    CapExceeded { partial: Vec<Vec<usize>> },
    #[error("bad bounds: {0}")]
    BadBounds(String),
    #[error(transparent)]
    Flute(#[from] crate::flute::FluteError),
}
