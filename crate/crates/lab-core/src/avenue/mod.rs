//! Symbolic model of separating curves on general avenue surfaces.

pub mod cantor;
pub mod descriptor;
pub mod model;
pub mod sample;

pub use cantor::CantorSide;
pub use descriptor::{
    apply_lasso, base_curve, is_full, matching_piece, replay, translate_descriptor, AdjacencyWitness, AvenueError,
    CurveDescriptor, DescriptorState, GeneralLasso, Payload, TraceStep,
};
pub use model::DescriptorModel;
