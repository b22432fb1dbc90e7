//! Certified paths in the curve graph: straight paths, lasso paths and detours
//! around balls.

pub mod cert;
pub mod flute;
pub mod general;

use crate::avenue::AvenueError;
use crate::flute::FluteError;
use crate::flux::FluxError;
use thiserror::Error;

pub use cert::{certify, verify_path, AnchorClaim, Certificate, CertifiedPath, PathModel, VerifyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("curves are not disjoint with the target on the right")]
    NotDisjoint,
    #[error("region between the curves is not full")]
    NotFull,
    #[error("lasso target lies inside the carrier")]
    TargetInsideCarrier,
    #[error("target must be a translate of a standard curve")]
    NotStandard,
    #[error("surface has no discrete-type end class")]
    NoDiscreteEnd,
    #[error("inconsistent distance data: {0}")]
    PreconditionDistance(String),
    #[error("construction failed to certify: {0}")]
    Uncertified(String),
    #[error(transparent)]
    Flute(#[from] FluteError),
    #[error(transparent)]
    Avenue(#[from] AvenueError),
    #[error(transparent)]
    Flux(#[from] FluxError),
}
