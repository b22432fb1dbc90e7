//! Curves on the bi-infinite flute: the cylinder `ℝ × S¹` with punctures at
//! the integer points of the line `L = ℝ × {0}`.

pub mod arrange;
pub mod word;

pub use arrange::{are_disjoint, is_simple, Arrangement, Edge};
pub use word::{Curve, Dir, Letter};
pub mod diagram;
pub mod error;
pub mod lasso;
pub mod ops;
pub mod polyline;
pub mod sample;

pub use error::FluteError;
pub use lasso::{enumerate_neighbors, lasso, Anchor, Carrier, LassoArc};
pub use ops::{adjacent, lies_right_of, punctures_between};
