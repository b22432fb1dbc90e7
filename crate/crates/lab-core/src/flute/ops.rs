//! Pairwise operations on separating flute curves.

use super::arrange::are_disjoint;
use super::error::FluteError;
use super::word::Curve;
use std::collections::BTreeSet;

/// Punctures of the region between two disjoint separating curves.
pub fn punctures_between(a: &Curve, b: &Curve) -> Result<BTreeSet<i64>, FluteError> {
    let pa = a.partition().ok_or(FluteError::NotSeparating)?;
    let pb = b.partition().ok_or(FluteError::NotSeparating)?;
    if !are_disjoint(a.word(), b.word()) {
        return Err(FluteError::NotDisjoint);
    }
    Ok(pa.symmetric_difference(&pb))
}

/// Adjacency in the flute graph: disjoint, cobounding a once-punctured annulus.
pub fn adjacent(a: &Curve, b: &Curve) -> bool {
    matches!(punctures_between(a, b), Ok(s) if s.len() == 1)
}

/// `b` is disjoint from `a` and lies in its right side.
pub fn lies_right_of(a: &Curve, b: &Curve) -> bool {
    match (a.partition(), b.partition()) {
        (Some(pa), Some(pb)) => pb.is_subset(&pa) && are_disjoint(a.word(), b.word()),
        _ => false,
    }
}
