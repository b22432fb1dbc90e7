//! Flux and Hamming pseudometrics on separating curves, generic over a curve model.

use crate::flute::{self, Curve};
use crate::side::{Side, SideAssignment};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FluxError {
    #[error("curve is not separating")]
    NotSeparating,
    #[error("curves are not disjoint")]
    NotDisjoint,
    #[error("reference curve is not on a common side of both curves")]
    BadReference,
}

/// Discrete ends on the right of a curve, one assignment per class, plus a
/// genus coordinate that grows by one for each handle passed going right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub ends: Vec<SideAssignment>,
    pub genus: i64,
}

impl Profile {
    fn count_between(&self, other: &Profile) -> i64 {
        self.ends
            .iter()
            .zip(&other.ends)
            .map(|(a, b)| a.symmetric_difference(b).len() as i64)
            .sum()
    }

    /// `other` sits on the right of `self` as far as ends and genus can tell.
    fn dominated_by(&self, other: &Profile) -> bool {
        self.ends.iter().zip(&other.ends).all(|(a, b)| b.is_subset(a)) && other.genus >= self.genus
    }
}

pub trait CurveModel {
    type Curve: Clone;

    /// `None` for a curve that does not separate the two maximal ends.
    fn profile(&self, c: &Self::Curve) -> Option<Profile>;

    fn disjoint(&self, a: &Self::Curve, b: &Self::Curve) -> bool;

    /// A separating curve disjoint from all `curves` and beyond them on `side`.
    fn far_reference(&self, curves: &[&Self::Curve], side: Side) -> Self::Curve;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FluxValue {
    pub p: u64,
    pub g: u64,
    pub total: u64,
}

impl FluxValue {
    pub fn new(p: u64, g: u64) -> Self {
        FluxValue { p, g, total: p + g }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FluxSide {
    Right,
    Left,
    Neutral,
}

fn profile<M: CurveModel>(m: &M, c: &M::Curve) -> Result<Profile, FluxError> {
    m.profile(c).ok_or(FluxError::NotSeparating)
}

fn raw0(a: &Profile, b: &Profile) -> (i64, i64) {
    (a.count_between(b), (a.genus - b.genus).abs())
}

pub fn flux0<M: CurveModel>(m: &M, a: &M::Curve, b: &M::Curve) -> Result<FluxValue, FluxError> {
    let (pa, pb) = (profile(m, a)?, profile(m, b)?);
    if !m.disjoint(a, b) {
        return Err(FluxError::NotDisjoint);
    }
    let (p, g) = raw0(&pa, &pb);
    Ok(FluxValue::new(p as u64, g as u64))
}

pub fn flux<M: CurveModel>(m: &M, a: &M::Curve, b: &M::Curve, gamma: &M::Curve) -> Result<FluxValue, FluxError> {
    let (pa, pb, pg) = (profile(m, a)?, profile(m, b)?, profile(m, gamma)?);
    let right = pa.dominated_by(&pg) && pb.dominated_by(&pg);
    let left = pg.dominated_by(&pa) && pg.dominated_by(&pb);
    if !(right || left) || !m.disjoint(a, gamma) || !m.disjoint(b, gamma) {
        return Err(FluxError::BadReference);
    }
    let (pa0, ga0) = raw0(&pa, &pg);
    let (pb0, gb0) = raw0(&pb, &pg);
    Ok(FluxValue::new(pa0.abs_diff(pb0), ga0.abs_diff(gb0)))
}

/// Flux against an automatically chosen far-right reference.
pub fn flux_auto<M: CurveModel>(m: &M, a: &M::Curve, b: &M::Curve) -> Result<FluxValue, FluxError> {
    let gamma = m.far_reference(&[a, b], Side::Right);
    flux(m, a, b, &gamma)
}

/// Whether `b` is flux-right or flux-left of `a`, comparing `F_0` against a far-right reference.
pub fn flux_side<M: CurveModel>(m: &M, a: &M::Curve, b: &M::Curve) -> Result<FluxSide, FluxError> {
    let (pa, pb) = (profile(m, a)?, profile(m, b)?);
    let eta = profile(m, &m.far_reference(&[a, b], Side::Right))?;
    let (p1, g1) = raw0(&pa, &eta);
    let (p2, g2) = raw0(&pb, &eta);
    Ok(match (p1 + g1).cmp(&(p2 + g2)) {
        std::cmp::Ordering::Greater => FluxSide::Right,
        std::cmp::Ordering::Less => FluxSide::Left,
        std::cmp::Ordering::Equal => FluxSide::Neutral,
    })
}

pub fn hamming<M: CurveModel>(m: &M, a: &M::Curve, b: &M::Curve) -> Result<u64, FluxError> {
    let (pa, pb) = (profile(m, a)?, profile(m, b)?);
    let (p, g) = raw0(&pa, &pb);
    Ok((p + g) as u64)
}

/// The bi-infinite flute.
#[derive(Debug, Clone, Copy, Default)]
pub struct FluteModel;

impl CurveModel for FluteModel {
    type Curve = Curve;

    fn profile(&self, c: &Curve) -> Option<Profile> {
        Some(Profile { ends: vec![c.partition()?], genus: 0 })
    }

    fn disjoint(&self, a: &Curve, b: &Curve) -> bool {
        flute::are_disjoint(a.word(), b.word())
    }

    fn far_reference(&self, curves: &[&Curve], side: Side) -> Curve {
        let hull = flute::Carrier::hull(curves.iter().copied());
        match side {
            Side::Right => Curve::standard(hull.b + 1),
            Side::Left => Curve::standard(hull.a - 2),
        }
    }
}
