//! Separating curves on `S^♮ℤ` described by which ends and how much genus lie
//! on each side, built from base curves by translations and lassos.

use super::cantor::{regions, CantorSide};
use crate::side::{Side, SideAssignment};
use crate::surface::{piece_catalogue, ChunkKey, EndClass, GenusMode, GenusToken, ValidatedSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AvenueError {
    #[error("payload straddles the curve")]
    SidesMixed,
    #[error("invalid payload: {0}")]
    InvalidPayload(String),
    #[error("curves are not comparable")]
    NotComparable,
    #[error("bad trace: {0}")]
    BadTrace(String),
    #[error("malformed descriptor: {0}")]
    Malformed(String),
}

/// Ends and genus of the region a lasso moves across the curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Payload {
    /// Discrete ends as `(class, copy)`.
    #[serde(default)]
    pub slots: BTreeSet<(u32, i64)>,
    #[serde(default)]
    pub chunks: BTreeSet<ChunkKey>,
    pub genus: GenusToken,
}

impl Payload {
    pub fn shift(&self, k: i64) -> Payload {
        Payload {
            slots: self.slots.iter().map(|&(c, i)| (c, i + k)).collect(),
            chunks: self.chunks.iter().map(|c| c.shift(k)).collect(),
            genus: self.genus,
        }
    }

    fn is_empty(&self) -> bool {
        self.slots.is_empty() && self.chunks.is_empty() && self.genus == GenusToken::Zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralLasso {
    pub payload: Payload,
    /// Side of the curve the payload starts on.
    pub side: Side,
    #[serde(default)]
    pub winding: i64,
}

impl GeneralLasso {
    pub fn new(payload: Payload, side: Side) -> Self {
        GeneralLasso { payload, side, winding: 0 }
    }

    pub fn shift(&self, k: i64) -> GeneralLasso {
        GeneralLasso { payload: self.payload.shift(k), side: self.side, winding: self.winding }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    Base { copy: i64 },
    Translate { k: i64 },
    Lasso { lasso: GeneralLasso },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyWitness {
    /// Catalogue id of the capped piece matched by the payload.
    pub piece: u32,
    /// Index of the justifying lasso step in the new curve's trace.
    pub step: usize,
    pub lasso: GeneralLasso,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescriptorState {
    /// Discrete ends on the right, per class, indexed by copy.
    pub discrete: Vec<SideAssignment>,
    pub cantor: Vec<CantorSide>,
    /// Genus on the left, counted from `base(0)`. Zero unless the genus is finite.
    pub genus_offset: i64,
    /// Winding lassos applied an odd number of times.
    pub marks: BTreeSet<(Payload, i64)>,
}

impl DescriptorState {
    /// Copy index `k` such that the sides and genus are those of `base(k)`.
    pub fn base_index(&self, genus_step: i64) -> Option<i64> {
        let t = self.discrete.first().map(|s| s.threshold).or(self.cantor.first().map(|s| s.threshold))?;
        let plain = self.discrete.iter().all(|s| s.threshold == t && s.extra.is_empty())
            && self.cantor.iter().all(|s| s.threshold == t && s.overrides.is_empty());
        (plain && self.genus_offset == genus_step * (t - 1)).then_some(t - 1)
    }

    fn shift(&self, k: i64, genus_step: i64) -> DescriptorState {
        DescriptorState {
            discrete: self.discrete.iter().map(|s| s.shift(k)).collect(),
            cantor: self.cantor.iter().map(|s| s.shift(k)).collect(),
            genus_offset: self.genus_offset + genus_step * k,
            marks: self.marks.iter().map(|(p, w)| (p.shift(k), *w)).collect(),
        }
    }
}

/// Equality and hashing look at the surface and state only; traces just record how the curve was reached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub spec: ValidatedSpec,
    pub state: DescriptorState,
    pub trace: Vec<TraceStep>,
}

impl PartialEq for CurveDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.state == other.state
    }
}

impl Eq for CurveDescriptor {}

impl Hash for CurveDescriptor {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.state.hash(h);
    }
}

pub fn base_curve(spec: &ValidatedSpec, i: i64) -> CurveDescriptor {
    let state = DescriptorState {
        discrete: vec![SideAssignment::standard(i + 1); spec.n() as usize],
        cantor: vec![CantorSide::standard(i + 1); spec.m() as usize],
        genus_offset: spec.genus_per_copy() * i,
        marks: BTreeSet::new(),
    };
    CurveDescriptor { spec: spec.clone(), state, trace: vec![TraceStep::Base { copy: i }] }
}

pub fn translate_descriptor(d: &CurveDescriptor, k: i64) -> CurveDescriptor {
    let mut trace = d.trace.clone();
    trace.push(TraceStep::Translate { k });
    CurveDescriptor { spec: d.spec.clone(), state: d.state.shift(k, d.spec.genus_per_copy()), trace }
}

fn check_payload(spec: &ValidatedSpec, p: &Payload) -> Result<(), AvenueError> {
    let bad = |m: String| Err(AvenueError::InvalidPayload(m));
    if p.is_empty() {
        return bad("empty payload".into());
    }
    if let Some(&(c, _)) = p.slots.iter().find(|(c, _)| *c == 0 || *c > spec.n()) {
        return bad(format!("no discrete class {c}"));
    }
    if let Some(k) = p.chunks.iter().find(|k| k.class == 0 || k.class > spec.m()) {
        return bad(format!("no Cantor class for chunk {k}"));
    }
    for a in &p.chunks {
        if p.chunks.iter().any(|b| b != a && a.is_within(b)) {
            return bad(format!("chunk {a} overlaps another payload chunk"));
        }
    }
    let acc = &spec.spec().accumulated;
    let accumulated = p.slots.iter().any(|&(c, _)| acc.contains(&EndClass::Discrete(c)))
        || p.chunks.iter().any(|k| acc.contains(&EndClass::Cantor(k.class)));
    match (p.genus, spec.genus()) {
        (GenusToken::One, GenusMode::Finite(_)) => {}
        (GenusToken::One, _) => return bad("genus 1 payload needs finite genus".into()),
        (GenusToken::Infinite, _) if !accumulated => return bad("infinite genus without an accumulated end".into()),
        (GenusToken::Zero, _) if accumulated => return bad("accumulated end carries infinite genus".into()),
        _ => {}
    }
    Ok(())
}

/// Catalogue piece whose capped form matches the payload, if any.
pub fn matching_piece(spec: &ValidatedSpec, p: &Payload) -> Option<u32> {
    // several chunks of one class still form a single Cantor piece
    let chunk_each = (1..=spec.m()).all(|j| p.chunks.iter().any(|k| k.class == j));
    if !chunk_each {
        return None;
    }
    piece_catalogue(spec).into_iter().find_map(|piece| {
        let ends_ok = match piece.discrete_class {
            Some(i) => p.slots.len() == 1 && p.slots.iter().all(|&(c, _)| c == i),
            None => p.slots.is_empty(),
        };
        (ends_ok && piece.genus == p.genus).then_some(piece.id)
    })
}

/// Whether moving `moved` takes some but not all of `p` across.
fn splits(moved: &Payload, p: &Payload) -> bool {
    let (mut all, mut any) = (true, false);
    for s in &p.slots {
        let m = moved.slots.contains(s);
        all &= m;
        any |= m;
    }
    for k in &p.chunks {
        let whole = moved.chunks.iter().any(|c| k.is_within(c));
        all &= whole;
        any |= whole || moved.chunks.iter().any(|c| c.is_within(k));
    }
    any && !all
}

pub fn apply_lasso(
    d: &CurveDescriptor,
    l: &GeneralLasso,
) -> Result<(CurveDescriptor, Option<AdjacencyWitness>), AvenueError> {
    check_payload(&d.spec, &l.payload)?;
    let st = &d.state;
    let slot_ok = l.payload.slots.iter().all(|&(c, i)| st.discrete[c as usize - 1].side(i) == l.side);
    let chunk_ok = l
        .payload
        .chunks
        .iter()
        .all(|k| st.cantor[k.class as usize - 1].uniform_side(k) == Some(l.side));
    if !slot_ok || !chunk_ok {
        return Err(AvenueError::SidesMixed);
    }
    let mut next = st.clone();
    for &(c, i) in &l.payload.slots {
        next.discrete[c as usize - 1].toggle(i);
    }
    for k in &l.payload.chunks {
        next.cantor[k.class as usize - 1].assign(k, l.side.flip());
    }
    if l.payload.genus == GenusToken::One {
        next.genus_offset += if l.side == Side::Right { 1 } else { -1 };
    }
    // winding around a payload means nothing once the payload is split up
    next.marks.retain(|(p, _)| !splits(&l.payload, p));
    if l.winding != 0 {
        let m = (l.payload.clone(), l.winding);
        if !next.marks.remove(&m) {
            next.marks.insert(m);
        }
    }
    // a plain lasso onto base sides unwinds everything
    if l.winding == 0 && next.base_index(d.spec.genus_per_copy()).is_some() {
        next.marks.clear();
    }
    let mut trace = d.trace.clone();
    trace.push(TraceStep::Lasso { lasso: l.clone() });
    let step = trace.len() - 1;
    let witness = matching_piece(&d.spec, &l.payload).map(|piece| AdjacencyWitness { piece, step, lasso: l.clone() });
    Ok((CurveDescriptor { spec: d.spec.clone(), state: next, trace }, witness))
}

pub fn replay(spec: &ValidatedSpec, trace: &[TraceStep]) -> Result<CurveDescriptor, AvenueError> {
    let mut d = match trace.first() {
        Some(TraceStep::Base { copy }) => base_curve(spec, *copy),
        _ => return Err(AvenueError::BadTrace("trace must start at a base curve".into())),
    };
    for s in &trace[1..] {
        d = match s {
            TraceStep::Base { .. } => return Err(AvenueError::BadTrace("base curve inside trace".into())),
            TraceStep::Translate { k } => translate_descriptor(&d, *k),
            TraceStep::Lasso { lasso } => apply_lasso(&d, lasso)?.0,
        };
    }
    Ok(d)
}

impl CurveDescriptor {
    /// Parses a descriptor; the trace is replayed and must reproduce any stated state.
    pub fn from_json(s: &str) -> Result<CurveDescriptor, AvenueError> {
        #[derive(Deserialize)]
        struct Raw {
            spec: ValidatedSpec,
            state: Option<DescriptorState>,
            trace: Vec<TraceStep>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| AvenueError::Malformed(e.to_string()))?;
        let d = replay(&raw.spec, &raw.trace)?;
        match raw.state {
            Some(st) if st != d.state => Err(AvenueError::BadTrace("trace does not replay to the stated curve".into())),
            _ => Ok(d),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    /// Whether `b` lies in the closed right side of `self`, as far as ends and genus show.
    pub fn has_on_right(&self, b: &CurveDescriptor) -> bool {
        let (x, y) = (&self.state, &b.state);
        x.discrete.iter().zip(&y.discrete).all(|(p, q)| q.is_subset(p))
            && (0..x.cantor.len()).all(|j| {
                regions(j as u32 + 1, &[&x.cantor[j], &y.cantor[j]])
                    .iter()
                    .all(|(_, s)| !(s[1] == Side::Right && s[0] == Side::Left))
            })
            && y.genus_offset >= x.genus_offset
    }

    /// Copy indices outside of which the curve looks like a base curve.
    pub fn copy_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for s in &self.state.discrete {
            lo = lo.min(s.lo() - 1);
            hi = hi.max(s.threshold);
        }
        for c in &self.state.cantor {
            let (a, b) = c.copy_range();
            lo = lo.min(a - 1);
            hi = hi.max(b);
        }
        for (p, _) in &self.state.marks {
            for &(_, i) in &p.slots {
                lo = lo.min(i - 1);
                hi = hi.max(i);
            }
            for k in &p.chunks {
                lo = lo.min(k.copy - 1);
                hi = hi.max(k.copy);
            }
        }
        let g = self.spec.genus_per_copy();
        if g > 0 {
            let o = self.state.genus_offset;
            lo = lo.min(o.div_euclid(g) - 1);
            hi = hi.max(o.div_euclid(g) + 1);
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo, hi)
        }
    }
}

/// Whether `[a, b]` is full: `b` right of `a`, the region holds an end of every
/// maximal class, and positive genus when there are no discrete classes.
pub fn is_full(a: &CurveDescriptor, b: &CurveDescriptor) -> Result<bool, AvenueError> {
    if !a.has_on_right(b) {
        return Err(AvenueError::NotComparable);
    }
    let (x, y) = (&a.state, &b.state);
    let discrete = x.discrete.iter().zip(&y.discrete).all(|(p, q)| !p.symmetric_difference(q).is_empty());
    let cantor = (0..x.cantor.len()).all(|j| {
        regions(j as u32 + 1, &[&x.cantor[j], &y.cantor[j]])
            .iter()
            .any(|(_, s)| s[0] == Side::Right && s[1] == Side::Left)
    });
    let genus = a.spec.n() > 0 || y.genus_offset > x.genus_offset;
    Ok(discrete && cantor && genus)
}
