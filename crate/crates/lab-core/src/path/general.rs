//! Straight, lasso and detour paths in the descriptor model.

use super::cert::{certify, AnchorClaim, CertifiedPath, PathModel};
use super::PathError;
use crate::avenue::cantor::regions;
use crate::avenue::{apply_lasso, base_curve, is_full, CurveDescriptor, DescriptorModel, GeneralLasso, Payload};
use crate::flux::{flux_side, hamming, FluxSide};
use crate::side::Side;
use crate::surface::{piece_catalogue, ChunkKey, GenusMode, GenusToken};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// `v = apply_lasso(u, lasso)`, or the other way round when `reverse` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralEdge {
    pub piece: u32,
    pub lasso: GeneralLasso,
    #[serde(default)]
    pub reverse: bool,
}

impl PathModel for DescriptorModel {
    type Edge = GeneralEdge;

    fn check_edge(&self, u: &CurveDescriptor, v: &CurveDescriptor, e: &GeneralEdge) -> bool {
        let (x, y) = if e.reverse { (v, u) } else { (u, v) };
        matches!(apply_lasso(x, &e.lasso), Ok((z, Some(w))) if z == *y && w.piece == e.piece)
    }
}

pub type GeneralPath = CertifiedPath<CurveDescriptor, GeneralEdge>;

/// Vertices with witnessed edges between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Walk {
    pub vertices: Vec<CurveDescriptor>,
    pub edges: Vec<GeneralEdge>,
}

impl Walk {
    fn single(v: CurveDescriptor) -> Walk {
        Walk { vertices: vec![v], edges: vec![] }
    }

    pub fn reversed(mut self) -> Walk {
        self.vertices.reverse();
        self.edges.reverse();
        for e in &mut self.edges {
            e.reverse = !e.reverse;
        }
        self
    }

    /// Appends `w`, which must start where `self` ends.
    fn append(&mut self, w: Walk) {
        debug_assert_eq!(self.vertices.last(), w.vertices.first());
        self.vertices.extend(w.vertices.into_iter().skip(1));
        self.edges.extend(w.edges);
    }

    fn step(&mut self, l: GeneralLasso) -> Result<(), PathError> {
        let (n, w) = apply_lasso(self.vertices.last().unwrap(), &l)?;
        let w = w.ok_or_else(|| PathError::Uncertified("lasso payload is not a catalogue piece".into()))?;
        self.vertices.push(n);
        self.edges.push(GeneralEdge { piece: w.piece, lasso: l, reverse: false });
        Ok(())
    }
}

/// Splits chunks of `pool` until it holds at least `want` of them.
fn split_to(pool: &mut Vec<ChunkKey>, want: usize) {
    while !pool.is_empty() && pool.len() < want {
        let i = (0..pool.len()).min_by_key(|&i| (pool[i].path.len(), i)).unwrap();
        let k = pool.remove(i);
        pool.insert(i, k.child('1'));
        pool.insert(i, k.child('0'));
    }
}

/// Straight path across a full region: one discrete end or one handle per step,
/// with the Cantor ends of the region shared out so every step is a catalogue piece.
pub fn straight_walk(a: &CurveDescriptor, b: &CurveDescriptor) -> Result<Walk, PathError> {
    if !a.has_on_right(b) {
        return Err(PathError::NotDisjoint);
    }
    if a == b {
        return Ok(Walk::single(a.clone()));
    }
    if !is_full(a, b)? {
        return Err(PathError::NotFull);
    }
    let spec = &a.spec;
    let mut slots: Vec<(i64, u32)> = Vec::new();
    for (c, (x, y)) in a.state.discrete.iter().zip(&b.state.discrete).enumerate() {
        slots.extend(x.symmetric_difference(y).into_iter().map(|i| (i, c as u32 + 1)));
    }
    slots.sort();
    let genus = match spec.genus() {
        GenusMode::Finite(_) => (b.state.genus_offset - a.state.genus_offset) as usize,
        _ => 0,
    };
    // spread handles evenly among the discrete ends
    let (s, g) = (slots.len(), genus);
    let mut units: Vec<Option<(i64, u32)>> = Vec::with_capacity(s + g);
    let (mut i, mut j) = (0, 0);
    while i < s || j < g {
        let take_slot = j == g || (i < s && (2 * i + 1) * g <= (2 * j + 1) * s);
        if take_slot {
            units.push(Some(slots[i]));
            i += 1;
        } else {
            units.push(None);
            j += 1;
        }
    }
    let f = units.len();
    let mut pools: Vec<Vec<ChunkKey>> = (0..spec.m() as usize)
        .map(|j| {
            regions(j as u32 + 1, &[&a.state.cantor[j], &b.state.cantor[j]])
                .into_iter()
                .filter(|(_, s)| s[0] == Side::Right && s[1] == Side::Left)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    for p in &mut pools {
        split_to(p, f);
    }
    let cat = piece_catalogue(spec);
    let mut lassos: Vec<GeneralLasso> = units
        .into_iter()
        .enumerate()
        .map(|(t, u)| {
            let chunks: BTreeSet<ChunkKey> = pools
                .iter()
                .flat_map(|p| if t + 1 == f { p[t..].to_vec() } else { vec![p[t].clone()] })
                .collect();
            let payload = match u {
                Some((i, c)) => Payload { slots: [(c, i)].into_iter().collect(), chunks, genus: cat[c as usize - 1].genus },
                None => Payload { slots: BTreeSet::new(), chunks, genus: GenusToken::One },
            };
            GeneralLasso::new(payload, Side::Right)
        })
        .collect();
    // a wound target: wind the step that carries the marked piece
    for (p, wind) in b.state.marks.difference(&a.state.marks) {
        if let Some(l) = lassos.iter_mut().find(|l| l.payload == *p) {
            l.winding = *wind;
        }
    }
    let mut w = Walk::single(a.clone());
    for l in lassos {
        w.step(l)?;
    }
    if w.vertices.last() != Some(b) {
        return Err(PathError::Uncertified("straight path missed its target".into()));
    }
    Ok(w)
}

pub fn straight_path(a: &CurveDescriptor, b: &CurveDescriptor) -> Result<GeneralPath, PathError> {
    let w = straight_walk(a, b)?;
    let certs = certify(&DescriptorModel, &w.vertices, a, &[]);
    Ok(CertifiedPath { vertices: w.vertices, edges: w.edges, certs, anchors: vec![] })
}

/// A lasso taking the first discrete piece from copy `copy`, from the right.
pub fn far_lasso(spec: &crate::surface::ValidatedSpec, copy: i64) -> GeneralLasso {
    let piece = &piece_catalogue(spec)[0];
    let payload = Payload {
        slots: [(piece.discrete_class.unwrap(), copy)].into_iter().collect(),
        chunks: (1..=spec.m()).map(|j| ChunkKey::root(j, copy)).collect(),
        genus: piece.genus,
    };
    GeneralLasso::new(payload, Side::Right)
}

/// Applies one lasso to every vertex of a walk. Returns the new walk and the lasso.
pub fn lasso_walk(w: &Walk, copy: i64) -> Result<(Walk, GeneralLasso), PathError> {
    let spec = &w.vertices[0].spec;
    if spec.n() == 0 {
        return Err(PathError::NoDiscreteEnd);
    }
    if w.vertices.iter().any(|v| v.copy_range().1 >= copy) {
        return Err(PathError::TargetInsideCarrier);
    }
    let l = far_lasso(spec, copy);
    let vertices = w
        .vertices
        .iter()
        .map(|v| apply_lasso(v, &l).map(|r| r.0))
        .collect::<Result<Vec<_>, _>>()?;
    let m = DescriptorModel;
    for (i, e) in w.edges.iter().enumerate() {
        if !m.check_edge(&vertices[i], &vertices[i + 1], e) {
            return Err(PathError::Uncertified(format!("lassoed edge {i} lost its witness")));
        }
    }
    Ok((Walk { vertices, edges: w.edges.clone() }, l))
}

/// Undoes the winding lassos recorded on `a`, one edge each.
pub fn unwind(a: &CurveDescriptor) -> Result<Walk, PathError> {
    let mut w = Walk::single(a.clone());
    while let Some((p, wind)) = w.vertices.last().unwrap().state.marks.iter().next().cloned() {
        if w.edges.len() > a.state.marks.len() {
            return Err(PathError::Uncertified("winding marks do not unwind".into()));
        }
        let cur = w.vertices.last().unwrap();
        let side = match p.slots.iter().next() {
            Some(&(c, i)) => cur.state.discrete[c as usize - 1].side(i),
            None => match p.chunks.iter().next() {
                Some(k) => cur.state.cantor[k.class as usize - 1].side_at(k),
                // a bare handle has no side of its own: head back toward the base genus
                None if p.genus == GenusToken::One => {
                    let t = cur.state.discrete.first().map(|s| s.threshold).unwrap_or(1);
                    if cur.state.genus_offset > cur.spec.genus_per_copy() * (t - 1) {
                        Side::Left
                    } else {
                        Side::Right
                    }
                }
                None => return Err(PathError::Uncertified("empty winding mark".into())),
            },
        };
        let mut l = GeneralLasso::new(p, side);
        l.winding = wind;
        w.step(l)?;
    }
    Ok(w)
}

fn past(a: &CurveDescriptor, c: &CurveDescriptor, dir: i64) -> bool {
    let (x, y) = if dir > 0 { (a, c) } else { (c, a) };
    x.has_on_right(y) && is_full(x, y) == Ok(true)
}

/// Ball-avoiding path from `a` to `b` given `d(a, o) = d(b, o) = 6r`, where `b`
/// is a base curve.
pub fn detour_general(o: &CurveDescriptor, a: &CurveDescriptor, b: &CurveDescriptor, r: u64) -> Result<GeneralPath, PathError> {
    let m = DescriptorModel;
    let spec = b.spec.clone();
    if spec.n() == 0 {
        return Err(PathError::NoDiscreteEnd);
    }
    let gstep = spec.genus_per_copy();
    let k = match b.state.base_index(gstep) {
        Some(k) if b.state.marks.is_empty() => k,
        _ => return Err(PathError::NotStandard),
    };
    let claim = 6 * r;
    for (name, c) in [("a", a), ("b", b)] {
        let h = hamming(&m, c, o)?;
        if h > claim {
            return Err(PathError::PreconditionDistance(format!("d({name}, o) = {claim} is below H = {h}")));
        }
    }
    let dir: i64 = if flux_side(&m, o, b)? == FluxSide::Left { -1 } else { 1 };
    let lead = unwind(a)?;
    let a0 = lead.vertices.last().unwrap().clone();
    let mut push = Walk::single(b.clone());
    let mut copy = k;
    while !past(&a0, push.vertices.last().unwrap(), dir) {
        let cur = push.vertices.last().unwrap().clone();
        copy += dir;
        let next = base_curve(&spec, copy);
        let seg = if dir > 0 { straight_walk(&cur, &next)? } else { straight_walk(&next, &cur)?.reversed() };
        push.append(seg);
        if (copy - k).abs() > 10_000 {
            return Err(PathError::Uncertified("push never passed the start curve".into()));
        }
    }
    let beta = push.vertices.last().unwrap().clone();
    let straight = if dir > 0 { straight_walk(&a0, &beta)? } else { straight_walk(&beta, &a0)?.reversed() };

    let mut layers = vec![straight];
    let mut lassos = Vec::new();
    for _ in 0..2 * r {
        let cur = layers.last().unwrap();
        let far = cur.vertices.iter().chain(std::iter::once(o)).map(|v| v.copy_range().1).max().unwrap() + 1;
        let (next, l) = lasso_walk(cur, far)?;
        layers.push(next);
        lassos.push(l);
    }
    let n = layers[0].vertices.len() - 1;
    let rung = |i: usize| -> Result<Walk, PathError> {
        let mut w = Walk::single(layers[0].vertices[i].clone());
        for l in &lassos {
            w.step(l.clone())?;
        }
        Ok(w)
    };
    let mut path = lead;
    path.append(rung(0)?);
    path.append(layers.last().unwrap().clone());
    path.append(rung(n)?.reversed());
    path.append(push.reversed());

    let anchors = vec![AnchorClaim { vertex: 0, distance: claim }, AnchorClaim { vertex: path.vertices.len() - 1, distance: claim }];
    let certs = certify(&m, &path.vertices, o, &anchors);
    let p = CertifiedPath { vertices: path.vertices, edges: path.edges, certs, anchors };
    match p.min_bound() {
        Some(x) if x > r => Ok(p),
        x => Err(PathError::Uncertified(format!("weakest certificate {x:?} does not exceed R = {r}"))),
    }
}
