//! Random lassos and descriptors for tests and suites.

use super::cantor::regions;
use super::descriptor::{apply_lasso, base_curve, CurveDescriptor, GeneralLasso, Payload};
use crate::side::Side;
use crate::surface::{piece_catalogue, ChunkKey, EndClass, GenusMode, GenusToken, ValidatedSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

/// Copies `lo..=hi` where the lasso may pick ends.
#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

fn pick_slot<R: Rng>(rng: &mut R, d: &CurveDescriptor, class: u32, side: Side, w: Window, taken: &BTreeSet<(u32, i64)>) -> Option<(u32, i64)> {
    let s = &d.state.discrete[class as usize - 1];
    let free: Vec<i64> = (w.lo..=w.hi).filter(|&i| s.side(i) == side && !taken.contains(&(class, i))).collect();
    free.choose(rng).map(|&i| (class, i))
}

fn pick_chunk<R: Rng>(rng: &mut R, d: &CurveDescriptor, class: u32, side: Side, w: Window) -> Option<ChunkKey> {
    let map = &d.state.cantor[class as usize - 1];
    let ok: Vec<ChunkKey> = regions(class, &[map])
        .into_iter()
        .filter(|(k, s)| s[0] == side && (w.lo..=w.hi).contains(&k.copy))
        .map(|(k, _)| k)
        .collect();
    let k = ok.choose(rng)?.clone();
    Some(match rng.gen_range(0..4) {
        0 => k.child('0'),
        1 => k.child('1'),
        _ => k,
    })
}

fn accumulated(spec: &ValidatedSpec, p: &Payload) -> bool {
    let acc = &spec.spec().accumulated;
    p.slots.iter().any(|&(c, _)| acc.contains(&EndClass::Discrete(c))) || p.chunks.iter().any(|k| acc.contains(&EndClass::Cantor(k.class)))
}

/// A lasso whose payload matches a catalogue piece. `genus_pieces` allows the
/// genus-one piece.
pub fn random_witnessed_lasso<R: Rng>(rng: &mut R, d: &CurveDescriptor, w: Window, genus_pieces: bool) -> Option<GeneralLasso> {
    let side = if rng.gen() { Side::Left } else { Side::Right };
    let cat: Vec<_> = piece_catalogue(&d.spec)
        .into_iter()
        .filter(|p| genus_pieces || p.genus != GenusToken::One)
        .collect();
    let piece = cat.choose(rng)?;
    let mut slots = BTreeSet::new();
    if let Some(i) = piece.discrete_class {
        slots.insert(pick_slot(rng, d, i, side, w, &BTreeSet::new())?);
    }
    let mut chunks = BTreeSet::new();
    for j in 1..=d.spec.m() {
        chunks.insert(pick_chunk(rng, d, j, side, w)?);
    }
    let payload = Payload { slots, chunks, genus: piece.genus };
    let winding = if rng.gen_range(0..5) == 0 { 1 } else { 0 };
    Some(GeneralLasso { payload, side, winding })
}

/// A lasso with an arbitrary small payload, usually not a catalogue piece.
pub fn random_lasso<R: Rng>(rng: &mut R, d: &CurveDescriptor, w: Window, genus_pieces: bool) -> Option<GeneralLasso> {
    let side = if rng.gen() { Side::Left } else { Side::Right };
    let mut slots = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=3) {
        if d.spec.n() == 0 {
            break;
        }
        let c = rng.gen_range(1..=d.spec.n());
        if let Some(s) = pick_slot(rng, d, c, side, w, &slots) {
            slots.insert(s);
        }
    }
    let mut chunks = BTreeSet::new();
    for j in 1..=d.spec.m() {
        if rng.gen() {
            if let Some(k) = pick_chunk(rng, d, j, side, w) {
                chunks.insert(k);
            }
        }
    }
    let mut payload = Payload { slots, chunks, genus: GenusToken::Zero };
    if accumulated(&d.spec, &payload) {
        payload.genus = GenusToken::Infinite;
    } else if genus_pieces && matches!(d.spec.genus(), GenusMode::Finite(_)) && rng.gen() {
        payload.genus = GenusToken::One;
    }
    if payload.slots.is_empty() && payload.chunks.is_empty() && payload.genus == GenusToken::Zero {
        return None;
    }
    Some(GeneralLasso::new(payload, side))
}

/// A walk of witnessed lassos from `base(start)`; every step is a graph edge.
pub fn random_walk<R: Rng>(rng: &mut R, spec: &ValidatedSpec, start: i64, w: Window, steps: usize) -> Vec<CurveDescriptor> {
    let mut out = vec![base_curve(spec, start)];
    let mut tries = 0;
    while out.len() <= steps && tries < 8 * steps + 8 {
        tries += 1;
        let cur = out.last().unwrap();
        if let Some(l) = random_witnessed_lasso(rng, cur, w, true) {
            if let Ok((n, Some(_))) = apply_lasso(cur, &l) {
                out.push(n);
            }
        }
    }
    out
}

pub fn random_descriptor<R: Rng>(rng: &mut R, spec: &ValidatedSpec, w: Window, steps: usize) -> CurveDescriptor {
    let start = rng.gen_range(w.lo..=w.hi);
    random_walk(rng, spec, start, w, steps).pop().unwrap()
}
