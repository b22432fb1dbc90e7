//! Sides of Cantor-type ends: whole copies split at a threshold, refined by
//! explicit sides on chunks.

use crate::side::Side;
use crate::surface::ChunkKey;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Copies at or above `threshold` are on the right. An override fixes the side
/// of a chunk; the deepest override above a chunk wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CantorSide {
    pub threshold: i64,
    #[serde(with = "override_list")]
    pub overrides: BTreeMap<ChunkKey, Side>,
}

mod override_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<ChunkKey, Side>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<ChunkKey, Side>, D::Error> {
        let v: Vec<(ChunkKey, Side)> = Vec::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

impl CantorSide {
    pub fn standard(t: i64) -> Self {
        CantorSide { threshold: t, overrides: BTreeMap::new() }
    }

    fn default_side(&self, copy: i64) -> Side {
        if copy >= self.threshold {
            Side::Right
        } else {
            Side::Left
        }
    }

    /// Side inherited by `k` from its strict ancestors.
    fn inherited(&self, k: &ChunkKey) -> Side {
        let mut p = k.parent();
        while let Some(a) = p {
            if let Some(&s) = self.overrides.get(&a) {
                return s;
            }
            p = a.parent();
        }
        self.default_side(k.copy)
    }

    /// Side of the whole chunk `k` read at `k` itself, ignoring finer overrides.
    pub fn side_at(&self, k: &ChunkKey) -> Side {
        self.overrides.get(k).copied().unwrap_or_else(|| self.inherited(k))
    }

    fn has_override_below(&self, k: &ChunkKey) -> bool {
        self.overrides.keys().any(|o| o != k && o.is_within(k))
    }

    /// Side of chunk `k`, or `None` when parts of it lie on both sides.
    pub fn uniform_side(&self, k: &ChunkKey) -> Option<Side> {
        let s = self.side_at(k);
        let below = self.overrides.iter().filter(|(o, _)| *o != k && o.is_within(k));
        below.map(|(_, &v)| v).all(|v| v == s).then_some(s)
    }

    /// Puts all of chunk `k` on `side`.
    pub fn assign(&mut self, k: &ChunkKey, side: Side) {
        self.overrides.retain(|o, _| !o.is_within(k));
        self.overrides.insert(k.clone(), side);
        self.normalize();
    }

    /// Copy indices touched by the threshold or an override.
    pub fn copy_range(&self) -> (i64, i64) {
        let lo = self.overrides.keys().map(|k| k.copy).min().unwrap_or(self.threshold).min(self.threshold);
        let hi = self.overrides.keys().map(|k| k.copy).max().unwrap_or(self.threshold).max(self.threshold);
        (lo, hi)
    }

    /// Rewrites to the canonical form: overrides only on chunks that lie on one
    /// side, each differing from what it inherits, and the threshold that needs
    /// the fewest overrides (the lowest on ties).
    pub fn normalize(&mut self) {
        let (lo, hi) = self.copy_range();
        let leaves: Vec<(ChunkKey, Vec<(ChunkKey, Side)>)> = (lo..=hi)
            .map(|c| {
                let root = ChunkKey::root(self.class_of(c), c);
                let cells = regions_within(&root, &[self]).into_iter().map(|(k, s)| (k, s[0]));
                (root, cells.collect())
            })
            .collect();
        let mut best: Option<(usize, i64, BTreeMap<ChunkKey, Side>)> = None;
        for t in lo..=hi + 1 {
            let mut out = BTreeMap::new();
            for (root, cells) in &leaves {
                let d = if root.copy >= t { Side::Right } else { Side::Left };
                emit(root, cells, d, &mut out);
            }
            if best.as_ref().is_none_or(|b| out.len() < b.0) {
                best = Some((out.len(), t, out));
            }
        }
        let (_, t, o) = best.unwrap();
        self.threshold = t;
        self.overrides = o;
    }

    fn class_of(&self, _copy: i64) -> u32 {
        self.overrides.keys().next().map_or(1, |k| k.class)
    }

    pub fn shift(&self, k: i64) -> CantorSide {
        CantorSide {
            threshold: self.threshold + k,
            overrides: self.overrides.iter().map(|(c, &s)| (c.shift(k), s)).collect(),
        }
    }
}

/// Common refinement of several side maps of one class: chunks of constant side
/// for every map, covering the copies where any map is non-standard, plus one
/// copy of margin on each end.
pub fn regions(class: u32, maps: &[&CantorSide]) -> Vec<(ChunkKey, Vec<Side>)> {
    let lo = maps.iter().map(|m| m.copy_range().0).min().unwrap_or(0) - 1;
    let hi = maps.iter().map(|m| m.copy_range().1).max().unwrap_or(0) + 1;
    let mut out = Vec::new();
    for copy in lo..=hi {
        refine(ChunkKey::root(class, copy), maps, &mut out);
    }
    out
}

/// Like [`regions`], restricted to the inside of `root`.
pub fn regions_within(root: &ChunkKey, maps: &[&CantorSide]) -> Vec<(ChunkKey, Vec<Side>)> {
    let mut out = Vec::new();
    refine(root.clone(), maps, &mut out);
    out
}

fn refine(k: ChunkKey, maps: &[&CantorSide], out: &mut Vec<(ChunkKey, Vec<Side>)>) {
    if maps.iter().any(|m| m.has_override_below(&k)) {
        refine(k.child('0'), maps, out);
        refine(k.child('1'), maps, out);
    } else {
        let sides = maps.iter().map(|m| m.side_at(&k)).collect();
        out.push((k, sides));
    }
}

fn emit(node: &ChunkKey, cells: &[(ChunkKey, Side)], inherited: Side, out: &mut BTreeMap<ChunkKey, Side>) {
    let under: Vec<&(ChunkKey, Side)> = cells.iter().filter(|(k, _)| k.is_within(node)).collect();
    let first = under[0].1;
    if under.iter().all(|(_, s)| *s == first) {
        if first != inherited {
            out.insert(node.clone(), first);
        }
        return;
    }
    emit(&node.child('0'), cells, inherited, out);
    emit(&node.child('1'), cells, inherited, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(copy: i64, path: &str) -> ChunkKey {
        ChunkKey { class: 1, copy, path: path.into() }
    }

    #[test]
    fn assign_and_merge() {
        let mut s = CantorSide::standard(1);
        s.assign(&key(1, "0"), Side::Left);
        assert_eq!(s.uniform_side(&key(1, "")), None);
        assert_eq!(s.uniform_side(&key(1, "0")), Some(Side::Left));
        s.assign(&key(1, "1"), Side::Left);
        assert_eq!(s, CantorSide::standard(2));
        s.assign(&key(2, ""), Side::Left);
        s.assign(&key(0, "10"), Side::Right);
        s.assign(&key(0, "10"), Side::Left);
        assert_eq!(s, CantorSide::standard(3));
    }

    #[test]
    fn equal_sets_normalize_alike() {
        let mut a = CantorSide::standard(3);
        a.assign(&key(3, "1"), Side::Left);
        let mut b = CantorSide::standard(4);
        b.assign(&key(3, "0"), Side::Right);
        assert_eq!(a, b);
        a.assign(&key(5, "0"), Side::Left);
        b.assign(&key(5, "0"), Side::Left);
        assert_eq!(a, b);
    }

    #[test]
    fn refinement_covers_cells() {
        let a = CantorSide::standard(0);
        let mut b = CantorSide::standard(0);
        b.assign(&key(0, "01"), Side::Left);
        let r = regions(1, &[&a, &b]);
        let diff: Vec<_> = r.iter().filter(|(_, s)| s[0] != s[1]).map(|(k, _)| k.clone()).collect();
        assert_eq!(diff, vec![key(0, "01")]);
        assert_eq!(r.iter().filter(|(k, _)| k.copy == 0).count(), 3);
    }
}
