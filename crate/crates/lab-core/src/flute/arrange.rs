//! Joint realization of several reduced words in the cut-open cylinder.
//!
//! Cutting along `L` gives the strip `ℝ × (0,1)`; its boundary circle runs along
//! the bottom edge `B` (`y = 0`, left to right), through `+∞`, back along the
//! top edge `T` (`y = 1`, right to left) and through `-∞`. Every crossing of a
//! curve with `L` has a copy on each edge, and every passage of a curve between
//! two consecutive crossings is a chord of the strip.
//!
//! The left-to-right order of crossings inside a gap is forced once the curves
//! are in minimal position and pairwise disjoint. Two crossings are compared by
//! following both curves in parallel until they part; the side on which they
//! part decides the order. Following them backwards as well detects linking.

use super::word::{Dir, Letter};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangeError {
    /// Curves `a` and `b` (possibly equal) must intersect.
    #[error("curves {0} and {1} cannot be realized disjointly")]
    Linked(usize, usize),
    #[error("curve {0} is a proper power")]
    ProperPower(usize),
    #[error("empty word")]
    Empty,
}

/// Position on the boundary circle of the strip, ordered counter-clockwise
/// starting from `-∞` on the bottom edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BKey(pub u8, pub i64, pub i64);

impl BKey {
    pub fn crossing_b(gap: i64, rank: usize) -> BKey {
        BKey(0, gap, 2 * rank as i64 + 2)
    }
    pub fn crossing_t(gap: i64, rank: usize) -> BKey {
        BKey(1, -gap, -(2 * rank as i64 + 2))
    }
    pub fn puncture(p: i64, edge: Edge) -> BKey {
        match edge {
            Edge::B => BKey(0, p, 0),
            Edge::T => BKey(1, -p, 0),
        }
    }
    /// Slot `q` of gap `g`: between the `q`-th and `q+1`-th crossing.
    pub fn location(gap: i64, q: usize, edge: Edge) -> BKey {
        match edge {
            Edge::B => BKey(0, gap, 2 * q as i64 + 1),
            Edge::T => BKey(1, -gap, -(2 * q as i64 + 1)),
        }
    }
    pub const PLUS_INF: BKey = BKey(0, i64::MAX, 0);
    pub const MINUS_INF: BKey = BKey(1, i64::MAX, 0);
}

/// Which copy of `L` on the strip boundary: `B` is just above `L`, `T` just below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Edge {
    B,
    T,
}

impl Edge {
    pub fn other(self) -> Edge {
        match self {
            Edge::B => Edge::T,
            Edge::T => Edge::B,
        }
    }
}

// Sides of the strip as boundary intervals: (edge, gap).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct StripSide(u8, i64);

impl StripSide {
    fn pos(self) -> (u8, i64) {
        if self.0 == 0 {
            (0, self.1)
        } else {
            (1, -self.1)
        }
    }
    /// Counter-clockwise position measured from `from`.
    fn rel(self, from: StripSide) -> (u8, (u8, i64)) {
        let (p, f) = (self.pos(), from.pos());
        if p > f {
            (0, p)
        } else {
            (1, p)
        }
    }
}

fn entry_side(l: Letter) -> StripSide {
    match l.dir {
        Dir::U => StripSide(0, l.gap),
        Dir::D => StripSide(1, l.gap),
    }
}

fn exit_side(l: Letter) -> StripSide {
    match l.dir {
        Dir::U => StripSide(1, l.gap),
        Dir::D => StripSide(0, l.gap),
    }
}

#[derive(Clone, Copy)]
struct Walker {
    c: usize,
    i: usize,
    o: i8,
}

impl Walker {
    fn letter(&self, words: &[Vec<Letter>]) -> Letter {
        let l = words[self.c][self.i];
        if self.o > 0 {
            l
        } else {
            l.inv()
        }
    }
    fn step(&mut self, words: &[Vec<Letter>]) {
        let n = words[self.c].len();
        self.i = if self.o > 0 { (self.i + 1) % n } else { (self.i + n - 1) % n };
    }
}

/// Both walkers have just crossed the same gap in the same direction. Returns
/// whether `a` enters the strip counter-clockwise after `b`, or `None` if the
/// walkers never part within `limit` steps.
fn parts(words: &[Vec<Letter>], mut a: Walker, mut b: Walker, limit: usize) -> Option<bool> {
    for _ in 0..limit {
        let s = entry_side(a.letter(words));
        let (mut na, mut nb) = (a, b);
        na.step(words);
        nb.step(words);
        let (ea, eb) = (exit_side(na.letter(words)), exit_side(nb.letter(words)));
        if ea != eb {
            return Some(ea.rel(s) < eb.rel(s));
        }
        a = na;
        b = nb;
    }
    None
}

/// Order of two crossings in the same gap: `Greater` when `a` lies to the right.
pub fn compare_crossings(words: &[Vec<Letter>], a: (usize, usize), b: (usize, usize)) -> Result<Ordering, ArrangeError> {
    if a == b {
        return Ok(Ordering::Equal);
    }
    let la = words[a.0][a.1];
    let lb = words[b.0][b.1];
    debug_assert_eq!(la.gap, lb.gap);
    let oa: i8 = if la.dir == Dir::U { 1 } else { -1 };
    let ob: i8 = if lb.dir == Dir::U { 1 } else { -1 };
    let limit = words[a.0].len() + words[b.0].len() + 2;
    let wa = Walker { c: a.0, i: a.1, o: oa };
    let wb = Walker { c: b.0, i: b.1, o: ob };
    // forwards: entering across the bottom edge, later means further right
    let fwd = parts(words, wa, wb, limit);
    let back = parts(words, Walker { o: -oa, ..wa }, Walker { o: -ob, ..wb }, limit).map(|later| !later);
    let right = match (fwd, back) {
        (Some(f), Some(b2)) if f != b2 => return Err(ArrangeError::Linked(a.0, b.0)),
        (Some(f), _) | (None, Some(f)) => f,
        (None, None) => {
            if a.0 == b.0 {
                return Err(ArrangeError::ProperPower(a.0));
            }
            // parallel copies of one class: keep the lower index consistently on one side
            (a.0 < b.0) ^ (oa < 0)
        }
    };
    Ok(if right { Ordering::Greater } else { Ordering::Less })
}

fn merge_sort<T: Copy, E>(v: &mut Vec<T>, cmp: &mut impl FnMut(T, T) -> Result<Ordering, E>) -> Result<(), E> {
    if v.len() <= 1 {
        return Ok(());
    }
    let mut right = v.split_off(v.len() / 2);
    merge_sort(v, cmp)?;
    merge_sort(&mut right, cmp)?;
    let left = std::mem::take(v);
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if cmp(left[i], right[j])? == Ordering::Greater {
            v.push(right[j]);
            j += 1;
        } else {
            v.push(left[i]);
            i += 1;
        }
    }
    v.extend_from_slice(&left[i..]);
    v.extend_from_slice(&right[j..]);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub curve: usize,
    /// Passage from crossing `j` to crossing `j + 1` of the word.
    pub j: usize,
    pub start: BKey,
    pub end: BKey,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub words: Vec<Vec<Letter>>,
    /// Rank of each crossing within its gap, counted from the left.
    pub rank: Vec<Vec<usize>>,
    /// Crossings of each gap from left to right.
    pub order: BTreeMap<i64, Vec<(usize, usize)>>,
    pub chords: Vec<Chord>,
    chord_base: Vec<usize>,
    endpoints: Vec<(BKey, usize)>,
    seg_face: Vec<usize>,
    pub n_faces: usize,
}

impl Arrangement {
    /// Realizes the words jointly, failing if any two of them (or any one with
    /// itself) must intersect.
    pub fn new(words: Vec<Vec<Letter>>) -> Result<Arrangement, ArrangeError> {
        let a = Self::build(words)?;
        if let Some((x, y)) = a.first_crossing_pair() {
            return Err(ArrangeError::Linked(a.chords[x].curve, a.chords[y].curve));
        }
        Ok(a)
    }

    /// As [`Arrangement::new`] but trusts the caller that the curves are
    /// simple and pairwise disjoint; only comparator inconsistencies are reported.
    pub fn new_trusted(words: Vec<Vec<Letter>>) -> Result<Arrangement, ArrangeError> {
        Self::build(words)
    }

    fn build(words: Vec<Vec<Letter>>) -> Result<Arrangement, ArrangeError> {
        if words.iter().any(|w| w.is_empty()) {
            return Err(ArrangeError::Empty);
        }
        let mut order: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, w) in words.iter().enumerate() {
            for (i, l) in w.iter().enumerate() {
                order.entry(l.gap).or_default().push((c, i));
            }
        }
        for occ in order.values_mut() {
            merge_sort(occ, &mut |x, y| compare_crossings(&words, x, y))?;
        }
        let mut rank: Vec<Vec<usize>> = words.iter().map(|w| vec![0; w.len()]).collect();
        for occ in order.values() {
            for (r, &(c, i)) in occ.iter().enumerate() {
                rank[c][i] = r;
            }
        }
        let mut chords = Vec::new();
        let mut chord_base = Vec::new();
        for (c, w) in words.iter().enumerate() {
            chord_base.push(chords.len());
            let n = w.len();
            for j in 0..n {
                let (l0, l1) = (w[j], w[(j + 1) % n]);
                let start = match l0.dir {
                    Dir::U => BKey::crossing_b(l0.gap, rank[c][j]),
                    Dir::D => BKey::crossing_t(l0.gap, rank[c][j]),
                };
                let k = (j + 1) % n;
                let end = match l1.dir {
                    Dir::U => BKey::crossing_t(l1.gap, rank[c][k]),
                    Dir::D => BKey::crossing_b(l1.gap, rank[c][k]),
                };
                chords.push(Chord { curve: c, j, start, end });
            }
        }
        let mut endpoints: Vec<(BKey, usize)> = Vec::with_capacity(2 * chords.len());
        for (id, ch) in chords.iter().enumerate() {
            endpoints.push((ch.start, id));
            endpoints.push((ch.end, id));
        }
        endpoints.sort();
        let mut a = Arrangement {
            words,
            rank,
            order,
            chords,
            chord_base,
            endpoints,
            seg_face: Vec::new(),
            n_faces: 0,
        };
        a.trace_faces();
        Ok(a)
    }

    pub fn chord_id(&self, curve: usize, j: usize) -> usize {
        self.chord_base[curve] + j
    }

    fn first_crossing_pair(&self) -> Option<(usize, usize)> {
        // sweep around the circle with a stack: chords nest iff the diagram is planar
        let mut stack: Vec<usize> = Vec::new();
        let mut opened = vec![false; self.chords.len()];
        for &(_, id) in &self.endpoints {
            if !opened[id] {
                opened[id] = true;
                stack.push(id);
            } else {
                let top = stack.pop().unwrap();
                if top != id {
                    return Some((top, id));
                }
            }
        }
        None
    }

    fn index_of(&self, k: BKey) -> usize {
        self.endpoints.binary_search_by(|e| e.0.cmp(&k)).expect("endpoint key")
    }

    fn trace_faces(&mut self) {
        let n = self.endpoints.len();
        let mut seg_face = vec![usize::MAX; n];
        let mut nf = 0;
        for s in 0..n {
            if seg_face[s] != usize::MAX {
                continue;
            }
            let mut cur = s;
            loop {
                seg_face[cur] = nf;
                // segment `cur` ends at endpoint cur+1; follow its chord
                let e = (cur + 1) % n;
                let ch = self.chords[self.endpoints[e].1];
                let other = if ch.start == self.endpoints[e].0 { ch.end } else { ch.start };
                cur = self.index_of(other);
                if cur == s {
                    break;
                }
            }
            nf += 1;
        }
        self.seg_face = seg_face;
        self.n_faces = nf;
    }

    /// Face containing a boundary point that is not a chord endpoint.
    pub fn face_of(&self, k: BKey) -> usize {
        let idx = self.endpoints.partition_point(|e| e.0 < k);
        let seg = if idx == 0 { self.endpoints.len() - 1 } else { idx - 1 };
        self.seg_face[seg]
    }

    /// Faces to the left and right of a chord, relative to its direction.
    pub fn chord_faces(&self, id: usize) -> (usize, usize) {
        let ch = self.chords[id];
        (self.seg_face[self.index_of(ch.end)], self.seg_face[self.index_of(ch.start)])
    }

    pub fn gap_count(&self, g: i64) -> usize {
        self.order.get(&g).map_or(0, |v| v.len())
    }

    pub fn plus_inf_face(&self) -> usize {
        self.face_of(BKey::PLUS_INF)
    }

    pub fn minus_inf_face(&self) -> usize {
        self.face_of(BKey::MINUS_INF)
    }

    /// For each face, the `L` slots it touches: `(gap, slot, edge)`.
    pub fn slots_in_range(&self, lo: i64, hi: i64) -> Vec<(i64, usize, usize, usize)> {
        let mut out = Vec::new();
        for g in lo..=hi {
            for q in 0..=self.gap_count(g) {
                let fb = self.face_of(BKey::location(g, q, Edge::B));
                let ft = self.face_of(BKey::location(g, q, Edge::T));
                out.push((g, q, fb, ft));
            }
        }
        out
    }
}

/// Whether a single word is realized by a simple closed curve.
pub fn is_simple(word: &[Letter]) -> bool {
    Arrangement::new(vec![word.to_vec()]).is_ok()
}

/// Whether two words admit disjoint simple representatives.
pub fn are_disjoint(a: &[Letter], b: &[Letter]) -> bool {
    Arrangement::new(vec![a.to_vec(), b.to_vec()]).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flute::word::Curve;

    fn w(s: &str) -> Vec<Letter> {
        s.parse::<Curve>().unwrap().word().to_vec()
    }

    #[test]
    fn standard_curves() {
        assert!(is_simple(&w("U0")));
        assert!(are_disjoint(&w("U0"), &w("U3")));
        assert!(are_disjoint(&w("U0"), &w("U0")));
        let a = Arrangement::new(vec![w("U0")]).unwrap();
        assert_eq!(a.n_faces, 2);
        assert_ne!(a.plus_inf_face(), a.minus_inf_face());
    }

    #[test]
    fn lasso_curves_are_simple() {
        assert!(is_simple(&w("U0 D2 U3")));
        assert!(is_simple(&w("U0 D2 U1 D0 U2")));
        assert!(are_disjoint(&w("U0"), &w("U0 D2 U3")));
        assert!(are_disjoint(&w("U0"), &w("U0 D2 U1 D0 U2")));
        assert!(are_disjoint(&w("U0 D2 U3"), &w("U3")));
    }

    #[test]
    fn detects_intersections() {
        // a proper power and two curves that must cross
        assert!(!is_simple(&[Letter::up(0), Letter::up(0)]));
        assert!(!are_disjoint(&w("U0 D2 U3"), &w("U1")));
        assert!(!are_disjoint(&w("U0 D-1 U-2"), &w("U0 U-2 D-1")));
    }
}
