//! Exact polygonal realizations on the cylinder and a geometric side oracle.
//!
//! A [`Frame`] fixes the denominators: a point `(X, Y)` with integer
//! coordinates stands for `x = origin + X / x_unit` and `y = Y / period`, with
//! `y` taken mod 1. `L` is `y = 0` and puncture `n` sits at `(n, 0)`. A curve is
//! stored as a lift to the plane: its closing edge returns to the first vertex
//! shifted by `shift` periods.

use super::arrange::Arrangement;
use super::word::{Dir, Letter};
use crate::side::SideAssignment;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("degenerate polyline: {0}")]
    Degenerate(String),
    #[error("polyline is not simple")]
    NotSimple,
}

type P = (i128, i128);
type Seg = (P, P);

/// Passages are drawn as straight chords of a lens bounded by two parabolas
/// inside the strip, so chords that do not interleave are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub origin: i64,
    pub x_unit: i128,
    mid: i128,
    half: i128,
    pub period: i128,
}

impl Frame {
    /// Frame for punctures `lo..=hi` and at most `max_per_gap` crossings per gap.
    pub fn new(lo: i64, hi: i64, max_per_gap: usize) -> Frame {
        let x_unit = max_per_gap as i128 + 1;
        let width = (hi - lo) as i128 * x_unit;
        let half = width / 2 + 2 * x_unit;
        Frame { origin: lo, x_unit, mid: width / 2, half, period: 10 * half * half }
    }

    pub fn puncture(&self, n: i64) -> P {
        ((n - self.origin) as i128 * self.x_unit, 0)
    }

    /// Abscissa of the crossing of rank `r` in gap `g`.
    pub fn crossing_x(&self, g: i64, r: usize) -> i128 {
        (g - self.origin) as i128 * self.x_unit + r as i128 + 1
    }

    fn bottom(&self, x: i128) -> i128 {
        let t = x - self.mid;
        self.half * self.half + 3 * t * t
    }

    fn top(&self, x: i128) -> i128 {
        let t = x - self.mid;
        9 * self.half * self.half - 3 * t * t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineCurve {
    pub frame: Frame,
    pub vertices: Vec<P>,
    pub shift: i64,
}

/// Draws a word whose crossings sit at abscissae `xs` (one per letter).
pub fn realize_word(word: &[Letter], xs: &[i128], frame: Frame) -> PolylineCurve {
    let per = frame.period;
    let mut v = Vec::with_capacity(2 * word.len());
    let mut k: i128 = 0;
    for (l, &x) in word.iter().zip(xs) {
        match l.dir {
            Dir::U => {
                v.push((x, frame.top(x) + k * per));
                k += 1;
                v.push((x, frame.bottom(x) + k * per));
            }
            Dir::D => {
                v.push((x, frame.bottom(x) + k * per));
                k -= 1;
                v.push((x, frame.top(x) + k * per));
            }
        }
    }
    PolylineCurve { frame, vertices: v, shift: k as i64 }
}

/// Polylines of all curves of an arrangement, drawn with its crossing order.
pub fn realize_arrangement(arr: &Arrangement) -> Vec<PolylineCurve> {
    let lo = *arr.order.keys().next().unwrap();
    let hi = *arr.order.keys().last().unwrap() + 1;
    let max = arr.order.values().map(|v| v.len()).max().unwrap();
    let frame = Frame::new(lo, hi, max);
    arr.words
        .iter()
        .enumerate()
        .map(|(c, w)| {
            let xs: Vec<i128> = w.iter().enumerate().map(|(i, l)| frame.crossing_x(l.gap, arr.rank[c][i])).collect();
            realize_word(w, &xs, frame)
        })
        .collect()
}

fn orient(a: P, b: P, c: P) -> i32 {
    let d = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    d.signum() as i32
}

fn on_segment(p: P, s: Seg) -> bool {
    orient(s.0, s.1, p) == 0
        && p.0 >= s.0 .0.min(s.1 .0)
        && p.0 <= s.0 .0.max(s.1 .0)
        && p.1 >= s.0 .1.min(s.1 .1)
        && p.1 <= s.0 .1.max(s.1 .1)
}

/// 0: disjoint, 1: proper crossing, 2: touching or overlapping.
fn seg_relation(s: Seg, t: Seg) -> u8 {
    let (o1, o2) = (orient(s.0, s.1, t.0), orient(s.0, s.1, t.1));
    let (o3, o4) = (orient(t.0, t.1, s.0), orient(t.0, t.1, s.1));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return 1;
    }
    if on_segment(t.0, s) || on_segment(t.1, s) || on_segment(s.0, t) || on_segment(s.1, t) {
        return 2;
    }
    0
}

impl PolylineCurve {
    fn edges(&self) -> Vec<Seg> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = if i + 1 < n {
                    self.vertices[i + 1]
                } else {
                    (self.vertices[0].0, self.vertices[0].1 + self.shift as i128 * self.frame.period)
                };
                (a, b)
            })
            .collect()
    }

    /// Pieces of the curve in the fundamental strip `0 ≤ Y ≤ period`, each
    /// tagged with the edge it came from. Only vertical edges may cross `L`.
    fn pieces(&self) -> Result<Vec<(usize, Seg)>, OracleError> {
        let per = self.frame.period;
        let mut out = Vec::new();
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            if a.1.rem_euclid(per) == 0 || b.1.rem_euclid(per) == 0 {
                return Err(OracleError::Degenerate("vertex on L".into()));
            }
            let (fa, fb) = (a.1.div_euclid(per), b.1.div_euclid(per));
            if fa == fb {
                out.push((e, ((a.0, a.1 - fa * per), (b.0, b.1 - fa * per))));
                continue;
            }
            if a.0 != b.0 || (fa - fb).abs() != 1 {
                return Err(OracleError::Degenerate("only short vertical edges may cross L".into()));
            }
            let cut = fa.max(fb) * per;
            out.push((e, ((a.0, a.1 - fa * per), (a.0, cut - fa * per))));
            out.push((e, ((b.0, cut - fb * per), (b.0, b.1 - fb * per))));
        }
        Ok(out)
    }

    /// Exact simplicity check on the cylinder.
    pub fn is_simple(&self) -> Result<bool, OracleError> {
        let per = self.frame.period;
        let ps = self.pieces()?;
        let n_edges = self.vertices.len();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let (ei, ej) = (ps[i].0, ps[j].0);
                let adjacent = ei == ej || (ei + 1) % n_edges == ej || (ej + 1) % n_edges == ei;
                let rel = seg_relation(ps[i].1, ps[j].1);
                if rel == 1 || (rel == 2 && !adjacent) {
                    return Ok(false);
                }
            }
        }
        // points on the seam, where y = 0 and y = 1 are glued
        let mut seam: Vec<(i128, usize)> = Vec::new();
        for &(e, s) in &ps {
            for p in [s.0, s.1] {
                if p.1 == 0 || p.1 == per {
                    seam.push((p.0, e));
                }
            }
        }
        for i in 0..seam.len() {
            for j in i + 1..seam.len() {
                if seam[i].0 == seam[j].0 && seam[i].1 != seam[j].1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn x_range(&self) -> (i64, i64) {
        let f = self.frame;
        let lo = self.vertices.iter().map(|v| v.0.div_euclid(f.x_unit)).min().unwrap() as i64 + f.origin;
        let hi = self.vertices.iter().map(|v| v.0.div_euclid(f.x_unit)).max().unwrap() as i64 + f.origin + 1;
        (lo, hi)
    }

    /// Parity of crossings of a test segment with the curve, retrying other
    /// slopes when the segment hits a vertex.
    fn parity(&self, ps: &[(usize, Seg)], start: P, far_x: i128) -> Result<bool, OracleError> {
        let per = self.frame.period;
        'slopes: for k in 0..64 {
            let end = (far_x, per / 3 + k * (per / 211));
            let mut count = 0usize;
            for &(_, s) in ps {
                match seg_relation((start, end), s) {
                    0 => {}
                    1 => count += 1,
                    _ => continue 'slopes,
                }
            }
            return Ok(count % 2 == 1);
        }
        Err(OracleError::Degenerate("no generic test segment".into()))
    }

    fn far_x(&self) -> i128 {
        self.vertices.iter().map(|v| v.0).max().unwrap() + 3 * self.frame.x_unit
    }
}

/// Separation flag and the set of punctures on the side of the right end,
/// computed from the polyline alone.
pub fn geometry_oracle(p: &PolylineCurve) -> Result<(bool, Option<SideAssignment>), OracleError> {
    if !p.is_simple()? {
        return Err(OracleError::NotSimple);
    }
    let ps = p.pieces()?;
    let (lo, hi) = p.x_range();
    let far = p.far_x();
    let left = p.vertices.iter().map(|v| v.0).min().unwrap() - 3 * p.frame.x_unit;
    let separating = p.parity(&ps, (left, p.frame.period / 3), far)?;
    if !separating {
        return Ok((false, None));
    }
    let mut members = Vec::new();
    for n in lo..=hi {
        if !p.parity(&ps, p.frame.puncture(n), far)? {
            members.push(n);
        }
    }
    Ok((true, Some(SideAssignment::new(hi + 1, members))))
}

/// Punctures enclosed by a non-separating simple polyline.
pub fn enclosed_punctures(p: &PolylineCurve) -> Result<Vec<i64>, OracleError> {
    let ps = p.pieces()?;
    let (lo, hi) = p.x_range();
    let far = p.far_x();
    let mut out = Vec::new();
    for n in lo..=hi {
        if p.parity(&ps, p.frame.puncture(n), far)? {
            out.push(n);
        }
    }
    Ok(out)
}

/// Exact test whether two polylines drawn in the same frame meet.
pub fn polylines_meet(a: &PolylineCurve, b: &PolylineCurve) -> Result<bool, OracleError> {
    let (pa, pb) = (a.pieces()?, b.pieces()?);
    for &(_, s) in &pa {
        for &(_, t) in &pb {
            if seg_relation(s, t) != 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flute::word::Curve;

    fn draw(c: &Curve) -> PolylineCurve {
        let arr = Arrangement::new(vec![c.word().to_vec()]).unwrap();
        realize_arrangement(&arr).pop().unwrap()
    }

    #[test]
    fn oracle_on_basic_curves() {
        let (sep, p) = geometry_oracle(&draw(&Curve::standard(0))).unwrap();
        assert!(sep);
        assert_eq!(p.unwrap(), SideAssignment::standard(1));

        let tau: Curve = "U0 D2 U3".parse().unwrap();
        let (sep, p) = geometry_oracle(&draw(&tau)).unwrap();
        assert!(sep);
        assert_eq!(p.unwrap(), SideAssignment::new(4, [1, 2]));

        let circ = Curve::peripheral(3);
        let (sep, _) = geometry_oracle(&draw(&circ)).unwrap();
        assert!(!sep);
        assert_eq!(enclosed_punctures(&draw(&circ)).unwrap(), vec![3]);
    }

    #[test]
    fn disjoint_pair_is_drawn_disjoint() {
        let a: Curve = "U0 D2 U3".parse().unwrap();
        let arr = Arrangement::new(vec![a.word().to_vec(), Curve::standard(0).word().to_vec()]).unwrap();
        let ps = realize_arrangement(&arr);
        assert!(!polylines_meet(&ps[0], &ps[1]).unwrap());
    }

    #[test]
    fn wrong_order_is_caught() {
        // parallel copies must swap sides between up and down crossings
        let tau: Curve = "U0 D2 U3".parse().unwrap();
        let w = tau.word().to_vec();
        let f = Frame::new(-1, 4, 2);
        let xs = |r: usize| -> Vec<i128> { w.iter().map(|l| f.crossing_x(l.gap, r)).collect() };
        let (good_a, good_b) = (vec![1, 0, 1], vec![0, 1, 0]);
        let pick = |rs: &Vec<usize>| -> Vec<i128> { w.iter().zip(rs).map(|(l, &r)| f.crossing_x(l.gap, r)).collect() };
        assert!(!polylines_meet(&realize_word(&w, &pick(&good_a), f), &realize_word(&w, &pick(&good_b), f)).unwrap());
        let (a, b) = (realize_word(&w, &xs(0), f), realize_word(&w, &xs(1), f));
        assert!(polylines_meet(&a, &b).unwrap());
    }
}
