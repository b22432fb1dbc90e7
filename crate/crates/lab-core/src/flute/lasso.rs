//! Lasso curves: band a curve to a puncture along an arc and take the boundary.

use super::arrange::{Arrangement, BKey, Edge};
use super::error::FluteError;
use super::word::{inverse_word, Curve, Letter};
use crate::side::Side;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;

/// The subsurface between `σ_{a-1}` and `σ_b`; it holds punctures `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Carrier {
    pub a: i64,
    pub b: i64,
}

impl Carrier {
    pub fn new(a: i64, b: i64) -> Self {
        Carrier { a, b }
    }

    pub fn carries(&self, c: &Curve) -> bool {
        c.min_gap() >= self.a - 1 && c.max_gap() <= self.b
    }

    pub fn punctures(&self) -> std::ops::RangeInclusive<i64> {
        self.a..=self.b
    }

    /// Smallest carrier holding all the given curves.
    pub fn hull<'a>(curves: impl IntoIterator<Item = &'a Curve>) -> Carrier {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in curves {
            lo = lo.min(c.min_gap());
            hi = hi.max(c.max_gap());
        }
        Carrier { a: lo + 1, b: hi }
    }
}

/// Where the arc leaves the curve it lassoes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// Leaves passage `index` of the canonical word (from crossing `index` to
    /// the next) on the given side.
    Passage { index: usize, side: Side },
    /// Starts in the region of the left or right end; `slots[k]` is the slot
    /// within its gap of the `k`-th trace crossing.
    End { end: Side, slots: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoArc {
    pub target: i64,
    /// `B`: the arc reaches the puncture from above `L`, `T`: from below.
    pub approach: Edge,
    pub trace: Vec<Letter>,
    pub anchor: Anchor,
}

impl LassoArc {
    pub fn from_passage(index: usize, side: Side, trace: Vec<Letter>, target: i64, approach: Edge) -> Self {
        LassoArc { target, approach, trace, anchor: Anchor::Passage { index, side } }
    }
}

fn loop_letters(p: i64, side: Side, approach: Edge) -> [Letter; 2] {
    match (approach, side) {
        (Edge::B, Side::Right) => [Letter::down(p - 1), Letter::up(p)],
        (Edge::B, Side::Left) => [Letter::down(p), Letter::up(p - 1)],
        (Edge::T, Side::Right) => [Letter::up(p), Letter::down(p - 1)],
        (Edge::T, Side::Left) => [Letter::up(p - 1), Letter::down(p)],
    }
}

/// Word of the band sum of `word` with the loop around `p` along the arc.
pub fn lasso_word(word: &[Letter], index: usize, side: Side, trace: &[Letter], p: i64, approach: Edge) -> Vec<Letter> {
    let mut out: Vec<Letter> = word[..=index].to_vec();
    out.extend_from_slice(trace);
    out.extend_from_slice(&loop_letters(p, side, approach));
    out.extend(inverse_word(trace));
    out.extend_from_slice(&word[index + 1..]);
    out
}

/// Resolves an end-anchored arc to the sub-arc after its last meeting with the curve.
fn resolve_end_anchor(c: &Curve, arc: &LassoArc, end: Side, slots: &[usize]) -> Result<(usize, Side, Vec<Letter>), FluteError> {
    if slots.len() != arc.trace.len() {
        return Err(FluteError::InvalidArc("one slot per trace crossing is required".into()));
    }
    let arr = Arrangement::new(vec![c.word().to_vec()]).map_err(|e| FluteError::NotRealizable(e.to_string()))?;
    // boundary points visited: start corner, then exit/entry copies of each slot, then the puncture
    let mut legs: Vec<(BKey, BKey)> = Vec::new();
    let mut cur = if end == Side::Left { BKey::MINUS_INF } else { BKey::PLUS_INF };
    for (l, &q) in arc.trace.iter().zip(slots) {
        if q > arr.gap_count(l.gap) {
            return Err(FluteError::InvalidArc(format!("slot {q} out of range in gap {}", l.gap)));
        }
        // crossing downwards leaves through the bottom copy and re-enters from the top
        let (exit, entry) = match l.dir {
            super::word::Dir::D => (Edge::B, Edge::T),
            super::word::Dir::U => (Edge::T, Edge::B),
        };
        legs.push((cur, BKey::location(l.gap, q, exit)));
        cur = BKey::location(l.gap, q, entry);
    }
    legs.push((cur, BKey::puncture(arc.target, arc.approach)));
    let within = |x: BKey, lo: BKey, hi: BKey| lo < x && x < hi;
    for (k, &(from, to)) in legs.iter().enumerate().rev() {
        // chords separating `from` and `to`; the one nearest `to` is met last
        let mut best: Option<(usize, Side)> = None;
        let mut best_len: Option<usize> = None;
        for (id, ch) in arr.chords.iter().enumerate() {
            let (lo, hi) = if ch.start < ch.end { (ch.start, ch.end) } else { (ch.end, ch.start) };
            if within(from, lo, hi) == within(to, lo, hi) {
                continue;
            }
            // size of the arc of the circle on the side of `to`
            let inside_to = within(to, lo, hi);
            let n_inside = arr.chords.iter().filter(|o| within(o.start, lo, hi)).count();
            let len = if inside_to { n_inside } else { 2 * arr.chords.len() - n_inside };
            if best_len.is_none_or(|b| len < b) {
                best_len = Some(len);
                // `to` on the left iff it lies counter-clockwise between end and start
                let left = if ch.end < ch.start { within(to, ch.end, ch.start) } else { !within(to, ch.start, ch.end) };
                best = Some((id, if left { Side::Left } else { Side::Right }));
            }
        }
        if let Some((id, side)) = best {
            return Ok((arr.chords[id].j, side, arc.trace[k..].to_vec()));
        }
    }
    Err(FluteError::ArcDisjoint)
}

/// The lasso curve `c(ℓ)`, checked to be simple, disjoint from `c`, and to
/// differ from it by exactly the target puncture.
pub fn lasso(c: &Curve, arc: &LassoArc) -> Result<Curve, FluteError> {
    let pc = c.partition().ok_or(FluteError::NotSeparating)?;
    let (index, side, trace) = match &arc.anchor {
        Anchor::Passage { index, side } => {
            if *index >= c.len() {
                return Err(FluteError::InvalidArc(format!("passage {index} out of range")));
            }
            (*index, *side, arc.trace.clone())
        }
        Anchor::End { end, slots } => resolve_end_anchor(c, arc, *end, slots)?,
    };
    let w = lasso_word(c.word(), index, side, &trace, arc.target, arc.approach);
    let out = Curve::from_word(&w).ok_or_else(|| FluteError::InvalidArc("lasso reduces to a trivial loop".into()))?;
    let po = out.partition().ok_or(FluteError::NotSeparating)?;
    if po.symmetric_difference(&pc) != BTreeSet::from([arc.target]) {
        return Err(FluteError::InvalidArc("arc is not embedded on the chosen side".into()));
    }
    if !super::arrange::is_simple(out.word()) || !super::arrange::are_disjoint(c.word(), out.word()) {
        return Err(FluteError::InvalidArc("arc is not embedded".into()));
    }
    Ok(out)
}

/// Arcs from `c` of at most `winding` crossings with `L`, all inside the carrier.
pub fn candidate_arcs(c: &Curve, carrier: Carrier, winding: usize) -> Result<Vec<LassoArc>, FluteError> {
    let arr = Arrangement::new(vec![c.word().to_vec()]).map_err(|e| FluteError::NotRealizable(e.to_string()))?;
    let slots = arr.slots_in_range(carrier.a - 1, carrier.b);
    let mut targets: Vec<Vec<(i64, Edge)>> = vec![Vec::new(); arr.n_faces];
    for p in carrier.punctures() {
        for e in [Edge::B, Edge::T] {
            targets[arr.face_of(BKey::puncture(p, e))].push((p, e));
        }
    }
    let mut out = Vec::new();
    for j in 0..c.len() {
        let (fl, fr) = arr.chord_faces(arr.chord_id(0, j));
        for (side, f0) in [(Side::Left, fl), (Side::Right, fr)] {
            // depth-first over traces; the last slot is kept to avoid immediate backtracking
            let mut stack: Vec<(usize, Vec<Letter>, Option<(i64, usize)>)> = vec![(f0, Vec::new(), None)];
            while let Some((f, trace, last)) = stack.pop() {
                for &(p, e) in &targets[f] {
                    out.push(LassoArc::from_passage(j, side, trace.clone(), p, e));
                }
                if trace.len() == winding {
                    continue;
                }
                for &(g, q, fb, ft) in &slots {
                    if last == Some((g, q)) {
                        continue;
                    }
                    if fb == f {
                        let mut t = trace.clone();
                        t.push(Letter::down(g));
                        stack.push((ft, t, Some((g, q))));
                    }
                    if ft == f {
                        let mut t = trace.clone();
                        t.push(Letter::up(g));
                        stack.push((fb, t, Some((g, q))));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All lasso curves of `c` reached by arcs of winding at most `winding` inside
/// the carrier, sorted by canonical word.
pub fn enumerate_neighbors(c: &Curve, carrier: Carrier, winding: usize) -> Result<Vec<Curve>, FluteError> {
    if !carrier.carries(c) {
        return Err(FluteError::NotCarried(carrier.a, carrier.b));
    }
    let mut seen = BTreeSet::new();
    for arc in candidate_arcs(c, carrier, winding)? {
        if let Ok(n) = lasso(c, &arc) {
            seen.insert(n);
        }
    }
    Ok(seen.into_iter().collect())
}

/// A lasso of `a` catching one puncture of `[a, b]` along an arc inside `[a, b]`.
/// Requires `b` disjoint from `a` and on its right.
pub fn straight_step(a: &Curve, b: &Curve) -> Result<Option<Curve>, FluteError> {
    let pa = a.partition().ok_or(FluteError::NotSeparating)?;
    let pb = b.partition().ok_or(FluteError::NotSeparating)?;
    if !pb.is_subset(&pa) {
        return Err(FluteError::NotDisjoint);
    }
    let wanted: BTreeSet<i64> = pa.symmetric_difference(&pb);
    if wanted.is_empty() {
        return Ok(None);
    }
    let arr = Arrangement::new(vec![a.word().to_vec(), b.word().to_vec()]).map_err(|_| FluteError::NotDisjoint)?;
    let (lo, hi) = (*wanted.first().unwrap() - 1, *wanted.last().unwrap());
    let lo = lo.min(a.min_gap()).min(b.min_gap());
    let hi = hi.max(a.max_gap()).max(b.max_gap());
    let slots = arr.slots_in_range(lo, hi);
    // the right side of travel is a's right side or its left side, depending on orientation
    for side in [Side::Right, Side::Left] {
        if let Some(c) = straight_search(a, &arr, &slots, &wanted, side)? {
            return Ok(Some(c));
        }
    }
    Err(FluteError::InvalidArc("no puncture reachable between the curves".into()))
}

fn straight_search(
    a: &Curve,
    arr: &Arrangement,
    slots: &[(i64, usize, usize, usize)],
    wanted: &BTreeSet<i64>,
    side: Side,
) -> Result<Option<Curve>, FluteError> {
    let mut prev: Vec<Option<(usize, Letter)>> = vec![None; arr.n_faces];
    let mut src: Vec<Option<usize>> = vec![None; arr.n_faces];
    let mut q = VecDeque::new();
    for j in 0..a.len() {
        let (l, r) = arr.chord_faces(arr.chord_id(0, j));
        let f = if side == Side::Right { r } else { l };
        if src[f].is_none() {
            src[f] = Some(j);
            q.push_back(f);
        }
    }
    while let Some(f) = q.pop_front() {
        for &p in wanted {
            for e in [Edge::B, Edge::T] {
                if arr.face_of(BKey::puncture(p, e)) != f {
                    continue;
                }
                let mut trace = Vec::new();
                let mut cur = f;
                while let Some((pf, l)) = prev[cur] {
                    trace.push(l);
                    cur = pf;
                }
                trace.reverse();
                let arc = LassoArc::from_passage(src[cur].unwrap(), side, trace, p, e);
                return lasso(a, &arc).map(Some);
            }
        }
        for &(g, _, fb, ft) in slots {
            for (from, to, l) in [(fb, ft, Letter::down(g)), (ft, fb, Letter::up(g))] {
                if from == f && src[to].is_none() {
                    src[to] = src[f];
                    prev[to] = Some((f, l));
                    q.push_back(to);
                }
            }
        }
    }
    Ok(None)
}

/// One step of a face path used by [`crossing_arc`].
#[derive(Debug, Clone, Copy)]
enum Step {
    Slot(Letter),
    Chord(usize, Side),
}

/// For disjoint separating curves, an arc from the far left to the puncture `p`
/// (right of everything) crossing each curve exactly once. Returns, per curve,
/// the arc after its crossing as a passage anchor and remaining trace.
pub fn crossing_arc(curves: &[Curve], p: i64) -> Result<Vec<LassoArc>, FluteError> {
    let words: Vec<Vec<Letter>> = curves.iter().map(|c| c.word().to_vec()).collect();
    let arr = Arrangement::new_trusted(words).map_err(|e| FluteError::NotRealizable(e.to_string()))?;
    let hull = Carrier::hull(curves);
    if p <= hull.b {
        return Err(FluteError::InvalidArc("target must lie right of every curve".into()));
    }
    let slots = arr.slots_in_range(hull.a - 1, hull.b);
    let mut adj: Vec<Vec<(usize, u64, Step)>> = vec![Vec::new(); arr.n_faces];
    for &(g, _, fb, ft) in &slots {
        adj[fb].push((ft, 1, Step::Slot(Letter::down(g))));
        adj[ft].push((fb, 1, Step::Slot(Letter::up(g))));
    }
    const CHORD: u64 = 1 << 20;
    for id in 0..arr.chords.len() {
        let (fl, fr) = arr.chord_faces(id);
        adj[fl].push((fr, CHORD, Step::Chord(id, Side::Right)));
        adj[fr].push((fl, CHORD, Step::Chord(id, Side::Left)));
    }
    let (s, t) = (arr.minus_inf_face(), arr.plus_inf_face());
    let mut dist = vec![u64::MAX; arr.n_faces];
    let mut prev: Vec<Option<(usize, Step)>> = vec![None; arr.n_faces];
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, f))) = heap.pop() {
        if d > dist[f] {
            continue;
        }
        for &(to, w, st) in &adj[f] {
            if d + w < dist[to] {
                dist[to] = d + w;
                prev[to] = Some((f, st));
                heap.push(Reverse((d + w, to)));
            }
        }
    }
    if dist[t] == u64::MAX || dist[t] / CHORD != curves.len() as u64 {
        return Err(FluteError::InvalidArc("no arc crosses each curve once".into()));
    }
    let mut steps = Vec::new();
    let mut cur = t;
    while let Some((pf, st)) = prev[cur] {
        steps.push(st);
        cur = pf;
    }
    steps.reverse();
    let mut out: Vec<Option<LassoArc>> = vec![None; curves.len()];
    for (k, st) in steps.iter().enumerate() {
        if let Step::Chord(id, side) = *st {
            let ch = arr.chords[id];
            let trace: Vec<Letter> = steps[k + 1..]
                .iter()
                .filter_map(|s| if let Step::Slot(l) = s { Some(*l) } else { None })
                .collect();
            out[ch.curve] = Some(LassoArc::from_passage(ch.j, side, trace, p, Edge::B));
        }
    }
    out.into_iter().map(|a| a.ok_or_else(|| FluteError::InvalidArc("curve not crossed".into()))).collect()
}
