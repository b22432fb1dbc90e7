//! Crossing diagrams: crossings listed along `L` plus the traversal order.

use super::arrange::{Arrangement, BKey};
use super::error::FluteError;
use super::word::{Curve, Dir, Letter};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub gap: i64,
    pub dir: Dir,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingDiagram {
    /// Crossings from left to right along `L`.
    pub crossings: Vec<Crossing>,
    /// `succ[i]` is the crossing met after crossing `i`.
    pub succ: Vec<usize>,
    #[serde(default)]
    pub canonical: bool,
}

impl CrossingDiagram {
    pub fn from_json(s: &str) -> Result<Self, FluteError> {
        serde_json::from_str(s).map_err(|e| FluteError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    fn check_shape(&self) -> Result<(), FluteError> {
        let n = self.crossings.len();
        if n == 0 || self.succ.len() != n {
            return Err(FluteError::Malformed("need one successor per crossing".into()));
        }
        if self.crossings.windows(2).any(|w| w[0].gap > w[1].gap) {
            return Err(FluteError::Malformed("crossings must be listed left to right".into()));
        }
        let mut seen = vec![false; n];
        let mut i = 0;
        for _ in 0..n {
            if i >= n || seen[i] {
                return Err(FluteError::Malformed("successor is not a single cycle".into()));
            }
            seen[i] = true;
            i = self.succ[i];
        }
        if i != 0 {
            return Err(FluteError::Malformed("successor is not a single cycle".into()));
        }
        Ok(())
    }

    fn rank(&self, i: usize) -> usize {
        let g = self.crossings[i].gap;
        self.crossings[..i].iter().filter(|c| c.gap == g).count()
    }

    /// Passage chords in the strip, as boundary key pairs.
    fn chords(&self) -> Vec<(BKey, BKey)> {
        (0..self.crossings.len())
            .map(|i| {
                let (a, j) = (self.crossings[i], self.succ[i]);
                let b = self.crossings[j];
                let start = match a.dir {
                    Dir::U => BKey::crossing_b(a.gap, self.rank(i)),
                    Dir::D => BKey::crossing_t(a.gap, self.rank(i)),
                };
                let end = match b.dir {
                    Dir::U => BKey::crossing_t(b.gap, self.rank(j)),
                    Dir::D => BKey::crossing_b(b.gap, self.rank(j)),
                };
                (start, end)
            })
            .collect()
    }

    /// Whether the passages can be drawn pairwise disjoint in the strip.
    pub fn is_planar(&self) -> bool {
        let mut ends: Vec<(BKey, usize)> = Vec::new();
        for (id, (s, e)) in self.chords().into_iter().enumerate() {
            ends.push((s, id));
            ends.push((e, id));
        }
        ends.sort();
        let mut stack = Vec::new();
        let mut open = vec![false; self.crossings.len()];
        for (_, id) in ends {
            if !open[id] {
                open[id] = true;
                stack.push(id);
            } else if stack.pop() != Some(id) {
                return false;
            }
        }
        true
    }

    pub fn validate(&self) -> Result<(), FluteError> {
        self.check_shape()?;
        if !self.is_planar() {
            return Err(FluteError::NotRealizable("passages cross in the cut-open cylinder".into()));
        }
        Ok(())
    }

    /// Traversal word starting at crossing 0.
    pub fn word(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.crossings.len());
        let mut i = 0;
        for _ in 0..self.crossings.len() {
            out.push(Letter::new(self.crossings[i].gap, self.crossings[i].dir));
            i = self.succ[i];
        }
        out
    }

    /// Abscissa ranks of each crossing, for drawing.
    pub fn ranks(&self) -> Vec<usize> {
        (0..self.crossings.len()).map(|i| self.rank(i)).collect()
    }
}

/// Canonical diagram of a simple curve.
pub fn diagram_of(c: &Curve) -> CrossingDiagram {
    let arr = Arrangement::new(vec![c.word().to_vec()]).expect("curve must be simple");
    let w = c.word();
    let mut slots: Vec<(i64, usize, usize)> = (0..w.len()).map(|i| (w[i].gap, arr.rank[0][i], i)).collect();
    slots.sort();
    let mut at = vec![0; w.len()];
    for (k, s) in slots.iter().enumerate() {
        at[s.2] = k;
    }
    let crossings = slots.iter().map(|s| Crossing { gap: s.0, dir: w[s.2].dir }).collect();
    let mut succ = vec![0; w.len()];
    for i in 0..w.len() {
        succ[at[i]] = at[(i + 1) % w.len()];
    }
    CrossingDiagram { crossings, succ, canonical: true }
}

/// Curve represented by a valid diagram, after removing all bigons with `L`.
pub fn curve_of(d: &CrossingDiagram) -> Result<Curve, FluteError> {
    d.validate()?;
    Curve::from_word(&d.word()).ok_or_else(|| FluteError::NotRealizable("curve bounds a disc".into()))
}

pub fn canonicalize(d: &CrossingDiagram) -> Result<CrossingDiagram, FluteError> {
    Ok(diagram_of(&curve_of(d)?))
}

/// Pushes a finger of passage `i` (from crossing `i` to `succ[i]`) across `L`
/// at slot `q` of gap `g`, adding two cancelling crossings. Returns `None` when
/// the finger cannot be drawn without crossing other passages.
pub fn finger_move(d: &CrossingDiagram, i: usize, g: i64, q: usize) -> Option<CrossingDiagram> {
    let n = d.crossings.len();
    let base = d.crossings.iter().take_while(|x| x.gap < g).count();
    if q > d.crossings.iter().filter(|x| x.gap == g).count() {
        return None;
    }
    let pos = base + q;
    let remap = |k: usize| if k >= pos { k + 2 } else { k };
    for (d1, d2) in [(Dir::D, Dir::U), (Dir::U, Dir::D)] {
        for (a, b) in [(pos, pos + 1), (pos + 1, pos)] {
            let mut crossings = d.crossings.clone();
            crossings.splice(pos..pos, [Crossing { gap: g, dir: d1 }; 2]);
            crossings[b].dir = d2;
            let mut succ = vec![0; n + 2];
            for k in 0..n {
                succ[remap(k)] = remap(d.succ[k]);
            }
            succ[remap(i)] = a;
            succ[a] = b;
            succ[b] = remap(d.succ[i]);
            let out = CrossingDiagram { crossings, succ, canonical: false };
            if out.is_planar() {
                return Some(out);
            }
        }
    }
    None
}

/// The same curve traversed backwards.
pub fn reverse(d: &CrossingDiagram) -> CrossingDiagram {
    let n = d.crossings.len();
    let mut succ = vec![0; n];
    for i in 0..n {
        succ[d.succ[i]] = i;
    }
    let crossings = d.crossings.iter().map(|c| Crossing { gap: c.gap, dir: c.dir.flip() }).collect();
    CrossingDiagram { crossings, succ, canonical: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_curve_roundtrip() {
        let d = diagram_of(&Curve::standard(0));
        assert_eq!(d.crossings, vec![Crossing { gap: 0, dir: Dir::U }]);
        assert_eq!(d.succ, vec![0]);
        assert_eq!(canonicalize(&d).unwrap(), d);
        let j = d.to_json();
        assert_eq!(CrossingDiagram::from_json(&j).unwrap(), d);
    }

    #[test]
    fn bigon_is_removed() {
        // σ_0 with a finger pushed across L in gap 0
        let d = CrossingDiagram {
            crossings: vec![
                Crossing { gap: 0, dir: Dir::U },
                Crossing { gap: 0, dir: Dir::D },
                Crossing { gap: 0, dir: Dir::U },
            ],
            succ: vec![1, 2, 0],
            canonical: false,
        };
        d.validate().unwrap();
        assert_eq!(canonicalize(&d).unwrap(), diagram_of(&Curve::standard(0)));
    }

    #[test]
    fn crossing_passages_are_rejected() {
        let d = CrossingDiagram {
            crossings: vec![Crossing { gap: 0, dir: Dir::U }, Crossing { gap: 0, dir: Dir::U }],
            succ: vec![1, 0],
            canonical: false,
        };
        assert!(matches!(canonicalize(&d), Err(FluteError::NotRealizable(_))));
        let bad = CrossingDiagram { crossings: vec![Crossing { gap: 0, dir: Dir::U }; 2], succ: vec![0, 1], canonical: false };
        assert!(matches!(bad.validate(), Err(FluteError::Malformed(_))));
    }

    #[test]
    fn lasso_diagrams_canonicalize_to_themselves() {
        for s in ["U0 D2 U3", "U0 D2 U1 D0 U2", "U0 D-1 U-2", "U0 U-2 D-1"] {
            let c: Curve = s.parse().unwrap();
            let d = diagram_of(&c);
            assert_eq!(curve_of(&d).unwrap(), c);
            assert_eq!(canonicalize(&d).unwrap(), d);
        }
    }
}
