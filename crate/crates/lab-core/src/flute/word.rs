//! Curves on the flute as cyclic words of crossings with the line `L`.
//!
//! Cutting the cylinder along `L` leaves a strip, so a closed curve is
//! determined up to homotopy by the cyclic sequence of gaps it crosses and the
//! direction of each crossing. Reduced cyclic words are in bijection with free
//! homotopy classes, and for simple curves homotopy agrees with isotopy.

use crate::side::SideAssignment;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    /// From just below `L` (strip top, `y → 1`) to just above it (`y → 0`).
    U,
    D,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::U => Dir::D,
            Dir::D => Dir::U,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gap: i64,
    pub dir: Dir,
}

impl Letter {
    pub fn new(gap: i64, dir: Dir) -> Self {
        Letter { gap, dir }
    }
    pub fn up(gap: i64) -> Self {
        Letter { gap, dir: Dir::U }
    }
    pub fn down(gap: i64) -> Self {
        Letter { gap, dir: Dir::D }
    }
    pub fn inv(self) -> Self {
        Letter { gap: self.gap, dir: self.dir.flip() }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.dir, self.gap)
    }
}

/// Free reduction of a cyclic word, including across the wrap-around.
pub fn cyclic_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut st: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if st.last() == Some(&l.inv()) {
            st.pop();
        } else {
            st.push(l);
        }
    }
    let (mut i, mut j) = (0, st.len());
    while j - i >= 2 && st[i] == st[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    st[i..j].to_vec()
}

pub fn inverse_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inv()).collect()
}

fn min_rotation(word: &[Letter]) -> Vec<Letter> {
    let n = word.len();
    let mut best = 0;
    for s in 1..n {
        for k in 0..n {
            let (a, b) = (word[(s + k) % n], word[(best + k) % n]);
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    (0..n).map(|k| word[(best + k) % n]).collect()
}

/// Lexicographically least rotation of the word or of its inverse.
pub fn canonical_word(word: &[Letter]) -> Vec<Letter> {
    let a = min_rotation(word);
    let b = min_rotation(&inverse_word(word));
    a.min(b)
}

/// An isotopy class of closed curve, stored as its canonical reduced cyclic word.
/// Simplicity is not implied by construction; see [`super::arrange`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Curve {
    word: Vec<Letter>,
}

impl Curve {
    /// Reduces and normalizes; `None` for a null-homotopic word.
    pub fn from_word(word: &[Letter]) -> Option<Curve> {
        let r = cyclic_reduce(word);
        if r.is_empty() {
            return None;
        }
        Some(Curve { word: canonical_word(&r) })
    }

    pub fn standard(n: i64) -> Curve {
        Curve { word: vec![Letter::up(n)] }
    }

    /// A small circle around puncture `p`.
    pub fn peripheral(p: i64) -> Curve {
        Curve::from_word(&[Letter::down(p - 1), Letter::up(p)]).unwrap()
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn min_gap(&self) -> i64 {
        self.word.iter().map(|l| l.gap).min().unwrap()
    }

    pub fn max_gap(&self) -> i64 {
        self.word.iter().map(|l| l.gap).max().unwrap()
    }

    /// Separates the two maximal ends: a path along `L` from far left to far
    /// right meets the curve an odd number of times.
    pub fn is_separating(&self) -> bool {
        self.word.len() % 2 == 1
    }

    pub fn standard_index(&self) -> Option<i64> {
        (self.word.len() == 1).then(|| self.word[0].gap)
    }

    /// Punctures on the side of the right end. `None` unless separating.
    pub fn partition(&self) -> Option<SideAssignment> {
        if !self.is_separating() {
            return None;
        }
        let (lo, hi) = (self.min_gap(), self.max_gap());
        let mut gaps: Vec<i64> = self.word.iter().map(|l| l.gap).collect();
        gaps.sort_unstable();
        let members = (lo + 1..=hi).filter(|&n| {
            let above = gaps.len() - gaps.partition_point(|&g| g < n);
            above.is_multiple_of(2)
        });
        Some(SideAssignment::new(hi + 1, members))
    }

    /// Punctures enclosed by a non-separating curve (the side away from both ends).
    pub fn enclosed(&self) -> Vec<i64> {
        let (lo, hi) = (self.min_gap(), self.max_gap());
        (lo + 1..=hi)
            .filter(|&n| self.word.iter().filter(|l| l.gap >= n).count() % 2 == 1)
            .collect()
    }

    pub fn translate(&self, k: i64) -> Curve {
        Curve { word: self.word.iter().map(|l| Letter::new(l.gap + k, l.dir)).collect() }
    }

    /// Mirror image under `x ↦ -x`; swaps the two ends and the two sides.
    pub fn reflect(&self) -> Curve {
        let w: Vec<Letter> = self.word.iter().map(|l| Letter::new(-l.gap - 1, l.dir)).collect();
        Curve { word: canonical_word(&w) }
    }

    /// Image after erasing puncture `n` and shifting the punctures above it down.
    pub fn forget(&self, n: i64) -> Option<Curve> {
        let w: Vec<Letter> = self
            .word
            .iter()
            .map(|l| Letter::new(if l.gap < n { l.gap } else { l.gap - 1 }, l.dir))
            .collect();
        Curve::from_word(&w)
    }

    /// Compact key for hashing large collections.
    pub fn key(&self) -> Vec<i32> {
        self.word
            .iter()
            .map(|l| (l.gap as i32) * 2 + if l.dir == Dir::U { 0 } else { 1 })
            .collect()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl std::str::FromStr for Curve {
    type Err = String;
    /// Parses `U0 D2 U3` style words.
    fn from_str(s: &str) -> Result<Curve, String> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut w = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (d, g) = tok.split_at(1);
            let dir = match d {
                "U" => Dir::U,
                "D" => Dir::D,
                _ => return Err(format!("bad letter {tok:?}")),
            };
            let gap: i64 = g.parse().map_err(|_| format!("bad letter {tok:?}"))?;
            w.push(Letter::new(gap, dir));
        }
        Curve::from_word(&w).ok_or_else(|| "word reduces to the trivial loop".to_string())
    }
}
