//! Cofinitely standard subsets of ℤ.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// The set `extra ∪ [threshold, ∞)`, normalized so that `extra` lies below
/// `threshold - 1`. Every index below `threshold` outside `extra` is on the
/// left, every index at or above `threshold` is on the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideAssignment {
    pub threshold: i64,
    pub extra: BTreeSet<i64>,
}

impl SideAssignment {
    /// Everything at or above `t` is on the right.
    pub fn standard(t: i64) -> Self {
        SideAssignment { threshold: t, extra: BTreeSet::new() }
    }

    pub fn new(threshold: i64, extra: impl IntoIterator<Item = i64>) -> Self {
        let mut s = SideAssignment { threshold, extra: BTreeSet::new() };
        for n in extra {
            if n < threshold {
                s.extra.insert(n);
            }
        }
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.extra.remove(&(self.threshold - 1)) {
            self.threshold -= 1;
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.threshold || self.extra.contains(&n)
    }

    pub fn side(&self, n: i64) -> Side {
        if self.contains(n) {
            Side::Right
        } else {
            Side::Left
        }
    }

    /// Smallest index `m` such that membership is standard for all `n >= m`
    /// and no member is below `lo()`.
    pub fn lo(&self) -> i64 {
        self.extra.iter().next().copied().unwrap_or(self.threshold)
    }

    pub fn toggle(&mut self, n: i64) {
        if n >= self.threshold {
            // open a hole: shift threshold up and record the members in between
            for m in self.threshold..n {
                self.extra.insert(m);
            }
            self.threshold = n + 1;
        } else if !self.extra.remove(&n) {
            self.extra.insert(n);
        }
        self.normalize();
    }

    pub fn set(&mut self, n: i64, side: Side) {
        if self.side(n) != side {
            self.toggle(n);
        }
    }

    pub fn symmetric_difference(&self, other: &SideAssignment) -> BTreeSet<i64> {
        let lo = self.lo().min(other.lo());
        let hi = self.threshold.max(other.threshold);
        (lo..hi).filter(|&n| self.contains(n) != other.contains(n)).collect()
    }

    pub fn is_subset(&self, other: &SideAssignment) -> bool {
        let lo = self.lo().min(other.lo());
        let hi = self.threshold.max(other.threshold);
        (lo..hi).all(|n| !self.contains(n) || other.contains(n))
    }

    /// Number of members `<= m`.
    pub fn count_upto(&self, m: i64) -> i64 {
        let below = self.extra.iter().filter(|&&n| n <= m).count() as i64;
        below + (m - self.threshold + 1).max(0)
    }

    pub fn shift(&self, k: i64) -> SideAssignment {
        SideAssignment {
            threshold: self.threshold + k,
            extra: self.extra.iter().map(|n| n + k).collect(),
        }
    }

    /// Image under deleting index `n` and relabelling `m > n` as `m - 1`.
    pub fn forget(&self, n: i64) -> SideAssignment {
        let t = if self.threshold > n { self.threshold - 1 } else { self.threshold };
        let extra = self
            .extra
            .iter()
            .filter(|&&m| m != n)
            .map(|&m| if m > n { m - 1 } else { m });
        SideAssignment::new(t, extra)
    }

    pub fn reflect(&self) -> SideAssignment {
        // n ↦ -n, complemented: right ends become left ends after mirroring
        let lo = self.lo();
        let hi = self.threshold;
        let members = (lo..hi).filter(|&n| !self.contains(n)).map(|n| -n);
        SideAssignment::new(-lo + 1, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggle_and_normalize() {
        let mut s = SideAssignment::standard(1);
        s.toggle(3);
        assert_eq!(s.symmetric_difference(&SideAssignment::standard(1)), [3].into());
        s.toggle(3);
        assert_eq!(s, SideAssignment::standard(1));
        s.toggle(0);
        assert_eq!(s, SideAssignment::standard(0));
    }

    #[test]
    fn forget_relabels() {
        let s = SideAssignment::new(4, [1, 2]);
        let f = s.forget(3);
        assert_eq!(f, SideAssignment::new(3, [1, 2]));
        assert_eq!(SideAssignment::standard(1).forget(0), SideAssignment::standard(0));
        assert_eq!(SideAssignment::standard(1).forget(5), SideAssignment::standard(1));
    }

    #[test]
    fn reflect_swaps_sides() {
        let s = SideAssignment::standard(1);
        let r = s.reflect();
        for n in -5..5 {
            assert_eq!(r.contains(-n), !s.contains(n));
        }
    }
}
