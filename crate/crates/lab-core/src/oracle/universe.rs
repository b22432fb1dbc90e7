//! Flute curve universes: closures of seed curves under bounded lassos, with
//! adjacency decided exactly between every pair of members.

use super::graph::FiniteGraphSlice;
use super::OracleError;
use crate::flute::{adjacent, enumerate_neighbors, Carrier, Curve};
use crate::side::SideAssignment;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    /// Punctures `lo..=hi`. An empty window (`hi < lo`) keeps only the seeds.
    pub lo: i64,
    pub hi: i64,
    pub winding: usize,
    /// Longest canonical word admitted.
    pub max_len: usize,
    pub max_vertices: usize,
    pub seeds: Vec<Curve>,
}

impl UniverseSpec {
    pub fn window(lo: i64, hi: i64, winding: usize) -> Self {
        UniverseSpec { lo, hi, winding, max_len: 5, max_vertices: 50_000, seeds: vec![Curve::standard(0)] }
    }

    pub fn carrier(&self) -> Option<Carrier> {
        (self.lo <= self.hi).then(|| Carrier::new(self.lo, self.hi))
    }
}

#[derive(Debug, Clone)]
pub struct Universe {
    pub spec: UniverseSpec,
    /// Sorted by canonical word; vertex `i` of the graph is `curves[i]`.
    pub curves: Vec<Curve>,
    pub graph: FiniteGraphSlice,
    index: HashMap<Curve, usize>,
}

impl Universe {
    pub fn vertex(&self, c: &Curve) -> Result<usize, OracleError> {
        self.index.get(c).copied().ok_or_else(|| OracleError::VertexMissing(c.to_string()))
    }

    pub fn contains(&self, c: &Curve) -> bool {
        self.index.contains_key(c)
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.graph.adj[u].binary_search(&v).is_ok()
    }
}

pub fn build_universe(spec: &UniverseSpec) -> Result<Universe, OracleError> {
    if spec.max_len == 0 || spec.max_vertices == 0 {
        return Err(OracleError::BadBounds("length and vertex bounds must be positive".into()));
    }
    let carrier = spec.carrier();
    let mut seen: BTreeSet<Curve> = spec.seeds.iter().cloned().collect();
    let mut cut: BTreeSet<Curve> = BTreeSet::new();
    let mut queue: Vec<Curve> = seen.iter().cloned().collect();
    while let Some(c) = queue.pop() {
        let Some(k) = carrier.filter(|k| k.carries(&c)) else {
            cut.insert(c);
            continue;
        };
        let hull = Carrier::hull([&c]);
        if hull.a <= k.a || hull.b >= k.b {
            cut.insert(c.clone());
        }
        for n in enumerate_neighbors(&c, k, spec.winding)? {
            if n.len() > spec.max_len {
                cut.insert(c.clone());
            } else if seen.insert(n.clone()) {
                if seen.len() > spec.max_vertices {
                    return Err(OracleError::Exhausted(spec.max_vertices));
                }
                queue.push(n);
            }
        }
    }
    let curves: Vec<Curve> = seen.into_iter().collect();
    let index: HashMap<Curve, usize> = curves.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();

    // adjacent curves differ in exactly one puncture, so candidates come from
    // toggling one puncture of the partition
    let mut by_part: BTreeMap<SideAssignment, Vec<usize>> = BTreeMap::new();
    for (i, c) in curves.iter().enumerate() {
        if let Some(p) = c.partition() {
            by_part.entry(p).or_default().push(i);
        }
    }
    let (lo, hi) = curves.iter().fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c.min_gap()), hi.max(c.max_gap())));
    let mut edges = Vec::new();
    for (p, us) in &by_part {
        for n in lo..=hi + 1 {
            let mut q = p.clone();
            q.toggle(n);
            if q <= *p {
                continue;
            }
            if let Some(vs) = by_part.get(&q) {
                for &u in us {
                    for &v in vs {
                        if adjacent(&curves[u], &curves[v]) {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
    }
    let labels = curves.iter().map(|c| c.to_string()).collect();
    let boundary = curves.iter().map(|c| cut.contains(c)).collect();
    let graph = FiniteGraphSlice::new(labels, edges, boundary);
    Ok(Universe { spec: spec.clone(), curves, graph, index })
}

/// Image of a path after forgetting puncture `n`: consecutive equal images merge.
/// `None` if some vertex stops being a curve.
pub fn forget_path(path: &[Curve], n: i64) -> Option<Vec<Curve>> {
    let mut out: Vec<Curve> = Vec::new();
    for c in path {
        let f = c.forget(n)?;
        if out.last() != Some(&f) {
            out.push(f);
        }
    }
    Some(out)
}

/// Every consecutive pair is an edge.
pub fn is_path(path: &[Curve]) -> bool {
    path.windows(2).all(|w| adjacent(&w[0], &w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::graph::{bfs_distance, components_outside_ball};

    fn s(n: i64) -> Curve {
        Curve::standard(n)
    }

    #[test]
    fn small_window() {
        let u = build_universe(&UniverseSpec::window(-2, 2, 0)).unwrap();
        for k in -2..=2 {
            assert!(u.contains(&s(k)), "σ{k}");
        }
        assert!(u.contains(&"U0 D1 U2".parse().unwrap()));
        let d = bfs_distance(&u.graph, u.vertex(&s(-2)).unwrap(), u.vertex(&s(2)).unwrap()).unwrap();
        assert_eq!(d, Some(4));
        let wide = build_universe(&UniverseSpec::window(-2, 2, 1)).unwrap();
        assert!(u.curves.iter().all(|c| wide.contains(c)));
    }

    #[test]
    fn empty_window_keeps_seeds() {
        let u = build_universe(&UniverseSpec::window(1, 0, 0)).unwrap();
        assert_eq!(u.curves, vec![s(0)]);
        let mut tiny = UniverseSpec::window(-4, 4, 1);
        tiny.max_vertices = 10;
        assert!(matches!(build_universe(&tiny), Err(OracleError::Exhausted(10))));
    }

    #[test]
    fn flute_slice_is_one_ended_near_base() {
        let u = build_universe(&UniverseSpec::window(-3, 4, 0)).unwrap();
        let c = components_outside_ball(&u.graph, u.vertex(&s(0)).unwrap(), 1).unwrap();
        assert_eq!(c.iter().filter(|c| c.pseudo_unbounded).count(), 1);
    }

    #[test]
    fn forgetting_merges_across_the_forgotten_puncture() {
        let p = vec![s(0), s(1), s(2)];
        assert_eq!(forget_path(&p, 1).unwrap(), vec![s(0), s(1)]);
        assert!(is_path(&forget_path(&p, 1).unwrap()));
    }
}
