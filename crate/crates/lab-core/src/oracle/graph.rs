//! Finite graph slices: BFS, geodesics, components outside a ball and the
//! ends criterion.

use super::OracleError;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

/// A finite piece of a locally infinite graph. `boundary[v]` is set whenever
/// the neighborhood of `v` was cut off by a bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteGraphSlice {
    pub labels: Vec<String>,
    pub adj: Vec<Vec<usize>>,
    pub boundary: Vec<bool>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl FiniteGraphSlice {
    /// Builds a slice from labels and undirected edges; adjacency is symmetrized,
    /// sorted and deduplicated.
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>, boundary: Vec<bool>) -> Self {
        let mut adj = vec![Vec::new(); labels.len()];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        FiniteGraphSlice { labels, adj, boundary, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertex(&self, label: &str) -> Result<usize, OracleError> {
        if self.index.len() != self.labels.len() {
            // deserialized slices come without the index
            return self.labels.iter().position(|l| l == label).ok_or_else(|| OracleError::VertexMissing(label.to_string()));
        }
        self.index.get(label).copied().ok_or_else(|| OracleError::VertexMissing(label.to_string()))
    }

    fn check(&self, v: usize) -> Result<(), OracleError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(OracleError::VertexMissing(format!("#{v}")))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("slice serializes")
    }

    /// Graphviz rendering with labels as node names; boundary vertices are boxes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph slice {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let shape = if self.boundary[i] { "box" } else { "ellipse" };
            let _ = writeln!(s, "  n{i} [label=\"{l}\", shape={shape}];");
        }
        for (u, vs) in self.adj.iter().enumerate() {
            for &v in vs.iter().filter(|&&v| v > u) {
                let _ = writeln!(s, "  n{u} -- n{v};");
            }
        }
        s.push_str("}\n");
        s
    }

    /// Induced subgraph on the vertices within `radius` of `center`.
    pub fn neighborhood(&self, center: usize, radius: u64) -> Result<FiniteGraphSlice, OracleError> {
        let d = bfs_from(self, center)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&v| d[v].is_some_and(|x| x <= radius)).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            edges.extend(self.adj[u].iter().filter_map(|v| pos.get(v)).map(|&j| (i, j)));
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let boundary = keep.iter().map(|&v| self.boundary[v]).collect();
        Ok(FiniteGraphSlice::new(labels, edges, boundary))
    }
}

/// Distances from `a` to every vertex; `None` when unreachable.
pub fn bfs_from(g: &FiniteGraphSlice, a: usize) -> Result<Vec<Option<u64>>, OracleError> {
    g.check(a)?;
    let mut d = vec![None; g.len()];
    d[a] = Some(0);
    let mut q = VecDeque::from([a]);
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &v in &g.adj[u] {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                q.push_back(v);
            }
        }
    }
    Ok(d)
}

pub fn bfs_distance(g: &FiniteGraphSlice, a: usize, b: usize) -> Result<Option<u64>, OracleError> {
    g.check(b)?;
    Ok(bfs_from(g, a)?[b])
}

/// Every shortest path from `a` to `b`, in lexicographic order of vertex indices.
/// Past `cap` paths the search stops with `CapExceeded` holding what was found.
pub fn all_geodesics(g: &FiniteGraphSlice, a: usize, b: usize, cap: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let da = bfs_from(g, a)?;
    let db = bfs_from(g, b)?;
    let Some(n) = da[b] else { return Ok(Vec::new()) };
    let on = |v: usize, i: u64| da[v] == Some(i) && db[v] == Some(n - i);
    let mut out = Vec::new();
    let mut stack = vec![vec![a]];
    while let Some(p) = stack.pop() {
        let u = *p.last().unwrap();
        if u == b {
            if out.len() == cap {
                return Err(OracleError::CapExceeded { partial: out });
            }
            out.push(p);
            continue;
        }
        let i = p.len() as u64;
        for &v in g.adj[u].iter().rev().filter(|&&v| on(v, i)) {
            let mut q = p.clone();
            q.push(v);
            stack.push(q);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Touches the truncation boundary: the finite stand-in for unbounded.
    pub pseudo_unbounded: bool,
}

/// Connected components of the slice with the closed ball `B(o, r)` removed.
pub fn components_outside_ball(g: &FiniteGraphSlice, o: usize, r: u64) -> Result<Vec<Component>, OracleError> {
    let d = bfs_from(g, o)?;
    let outside = |v: usize| d[v].is_none_or(|x| x > r);
    let mut comp = vec![usize::MAX; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if !outside(s) || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut c = Component { vertices: vec![], pseudo_unbounded: false };
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            c.vertices.push(u);
            c.pseudo_unbounded |= g.boundary[u];
            for &v in &g.adj[u] {
                if outside(v) && comp[v] == usize::MAX {
                    comp[v] = id;
                    q.push_back(v);
                }
            }
        }
        c.vertices.sort_unstable();
        out.push(c);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub r: u64,
    pub f: u64,
    /// Vertices at distance exactly `f` from the base point.
    pub sphere: usize,
    pub pairs_checked: usize,
    /// Pairs on the sphere with no connecting path outside `B(o, r)`.
    pub failures: Vec<(usize, usize)>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every pair at distance exactly `f` from `o`, looks for a path between them
/// that avoids the closed ball `B(o, r)`.
pub fn criterion_check(g: &FiniteGraphSlice, o: usize, r: u64, f: u64) -> Result<CriterionReport, OracleError> {
    let d = bfs_from(g, o)?;
    let comps = components_outside_ball(g, o, r)?;
    let mut comp = vec![usize::MAX; g.len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in &c.vertices {
            comp[v] = i;
        }
    }
    let sphere: Vec<usize> = (0..g.len()).filter(|&v| d[v] == Some(f)).collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (i, &u) in sphere.iter().enumerate() {
        for &v in &sphere[i + 1..] {
            pairs += 1;
            if f <= r || comp[u] != comp[v] {
                failures.push((u, v));
            }
        }
    }
    Ok(CriterionReport { r, f, sphere: sphere.len(), pairs_checked: pairs, failures })
}

/// Path graph on `n` vertices; both ends are boundary.
pub fn line(n: usize) -> FiniteGraphSlice {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let boundary = (0..n).map(|i| i == 0 || i + 1 == n).collect();
    FiniteGraphSlice::new(labels, (1..n).map(|i| (i - 1, i)), boundary)
}

/// `w × h` grid; the outer frame is boundary.
pub fn grid(w: usize, h: usize) -> FiniteGraphSlice {
    let id = |x: usize, y: usize| y * w + x;
    let mut labels = Vec::new();
    let mut boundary = Vec::new();
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            labels.push(format!("{x},{y}"));
            boundary.push(x == 0 || y == 0 || x + 1 == w || y + 1 == h);
            if x > 0 {
                edges.push((id(x - 1, y), id(x, y)));
            }
            if y > 0 {
                edges.push((id(x, y - 1), id(x, y)));
            }
        }
    }
    FiniteGraphSlice::new(labels, edges, boundary)
}

/// Complete `k`-ary tree of the given depth; leaves are boundary.
pub fn tree(k: usize, depth: usize) -> FiniteGraphSlice {
    let mut labels = vec![String::new()];
    let mut level = vec![0usize];
    let mut edges = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for &p in &level {
            for c in 0..k {
                let i = labels.len();
                labels.push(format!("{}{c}", labels[p]));
                edges.push((p, i));
                next.push(i);
            }
        }
        level = next;
    }
    let n = labels.len();
    let boundary = (0..n).map(|i| level.contains(&i)).collect();
    FiniteGraphSlice::new(labels, edges, boundary)
}
