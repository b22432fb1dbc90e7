//! Certified paths: edge witnesses plus per-vertex lower bounds on the distance
//! to a base point.

use crate::flux::{flux_auto, hamming, CurveModel};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

/// A model whose edges come with checkable adjacency witnesses.
pub trait PathModel: CurveModel {
    type Edge: Clone + Debug + PartialEq;

    fn check_edge(&self, u: &Self::Curve, v: &Self::Curve, e: &Self::Edge) -> bool;
}

/// A caller-supplied distance from a path vertex to the base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorClaim {
    pub vertex: usize,
    pub distance: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    FluxLB { value: u64 },
    HammingLB { value: u64 },
    /// `anchor_lb - steps`, where `anchor` indexes the path's anchor claims and
    /// `steps` bounds the path distance from the anchor.
    TriangleLB { anchor: usize, anchor_lb: u64, steps: u64 },
}

impl Certificate {
    pub fn bound(&self) -> u64 {
        match *self {
            Certificate::FluxLB { value } | Certificate::HammingLB { value } => value,
            Certificate::TriangleLB { anchor_lb, steps, .. } => anchor_lb.saturating_sub(steps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedPath<C, E> {
    pub vertices: Vec<C>,
    pub edges: Vec<E>,
    pub certs: Vec<Certificate>,
    #[serde(default)]
    pub anchors: Vec<AnchorClaim>,
}

impl<C, E> CertifiedPath<C, E> {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn min_bound(&self) -> Option<u64> {
        self.certs.iter().map(|c| c.bound()).min()
    }
}

/// Strongest certificate for every vertex.
pub fn certify<M: CurveModel>(m: &M, vertices: &[M::Curve], o: &M::Curve, anchors: &[AnchorClaim]) -> Vec<Certificate> {
    vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut best = match (flux_auto(m, v, o), hamming(m, v, o)) {
                (Ok(f), Ok(h)) if f.total >= h => Certificate::FluxLB { value: f.total },
                (_, Ok(h)) => Certificate::HammingLB { value: h },
                (Ok(f), _) => Certificate::FluxLB { value: f.total },
                _ => Certificate::HammingLB { value: 0 },
            };
            for (k, a) in anchors.iter().enumerate() {
                let c = Certificate::TriangleLB { anchor: k, anchor_lb: a.distance, steps: i.abs_diff(a.vertex) as u64 };
                if c.bound() > best.bound() {
                    best = c;
                }
            }
            best
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub min_bound: Option<u64>,
    pub failures: Vec<String>,
}

/// Rechecks every edge witness and certificate and that every bound exceeds `r`.
pub fn verify_path<M: PathModel>(m: &M, p: &CertifiedPath<M::Curve, M::Edge>, o: &M::Curve, r: u64) -> VerifyReport {
    let mut failures = Vec::new();
    let n = p.vertices.len();
    if n == 0 || p.edges.len() + 1 != n || p.certs.len() != n {
        failures.push("path shape: need n vertices, n-1 edges and n certificates".to_string());
        return VerifyReport { ok: false, min_bound: None, failures };
    }
    for (i, e) in p.edges.iter().enumerate() {
        if !m.check_edge(&p.vertices[i], &p.vertices[i + 1], e) {
            failures.push(format!("edge {i}: witness does not check"));
        }
    }
    for (k, a) in p.anchors.iter().enumerate() {
        match p.vertices.get(a.vertex).map(|v| hamming(m, v, o)) {
            Some(Ok(h)) if h <= a.distance => {}
            Some(Ok(h)) => failures.push(format!("anchor {k}: claimed distance {} is below H = {h}", a.distance)),
            _ => failures.push(format!("anchor {k}: no such vertex")),
        }
    }
    for (i, (v, c)) in p.vertices.iter().zip(&p.certs).enumerate() {
        let sound = match *c {
            Certificate::FluxLB { value } => flux_auto(m, v, o).map(|f| f.total == value).unwrap_or(false),
            Certificate::HammingLB { value } => hamming(m, v, o).map(|h| h == value).unwrap_or(false),
            Certificate::TriangleLB { anchor, anchor_lb, steps } => p
                .anchors
                .get(anchor)
                .is_some_and(|a| anchor_lb <= a.distance && steps >= i.abs_diff(a.vertex) as u64),
        };
        if !sound {
            failures.push(format!("vertex {i}: certificate {c:?} does not recompute"));
        } else if c.bound() <= r {
            failures.push(format!("vertex {i}: bound {} is not above R = {r}", c.bound()));
        }
    }
    VerifyReport { ok: failures.is_empty(), min_bound: p.min_bound(), failures }
}
