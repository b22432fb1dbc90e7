//! Straight, lasso and detour paths on the bi-infinite flute.

use super::cert::{certify, AnchorClaim, CertifiedPath, PathModel};
use super::PathError;
use crate::flute::lasso::{crossing_arc, straight_step};
use crate::flute::{lasso, lies_right_of, punctures_between, Carrier, Curve};
use crate::flux::{flux_auto, flux_side, hamming, FluteModel, FluxSide};
use serde::{Deserialize, Serialize};

/// The one puncture between adjacent curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FluteEdge {
    pub puncture: i64,
}

impl PathModel for FluteModel {
    type Edge = FluteEdge;

    fn check_edge(&self, u: &Curve, v: &Curve, e: &FluteEdge) -> bool {
        matches!(punctures_between(u, v), Ok(s) if s.len() == 1 && s.contains(&e.puncture))
    }
}

pub type FlutePath = CertifiedPath<Curve, FluteEdge>;

/// Edge witnesses for a vertex sequence, failing on the first non-edge.
pub fn witness_edges(vs: &[Curve]) -> Result<Vec<FluteEdge>, PathError> {
    vs.windows(2)
        .enumerate()
        .map(|(i, w)| match punctures_between(&w[0], &w[1]) {
            Ok(s) if s.len() == 1 => Ok(FluteEdge { puncture: *s.first().unwrap() }),
            _ => Err(PathError::Uncertified(format!("step {i} is not an edge"))),
        })
        .collect()
}

/// Vertices of a straight path from `a` to `b`, where `b` lies right of `a`.
pub fn straight_vertices(a: &Curve, b: &Curve) -> Result<Vec<Curve>, PathError> {
    if !lies_right_of(a, b) {
        return Err(PathError::NotDisjoint);
    }
    let mut out = vec![a.clone()];
    while let Some(n) = straight_step(out.last().unwrap(), b)? {
        out.push(n);
    }
    if out.last() != Some(b) {
        return Err(PathError::Uncertified("straight path missed its target".into()));
    }
    Ok(out)
}

/// Straight path certified against its own start: vertex `i` has flux `i` from `a`.
pub fn straight_path(a: &Curve, b: &Curve) -> Result<FlutePath, PathError> {
    let vertices = straight_vertices(a, b)?;
    let edges = witness_edges(&vertices)?;
    let certs = certify(&FluteModel, &vertices, a, &[]);
    Ok(CertifiedPath { vertices, edges, certs, anchors: vec![] })
}

/// Lassos every vertex of a straight path to puncture `p` along one arc that
/// crosses each vertex once. The result is again a straight path.
pub fn lasso_path(vs: &[Curve], p: i64) -> Result<Vec<Curve>, PathError> {
    if p <= Carrier::hull(vs).b {
        return Err(PathError::TargetInsideCarrier);
    }
    let arcs = crossing_arc(vs, p)?;
    vs.iter().zip(&arcs).map(|(v, a)| lasso(v, a).map_err(PathError::from)).collect()
}

/// A path from `a` to `b` whose every vertex is certified to lie outside the
/// ball of radius `r` about `o`, given `d(a, o) = d(b, o) = 3r` and `b` standard.
pub fn detour_flute(o: &Curve, a: &Curve, b: &Curve, r: u64) -> Result<FlutePath, PathError> {
    let m = FluteModel;
    let k = b.standard_index().ok_or(PathError::NotStandard)?;
    let claim = 3 * r;
    for (name, c) in [("a", a), ("b", b)] {
        let h = hamming(&m, c, o)?;
        // each edge changes the partition by one puncture, so d and H share parity
        if h > claim || (claim - h) % 2 == 1 {
            return Err(PathError::PreconditionDistance(format!("d({name}, o) = {claim} is impossible with H = {h}")));
        }
    }
    let finish = |vertices: Vec<Curve>| -> Result<FlutePath, PathError> {
        let edges = witness_edges(&vertices)?;
        let anchors = vec![AnchorClaim { vertex: 0, distance: claim }, AnchorClaim { vertex: vertices.len() - 1, distance: claim }];
        let certs = certify(&m, &vertices, o, &anchors);
        Ok(CertifiedPath { vertices, edges, certs, anchors })
    };

    if let Some(j) = a.standard_index() {
        let dir = if k >= j { 1 } else { -1 };
        let direct: Vec<Curve> = (0..=(k - j).abs()).map(|i| Curve::standard(j + dir * i)).collect();
        let p = finish(direct)?;
        if p.min_bound().is_some_and(|x| x > r) {
            return Ok(p);
        }
    }

    let dir: i64 = if flux_side(&m, o, b)? == FluxSide::Left { -1 } else { 1 };
    let mut push = vec![b.clone()];
    loop {
        let last = push.last().unwrap();
        let past = if dir > 0 { lies_right_of(a, last) } else { lies_right_of(last, a) };
        if past {
            break;
        }
        push.push(Curve::standard(k + dir * push.len() as i64));
    }
    let beta = push.last().unwrap().clone();
    let straight = if dir > 0 {
        straight_vertices(a, &beta)?
    } else {
        let mut v = straight_vertices(&beta, a)?;
        v.reverse();
        v
    };
    let d = straight.iter().map(|g| flux_auto(&m, o, g).map(|f| f.total)).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap();
    let mut layers = vec![straight];
    for _ in 0..d + 2 * r {
        let cur = layers.last().unwrap();
        let hull = Carrier::hull(cur.iter().chain(std::iter::once(o)));
        layers.push(lasso_path(cur, hull.b + 1)?);
    }
    let top = layers.last().unwrap();
    let n = top.len() - 1;
    let mut vertices: Vec<Curve> = layers.iter().map(|l| l[0].clone()).collect();
    vertices.extend(top[1..].iter().cloned());
    vertices.extend(layers.iter().rev().skip(1).map(|l| l[n].clone()));
    vertices.extend(push.iter().rev().skip(1).cloned());
    vertices.dedup();
    let p = finish(vertices)?;
    match p.min_bound() {
        Some(x) if x > r => Ok(p),
        x => Err(PathError::Uncertified(format!("weakest certificate {x:?} does not exceed R = {r}"))),
    }
}
