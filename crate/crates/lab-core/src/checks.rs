//! Seeded experiment runners shared by the acceptance tests and the CLI suites.
//! Each returns a report with instance counts and the first few failures.

use crate::avenue::sample::{random_descriptor, random_lasso, random_walk as avenue_walk, random_witnessed_lasso, Window};
use crate::avenue::{apply_lasso, base_curve, is_full, CurveDescriptor, DescriptorModel};
use crate::flute::lasso::{candidate_arcs, straight_step};
use crate::flute::sample::random_curve;
use crate::flute::{lasso, lies_right_of, punctures_between, Carrier, Curve};
use crate::flux::{flux, flux0, flux_auto, flux_side, hamming, FluteModel, FluxSide};
use crate::oracle::graph::{bfs_from, criterion_check, grid, line};
use crate::oracle::universe::{build_universe, forget_path, is_path, Universe, UniverseSpec};
use crate::path::flute::{detour_flute, straight_vertices};
use crate::path::general::{detour_general, straight_walk};
use crate::path::{verify_path, PathModel};
use crate::side::Side;
use crate::surface::{validate_spec, GenusMode, GenusToken, SurfaceSpec, ValidatedSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

const KEEP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    pub failed: usize,
    /// First few failures.
    pub examples: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), instances: 0, failed: 0, examples: vec![], notes: vec![] }
    }

    pub fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.examples.len() < KEEP {
            self.examples.push(msg);
        }
    }

    /// Counts one instance and records a failure unless `ok`.
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(msg());
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Fails the report if fewer than `n` instances ran.
    pub fn require(&mut self, n: usize) {
        if self.instances < n {
            self.fail(format!("only {} instances, need {n}", self.instances));
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.failed += other.failed;
        if other.failed > 0 {
            self.notes.push(format!("{}: {} of {} failed", other.name, other.failed, other.instances));
        }
        for e in other.examples {
            if self.examples.len() < KEEP {
                self.examples.push(format!("{}: {e}", other.name));
            }
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.name)));
    }
}

const FM: FluteModel = FluteModel;
const DM: DescriptorModel = DescriptorModel;

/// Net count of right-side punctures below a far cutoff; independent of the
/// reference-curve machinery.
pub fn count_flux(a: &Curve, b: &Curve) -> u64 {
    let cut = a.max_gap().max(b.max_gap()) + 10;
    let (pa, pb) = (a.partition().unwrap(), b.partition().unwrap());
    pa.count_upto(cut).abs_diff(pb.count_upto(cut))
}

fn sample_flute<R: Rng>(rng: &mut R, carrier: Carrier) -> Curve {
    let w = rng.gen_range(0..=2);
    let s = rng.gen_range(0..=6);
    random_curve(rng, carrier, w, s)
}

/// Symmetry, zero diagonal and triangle inequalities for F and H on random triples.
pub fn pseudometric_flute<R: Rng>(rng: &mut R, n: usize) -> CheckReport {
    let mut r = CheckReport::new("pseudometric");
    let k = Carrier::new(-5, 6);
    for _ in 0..n {
        let [a, b, c] = [0, 1, 2].map(|_| sample_flute(rng, k));
        let f = |x: &Curve, y: &Curve| flux_auto(&FM, x, y).unwrap().total;
        let h = |x: &Curve, y: &Curve| hamming(&FM, x, y).unwrap();
        let ok = f(&a, &b) == count_flux(&a, &b)
            && f(&a, &a) == 0
            && h(&a, &a) == 0
            && f(&a, &b) == f(&b, &a)
            && h(&a, &b) == h(&b, &a)
            && f(&a, &b) <= f(&a, &c) + f(&c, &b)
            && h(&a, &b) <= h(&a, &c) + h(&c, &b)
            && f(&a, &b) <= h(&a, &b);
        r.check(ok, || format!("{a} {b} {c}"));
    }
    r
}

/// All-pairs slice distances, `u16::MAX` for unreachable.
pub fn all_pairs(u: &Universe) -> Vec<Vec<u16>> {
    (0..u.len())
        .map(|i| bfs_from(&u.graph, i).unwrap().into_iter().map(|d| d.map_or(u16::MAX, |x| x as u16)).collect())
        .collect()
}

/// Flux of every vertex against one far-right standard curve.
fn flux_table(u: &Universe) -> Vec<u64> {
    let far = Curve::standard(u.curves.iter().map(|c| c.max_gap()).max().unwrap() + 2);
    u.curves.iter().map(|c| count_flux(c, &far)).collect()
}

/// `d ≥ H ≥ F` on every pair of the universe, plus a search for `d > H > F`.
pub fn lower_bound_chain(u: &Universe, dist: &[Vec<u16>]) -> CheckReport {
    let mut r = CheckReport::new("lower-bound-chain");
    let f0 = flux_table(u);
    let parts: Vec<_> = u.curves.iter().map(|c| c.partition().unwrap()).collect();
    let mut gap = None;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let d = dist[i][j];
            if d == u16::MAX {
                r.note(format!("unreachable pair {} {}", u.curves[i], u.curves[j]));
                continue;
            }
            let h = parts[i].symmetric_difference(&parts[j]).len() as u64;
            let f = f0[i].abs_diff(f0[j]);
            let d = d as u64;
            r.check(d >= h && h >= f, || format!("{} {}: d={d} H={h} F={f}", u.curves[i], u.curves[j]));
            if gap.is_none() && d > h && h > f {
                gap = Some(format!("{} {}: d={d} H={h} F={f}", u.curves[i], u.curves[j]));
            }
        }
    }
    match gap {
        Some(g) => r.note(format!("strict gap d > H > F: {g}")),
        None => r.fail("no pair with d > H > F".into()),
    }
    r
}

/// Straight paths between disjoint pairs have length `F` and match slice distance.
pub fn straight_geodesic_flute(u: &Universe, dist: &[Vec<u16>]) -> CheckReport {
    let mut r = CheckReport::new("straight-geodesic-flute");
    let parts: Vec<_> = u.curves.iter().map(|c| c.partition().unwrap()).collect();
    let mut outside = 0;
    for i in 0..u.len() {
        for j in 0..u.len() {
            if i == j || !parts[j].is_subset(&parts[i]) || !lies_right_of(&u.curves[i], &u.curves[j]) {
                continue;
            }
            let (a, b) = (&u.curves[i], &u.curves[j]);
            let Ok(p) = straight_vertices(a, b) else {
                r.check(false, || format!("no straight path {a} -> {b}"));
                continue;
            };
            let len = p.len() as u64 - 1;
            let f = count_flux(a, b);
            let d = dist[i][j] as u64;
            if !p.iter().all(|v| u.contains(v)) {
                outside += 1;
            }
            r.check(len == f && f == d, || format!("{a} -> {b}: straight {len}, F {f}, slice d {d}"));
        }
    }
    r.note(format!("{outside} straight paths leave the slice"));
    r
}

fn general_specs_n1() -> Vec<ValidatedSpec> {
    let mut out = Vec::new();
    for m in [0, 1] {
        for g in [GenusMode::Zero, GenusMode::Finite(1), GenusMode::Infinite] {
            if let Ok(s) = validate_spec(SurfaceSpec::new(1, m, g)) {
                out.push(s);
            }
        }
    }
    out
}

/// Straight paths in the descriptor model have length `p + g` and replay.
pub fn straight_general<R: Rng>(rng: &mut R, n: usize) -> CheckReport {
    let mut r = CheckReport::new("straight-general");
    let specs = general_specs_n1();
    let w = Window { lo: -2, hi: 2 };
    let mut tries = 0;
    while r.instances < n && tries < 20 * n {
        tries += 1;
        let spec = specs.choose(rng).unwrap();
        let steps = rng.gen_range(0..5);
        let a = random_descriptor(rng, spec, w, steps);
        let b = base_curve(spec, a.copy_range().1 + rng.gen_range(1..4));
        if is_full(&a, &b) != Ok(true) {
            continue;
        }
        let f = flux0(&DM, &a, &b).unwrap();
        match straight_walk(&a, &b) {
            Ok(p) => {
                let replays = p.edges.iter().enumerate().all(|(i, e)| DM.check_edge(&p.vertices[i], &p.vertices[i + 1], e));
                r.check(p.edges.len() as u64 == f.p + f.g && replays, || {
                    format!("{:?}: length {} vs p+g {}", spec.spec(), p.edges.len(), f.p + f.g)
                });
            }
            Err(e) => r.check(false, || format!("{:?}: {e}", spec.spec())),
        }
    }
    r.note(format!("{} specs with N=1, M in {{0,1}}", specs.len()));
    r
}

/// A random walk of `steps` edges in the slice graph.
fn slice_walk<R: Rng>(rng: &mut R, u: &Universe, steps: usize) -> Vec<usize> {
    let mut p = vec![rng.gen_range(0..u.len())];
    for _ in 0..steps {
        let nb = &u.graph.adj[*p.last().unwrap()];
        match nb.choose(rng) {
            Some(&v) => p.push(v),
            None => break,
        }
    }
    p
}

/// Forgetting a puncture maps slice paths to paths no longer than the original;
/// edges across the forgotten puncture collapse.
pub fn forget_replay<R: Rng>(rng: &mut R, u: &Universe, n: usize, steps: usize) -> CheckReport {
    let mut r = CheckReport::new("forget-puncture");
    let mut merges = 0;
    for _ in 0..n {
        let idx = slice_walk(rng, u, steps);
        let path: Vec<Curve> = idx.iter().map(|&i| u.curves[i].clone()).collect();
        let p = rng.gen_range(u.spec.lo..=u.spec.hi);
        let Some(img) = forget_path(&path, p) else {
            r.check(false, || format!("forgetting {p} destroys a curve of {path:?}"));
            continue;
        };
        let mut collapse_ok = true;
        for w in path.windows(2) {
            let across = punctures_between(&w[0], &w[1]).is_ok_and(|s| s.contains(&p));
            let (x, y) = (w[0].forget(p).unwrap(), w[1].forget(p).unwrap());
            if across {
                merges += 1;
            }
            collapse_ok &= across == (x == y);
        }
        r.check(is_path(&img) && img.len() <= path.len() && collapse_ok, || {
            format!("forgetting {p} on a {}-step path", path.len() - 1)
        });
    }
    r.note(format!("{merges} collapsed edges"));
    r
}

/// Lassoing a curve to a puncture outside the carrier of the pair never
/// shortens its slice distance to the other curve.
pub fn lasso_away<R: Rng>(rng: &mut R, u: &Universe, dist: &[Vec<u16>], n: usize) -> CheckReport {
    let mut r = CheckReport::new("lasso-away");
    let window = Carrier::new(u.spec.lo, u.spec.hi);
    let mut tries = 0;
    while r.instances < n && tries < 200 * n {
        tries += 1;
        let (i, j) = (rng.gen_range(0..u.len()), rng.gen_range(0..u.len()));
        let (a, b) = (&u.curves[i], &u.curves[j]);
        let hull = Carrier::hull([a, b]);
        let Ok(arcs) = candidate_arcs(a, window, u.spec.winding) else { continue };
        let arcs: Vec<_> = arcs.into_iter().filter(|l| l.target < hull.a || l.target > hull.b).collect();
        let Some(l) = arcs.choose(rng) else { continue };
        let Ok(a2) = lasso(a, l) else { continue };
        let Ok(k) = u.vertex(&a2) else { continue };
        let (d0, d1) = (dist[i][j], dist[k][j]);
        r.check(d1 >= d0, || format!("{a} to {b}: {d0}, after lasso to {} {a2}: {d1}", l.target));
    }
    r
}

/// Curves disjoint from `b` and on its right: vertices of a straight path to a
/// far standard curve.
fn right_of_flute(b: &Curve, k: i64) -> Vec<Curve> {
    let target = Curve::standard(k);
    let mut out = vec![b.clone()];
    while let Ok(Some(n)) = straight_step(out.last().unwrap(), &target) {
        out.push(n);
    }
    out.remove(0);
    out
}

/// Facts (1) to (6) about flux sides on random flute triples.
pub fn flux_facts_flute<R: Rng>(rng: &mut R, n: usize) -> Vec<CheckReport> {
    let mut rep: Vec<CheckReport> = (1..=6).map(|i| CheckReport::new(&format!("fact-{i}"))).collect();
    let k = Carrier::new(-4, 5);
    let side = |x: &Curve, y: &Curve| flux_side(&FM, x, y).unwrap();
    let f = |x: &Curve, y: &Curve| flux_auto(&FM, x, y).unwrap().total;
    for _ in 0..n {
        let [a, b, c] = [0, 1, 2].map(|_| sample_flute(rng, k));
        let right = right_of_flute(&b, 9);
        // (1) disjoint on the right means flux-right
        for g in right.iter().take(3) {
            rep[0].check(side(&b, g) == FluxSide::Right, || format!("{b} {g}"));
        }
        // (2) exactly one of right, left, neutral, the same for any far reference
        let s = side(&a, &b);
        let far = [Curve::standard(12), Curve::standard(20)];
        let f0 = |x: &Curve, eta: &Curve| flux(&FM, x, eta, &Curve::standard(-20)).unwrap().total;
        let agree = far.iter().all(|eta| {
            let (x, y) = (f0(&a, eta), f0(&b, eta));
            let t = if x > y { FluxSide::Right } else if x < y { FluxSide::Left } else { FluxSide::Neutral };
            t == s
        });
        rep[1].check(agree, || format!("{a} {b}"));
        // (3) mirror
        let m = match s {
            FluxSide::Right => FluxSide::Left,
            FluxSide::Left => FluxSide::Right,
            n => n,
        };
        rep[2].check(side(&b, &a) == m, || format!("{a} {b}"));
        // (4) transitivity of flux-right
        let fr = |x: &Curve, y: &Curve| side(x, y) != FluxSide::Left;
        if fr(&a, &b) && fr(&b, &c) {
            rep[3].check(fr(&a, &c), || format!("{a} {b} {c}"));
        }
        // (5) neutral exactly when the flux vanishes
        rep[4].check((s == FluxSide::Neutral) == (f(&a, &b) == 0), || format!("{a} {b}"));
        // (6) moving right of a flux-right curve increases flux
        if s == FluxSide::Right {
            let fab = f(&a, &b);
            for g in &right {
                rep[5].check(f(&a, g) > fab, || format!("{a} {b} {g}"));
            }
        }
    }
    rep
}

/// Specs sampled for the descriptor-model facts.
pub fn descriptor_specs() -> Vec<ValidatedSpec> {
    [
        SurfaceSpec::new(1, 0, GenusMode::Zero),
        SurfaceSpec::new(1, 1, GenusMode::Infinite),
        SurfaceSpec::new(2, 1, GenusMode::Zero),
        SurfaceSpec::new(0, 1, GenusMode::Finite(1)),
        SurfaceSpec::new(1, 0, GenusMode::Finite(1)),
        SurfaceSpec::new(2, 1, GenusMode::Finite(1)),
    ]
    .into_iter()
    .map(|s| validate_spec(s).unwrap())
    .collect()
}

fn right_of_descriptor<R: Rng>(rng: &mut R, b: &CurveDescriptor) -> Vec<CurveDescriptor> {
    let mut out = Vec::new();
    let mut cur = b.clone();
    for _ in 0..12 {
        if let Some(l) = random_witnessed_lasso(rng, &cur, Window { lo: -5, hi: 5 }, true) {
            if l.side == Side::Right {
                cur = apply_lasso(&cur, &l).unwrap().0;
                out.push(cur.clone());
            }
        }
    }
    out
}

/// Fact (6) in the descriptor model, one report per spec.
pub fn fact6_general<R: Rng>(rng: &mut R, n: usize) -> Vec<CheckReport> {
    let w = Window { lo: -3, hi: 3 };
    descriptor_specs()
        .into_iter()
        .map(|spec| {
            let mut r = CheckReport::new(&format!("fact-6 {}", spec_name(&spec)));
            for _ in 0..n {
                let a = random_descriptor(rng, &spec, w, 6);
                let b = random_descriptor(rng, &spec, w, 6);
                if flux_side(&DM, &a, &b).unwrap() != FluxSide::Right {
                    continue;
                }
                let fab = flux_auto(&DM, &a, &b).unwrap().total;
                for g in right_of_descriptor(rng, &b) {
                    let fag = flux_auto(&DM, &a, &g).unwrap().total;
                    r.check(fag > fab, || format!("F(a,b) = {fab}, F(a,g) = {fag}: {}", g.to_json()));
                }
            }
            r
        })
        .collect()
}

pub fn spec_name(s: &ValidatedSpec) -> String {
    let g = match s.genus() {
        GenusMode::Zero => "Zero".to_string(),
        GenusMode::Finite(k) => format!("Finite({k})"),
        GenusMode::Infinite => "Infinite".to_string(),
    };
    format!("N={},M={},{g}", s.n(), s.m())
}

/// Side toggle and the Hamming increment for lassos with genus-0 payloads.
pub fn hamming_lasso<R: Rng>(rng: &mut R, n: usize) -> CheckReport {
    let mut r = CheckReport::new("hamming-lasso");
    let specs = descriptor_specs();
    let w = Window { lo: -3, hi: 3 };
    let mut tries = 0;
    while r.instances < n && tries < 50 * n {
        tries += 1;
        let spec = specs.choose(rng).unwrap();
        let a = random_descriptor(rng, spec, w, 5);
        let b = random_descriptor(rng, spec, w, 5);
        let Some(l) = random_lasso(rng, &a, w, false) else { continue };
        if l.payload.genus != GenusToken::Zero || l.payload.slots.is_empty() {
            continue;
        }
        let common = l.payload.slots.iter().all(|&(c, i)| b.state.discrete[c as usize - 1].side(i) == l.side);
        if !common {
            continue;
        }
        let (a2, _) = apply_lasso(&a, &l).unwrap();
        let mut moved = BTreeSet::new();
        for (c, (x, y)) in a.state.discrete.iter().zip(&a2.state.discrete).enumerate() {
            moved.extend(x.symmetric_difference(y).into_iter().map(|i| (c as u32 + 1, i)));
        }
        let h0 = hamming(&DM, &a, &b).unwrap();
        let h1 = hamming(&DM, &a2, &b).unwrap();
        let k = l.payload.slots.len() as u64;
        r.check(moved == l.payload.slots && h1 == h0 + k, || format!("{}: H {h0} -> {h1}, payload {k}", spec_name(spec)));
    }
    r
}

/// Detours on the flute, re-checked against slice distances.
pub fn detour_flute_oracle<R: Rng>(rng: &mut R, u: &Universe, rad: u64, n: usize) -> CheckReport {
    let mut r = CheckReport::new(&format!("detour-flute R={rad}"));
    let target = 3 * rad;
    let centers: Vec<usize> = (0..u.len()).filter(|&i| Carrier::new(-2, 2).carries(&u.curves[i])).collect();
    let (mut in_slice, mut out_slice) = (0usize, 0usize);
    let mut tries = 0;
    while r.instances < n && tries < 50 * n {
        tries += 1;
        let oi = *centers.choose(rng).unwrap();
        let o = &u.curves[oi];
        let d = bfs_from(&u.graph, oi).unwrap();
        let exact = |i: usize| d[i] == Some(target) && hamming(&FM, &u.curves[i], o).unwrap() == target;
        let bs: Vec<usize> = (0..u.len()).filter(|&i| u.curves[i].standard_index().is_some() && exact(i)).collect();
        let Some(&bi) = bs.choose(rng) else { continue };
        let ring: Vec<usize> = (0..u.len()).filter(|&i| exact(i)).collect();
        let ai = *ring.choose(rng).unwrap();
        let (a, b) = (&u.curves[ai], &u.curves[bi]);
        match detour_flute(o, a, b, rad) {
            Ok(p) => {
                let rep = verify_path(&FM, &p, o, rad);
                let mut ok = rep.ok && p.vertices.first() == Some(a) && p.vertices.last() == Some(b);
                for v in &p.vertices {
                    match u.vertex(v) {
                        Ok(i) => {
                            in_slice += 1;
                            ok &= d[i].is_none_or(|x| x > rad);
                        }
                        Err(_) => {
                            out_slice += 1;
                            ok &= hamming(&FM, v, o).unwrap() > rad;
                        }
                    }
                }
                r.check(ok, || format!("o={o} a={a} b={b}: {:?}", rep.failures));
            }
            Err(e) => r.check(false, || format!("o={o} a={a} b={b}: {e}")),
        }
    }
    r.note(format!("{in_slice} path vertices checked by slice distance, {out_slice} outside the slice by Hamming"));
    r
}

/// Certified general detours from random trace-built start curves.
pub fn detour_general_batch<R: Rng>(rng: &mut R, spec: &ValidatedSpec, rad: u64, n: usize) -> CheckReport {
    let mut r = CheckReport::new(&format!("detour-general {} R={rad}", spec_name(spec)));
    let claim = 6 * rad;
    let o = base_curve(spec, 0);
    let mut tries = 0;
    while r.instances < n && tries < 50 * n {
        tries += 1;
        let start = rng.gen_range(1..=3 * rad as i64);
        let steps = rng.gen_range(0..4);
        let walk = avenue_walk(rng, spec, start, Window { lo: start - 2, hi: start + 2 }, steps);
        let a = walk.last().unwrap().clone();
        let b = base_curve(spec, -rng.gen_range(1..=3 * rad as i64));
        if hamming(&DM, &a, &o).unwrap() > claim || hamming(&DM, &b, &o).unwrap() > claim {
            continue;
        }
        match detour_general(&o, &a, &b, rad) {
            Ok(p) => {
                let rep = verify_path(&DM, &p, &o, rad);
                let ends = p.vertices.first() == Some(&a) && p.vertices.last() == Some(&b);
                r.check(rep.ok && ends, || format!("{:?}", rep.failures));
            }
            Err(e) => r.check(false, || format!("a={}: {e}", a.to_json())),
        }
    }
    r
}

/// The ends criterion on synthetic fixtures and flute slices.
pub fn ends_sanity(slices: &[&Universe]) -> CheckReport {
    let mut r = CheckReport::new("ends-criterion");
    let l = line(9);
    let c = criterion_check(&l, 4, 1, 3).unwrap();
    r.check(!c.passed(), || "line: no failures reported".into());
    let g = grid(9, 9);
    let c = criterion_check(&g, 40, 1, 3).unwrap();
    r.check(c.passed(), || format!("grid: {} failures", c.failures.len()));
    for u in slices {
        let o = u.vertex(&Curve::standard(0)).unwrap();
        let c = criterion_check(&u.graph, o, 1, 3).unwrap();
        r.check(c.passed() && c.sphere > 0, || {
            format!("flute slice [{}, {}]: {} failures of {} pairs", u.spec.lo, u.spec.hi, c.failures.len(), c.pairs_checked)
        });
        r.note(format!("flute slice [{}, {}]: {} vertices, sphere of {}, {} pairs", u.spec.lo, u.spec.hi, u.len(), c.sphere, c.pairs_checked));
    }
    r
}

/// Builds a flute slice with the given bounds, seeded at `σ_0`.
pub fn flute_slice(lo: i64, hi: i64, winding: usize, max_len: usize) -> Universe {
    let mut s = UniverseSpec::window(lo, hi, winding);
    s.max_len = max_len;
    build_universe(&s).expect("slice bounds are sane")
}
