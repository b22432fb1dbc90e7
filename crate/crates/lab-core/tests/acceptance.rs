//! Acceptance criteria 1 to 10. Prints one line per criterion and exits nonzero
//! if any fails. `LAB_SEED` overrides the seed.

use lab_core::checks::*;
use lab_core::surface::{validate_spec, GenusMode, SurfaceSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Outcome {
    id: usize,
    title: &'static str,
    report: CheckReport,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.passed() && self.elapsed <= self.budget
    }

    fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2} {verdict}: {} ({} instances, {} failed, {:.1}s of {}s)",
            self.id,
            self.title,
            self.report.instances,
            self.report.failed,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        for n in &self.report.notes {
            s.push_str(&format!("\n    note: {n}"));
        }
        for e in &self.report.examples {
            s.push_str(&format!("\n    failure: {e}"));
        }
        s
    }
}

fn run(id: usize, title: &'static str, budget_s: u64, f: impl FnOnce() -> CheckReport) -> Outcome {
    let t = Instant::now();
    let report = f();
    let o = Outcome { id, title, report, elapsed: t.elapsed(), budget: Duration::from_secs(budget_s) };
    println!("{}", o.line());
    o
}

fn combine(name: &str, parts: Vec<CheckReport>) -> CheckReport {
    let mut r = CheckReport::new(name);
    for p in parts {
        r.merge(p);
    }
    r
}

fn main() {
    let seed: u64 = std::env::var("LAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_611);
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    println!("acceptance seed {seed}");
    let mut out = Vec::new();

    out.push(run(1, "F and H are pseudometrics on random flute triples", 60, || {
        let mut r = pseudometric_flute(rng, 1000);
        r.require(1000);
        r
    }));

    let big = flute_slice(-3, 4, 0, 5);
    out.push(run(2, "d >= H >= F on every pair of a flute slice", 300, || {
        let dist = all_pairs(&big);
        let mut r = lower_bound_chain(&big, &dist);
        r.note(format!("slice of {} vertices", big.len()));
        if big.len() < 2000 {
            r.fail(format!("slice has {} < 2000 vertices", big.len()));
        }
        r
    }));

    let mid = flute_slice(-3, 3, 0, 5);
    let mid_dist = all_pairs(&mid);
    out.push(run(3, "straight paths are geodesic (flute) and have length p+g (general)", 600, || {
        let mut flute = straight_geodesic_flute(&mid, &mid_dist);
        flute.note(format!("slice of {} vertices", mid.len()));
        let mut general = straight_general(rng, 200);
        general.require(200);
        combine("straight", vec![flute, general])
    }));

    out.push(run(4, "forgetting a puncture maps paths to shorter paths", 120, || {
        let mut r = forget_replay(rng, &mid, 500, 8);
        r.require(500);
        r
    }));

    out.push(run(5, "lassoing away from the carrier never shortens distance", 120, || {
        let mut r = lasso_away(rng, &mid, &mid_dist, 500);
        r.require(500);
        r
    }));

    out.push(run(6, "flux-right facts (1)-(6), fact (6) also on descriptors", 300, || {
        let mut parts = flux_facts_flute(rng, 500);
        for p in &mut parts {
            p.require(100);
        }
        parts.extend(fact6_general(rng, 500));
        combine("facts", parts)
    }));

    out.push(run(7, "side toggle and Hamming increment for genus-0 lassos", 120, || {
        let mut r = hamming_lasso(rng, 500);
        r.require(500);
        r
    }));

    let wide = flute_slice(-9, 9, 0, 3);
    out.push(run(8, "flute detours avoid the ball, checked against the slice", 600, || {
        let mut parts = Vec::new();
        for rad in [1, 2] {
            let mut r = detour_flute_oracle(rng, &wide, rad, 50);
            r.require(50);
            parts.push(r);
        }
        combine("detour-flute", parts)
    }));

    out.push(run(9, "general detours verify with 6R distance data", 600, || {
        let mut parts = Vec::new();
        for s in [
            SurfaceSpec::new(1, 0, GenusMode::Zero),
            SurfaceSpec::new(1, 1, GenusMode::Infinite),
            SurfaceSpec::new(1, 0, GenusMode::Finite(1)),
        ] {
            let spec = validate_spec(s).unwrap();
            for rad in [1, 2] {
                let mut r = detour_general_batch(rng, &spec, rad, 20);
                r.require(20);
                parts.push(r);
            }
        }
        combine("detour-general", parts)
    }));

    out.push(run(10, "ends criterion on line, grid and flute slices", 30, || {
        let small = flute_slice(-3, 3, 1, 3);
        ends_sanity(&[&mid, &big, &small])
    }));

    let failed: Vec<usize> = out.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    println!("{} of {} criteria pass", out.len() - failed.len(), out.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
