//! Batch runners behind `lab suite`. Each suite writes one JSON line per test group.

use crate::{input, CliError};
use lab_core::checks::*;
use lab_core::oracle::Universe;
use lab_core::surface::{validate_spec, GenusMode, SurfaceSpec, ValidatedSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

pub const SUITES: &[&str] = &["flux-axioms", "detour-R1", "detour", "straight", "oracle", "fact6-general"];

pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Surface spec file for the general-model suites; the built-in specs otherwise.
    pub surface: Option<PathBuf>,
    /// Oracle slice `[lo, hi, winding, max_len]`; each suite has its own default.
    pub universe: Option<(i64, i64, usize, usize)>,
    pub radii: Vec<u64>,
    pub samples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { surface: None, universe: None, radii: vec![1, 2], samples: 200, seed: DEFAULT_SEED, out: None }
    }
}

impl RunConfig {
    pub fn load(path: Option<&str>) -> Result<RunConfig, CliError> {
        let mut c = match path {
            Some(p) => serde_json::from_str(&input::text(p)?).map_err(|e| CliError::Usage(format!("config {p}: {e}")))?,
            None => RunConfig::default(),
        };
        if let Ok(s) = std::env::var("LAB_SEED") {
            c.seed = s.parse().map_err(|_| CliError::Usage(format!("LAB_SEED={s} is not an integer")))?;
        }
        Ok(c)
    }

    fn slice(&self, default: (i64, i64, usize, usize)) -> Universe {
        let (lo, hi, w, len) = self.universe.unwrap_or(default);
        flute_slice(lo, hi, w, len)
    }

    fn specs(&self) -> Result<Vec<ValidatedSpec>, CliError> {
        match &self.surface {
            Some(p) => Ok(vec![input::valid_spec(&p.to_string_lossy())?]),
            None => Ok([
                SurfaceSpec::new(1, 0, GenusMode::Zero),
                SurfaceSpec::new(1, 1, GenusMode::Infinite),
                SurfaceSpec::new(1, 0, GenusMode::Finite(1)),
            ]
            .into_iter()
            .map(|s| validate_spec(s).unwrap())
            .collect()),
        }
    }
}

/// Per-suite stream so a suite's output does not depend on which others ran.
fn rng_for(seed: u64, suite: &str) -> ChaCha8Rng {
    let h = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn record(suite: &str, seed: u64, r: &CheckReport, ms: u128) -> String {
    json!({
        "suite": suite,
        "test": r.name,
        "seed": seed,
        "passed": r.passed(),
        "instances": r.instances,
        "failed": r.failed,
        "examples": r.examples,
        "notes": r.notes,
        "timing": { "elapsed_ms": ms },
    })
    .to_string()
}

/// Runs one suite; returns its JSON lines and whether every group passed.
pub fn run_suite(cfg: &RunConfig, name: &str) -> Result<(Vec<String>, bool), CliError> {
    if !SUITES.contains(&name) {
        return Err(CliError::UnknownSuite(name.to_string()));
    }
    let rng = &mut rng_for(cfg.seed, name);
    let n = cfg.samples;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut emit = |r: CheckReport, t: Instant| {
        ok &= r.passed();
        lines.push(record(name, cfg.seed, &r, t.elapsed().as_millis()));
    };
    match name {
        "flux-axioms" => {
            let t = Instant::now();
            emit(pseudometric_flute(rng, n), t);
            let t = Instant::now();
            for r in flux_facts_flute(rng, n) {
                emit(r, t);
            }
            let t = Instant::now();
            emit(hamming_lasso(rng, n), t);
        }
        "detour-R1" | "detour" => {
            let radii = if name == "detour-R1" { vec![1] } else { cfg.radii.clone() };
            let u = cfg.slice((-9, 9, 0, 3));
            for &rad in &radii {
                let t = Instant::now();
                emit(detour_flute_oracle(rng, &u, rad, n), t);
                for spec in cfg.specs()? {
                    let t = Instant::now();
                    emit(detour_general_batch(rng, &spec, rad, n.div_ceil(5)), t);
                }
            }
        }
        "straight" => {
            let u = cfg.slice((-3, 3, 0, 5));
            let t = Instant::now();
            let d = all_pairs(&u);
            emit(straight_geodesic_flute(&u, &d), t);
            let t = Instant::now();
            emit(straight_general(rng, n), t);
        }
        "oracle" => {
            let u = cfg.slice((-3, 3, 0, 5));
            let t = Instant::now();
            let d = all_pairs(&u);
            emit(lower_bound_chain(&u, &d), t);
            let t = Instant::now();
            emit(forget_replay(rng, &u, n, 8), t);
            let t = Instant::now();
            emit(lasso_away(rng, &u, &d, n), t);
            let t = Instant::now();
            emit(ends_sanity(&[&u]), t);
        }
        "fact6-general" => {
            let t = Instant::now();
            for r in fact6_general(rng, n) {
                emit(r, t);
            }
        }
        _ => unreachable!(),
    }
    Ok((lines, ok))
}
