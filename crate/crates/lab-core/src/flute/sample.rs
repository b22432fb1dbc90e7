//! Random curves by lasso walks, for tests and the suite runner.

use super::lasso::{candidate_arcs, lasso, Carrier};
use super::word::Curve;
use rand::seq::SliceRandom;
use rand::Rng;

/// One random lasso step inside the carrier, or `None` if no arc works.
pub fn random_step<R: Rng>(rng: &mut R, c: &Curve, carrier: Carrier, winding: usize) -> Option<Curve> {
    let mut arcs = candidate_arcs(c, carrier, winding).ok()?;
    arcs.shuffle(rng);
    arcs.iter().find_map(|a| lasso(c, a).ok())
}

/// A walk of `steps` lasso moves from `start`. Every consecutive pair is adjacent.
pub fn random_walk<R: Rng>(rng: &mut R, start: &Curve, carrier: Carrier, winding: usize, steps: usize) -> Vec<Curve> {
    let mut out = vec![start.clone()];
    for _ in 0..steps {
        match random_step(rng, out.last().unwrap(), carrier, winding) {
            Some(n) => out.push(n),
            None => break,
        }
    }
    out
}

/// A random curve carried by `carrier`, reached by a walk of the given length
/// from a standard curve inside it.
pub fn random_curve<R: Rng>(rng: &mut R, carrier: Carrier, winding: usize, steps: usize) -> Curve {
    let k = rng.gen_range(carrier.a - 1..=carrier.b);
    random_walk(rng, &Curve::standard(k), carrier, winding, steps).pop().unwrap()
}
