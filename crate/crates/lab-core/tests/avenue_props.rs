use lab_core::avenue::sample::{random_descriptor, random_lasso, random_witnessed_lasso, Window};
use lab_core::avenue::*;
use lab_core::flux::{flux, flux0, flux_auto, flux_side, hamming, CurveModel, FluxSide};
use lab_core::side::Side;
use lab_core::surface::{validate_spec, EndClass, GenusMode, GenusToken, SurfaceSpec, ValidatedSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const M: DescriptorModel = DescriptorModel;
const W: Window = Window { lo: -3, hi: 3 };

fn specs() -> Vec<ValidatedSpec> {
    [
        SurfaceSpec::new(1, 0, GenusMode::Zero),
        SurfaceSpec::new(1, 1, GenusMode::Infinite),
        SurfaceSpec::new(1, 1, GenusMode::Infinite).with_accumulated(EndClass::Cantor(1)),
        SurfaceSpec::new(2, 1, GenusMode::Zero),
        SurfaceSpec::new(0, 1, GenusMode::Finite(1)),
        SurfaceSpec::new(1, 0, GenusMode::Finite(1)),
        SurfaceSpec::new(2, 1, GenusMode::Finite(1)),
    ]
    .into_iter()
    .map(|s| validate_spec(s).unwrap())
    .collect()
}

/// Specs where only one flux component can be nonzero.
fn single_component(s: &ValidatedSpec) -> bool {
    s.n() == 0 || !matches!(s.genus(), GenusMode::Finite(_))
}

fn setup(seed: u64, si: usize) -> (ChaCha8Rng, ValidatedSpec) {
    let specs = specs();
    (ChaCha8Rng::seed_from_u64(seed), specs[si % specs.len()].clone())
}

/// Curves right of `b`, reached by lassos that pull pieces across from the right.
fn right_of<R: Rng>(rng: &mut R, b: &CurveDescriptor, side: Side) -> Vec<CurveDescriptor> {
    let mut out = Vec::new();
    let mut cur = b.clone();
    for _ in 0..12 {
        if let Some(l) = random_witnessed_lasso(rng, &cur, Window { lo: -5, hi: 5 }, true) {
            if l.side == side {
                cur = apply_lasso(&cur, &l).unwrap().0;
                out.push(cur.clone());
            }
        }
    }
    out.push(translate_descriptor(b, if side == Side::Right { 1 } else { -1 }));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn side_toggle_law(seed in any::<u64>(), si in 0usize..7) {
        let (mut rng, spec) = setup(seed, si);
        let d = random_descriptor(&mut rng, &spec, W, 5);
        if let Some(l) = random_lasso(&mut rng, &d, W, true) {
            let (n, _) = apply_lasso(&d, &l).unwrap();
            let mut moved = BTreeSet::new();
            for (c, (x, y)) in d.state.discrete.iter().zip(&n.state.discrete).enumerate() {
                for i in x.symmetric_difference(y) {
                    moved.insert((c as u32 + 1, i));
                }
            }
            prop_assert_eq!(moved, l.payload.slots.clone());
            let (x, y) = (M.profile(&d).unwrap(), M.profile(&n).unwrap());
            let dg = if l.payload.genus == GenusToken::One { 1 } else { 0 };
            prop_assert_eq!((x.genus - y.genus).abs(), dg);
        }
    }

    #[test]
    fn hamming_increment(seed in any::<u64>(), si in 0usize..7) {
        let (mut rng, spec) = setup(seed, si);
        let a = random_descriptor(&mut rng, &spec, W, 5);
        let b = random_descriptor(&mut rng, &spec, W, 5);
        if let Some(l) = random_lasso(&mut rng, &a, W, false) {
            let common = l.payload.slots.iter().all(|&(c, i)| b.state.discrete[c as usize - 1].side(i) == l.side);
            if common {
                let (a2, _) = apply_lasso(&a, &l).unwrap();
                let h = hamming(&M, &a, &b).unwrap();
                prop_assert_eq!(hamming(&M, &a2, &b).unwrap(), h + l.payload.slots.len() as u64);
            }
        }
    }

    #[test]
    fn witnessed_steps_are_unit(seed in any::<u64>(), si in 0usize..7) {
        let (mut rng, spec) = setup(seed, si);
        let d = random_descriptor(&mut rng, &spec, W, 4);
        if let Some(l) = random_witnessed_lasso(&mut rng, &d, W, true) {
            let (n, w) = apply_lasso(&d, &l).unwrap();
            prop_assert!(w.is_some());
            prop_assert_eq!(flux0(&M, &d, &n).unwrap().total, 1);
            prop_assert_eq!(hamming(&M, &d, &n).unwrap(), 1);
        }
    }

    #[test]
    fn replay_and_translation(seed in any::<u64>(), si in 0usize..7, k in -4i64..4) {
        let (mut rng, spec) = setup(seed, si);
        let d = random_descriptor(&mut rng, &spec, W, 5);
        prop_assert_eq!(&replay(&spec, &d.trace).unwrap(), &d);
        prop_assert_eq!(&CurveDescriptor::from_json(&d.to_json()).unwrap(), &d);
        if let Some(l) = random_lasso(&mut rng, &d, W, true) {
            let lhs = translate_descriptor(&apply_lasso(&d, &l).unwrap().0, k);
            let rhs = apply_lasso(&translate_descriptor(&d, k), &l.shift(k)).unwrap().0;
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn flux_is_a_pseudometric(seed in any::<u64>(), si in 0usize..7) {
        let (mut rng, spec) = setup(seed, si);
        let [a, b, c] = [0, 1, 2].map(|_| random_descriptor(&mut rng, &spec, W, 6));
        let f = |x: &CurveDescriptor, y: &CurveDescriptor| flux_auto(&M, x, y).unwrap().total;
        let h = |x: &CurveDescriptor, y: &CurveDescriptor| hamming(&M, x, y).unwrap();
        prop_assert_eq!(f(&a, &a), 0);
        prop_assert_eq!(f(&a, &b), f(&b, &a));
        prop_assert!(f(&a, &b) <= f(&a, &c) + f(&c, &b));
        prop_assert!(h(&a, &b) <= h(&a, &c) + h(&c, &b));
        prop_assert!(h(&a, &b) >= f(&a, &b));
        let left = M.far_reference(&[&a, &b], Side::Left);
        let far = translate_descriptor(&M.far_reference(&[&a, &b], Side::Right), 2);
        prop_assert_eq!(flux(&M, &a, &b, &left).unwrap(), flux_auto(&M, &a, &b).unwrap());
        prop_assert_eq!(flux(&M, &a, &b, &far).unwrap(), flux_auto(&M, &a, &b).unwrap());
    }

    #[test]
    fn flux_right_facts(seed in any::<u64>(), si in 0usize..7) {
        let (mut rng, spec) = setup(seed, si);
        let [a, b, c] = [0, 1, 2].map(|_| random_descriptor(&mut rng, &spec, W, 6));
        let side = |x: &CurveDescriptor, y: &CurveDescriptor| flux_side(&M, x, y).unwrap();
        let f = |x: &CurveDescriptor, y: &CurveDescriptor| flux_auto(&M, x, y).unwrap().total;
        let s = side(&a, &b);
        // (1) disjoint on the right means flux-right
        for g in right_of(&mut rng, &b, Side::Right) {
            prop_assert!(side(&b, &g) != FluxSide::Left);
        }
        // (3) mirror symmetry
        let mirrored = match s { FluxSide::Right => FluxSide::Left, FluxSide::Left => FluxSide::Right, n => n };
        prop_assert_eq!(side(&b, &a), mirrored);
        // (4) transitivity
        let right = |x: &CurveDescriptor, y: &CurveDescriptor| side(x, y) != FluxSide::Left;
        if right(&a, &b) && right(&b, &c) {
            prop_assert!(right(&a, &c));
        }
        if single_component(&spec) {
            // (5) and (6)
            prop_assert_eq!(s == FluxSide::Neutral, f(&a, &b) == 0);
            for dir in [Side::Right, Side::Left] {
                let holds = match dir { Side::Right => s != FluxSide::Left, Side::Left => s != FluxSide::Right };
                if holds {
                    for g in right_of(&mut rng, &b, dir) {
                        prop_assert!(f(&a, &g) > f(&a, &b));
                    }
                }
            }
        }
    }
}

#[test]
fn mixed_components_break_facts_five_and_six() {
    let spec = validate_spec(SurfaceSpec::new(1, 0, GenusMode::Finite(1))).unwrap();
    let a = base_curve(&spec, 0);
    let end = Payload { slots: [(1, 0)].into_iter().collect(), chunks: BTreeSet::new(), genus: GenusToken::Zero };
    let handle = Payload { slots: BTreeSet::new(), chunks: BTreeSet::new(), genus: GenusToken::One };
    let (b, _) = apply_lasso(&a, &GeneralLasso::new(end, Side::Left)).unwrap();
    let (b, _) = apply_lasso(&b, &GeneralLasso::new(handle, Side::Right)).unwrap();
    assert_eq!(flux_side(&M, &a, &b).unwrap(), FluxSide::Neutral);
    assert_eq!(flux_auto(&M, &a, &b).unwrap().total, 2);
    let next = Payload { slots: [(1, 1)].into_iter().collect(), chunks: BTreeSet::new(), genus: GenusToken::Zero };
    let (g, w) = apply_lasso(&b, &GeneralLasso::new(next, Side::Right)).unwrap();
    assert!(w.is_some() && b.has_on_right(&g));
    assert_eq!(flux_auto(&M, &a, &g).unwrap().total, 1);
}
