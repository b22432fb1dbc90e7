use super::descriptor::{base_curve, CurveDescriptor};
use crate::flux::{CurveModel, Profile};
use crate::side::Side;
use crate::surface::GenusMode;

/// Descriptor curves as a flux provider. Disjointness is read as nesting of
/// sides, which holds for every pair the path engine builds.
#[derive(Debug, Clone, Copy, Default)]
pub struct DescriptorModel;

impl CurveModel for DescriptorModel {
    type Curve = CurveDescriptor;

    fn profile(&self, c: &CurveDescriptor) -> Option<Profile> {
        let genus = match c.spec.genus() {
            GenusMode::Finite(_) => c.state.genus_offset,
            _ => 0,
        };
        Some(Profile { ends: c.state.discrete.clone(), genus })
    }

    fn disjoint(&self, a: &CurveDescriptor, b: &CurveDescriptor) -> bool {
        a.has_on_right(b) || b.has_on_right(a)
    }

    fn far_reference(&self, curves: &[&CurveDescriptor], side: Side) -> CurveDescriptor {
        let (lo, hi) = curves
            .iter()
            .map(|c| c.copy_range())
            .fold((i64::MAX, i64::MIN), |(l, h), (a, b)| (l.min(a), h.max(b)));
        let k = match side {
            Side::Right => hi + 1,
            Side::Left => lo - 1,
        };
        base_curve(&curves[0].spec, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avenue::descriptor::*;
    use crate::flux::{flux0, flux_auto, flux_side, hamming, FluxSide, FluxValue};
    use crate::surface::{validate_spec, ChunkKey, GenusToken, SurfaceSpec};

    fn spec(n: u32, m: u32, g: GenusMode) -> crate::surface::ValidatedSpec {
        validate_spec(SurfaceSpec::new(n, m, g)).unwrap()
    }

    fn t1_payload(copy: i64) -> Payload {
        Payload {
            slots: [(1, copy)].into_iter().collect(),
            chunks: [ChunkKey::root(1, copy)].into_iter().collect(),
            genus: GenusToken::Zero,
        }
    }

    #[test]
    fn base_curves() {
        let s = spec(1, 0, GenusMode::Zero);
        let b0 = base_curve(&s, 0);
        assert_eq!(b0.state.discrete[0].side(0), Side::Left);
        assert_eq!(b0.state.discrete[0].side(1), Side::Right);
        assert_eq!(base_curve(&s, 3), translate_descriptor(&b0, 3));
        let s = spec(1, 1, GenusMode::Finite(2));
        assert_eq!(base_curve(&s, 5).state.genus_offset - base_curve(&s, 2).state.genus_offset, 6);
    }

    #[test]
    fn witnessed_lasso() {
        let s = spec(1, 1, GenusMode::Zero);
        let b = base_curve(&s, 0);
        let l = GeneralLasso::new(t1_payload(3), Side::Right);
        let (n, w) = apply_lasso(&b, &l).unwrap();
        assert_eq!(w.unwrap().piece, 1);
        let m = DescriptorModel;
        assert_eq!(flux0(&m, &b, &n).unwrap(), FluxValue::new(1, 0));
        assert_eq!(hamming(&m, &b, &n).unwrap(), 1);
        assert_eq!(replay(&s, &n.trace).unwrap(), n);
        assert_eq!(apply_lasso(&n, &l).unwrap_err(), AvenueError::SidesMixed);

        let two = Payload { slots: [(1, 3), (1, 4)].into_iter().collect(), ..t1_payload(3) };
        let (_, w) = apply_lasso(&b, &GeneralLasso::new(two, Side::Right)).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn genus_piece_and_flux() {
        let s = spec(1, 1, GenusMode::Finite(1));
        let m = DescriptorModel;
        let f = flux0(&m, &base_curve(&s, 0), &base_curve(&s, 1)).unwrap();
        assert_eq!(f, FluxValue::new(1, 1));
        let g = Payload { slots: Default::default(), chunks: [ChunkKey::root(1, 2)].into_iter().collect(), genus: GenusToken::One };
        let (n, w) = apply_lasso(&base_curve(&s, 0), &GeneralLasso::new(g, Side::Right)).unwrap();
        assert_eq!(w.unwrap().piece, 2);
        assert_eq!(n.state.genus_offset, 1);
        assert_eq!(flux_side(&m, &base_curve(&s, 0), &n).unwrap(), FluxSide::Right);
    }

    #[test]
    fn fullness() {
        let s = spec(1, 1, GenusMode::Zero);
        assert!(is_full(&base_curve(&s, 0), &base_curve(&s, 1)).unwrap());
        assert_eq!(is_full(&base_curve(&s, 1), &base_curve(&s, 0)), Err(AvenueError::NotComparable));
        let b = base_curve(&s, 0);
        let only_chunk = Payload { slots: Default::default(), chunks: [ChunkKey::root(1, 1)].into_iter().collect(), genus: GenusToken::Zero };
        let (n, _) = apply_lasso(&b, &GeneralLasso::new(only_chunk, Side::Right)).unwrap();
        assert!(!is_full(&b, &n).unwrap());
        let s = spec(0, 1, GenusMode::Finite(1));
        let b = base_curve(&s, 0);
        let chunk = Payload { slots: Default::default(), chunks: [ChunkKey::root(1, 1)].into_iter().collect(), genus: GenusToken::Zero };
        let (n, w) = apply_lasso(&b, &GeneralLasso::new(chunk, Side::Right)).unwrap();
        assert!(w.is_none());
        assert!(!is_full(&b, &n).unwrap());
        assert!(is_full(&b, &base_curve(&s, 1)).unwrap());
    }

    #[test]
    fn winding_marks() {
        let s = spec(1, 1, GenusMode::Zero);
        let b = base_curve(&s, 0);
        let l = GeneralLasso { winding: 1, ..GeneralLasso::new(t1_payload(2), Side::Right) };
        let (plain, _) = apply_lasso(&b, &GeneralLasso::new(t1_payload(2), Side::Right)).unwrap();
        let (wound, _) = apply_lasso(&b, &l).unwrap();
        assert_ne!(plain, wound);
        let m = DescriptorModel;
        assert_eq!(flux_auto(&m, &plain, &wound).unwrap().total, 0);
        let back = GeneralLasso { side: Side::Left, ..l };
        assert_eq!(apply_lasso(&wound, &back).unwrap().0, b);
        let json = wound.to_json();
        assert_eq!(CurveDescriptor::from_json(&json).unwrap(), wound);
    }

    #[test]
    fn bad_payloads() {
        let s = spec(1, 1, GenusMode::Zero);
        let b = base_curve(&s, 0);
        let g = Payload { genus: GenusToken::One, ..t1_payload(1) };
        assert!(matches!(apply_lasso(&b, &GeneralLasso::new(g, Side::Right)), Err(AvenueError::InvalidPayload(_))));
        let mut mixed = t1_payload(0);
        mixed.slots.insert((1, 1));
        assert_eq!(apply_lasso(&b, &GeneralLasso::new(mixed, Side::Right)).unwrap_err(), AvenueError::SidesMixed);
    }
}
