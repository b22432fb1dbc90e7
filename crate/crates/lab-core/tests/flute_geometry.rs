use lab_core::flute::arrange::Arrangement;
use lab_core::flute::polyline::{enclosed_punctures, geometry_oracle, polylines_meet, realize_arrangement};
use lab_core::flute::sample::random_walk;
use lab_core::flute::{are_disjoint, Carrier, Curve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn walk(seed: u64, winding: usize, steps: usize) -> Vec<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk(&mut rng, &Curve::standard(0), Carrier::new(-3, 4), winding, steps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_matches_polyline(seed in any::<u64>(), winding in 0usize..=2) {
        for c in walk(seed, winding, 6) {
            let arr = Arrangement::new(vec![c.word().to_vec()]).unwrap();
            let poly = realize_arrangement(&arr).pop().unwrap();
            let (sep, p) = geometry_oracle(&poly).unwrap();
            prop_assert!(sep);
            prop_assert_eq!(p.unwrap(), c.partition().unwrap());
        }
    }

    #[test]
    fn walk_edges_are_disjoint_in_the_plane(seed in any::<u64>(), winding in 0usize..=2) {
        let w = walk(seed, winding, 6);
        for e in w.windows(2) {
            let arr = Arrangement::new(vec![e[0].word().to_vec(), e[1].word().to_vec()]).unwrap();
            let ps = realize_arrangement(&arr);
            prop_assert!(!polylines_meet(&ps[0], &ps[1]).unwrap());
            let d = e[0].partition().unwrap().symmetric_difference(&e[1].partition().unwrap());
            prop_assert_eq!(d.len(), 1);
        }
    }

    #[test]
    fn disjointness_implies_nested_sides(seed in any::<u64>()) {
        let w = walk(seed, 1, 8);
        for a in &w {
            for b in &w {
                let (pa, pb) = (a.partition().unwrap(), b.partition().unwrap());
                let nested = pa.is_subset(&pb) || pb.is_subset(&pa);
                if are_disjoint(a.word(), b.word()) {
                    prop_assert!(nested);
                    let arr = Arrangement::new(vec![a.word().to_vec(), b.word().to_vec()]).unwrap();
                    let ps = realize_arrangement(&arr);
                    prop_assert!(a == b || !polylines_meet(&ps[0], &ps[1]).unwrap());
                }
            }
        }
    }
}

#[test]
fn peripheral_circle_is_not_separating() {
    let c = Curve::peripheral(3);
    let arr = Arrangement::new(vec![c.word().to_vec()]).unwrap();
    let poly = realize_arrangement(&arr).pop().unwrap();
    assert_eq!(geometry_oracle(&poly).unwrap(), (false, None));
    assert_eq!(enclosed_punctures(&poly).unwrap(), vec![3]);
}

mod diagrams {
    use super::*;
    use lab_core::flute::diagram::{canonicalize, diagram_of, finger_move, reverse, CrossingDiagram};
    use lab_core::flute::polyline::{realize_word, Frame};
    use rand::Rng;

    fn draw(d: &CrossingDiagram) -> lab_core::flute::polyline::PolylineCurve {
        let lo = d.crossings.first().unwrap().gap;
        let hi = d.crossings.last().unwrap().gap + 1;
        let max = d.crossings.iter().map(|c| d.crossings.iter().filter(|x| x.gap == c.gap).count()).max().unwrap();
        let f = Frame::new(lo, hi, max);
        let ranks = d.ranks();
        // word() starts at crossing 0, so collect abscissae along the traversal
        let mut xs = Vec::new();
        let mut i = 0;
        for _ in 0..d.crossings.len() {
            xs.push(f.crossing_x(d.crossings[i].gap, ranks[i]));
            i = d.succ[i];
        }
        realize_word(&d.word(), &xs, f)
    }

    fn scramble(d: &CrossingDiagram, rng: &mut ChaCha8Rng, moves: usize) -> CrossingDiagram {
        let mut cur = d.clone();
        for _ in 0..moves {
            if rng.gen_bool(0.2) {
                cur = reverse(&cur);
                continue;
            }
            for _ in 0..20 {
                let i = rng.gen_range(0..cur.crossings.len());
                let lo = cur.crossings.first().unwrap().gap - 1;
                let hi = cur.crossings.last().unwrap().gap + 1;
                let g = rng.gen_range(lo..=hi);
                let n = cur.crossings.iter().filter(|c| c.gap == g).count();
                let q = rng.gen_range(0..=n);
                if let Some(next) = finger_move(&cur, i, g, q) {
                    cur = next;
                    break;
                }
            }
        }
        cur
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_form_survives_isotopy(seed in any::<u64>(), moves in 0usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_walk(&mut rng, &Curve::standard(0), Carrier::new(-2, 3), 1, 4).pop().unwrap();
            let d = diagram_of(&c);
            let moved = scramble(&d, &mut rng, moves);
            moved.validate().unwrap();
            let canon = canonicalize(&moved).unwrap();
            prop_assert_eq!(&canon, &d);
            prop_assert_eq!(canonicalize(&canon).unwrap(), canon);
            // the unreduced drawing is a simple curve with the same sides
            let (sep, p) = geometry_oracle(&draw(&moved)).unwrap();
            prop_assert!(sep);
            prop_assert_eq!(p.unwrap(), c.partition().unwrap());
        }
    }

    #[test]
    fn winding_lasso_with_hidden_bigon() {
        let tp: Curve = "U0 D2 U1 D0 U2".parse().unwrap();
        let d = diagram_of(&tp);
        let moved = (0..d.crossings.len())
            .find_map(|i| (0..=2).find_map(|q| finger_move(&d, i, 1, q)))
            .unwrap();
        assert_eq!(moved.crossings.len(), d.crossings.len() + 2);
        assert_eq!(canonicalize(&moved).unwrap(), d);
        assert_ne!(d, diagram_of(&Curve::standard(1)));
    }
}
