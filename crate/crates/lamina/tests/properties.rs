mod common;

use std::collections::BTreeSet;

use common::*;
use lamina::pile::{preroot_qlamination, LaminationApprox};
use lamina::pullback::all_pullbacks;
use lamina::tiles::tiles;
use lamina::web::iterate_web;
use lamina::{portrait_from_chords, validate_collection, Angle, Chord};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..400).prop_flat_map(|q| (0..q).prop_map(move |p| Angle::new(p, q)))
}

fn chord() -> impl Strategy<Value = Chord> {
    (angle(), angle()).prop_filter("non-degenerate", |(a, b)| a != b).prop_map(|(a, b)| Chord::new(a, b))
}

/// Cyclic alternation checked by sorting the four endpoints.
fn alternate(c: &Chord, e: &Chord) -> bool {
    let mut pts: Vec<(&Angle, u8)> = vec![(c.a(), 0), (c.b(), 0), (e.a(), 1), (e.b(), 1)];
    if pts.iter().map(|p| p.0).collect::<BTreeSet<_>>().len() < 4 {
        return false;
    }
    pts.sort();
    pts[0].1 != pts[1].1 && pts[1].1 != pts[2].1
}

fn portrait_case() -> impl Strategy<Value = (u32, Vec<Chord>)> {
    (2u32..=3, any::<u64>()).prop_map(|(d, seed)| (d, random_portraits(seed, d, 1).remove(0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preimages_cover_the_fibre(x in angle(), d in 2u32..6) {
        let pre = x.preimages(d);
        prop_assert_eq!(pre.len(), d as usize);
        prop_assert_eq!(pre.iter().collect::<BTreeSet<_>>().len(), d as usize);
        prop_assert!(pre.iter().all(|y| y.sigma(d) == x));
    }

    #[test]
    fn linked_means_alternating(c in chord(), e in chord()) {
        prop_assert_eq!(c.linked(&e), alternate(&c, &e));
        prop_assert_eq!(c.linked(&e), e.linked(&c));
    }

    #[test]
    fn validation_ignores_input_order((d, chords) in portrait_case(), seed in any::<u64>()) {
        let mut shuffled = chords.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(validate_collection(&chords, d).unwrap(), validate_collection(&shuffled, d).unwrap());
        prop_assert!(validate_collection(&chords, d).unwrap().is_portrait());
    }

    #[test]
    fn pullbacks_are_preimage_pairs_missing_the_polygons((d, chords) in portrait_case(), l in chord()) {
        let p = portrait_from_chords(&chords, d).unwrap();
        let edges = p.edges();
        let got = all_pullbacks(&l, &p);
        let mut want = BTreeSet::new();
        for x in l.a().preimages(d) {
            for y in l.b().preimages(d) {
                let c = Chord::new(x.clone(), y);
                if !edges.iter().any(|e| e.linked(&c)) {
                    want.insert(c);
                }
            }
        }
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn webs_are_forward_invariant((d, chords) in portrait_case()) {
        let p = portrait_from_chords(&chords, d).unwrap();
        let w = iterate_web(&p, 3);
        for (c, &g) in &w.chords {
            if g > 0 {
                prop_assert!(w.chords.get(&c.sigma(d)).is_some_and(|&h| h == g - 1), "{}", c);
            }
        }
    }

    #[test]
    fn preroot_is_a_proper_lamination((d, chords) in portrait_case()) {
        let p = portrait_from_chords(&chords, d).unwrap();
        let (lam, classes): (LaminationApprox, _) = preroot_qlamination(&p, 3, None).unwrap();
        prop_assert!(lam.crossing_free);
        prop_assert!(lam.proper);
        prop_assert!(classes_share_periods(&classes.classes, d));
        for e in p.edges() {
            prop_assert!(lam.leaves.iter().all(|l| !l.linked(&e)));
        }
    }

    #[test]
    fn tiles_never_cross((d, chords) in portrait_case()) {
        let p = portrait_from_chords(&chords, d).unwrap();
        let t = tiles(&p, 2);
        let edges: BTreeSet<Chord> = t.all().flat_map(|g| g.edges()).collect();
        let v: Vec<&Chord> = edges.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                prop_assert!(!v[i].linked(v[j]), "{} {}", v[i], v[j]);
            }
        }
    }
}
