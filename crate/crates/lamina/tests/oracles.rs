mod common;

use std::collections::BTreeSet;

use common::*;
use lamina::gaps::{analyze, GapClass};
use lamina::io::to_json;
use lamina::pile::preroot_qlamination;
use lamina::root::{build_root, RootOptions, RootReport};
use lamina::Chord;

#[test]
fn chebyshev_matches_enumeration_at_every_depth() {
    let p = plus(&["1/4-3/4"], 2);
    for depth in 0..=5 {
        let (lam, _) = preroot_qlamination(&p, depth, None).unwrap();
        let got: BTreeSet<Chord> = lam.leaves.into_iter().collect();
        assert_eq!(got, chebyshev_by_enumeration(depth), "depth {depth}");
        assert_eq!(got, chebyshev_closed_form(depth + 2), "depth {depth}");
    }
}

#[test]
fn basilica_matches_orbit_closure() {
    let p = plus(&["1/6-2/3"], 2);
    assert!(matches!(
        build_root(&p, 2, RootOptions::default()),
        Err(lamina::RootError::DepthExhausted { depth: 2, suggested: 4 })
    ));
    for depth in 3..=6 {
        let r = build_root(&p, depth, RootOptions::default()).unwrap();
        let got: BTreeSet<Chord> = r.leaves.iter().cloned().collect();
        assert_eq!(got, basilica(depth), "depth {depth}");
    }
}

#[test]
fn root_report_round_trips() {
    for (v, d, depth) in [(vec!["1/4-3/4"], 2, 4), (vec!["1/6-2/3"], 2, 5), (vec!["0-1/3", "0-2/3"], 3, 3)] {
        let r = build_root(&plus(&v, d), depth, RootOptions::default()).unwrap();
        let text = to_json(&r);
        let back: RootReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_json(&back), text);
    }
}

#[test]
fn cubic_side_root_is_preroot() {
    let p = plus(&["1/9-4/9", "5/9-8/9"], 3);
    let (pre, _) = preroot_qlamination(&p, 3, None).unwrap();
    let r = build_root(&p, 3, RootOptions::default()).unwrap();
    assert_eq!(r.leaves, pre.leaves);
    assert!(r.portal_cycles.is_empty());
    let a = analyze(&r.lamination(), &r.class_partition(), None);
    assert!(!a.capture);
    assert!(a.cycles.iter().all(|c| !matches!(c.class, GapClass::Hyperbolic { .. }) || c.period == 1));
}

#[test]
fn period_four_quadratic_root() {
    let p = plus(&["1/10-3/5"], 2);
    let r = build_root(&p, 6, RootOptions::default()).unwrap();
    assert_eq!(r.tuning_log[0].seed, ch("2/15-3/5"));
    assert!(r.leaves.contains(&ch("1/5-4/15")));
    let c = &r.prime_certificates[0];
    assert_eq!((c.period, c.return_degree), (4, 2));
}
