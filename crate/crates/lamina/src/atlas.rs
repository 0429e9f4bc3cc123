//! Portraits with small denominators and their legal classes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::gaps::analyze;
use crate::legal::check_legal;
use crate::pile::{endpoint_classes, LaminationApprox};
use crate::portrait::{portrait_from_chords, validate_collection};
use crate::root::{build_root, portal_cycles, RootOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub portrait: Vec<Chord>,
    pub side: bool,
    pub portal_cycles: usize,
    /// Whether the root needed no tuning; `None` if the root was not built.
    pub prime: Option<bool>,
    /// Index into `AtlasReport::roots`, or the error that stopped the build.
    pub root: Result<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalClass {
    pub portraits: Vec<usize>,
    pub roots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub degree: u32,
    pub max_denominator: u64,
    pub depth: u32,
    pub entries: Vec<AtlasEntry>,
    pub roots: Vec<Vec<Chord>>,
    pub classes: Vec<LegalClass>,
}

impl AtlasReport {
    pub fn class_sizes(&self) -> Vec<(usize, usize)> {
        self.classes.iter().map(|c| (c.portraits.len(), c.roots.len())).collect()
    }
}

/// Angles in lowest terms with denominator at most `bound`.
pub fn small_angles(bound: u64) -> Vec<Angle> {
    let mut out = vec![];
    for q in 1..=bound as i64 {
        for p in 0..q {
            let t = Angle::new(p, q);
            if t.denom() == BigUint::from(q as u64) {
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// Critical chords with both endpoint denominators at most `bound`.
pub fn small_critical_chords(d: u32, bound: u64) -> Vec<Chord> {
    let pts = small_angles(bound);
    let mut out = vec![];
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if x.sigma(d) == y.sigma(d) {
                out.push(Chord::new(x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Full critical portraits of degree `d` with endpoint denominators at most `bound`.
pub fn small_portraits(d: u32, bound: u64) -> Vec<Vec<Chord>> {
    let chords = small_critical_chords(d, bound);
    let mut out = vec![];
    let mut chosen: Vec<Chord> = vec![];
    fn go(chords: &[Chord], from: usize, need: usize, d: u32, chosen: &mut Vec<Chord>, out: &mut Vec<Vec<Chord>>) {
        if chosen.len() == need {
            if portrait_from_chords(chosen, d).is_ok() {
                out.push(chosen.clone());
            }
            return;
        }
        for i in from..chords.len() {
            if chosen.iter().all(|c| !c.linked(&chords[i]) && c != &chords[i]) {
                chosen.push(chords[i].clone());
                go(chords, i + 1, need, d, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&chords, 0, d as usize - 1, d, &mut chosen, &mut out);
    out
}

/// Diameters `{t, t + 1/2}` with both denominators at most `bound`.
pub fn quadratic_diameters(bound: u64) -> Vec<Chord> {
    small_critical_chords(2, bound)
}

/// Side flag, portal cycle count, and the root leaves with a no-tuning flag.
type Built = (bool, usize, Result<(Vec<Chord>, bool), String>);

/// Roots of every small portrait and the components of the bipartite
/// legality graph between portraits and distinct roots.
pub fn atlas(d: u32, bound: u64, depth: u32) -> AtlasReport {
    let portraits = small_portraits(d, bound);
    let built: Vec<Built> = portraits
        .par_iter()
        .map(|c| {
            let p = portrait_from_chords(c, d).expect("enumerated portraits are full");
            let r = build_root(&p, depth, RootOptions::default())
                .map(|r| (r.leaves, r.tuning_log.is_empty()))
                .map_err(|e| e.to_string());
            (p.is_side(), portal_cycles(&p).len(), r)
        })
        .collect();
    let mut roots: Vec<Vec<Chord>> = vec![];
    let mut index: BTreeMap<Vec<Chord>, usize> = BTreeMap::new();
    let entries: Vec<AtlasEntry> = portraits
        .iter()
        .zip(built)
        .map(|(c, (side, pcs, r))| AtlasEntry {
            portrait: c.clone(),
            side,
            portal_cycles: pcs,
            prime: r.as_ref().ok().map(|(_, prime)| *prime),
            root: r.map(|(leaves, _)| {
                *index.entry(leaves.clone()).or_insert_with(|| {
                    roots.push(leaves);
                    roots.len() - 1
                })
            }),
        })
        .collect();
    let np = portraits.len();
    let legal: Vec<Vec<bool>> = roots
        .par_iter()
        .map(|leaves| {
            let lam = LaminationApprox::new(d, depth, None, leaves.iter().cloned());
            let classes = endpoint_classes(&lam.leaves);
            let a = analyze(&lam, &classes, None);
            portraits
                .iter()
                .map(|c| {
                    let coll = validate_collection(c, d).expect("enumerated portraits are valid");
                    check_legal(&coll, &lam, &a).legal
                })
                .collect()
        })
        .collect();
    let mut uf = UnionFind::<usize>::new(np + roots.len());
    for (j, row) in legal.iter().enumerate() {
        for (i, &ok) in row.iter().enumerate() {
            if ok {
                uf.union(i, np + j);
            }
        }
    }
    let mut groups: BTreeMap<usize, LegalClass> = BTreeMap::new();
    for v in 0..np + roots.len() {
        let g = groups.entry(uf.find(v)).or_insert(LegalClass {
            portraits: vec![],
            roots: vec![],
        });
        if v < np {
            g.portraits.push(v);
        } else {
            g.roots.push(v - np);
        }
    }
    let mut classes: Vec<LegalClass> = groups.into_values().collect();
    classes.sort_by(|a, b| (a.portraits.first(), a.roots.first()).cmp(&(b.portraits.first(), b.roots.first())));
    AtlasReport {
        degree: d,
        max_denominator: bound,
        depth,
        entries,
        roots,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diameters() {
        let names: Vec<String> = quadratic_diameters(4).iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["0/1-1/2", "1/4-3/4"]);
        let periods: std::collections::BTreeSet<u32> = quadratic_diameters(12)
            .iter()
            .flat_map(|c| c.endpoints().map(|x| x.classify(2)))
            .filter(|o| o.is_periodic())
            .map(|o| o.period)
            .collect();
        assert_eq!(periods.into_iter().collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn cubic_examples_are_enumerated() {
        let all = small_portraits(3, 9);
        let want = |v: &[&str]| v.iter().map(|s| s.parse::<Chord>().unwrap()).collect::<Vec<_>>();
        assert!(all.contains(&want(&["0-1/3", "0-2/3"])));
        assert!(all.contains(&want(&["1/9-4/9", "5/9-8/9"])));
        for c in &all {
            assert!(validate_collection(c, 3).unwrap().is_portrait());
        }
    }

    #[test]
    fn quadratic_atlas_small() {
        let a = atlas(2, 6, 5);
        assert_eq!(a.entries.len(), quadratic_diameters(6).len());
        assert!(a.entries.iter().all(|e| e.root.is_ok()));
        let covered: usize = a.classes.iter().map(|c| c.portraits.len()).sum();
        assert_eq!(covered, a.entries.len());
        // each portrait is legal for its own root
        for (i, e) in a.entries.iter().enumerate() {
            let r = *e.root.as_ref().unwrap();
            assert!(a.classes.iter().any(|c| c.portraits.contains(&i) && c.roots.contains(&r)), "{:?}", e.portrait);
        }
    }
}
