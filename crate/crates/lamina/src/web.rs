//! Iterated pullback webs and the sibling property.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chord::Chord;
use crate::portrait::PortraitPlus;
use crate::pullback::all_pullbacks_with;

/// Hook that may permute a frontier before it is expanded; the argument is
/// the generation being expanded. Outputs never depend on it.
pub type Reorder<'a> = &'a (dyn Fn(u32, &mut Vec<Chord>) + Sync);

/// Chords with the generation at which each first appeared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Web {
    pub degree: u32,
    pub depth: u32,
    pub chords: BTreeMap<Chord, u32>,
}

impl Web {
    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Chord> {
        self.chords.keys()
    }

    pub fn generation(&self, k: u32) -> impl Iterator<Item = &Chord> {
        self.chords.iter().filter(move |(_, &g)| g == k).map(|(c, _)| c)
    }
}

/// Generation 0 is the edge set of the proper polygons.
pub fn iterate_web(p: &PortraitPlus, depth: u32) -> Web {
    let seeds: Vec<Chord> = p.proper_sets().flat_map(|(_, s)| s.polygon.edges()).collect();
    grow_web(p, &seeds, depth, None)
}

/// Pulls `seeds` back `depth` times relative to `p`, keeping every pullback.
pub fn grow_web(p: &PortraitPlus, seeds: &[Chord], depth: u32, reorder: Option<Reorder>) -> Web {
    let comps = p.complementary_components();
    let mut chords: BTreeMap<Chord, u32> = BTreeMap::new();
    let mut frontier: Vec<Chord> = vec![];
    for s in seeds.iter().filter(|c| !c.is_degenerate()) {
        if chords.insert(s.clone(), 0).is_none() {
            frontier.push(s.clone());
        }
    }
    for g in 0..depth {
        if frontier.is_empty() {
            break;
        }
        if let Some(f) = reorder {
            f(g, &mut frontier);
        }
        let found: Vec<BTreeSet<Chord>> = frontier.par_iter().map(|l| all_pullbacks_with(l, p, &comps)).collect();
        let mut next = vec![];
        for c in found.into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = chords.entry(c.clone()) {
                e.insert(g + 1);
                next.push(c);
            }
        }
        frontier = next;
    }
    Web {
        degree: p.degree(),
        depth,
        chords,
    }
}

/// Outcome of a sibling check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiblingReport {
    pub checked: usize,
    pub violations: Vec<Chord>,
}

impl SiblingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each non-critical chord, searches the web for `d` pairwise disjoint
/// chords containing it and sharing its image.
pub fn verify_sibling_property<'a, I: IntoIterator<Item = &'a Chord>>(chords: I, d: u32) -> SiblingReport {
    let mut by_image: BTreeMap<Chord, Vec<&Chord>> = BTreeMap::new();
    for c in chords {
        by_image.entry(c.sigma(d)).or_default().push(c);
    }
    let mut report = SiblingReport::default();
    for (img, group) in &by_image {
        if img.is_degenerate() {
            continue;
        }
        for c in group {
            report.checked += 1;
            if sibling_collection(c, group, d as usize).is_none() {
                report.violations.push((*c).clone());
            }
        }
    }
    report
}

/// `d` pairwise disjoint members of `group` including `c`, if any.
pub fn sibling_collection(c: &Chord, group: &[&Chord], d: usize) -> Option<Vec<Chord>> {
    let others: Vec<&Chord> = group.iter().copied().filter(|o| *o != c && !o.meets(c)).collect();
    let mut chosen = vec![c.clone()];
    if extend(&others, 0, &mut chosen, d) {
        Some(chosen)
    } else {
        None
    }
}

fn extend(pool: &[&Chord], from: usize, chosen: &mut Vec<Chord>, d: usize) -> bool {
    if chosen.len() == d {
        return true;
    }
    for i in from..pool.len() {
        if chosen.iter().all(|c| !c.meets(pool[i])) {
            chosen.push(pool[i].clone());
            if extend(pool, i + 1, chosen, d) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
