//! Pullbacks of a chord relative to the polygons of a portrait.

use std::collections::BTreeSet;

use crate::chord::Chord;
use crate::portrait::{Component, PortraitPlus};

/// Chords inside the closure of `a` whose image is `l`.
///
/// Each endpoint pulls back either to a single point of an open boundary arc
/// or, when it is the collapse point of a polygon on the boundary, to the
/// vertices of that polygon met by the boundary. Every pairing is returned.
pub fn pullbacks_into_component(l: &Chord, a: &Component, p: &PortraitPlus) -> BTreeSet<Chord> {
    let mut out = BTreeSet::new();
    if l.is_degenerate() {
        return out;
    }
    let xs = a.preimages(l.a(), p);
    let ys = a.preimages(l.b(), p);
    assert!(!xs.is_empty() && !ys.is_empty(), "image of {l} not covered by a component boundary");
    for x in &xs {
        for y in &ys {
            if x != y {
                out.insert(Chord::new(x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Union over all complementary components.
pub fn all_pullbacks(l: &Chord, p: &PortraitPlus) -> BTreeSet<Chord> {
    all_pullbacks_with(l, p, &p.complementary_components())
}

/// Same as [`all_pullbacks`] with the components precomputed.
pub fn all_pullbacks_with(l: &Chord, p: &PortraitPlus, comps: &[Component]) -> BTreeSet<Chord> {
    comps.iter().flat_map(|a| pullbacks_into_component(l, a, p)).collect()
}
