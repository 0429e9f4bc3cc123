//! Piles of web chords, the preroot prelamination and its classes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::error::LaminationError;
use crate::polygon::{positively_oriented, GapLeaf};
use crate::portrait::PortraitPlus;
use crate::web::{iterate_web, Web};

/// A connected family of chords under crossing or shared endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pile {
    pub chords: Vec<Chord>,
    pub hull: GapLeaf,
}

/// Chords replaced by endpoint ranks, for cheap pairwise tests.
struct Ranked {
    pairs: Vec<(usize, usize)>,
}

impl Ranked {
    fn new(chords: &[&Chord]) -> Ranked {
        let verts: BTreeSet<&Angle> = chords.iter().flat_map(|c| c.endpoints()).collect();
        let rank: HashMap<&Angle, usize> = verts.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        Ranked {
            pairs: chords.iter().map(|c| (rank[c.a()], rank[c.b()])).collect(),
        }
    }

    fn linked(&self, i: usize, j: usize) -> bool {
        let ((a1, b1), (a2, b2)) = (self.pairs[i], self.pairs[j]);
        (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
    }

    fn meets(&self, i: usize, j: usize) -> bool {
        let ((a1, b1), (a2, b2)) = (self.pairs[i], self.pairs[j]);
        a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 || self.linked(i, j)
    }

    /// Index pairs `i < j` satisfying `pred`.
    fn pairs_where(&self, pred: impl Fn(usize, usize) -> bool + Sync) -> Vec<(usize, usize)> {
        let n = self.pairs.len();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let pred = &pred;
                (i + 1..n).filter(move |&j| pred(i, j)).map(move |j| (i, j))
            })
            .collect()
    }
}

/// Connected components of the meeting graph, sorted by hull.
pub fn compute_piles<'a, I: IntoIterator<Item = &'a Chord>>(chords: I) -> Vec<Pile> {
    let chords: Vec<&Chord> = chords.into_iter().filter(|c| !c.is_degenerate()).collect();
    let ranked = Ranked::new(&chords);
    let mut uf = UnionFind::<usize>::new(chords.len());
    for (i, j) in ranked.pairs_where(|i, j| ranked.meets(i, j)) {
        uf.union(i, j);
    }
    let mut groups: BTreeMap<usize, Vec<Chord>> = BTreeMap::new();
    for (i, c) in chords.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push((*c).clone());
    }
    let mut piles: Vec<Pile> = groups
        .into_values()
        .map(|mut v| {
            v.sort();
            let hull = GapLeaf::new(v.iter().flat_map(|c| [c.a().clone(), c.b().clone()])).expect("pile has a chord");
            Pile { chords: v, hull }
        })
        .collect();
    piles.sort_by(|a, b| a.hull.cmp(&b.hull));
    piles
}

/// Boundary edges of the hull, each of which must be a member chord.
pub fn pile_hull_edges(pile: &Pile) -> Result<Vec<Chord>, LaminationError> {
    let members: BTreeSet<&Chord> = pile.chords.iter().collect();
    let edges = pile.hull.edges();
    for e in &edges {
        if !members.contains(e) {
            return Err(LaminationError::HullEdgeNotInPile { edge: e.clone() });
        }
    }
    Ok(edges)
}

/// A finite set of leaves with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationApprox {
    pub degree: u32,
    pub depth: u32,
    /// Largest admitted endpoint denominator; `None` admits everything.
    pub resolution: Option<u64>,
    pub leaves: Vec<Chord>,
    pub crossing_free: bool,
    pub proper: bool,
    /// Largest pile hull vertex count seen while building.
    pub max_hull: usize,
    /// Class hull leaves that are not web chords. Candidates for leaves
    /// incompatible with the portrait; flagged, not removed.
    #[serde(default)]
    pub off_web: Vec<Chord>,
}

impl LaminationApprox {
    pub fn new(degree: u32, depth: u32, resolution: Option<u64>, leaves: impl IntoIterator<Item = Chord>) -> Self {
        let leaves: Vec<Chord> = leaves
            .into_iter()
            .filter(|c| !c.is_degenerate())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let crossing_free = find_crossing(&leaves).is_none();
        let proper = leaves.iter().all(|c| is_proper(c, degree));
        LaminationApprox {
            degree,
            depth,
            resolution,
            leaves,
            crossing_free,
            proper,
            max_hull: 0,
            off_web: vec![],
        }
    }

    pub fn empty(degree: u32, depth: u32) -> Self {
        Self::new(degree, depth, None, [])
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.leaves.binary_search(c).is_ok()
    }
}

/// First linked pair, if any.
pub fn find_crossing(leaves: &[Chord]) -> Option<(Chord, Chord)> {
    let refs: Vec<&Chord> = leaves.iter().collect();
    let ranked = Ranked::new(&refs);
    let n = refs.len();
    (0..n)
        .into_par_iter()
        .find_map_first(|i| (i + 1..n).find(|&j| ranked.linked(i, j)).map(|j| (i, j)))
        .map(|(i, j)| (leaves[i].clone(), leaves[j].clone()))
}

/// Both endpoint denominators at most `n`.
pub fn within_resolution(c: &Chord, n: Option<u64>) -> bool {
    match n {
        None => true,
        Some(n) => {
            let n = BigUint::from(n);
            c.a().denom() <= n && c.b().denom() <= n
        }
    }
}

/// Hull edges of all piles of a web, filtered to the resolution.
pub fn prelamination_from_web(web: &Web, resolution: Option<u64>) -> Result<LaminationApprox, LaminationError> {
    let piles = compute_piles(web.iter());
    let mut leaves = vec![];
    for pile in &piles {
        leaves.extend(pile_hull_edges(pile)?);
    }
    let leaves = leaves.into_iter().filter(|c| within_resolution(c, resolution));
    let mut lam = LaminationApprox::new(web.degree, web.depth, resolution, leaves);
    lam.max_hull = piles.iter().map(|p| p.hull.len()).max().unwrap_or(0);
    Ok(lam)
}

pub fn preroot_prelamination(p: &PortraitPlus, depth: u32, resolution: Option<u64>) -> Result<LaminationApprox, LaminationError> {
    prelamination_from_web(&iterate_web(p, depth), resolution)
}

/// Classes of leaf endpoints under concatenation of leaves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartition {
    /// Nontrivial classes, each sorted, ordered by least element.
    pub classes: Vec<Vec<Angle>>,
}

impl ClassPartition {
    pub fn hulls(&self) -> Vec<GapLeaf> {
        self.classes.iter().filter_map(|c| GapLeaf::new(c.iter().cloned())).collect()
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: &Angle) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(x).is_ok())
    }

    pub fn same_class(&self, x: &Angle, y: &Angle) -> bool {
        x == y || matches!((self.class_of(x), self.class_of(y)), (Some(i), Some(j)) if i == j)
    }

    /// Edges of all class hulls.
    pub fn leaves(&self) -> Vec<Chord> {
        let set: BTreeSet<Chord> = self.hulls().iter().flat_map(|h| h.edges()).collect();
        set.into_iter().collect()
    }
}

/// Partition without the properness audit.
pub fn endpoint_classes<'a, I: IntoIterator<Item = &'a Chord>>(leaves: I) -> ClassPartition {
    let leaves: Vec<&Chord> = leaves.into_iter().collect();
    let verts: BTreeSet<&Angle> = leaves.iter().flat_map(|c| c.endpoints()).collect();
    let verts: Vec<&Angle> = verts.into_iter().collect();
    let idx: HashMap<&Angle, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for c in &leaves {
        uf.union(idx[c.a()], idx[c.b()]);
    }
    let mut groups: BTreeMap<usize, Vec<Angle>> = BTreeMap::new();
    for (i, v) in verts.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push((*v).clone());
    }
    let mut classes: Vec<Vec<Angle>> = groups.into_values().filter(|g| g.len() > 1).collect();
    classes.sort();
    ClassPartition { classes }
}

pub fn concat_classes(lam: &LaminationApprox) -> Result<ClassPartition, LaminationError> {
    let part = endpoint_classes(&lam.leaves);
    for h in part.hulls() {
        for e in h.edges() {
            if !is_proper(&e, lam.degree) {
                return Err(LaminationError::ImproperDetected { edge: e });
            }
        }
    }
    Ok(part)
}

/// No forward image joins a periodic endpoint to one of another period or a
/// preperiodic one. Degenerate images end the check.
pub fn is_proper(c: &Chord, d: u32) -> bool {
    let mut seen = BTreeSet::new();
    let mut cur = c.clone();
    while !cur.is_degenerate() && seen.insert(cur.clone()) {
        let (x, y) = (cur.a().classify(d), cur.b().classify(d));
        if (x.is_periodic() || y.is_periodic()) && !(x.is_periodic() && y.is_periodic() && x.period == y.period) {
            return false;
        }
        cur = cur.sigma(d);
    }
    true
}

/// Edges of class hulls of the preroot prelamination.
pub fn preroot_qlamination(
    p: &PortraitPlus,
    depth: u32,
    resolution: Option<u64>,
) -> Result<(LaminationApprox, ClassPartition), LaminationError> {
    let pre = preroot_prelamination(p, depth, resolution)?;
    qlamination_of(&pre)
}

/// Closes a prelamination under concatenation.
pub fn qlamination_of(pre: &LaminationApprox) -> Result<(LaminationApprox, ClassPartition), LaminationError> {
    let part = concat_classes(pre)?;
    let mut lam = LaminationApprox::new(pre.degree, pre.depth, pre.resolution, part.leaves());
    lam.max_hull = pre.max_hull;
    let web: BTreeSet<&Chord> = pre.leaves.iter().collect();
    lam.off_web = lam.leaves.iter().filter(|c| !web.contains(c)).cloned().collect();
    Ok((lam, part))
}

/// Invariants every pile of a pullback web satisfies; returns descriptions
/// of violations.
pub fn check_pile_invariants(piles: &[Pile], p: &PortraitPlus) -> Vec<String> {
    let d = p.degree();
    let mut out = vec![];
    let portal_edges: BTreeSet<Chord> = p.portals().flat_map(|(_, s)| s.polygon.edges()).collect();
    for pile in piles {
        if let Err(e) = pile_hull_edges(pile) {
            out.push(e.to_string());
        }
        if !positively_oriented(pile.hull.vertices(), d) {
            out.push(format!("pile {} is not positively oriented", pile.hull));
        }
        for c in &pile.chords {
            if portal_edges.contains(c) {
                out.push(format!("portal edge {c} lies in a pile"));
            }
        }
    }
    let clashes: Vec<String> = (0..piles.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..piles.len())
                .filter(move |&j| piles[i].hull.meets(&piles[j].hull))
                .map(move |j| format!("pile hulls {} and {} meet", piles[i].hull, piles[j].hull))
        })
        .collect();
    out.extend(clashes);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::portrait_from_chords;

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn plus(v: &[&str], d: u32) -> PortraitPlus {
        let c: Vec<Chord> = v.iter().map(|s| ch(s)).collect();
        portrait_from_chords(&c, d).unwrap()
    }

    /// Chords `{t, 1 - t}` for `t = i/2^k`, `2 <= k <= kmax`, odd `i < 2^(k-1)`.
    fn chebyshev(kmax: u32) -> BTreeSet<Chord> {
        let mut out = BTreeSet::new();
        for k in 2..=kmax {
            let q = 1i64 << k;
            for i in (1..q / 2).step_by(2) {
                out.insert(Chord::new(Angle::new(i, q), Angle::new(q - i, q)));
            }
        }
        out
    }

    #[test]
    fn pile_examples() {
        let w = [ch("1/3-2/3"), ch("1/6-5/6")];
        assert_eq!(compute_piles(&w).len(), 2);
        let w = [ch("0-1/3"), ch("0-2/3")];
        let piles = compute_piles(&w);
        assert_eq!(piles.len(), 1);
        assert_eq!(piles[0].hull.to_string(), "{0/1,1/3,2/3}");
        assert_eq!(
            pile_hull_edges(&piles[0]),
            Err(LaminationError::HullEdgeNotInPile { edge: ch("1/3-2/3") })
        );
        let single = compute_piles(&[ch("1/4-3/4")]);
        assert_eq!(pile_hull_edges(&single[0]).unwrap(), vec![ch("1/4-3/4")]);
    }

    #[test]
    fn class_hull_leaves_off_the_web_are_flagged() {
        let pre = LaminationApprox::new(2, 0, None, [ch("1/7-2/7"), ch("2/7-4/7")]);
        let (q, _) = qlamination_of(&pre).unwrap();
        assert_eq!(q.leaves.len(), 3);
        assert_eq!(q.off_web, vec![ch("1/7-4/7")]);
    }

    #[test]
    fn chebyshev_depth_two() {
        let lam = preroot_prelamination(&plus(&["1/4-3/4"], 2), 2, None).unwrap();
        let got: BTreeSet<Chord> = lam.leaves.iter().cloned().collect();
        assert_eq!(got, chebyshev(4));
        assert!(lam.crossing_free && lam.proper);
        assert_eq!(lam.max_hull, 2);
        let (q, part) = qlamination_of(&lam).unwrap();
        assert_eq!(q.leaves, lam.leaves);
        assert!(q.off_web.is_empty());
        assert!(part.classes.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn portal_only_is_empty() {
        assert!(preroot_prelamination(&plus(&["1/6-2/3"], 2), 4, None).unwrap().leaves.is_empty());
        let (q, _) = preroot_qlamination(&plus(&["0-1/3", "0-2/3"], 3), 4, None).unwrap();
        assert!(q.leaves.is_empty());
    }

    #[test]
    fn cubic_side_piles() {
        let p = plus(&["1/9-4/9", "5/9-8/9"], 3);
        for depth in 0..=4 {
            let w = iterate_web(&p, depth);
            let piles = compute_piles(w.iter());
            assert!(check_pile_invariants(&piles, &p).is_empty());
            let (q, _) = preroot_qlamination(&p, depth, None).unwrap();
            assert!(q.crossing_free && q.proper);
        }
    }

    #[test]
    fn properness_examples() {
        assert!(!is_proper(&ch("1/6-2/3"), 2));
        assert!(is_proper(&ch("1/3-2/3"), 2));
        assert!(is_proper(&ch("1/4-3/4"), 2));
        assert!(is_proper(&ch("1/7-2/7"), 3));
        assert!(!is_proper(&ch("0-1/3"), 2));
    }

    #[test]
    fn classes() {
        let part = endpoint_classes(&[ch("0-1/3"), ch("0-2/3")]);
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].len(), 3);
        assert_eq!(part.leaves().len(), 3);
        let lam = LaminationApprox::new(2, 0, None, [ch("1/6-2/3")]);
        assert!(matches!(concat_classes(&lam), Err(LaminationError::ImproperDetected { .. })));
        assert!(concat_classes(&LaminationApprox::empty(2, 0)).unwrap().classes.is_empty());
    }

    #[test]
    fn resolution_filter() {
        let lam = preroot_prelamination(&plus(&["1/4-3/4"], 2), 4, Some(16)).unwrap();
        let got: BTreeSet<Chord> = lam.leaves.iter().cloned().collect();
        assert_eq!(got, chebyshev(4));
    }
}
