//! Gaps of a finite lamination, their periodic cycles and classification.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::faces::{Face, Subdivision};
use crate::pile::{ClassPartition, LaminationApprox};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapKind {
    Finite,
    InfiniteCandidate,
}

/// Where the vertex set of a gap goes under one application of the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapImage {
    Gap(usize),
    Leaf(Chord),
    Point(Angle),
    /// No gap of the approximation carries the image vertices.
    EscapesHorizon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub vertices: Vec<Angle>,
    /// Closed boundary arcs `(start, end)`, counterclockwise.
    pub arcs: Vec<(Angle, Angle)>,
    pub leaves: Vec<Chord>,
    pub kind: GapKind,
    pub image: GapImage,
    /// Covering degree of the boundary map onto the image boundary.
    pub degree: u32,
}

impl Gap {
    pub fn has_arcs(&self) -> bool {
        !self.arcs.is_empty()
    }

    pub fn is_whole_disk(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `x` is a vertex or lies on a boundary arc.
    pub fn contains_point(&self, x: &Angle) -> bool {
        self.is_whole_disk() || self.vertices.binary_search(x).is_ok() || self.arcs.iter().any(|(a, b)| x.in_closed_arc(a, b))
    }

    /// Both endpoints on the closed boundary, so the chord lies in the closure.
    pub fn contains_chord(&self, c: &Chord) -> bool {
        self.contains_point(c.a()) && self.contains_point(c.b())
    }

    pub fn arc_length(&self) -> BigRational {
        if self.is_whole_disk() {
            return BigRational::from_integer(BigInt::from(1));
        }
        self.arcs.iter().map(|(a, b)| a.ccw_to(b)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "kebab-case")]
pub enum GapClass {
    Finite,
    Siegel,
    Caterpillar,
    Hyperbolic { degree: u32 },
    /// Degree-one cycle whose periodic vertex data moved over the last depth step.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCycle {
    /// Gap indices `G_0, ..., G_{n-1}`, starting from the least index.
    pub gaps: Vec<usize>,
    pub period: u32,
    pub degree: u32,
    pub class: GapClass,
    pub satellite: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KiwiReport {
    pub horizon: u32,
    pub checked: usize,
    pub violations: Vec<Vec<Angle>>,
}

impl KiwiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapAnalysis {
    pub degree: u32,
    pub gaps: Vec<Gap>,
    pub cycles: Vec<GapCycle>,
    pub capture: bool,
}

impl GapAnalysis {
    /// Cycle containing gap `g`, if any.
    pub fn cycle_of(&self, g: usize) -> Option<&GapCycle> {
        self.cycles.iter().find(|c| c.gaps.contains(&g))
    }

    pub fn hyperbolic_cycles(&self) -> impl Iterator<Item = &GapCycle> {
        self.cycles.iter().filter(|c| matches!(c.class, GapClass::Hyperbolic { .. }))
    }

    /// Gap whose closure contains the chord and whose interior it enters.
    pub fn gap_containing_chord(&self, c: &Chord) -> Option<usize> {
        self.gaps.iter().position(|g| g.contains_chord(c) && !g.leaves.contains(c))
    }
}

/// Faces of the subdivision by the leaves. Faces touching the circle are
/// infinite candidates unless `prev` shows their vertex count stopped growing.
pub fn extract_gaps(lam: &LaminationApprox, prev: Option<&LaminationApprox>) -> Vec<Gap> {
    let d = lam.degree;
    let sub = Subdivision::new(&lam.leaves);
    let prev_sub = prev.map(|p| Subdivision::new(&p.leaves));
    let mut gaps: Vec<Gap> = sub
        .faces
        .iter()
        .map(|f| {
            let vertices = sub.face_vertices(f);
            let arcs = sub.face_arcs(f);
            let kind = if !f.has_arcs() {
                GapKind::Finite
            } else {
                match &prev_sub {
                    None => GapKind::InfiniteCandidate,
                    Some(ps) => {
                        let probe = arc_probe(&arcs);
                        let before = ps.face_of_arc_point(&probe).map(|i| ps.face_vertices(&ps.faces[i]).len()).unwrap_or(0);
                        if before < vertices.len() || vertices.is_empty() {
                            GapKind::InfiniteCandidate
                        } else {
                            GapKind::Finite
                        }
                    }
                }
            };
            Gap {
                degree: winding_degree(&sub, f, d),
                leaves: sub.face_leaves(f),
                vertices,
                arcs,
                kind,
                image: GapImage::EscapesHorizon,
            }
        })
        .collect();
    gaps.sort_by(|a, b| (a.vertices.first(), &a.arcs).cmp(&(b.vertices.first(), &b.arcs)));
    let index = vertex_index(&gaps);
    let images: Vec<GapImage> = gaps.iter().map(|g| gap_image(g, &gaps, &index, d)).collect();
    for (g, im) in gaps.iter_mut().zip(images) {
        g.image = im;
    }
    gaps
}

/// A point inside the first boundary arc.
fn arc_probe(arcs: &[(Angle, Angle)]) -> Angle {
    match arcs.first() {
        None => Angle::zero(),
        Some((a, b)) => {
            let len = if a == b { BigRational::from_integer(BigInt::from(1)) } else { a.ccw_to(b) };
            a.shift(&(len / BigInt::from(2)))
        }
    }
}

/// Exact winding of the boundary image: arcs stretch by `d`, leaves map to
/// the counterclockwise span between the endpoint images.
fn winding_degree(sub: &Subdivision, f: &Face, d: u32) -> u32 {
    if f.steps.is_empty() {
        return d;
    }
    let dd = BigInt::from(d);
    let total: BigRational = f
        .steps
        .iter()
        .map(|s| {
            let (u, v) = (&sub.vertices[s.from], &sub.vertices[s.to]);
            if s.arc {
                let len = if u == v { BigRational::from_integer(BigInt::from(1)) } else { u.ccw_to(v) };
                len * &dd
            } else {
                u.sigma(d).ccw_to(&v.sigma(d))
            }
        })
        .fold(BigRational::zero(), |a, b| a + b);
    debug_assert!(total.is_integer(), "non-integral winding {total}");
    total.to_integer().to_u32().unwrap_or(0)
}

/// Which gap holds each vertex.
fn vertex_index(gaps: &[Gap]) -> BTreeMap<&Angle, Vec<usize>> {
    let mut m: BTreeMap<&Angle, Vec<usize>> = BTreeMap::new();
    for (i, g) in gaps.iter().enumerate() {
        for v in &g.vertices {
            m.entry(v).or_default().push(i);
        }
    }
    m
}

/// The image gap shares the most vertices with the image vertex set. Near
/// the horizon a few image vertices sit behind deeper leaves, so full
/// containment is not required; ties or fewer than three shared vertices
/// escape.
fn gap_image(g: &Gap, gaps: &[Gap], index: &BTreeMap<&Angle, Vec<usize>>, d: u32) -> GapImage {
    if g.is_whole_disk() {
        return GapImage::Gap(gaps.iter().position(|h| h.is_whole_disk()).unwrap());
    }
    let img: BTreeSet<Angle> = g.vertices.iter().map(|v| v.sigma(d)).collect();
    let v: Vec<Angle> = img.into_iter().collect();
    match v.len() {
        1 => GapImage::Point(v[0].clone()),
        2 => GapImage::Leaf(Chord::new(v[0].clone(), v[1].clone())),
        _ => {
            let mut count: BTreeMap<usize, usize> = BTreeMap::new();
            for x in &v {
                for &i in index.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                    *count.entry(i).or_default() += 1;
                }
            }
            let best = count.values().copied().max().unwrap_or(0);
            let winners: Vec<usize> = count.iter().filter(|(_, &c)| c == best).map(|(&i, _)| i).collect();
            if best >= 3 && winners.len() == 1 {
                GapImage::Gap(winners[0])
            } else {
                GapImage::EscapesHorizon
            }
        }
    }
}

/// Periodic cycles of the gap map with their return degrees and labels.
pub fn gap_orbits(gaps: &[Gap], d: u32, classes: &ClassPartition, prev: Option<&[Gap]>) -> Vec<GapCycle> {
    let next = |i: usize| match gaps[i].image {
        GapImage::Gap(j) => Some(j),
        _ => None,
    };
    let mut on_cycle: BTreeSet<usize> = BTreeSet::new();
    let mut cycles = vec![];
    for start in 0..gaps.len() {
        if on_cycle.contains(&start) {
            continue;
        }
        // walk at most n steps; a return to `start` closes a cycle
        let mut path = vec![start];
        let mut cur = start;
        let mut closed = false;
        while let Some(j) = next(cur) {
            if j == start {
                closed = true;
                break;
            }
            if path.contains(&j) || path.len() > gaps.len() {
                break;
            }
            path.push(j);
            cur = j;
        }
        if !closed {
            continue;
        }
        on_cycle.extend(path.iter().copied());
        let degree: u32 = path.iter().map(|&i| gaps[i].degree).product();
        let infinite = path.iter().all(|&i| gaps[i].kind == GapKind::InfiniteCandidate);
        let periodic_vertex = path.iter().any(|&i| gaps[i].vertices.iter().any(|v| v.classify(d).is_periodic()));
        let class = if !infinite {
            GapClass::Finite
        } else if degree > 1 {
            GapClass::Hyperbolic { degree }
        } else if prev.is_some_and(|pg| periodic_data_moved(&gaps[start], pg, d)) {
            GapClass::Inconclusive
        } else if periodic_vertex {
            GapClass::Caterpillar
        } else {
            GapClass::Siegel
        };
        let period = path.len() as u32;
        let satellite = matches!(class, GapClass::Hyperbolic { .. }) && is_satellite(&gaps[start], period, classes, d);
        cycles.push(GapCycle {
            gaps: path,
            period,
            degree,
            class,
            satellite,
        });
    }
    cycles.sort_by(|a, b| a.gaps[0].cmp(&b.gaps[0]));
    cycles
}

fn periodic_data_moved(g: &Gap, prev: &[Gap], d: u32) -> bool {
    let now: BTreeSet<&Angle> = g.vertices.iter().filter(|v| v.classify(d).is_periodic()).collect();
    let probe = arc_probe(&g.arcs);
    match prev.iter().find(|h| h.arcs.iter().any(|(a, b)| probe.in_open_arc(a, b)) || h.is_whole_disk()) {
        None => true,
        Some(h) => {
            let before: BTreeSet<&Angle> = h.vertices.iter().filter(|v| v.classify(d).is_periodic()).collect();
            before != now
        }
    }
}

/// Some edge of the gap belongs to a class whose set period is smaller
/// than `period`.
pub fn is_satellite(g: &Gap, period: u32, classes: &ClassPartition, d: u32) -> bool {
    g.leaves.iter().any(|e| {
        let set: BTreeSet<Angle> = match classes.class_of(e.a()) {
            Some(i) => classes.classes[i].iter().cloned().collect(),
            None => e.endpoints().into_iter().cloned().collect(),
        };
        set_period(&set, d, period).is_some_and(|k| k < period)
    })
}

/// Least `k <= bound` with the `k`-th image of `set` equal to `set`.
pub fn set_period(set: &BTreeSet<Angle>, d: u32, bound: u32) -> Option<u32> {
    let mut cur = set.clone();
    for k in 1..=bound {
        cur = cur.iter().map(|x| x.sigma(d)).collect();
        if &cur == set {
            return Some(k);
        }
    }
    None
}

/// Some infinite candidate off every cycle maps with degree above one.
pub fn detect_capture(gaps: &[Gap], cycles: &[GapCycle]) -> bool {
    let periodic: BTreeSet<usize> = cycles.iter().flat_map(|c| c.gaps.iter().copied()).collect();
    gaps.iter()
        .enumerate()
        .any(|(i, g)| !periodic.contains(&i) && g.kind == GapKind::InfiniteCandidate && g.degree > 1 && matches!(g.image, GapImage::Gap(_)))
}

/// Finite gaps that neither return to themselves nor lose vertices within
/// `horizon` steps must have at most `d` vertices.
pub fn kiwi_guard(gaps: &[Gap], d: u32, horizon: u32) -> KiwiReport {
    let mut report = KiwiReport {
        horizon,
        ..Default::default()
    };
    for g in gaps.iter().filter(|g| !g.has_arcs() && g.vertices.len() >= 3) {
        report.checked += 1;
        if wandering_within(&g.vertices, d, horizon) && g.vertices.len() > d as usize {
            report.violations.push(g.vertices.clone());
        }
    }
    report
}

/// No repeat and no collapse along the first `horizon` images.
pub fn wandering_within(vertices: &[Angle], d: u32, horizon: u32) -> bool {
    let mut seen: BTreeSet<Vec<Angle>> = BTreeSet::new();
    let mut cur: Vec<Angle> = vertices.to_vec();
    for _ in 0..=horizon {
        if !seen.insert(cur.clone()) {
            return false;
        }
        let img: BTreeSet<Angle> = cur.iter().map(|x| x.sigma(d)).collect();
        if img.len() < cur.len() {
            return false;
        }
        cur = img.into_iter().collect();
    }
    true
}

/// Gaps, cycles and capture flag in one pass.
pub fn analyze(lam: &LaminationApprox, classes: &ClassPartition, prev: Option<&LaminationApprox>) -> GapAnalysis {
    let gaps = extract_gaps(lam, prev);
    let prev_gaps = prev.map(|p| extract_gaps(p, None));
    let cycles = gap_orbits(&gaps, lam.degree, classes, prev_gaps.as_deref());
    let capture = detect_capture(&gaps, &cycles);
    GapAnalysis {
        degree: lam.degree,
        gaps,
        cycles,
        capture,
    }
}

/// Vertex counts of gaps keyed by their first vertex, for reports.
pub fn vertex_histogram(gaps: &[Gap]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for g in gaps {
        *h.entry(g.vertices.len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pile::{endpoint_classes, preroot_qlamination};
    use crate::portrait::portrait_from_chords;

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn lam(d: u32, v: &[&str]) -> LaminationApprox {
        LaminationApprox::new(d, 0, None, v.iter().map(|s| ch(s)))
    }

    /// Basilica leaves through depth `k`: `{1/3, 2/3}` pulls back to itself
    /// and `{1/6, 5/6}`; every later leaf pulls back to the preimage pairs
    /// that do not cross the critical chord `{1/6, 2/3}`.
    fn basilica(k: u32) -> Vec<Chord> {
        let mut leaves: BTreeSet<Chord> = [ch("1/3-2/3"), ch("1/6-5/6")].into();
        let mut frontier = vec![ch("1/6-5/6")];
        for _ in 1..k {
            let mut next = vec![];
            for l in &frontier {
                for x in l.a().preimages(2) {
                    for y in l.b().preimages(2) {
                        let c = Chord::new(x.clone(), y.clone());
                        if !c.linked(&ch("1/6-2/3")) && !leaves.contains(&c) {
                            next.push(c);
                        }
                    }
                }
            }
            for c in &next {
                leaves.insert(c.clone());
            }
            frontier = next;
        }
        leaves.into_iter().collect()
    }

    #[test]
    fn one_leaf_two_gaps() {
        let g = extract_gaps(&lam(2, &["1/3-2/3"]), None);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn empty_lamination_is_hyperbolic_disk() {
        for d in 2..=4 {
            let l = LaminationApprox::empty(d, 0);
            let a = analyze(&l, &ClassPartition::default(), None);
            assert_eq!(a.gaps.len(), 1);
            assert_eq!(a.cycles.len(), 1);
            assert_eq!(a.cycles[0].period, 1);
            assert_eq!(a.cycles[0].class, GapClass::Hyperbolic { degree: d });
            assert!(!a.capture);
        }
    }

    #[test]
    fn basilica_cycle() {
        let leaves = basilica(6);
        assert!(leaves.contains(&ch("1/6-5/6")));
        let l = LaminationApprox::new(2, 6, None, leaves);
        assert!(l.crossing_free);
        let classes = endpoint_classes(&l.leaves);
        let a = analyze(&l, &classes, None);
        let hyp: Vec<&GapCycle> = a.hyperbolic_cycles().collect();
        assert_eq!(hyp.len(), 1);
        assert_eq!((hyp[0].period, hyp[0].degree), (2, 2));
        assert!(hyp[0].satellite);
    }

    #[test]
    fn chebyshev_has_no_hyperbolic_cycles() {
        let p = portrait_from_chords(&[ch("1/4-3/4")], 2).unwrap();
        let (l, classes) = preroot_qlamination(&p, 3, None).unwrap();
        let (prev, _) = preroot_qlamination(&p, 2, None).unwrap();
        let a = analyze(&l, &classes, Some(&prev));
        assert_eq!(a.hyperbolic_cycles().count(), 0);
        assert!(!a.capture);
        // every finite-depth face is a band between consecutive chords
        assert!(a.gaps.iter().all(|g| g.vertices.len() <= 4));
    }

    #[test]
    fn cubic_side_preroot_has_no_capture() {
        let p = portrait_from_chords(&[ch("1/9-4/9"), ch("5/9-8/9")], 3).unwrap();
        let (l, classes) = preroot_qlamination(&p, 4, None).unwrap();
        let (prev, _) = preroot_qlamination(&p, 3, None).unwrap();
        let a = analyze(&l, &classes, Some(&prev));
        assert!(!a.capture);
        assert!(kiwi_guard(&a.gaps, 3, 8).passed());
    }

    #[test]
    fn winding_examples() {
        let g = extract_gaps(&lam(2, &["1/4-3/4"]), None);
        assert!(g.iter().all(|g| g.degree == 1));
        let g = extract_gaps(&lam(3, &["0-1/3", "1/3-2/3", "0-2/3"]), None);
        let inner = g.iter().find(|g| !g.has_arcs()).unwrap();
        assert_eq!(inner.image, GapImage::Point(Angle::zero()));
        assert!(g.iter().filter(|g| g.has_arcs()).all(|g| g.degree == 1));
    }

    #[test]
    fn injected_wandering_quadrilateral_fails() {
        // vertices of period 11 under doubling
        let l = lam(2, &["1/23-3/23", "3/23-5/23", "5/23-7/23", "1/23-7/23"]);
        let g = extract_gaps(&l, None);
        assert!(!kiwi_guard(&g, 2, 4).passed());
        assert!(kiwi_guard(&g, 2, 12).passed());
    }

    #[test]
    fn set_periods() {
        let s: BTreeSet<Angle> = [Angle::new(1, 3), Angle::new(2, 3)].into();
        assert_eq!(set_period(&s, 2, 4), Some(1));
        let s: BTreeSet<Angle> = [Angle::new(1, 7), Angle::new(2, 7)].into();
        assert_eq!(set_period(&s, 2, 4), Some(3));
    }

    #[test]
    fn capture_on_preperiodic_degree_two_gap() {
        // the band around a critical diameter doubles its boundary
        let l = lam(2, &["1/8-3/8", "5/8-7/8"]);
        let g = extract_gaps(&l, None);
        let mid = g.iter().find(|g| g.vertices.len() == 4).unwrap();
        assert_eq!(mid.degree, 2);
        // hand-built: an invariant degree-2 gap and a strictly preperiodic
        // degree-2 gap mapping onto it
        let fixed = Gap {
            vertices: vec![],
            arcs: vec![(Angle::zero(), Angle::zero())],
            leaves: vec![],
            kind: GapKind::InfiniteCandidate,
            image: GapImage::Gap(0),
            degree: 2,
        };
        let pre = Gap {
            image: GapImage::Gap(0),
            ..fixed.clone()
        };
        let gaps = vec![fixed, pre];
        let cycles = gap_orbits(&gaps, 2, &ClassPartition::default(), None);
        assert_eq!(cycles.len(), 1);
        assert!(detect_capture(&gaps, &cycles));
        assert!(!detect_capture(&gaps[..1], &cycles));
    }
}
