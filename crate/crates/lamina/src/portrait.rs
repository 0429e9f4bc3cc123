//! Critical collections, portraits, and the all-critical polygons built from them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::error::PortraitError;
use crate::faces::Subdivision;
use crate::polygon::GapLeaf;

/// Distinct, pairwise unlinked critical chords, kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalCollection {
    degree: u32,
    chords: Vec<Chord>,
}

impl CriticalCollection {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Number of vertices minus number of connected pieces of the chord union.
    pub fn rank(&self) -> usize {
        let (verts, comps) = vertex_components(&self.chords);
        verts - comps
    }

    /// `d - 1` chords whose union has no loop; multi-edges count as loops.
    pub fn is_portrait(&self) -> bool {
        self.chords.len() == (self.degree - 1) as usize && self.rank() == self.chords.len()
    }
}

fn vertex_components(chords: &[Chord]) -> (usize, usize) {
    let verts: BTreeSet<&Angle> = chords.iter().flat_map(|c| c.endpoints()).collect();
    let idx: BTreeMap<&Angle, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for c in chords {
        uf.union(idx[c.a()], idx[c.b()]);
    }
    let roots: BTreeSet<usize> = (0..verts.len()).map(|i| uf.find(i)).collect();
    (verts.len(), roots.len())
}

/// Accepts iff every chord is critical, no two cross and none repeats.
pub fn validate_collection(chords: &[Chord], d: u32) -> Result<CriticalCollection, PortraitError> {
    if d < 2 {
        return Err(PortraitError::Degree(d));
    }
    for (i, c) in chords.iter().enumerate() {
        if c.is_degenerate() {
            return Err(PortraitError::Degenerate { index: i, chord: c.clone() });
        }
        if !c.is_critical(d) {
            return Err(PortraitError::NotCritical { index: i, chord: c.clone() });
        }
    }
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if chords[i] == chords[j] {
                return Err(PortraitError::Duplicate { i, j, chord: chords[i].clone() });
            }
            if chords[i].linked(&chords[j]) {
                return Err(PortraitError::Linked {
                    i,
                    c1: chords[i].clone(),
                    j,
                    c2: chords[j].clone(),
                });
            }
        }
    }
    let mut sorted = chords.to_vec();
    sorted.sort();
    Ok(CriticalCollection { degree: d, chords: sorted })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Proper,
    Portal,
}

/// Infinitesimal rotation of a portal used when pulling back through it:
/// `Ccw` turns every vertex slightly counterclockwise, `Cw` clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tilt {
    Ccw,
    Cw,
}

/// One all-critical polygon: the hull of a connected piece of the chord union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusSet {
    pub chords: Vec<Chord>,
    pub polygon: GapLeaf,
    pub kind: SetKind,
    pub collapse: Angle,
    pub periodic_vertex: Option<Angle>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tilt: Option<Tilt>,
}

/// A validated full collection together with its polygons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitPlus {
    pub source: CriticalCollection,
    pub sets: Vec<PlusSet>,
}

/// A closed arc `[start, end]` traversed counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
}

impl Arc {
    pub fn length(&self) -> BigRational {
        if self.start == self.end {
            return BigRational::from_integer(BigInt::from(1));
        }
        self.start.ccw_to(&self.end)
    }

    pub fn contains_open(&self, x: &Angle) -> bool {
        x.in_open_arc(&self.start, &self.end)
    }

    pub fn contains_closed(&self, x: &Angle) -> bool {
        x.in_closed_arc(&self.start, &self.end)
    }
}

/// Passage along polygon edges between two consecutive arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Junction {
    /// Index into `PortraitPlus::sets`.
    pub set: usize,
    /// Vertices visited, from the end of the preceding arc to the start of the next.
    pub path: Vec<Angle>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    AllCritical,
    PartiallyCritical,
}

/// A complementary region of the polygons: arcs alternating with junctions.
/// `junctions[i]` follows `arcs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub arcs: Vec<Arc>,
    pub junctions: Vec<Junction>,
    pub kind: ComponentKind,
}

impl Component {
    pub fn arc_length(&self) -> BigRational {
        self.arcs.iter().map(Arc::length).sum()
    }

    /// Points of the closed boundary mapping to `x`, honouring portal tilts.
    pub fn preimages(&self, x: &Angle, p: &PortraitPlus) -> Vec<Angle> {
        let d = p.degree();
        for j in &self.junctions {
            let s = &p.sets[j.set];
            if &s.collapse == x {
                let first = j.path.first().cloned().into_iter();
                let last = j.path.last().cloned().into_iter();
                return match s.tilt {
                    Some(Tilt::Ccw) => first.collect(),
                    Some(Tilt::Cw) => last.collect(),
                    None => {
                        let mut v = j.path.clone();
                        v.sort();
                        v.dedup();
                        v
                    }
                };
            }
        }
        let mut out = vec![];
        for arc in &self.arcs {
            for t in x.preimages(d) {
                if arc.contains_open(&t) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl PortraitPlus {
    pub fn degree(&self) -> u32 {
        self.source.degree
    }

    pub fn polygons(&self) -> impl Iterator<Item = &GapLeaf> {
        self.sets.iter().map(|s| &s.polygon)
    }

    pub fn portals(&self) -> impl Iterator<Item = (usize, &PlusSet)> {
        self.sets.iter().enumerate().filter(|(_, s)| s.kind == SetKind::Portal)
    }

    pub fn proper_sets(&self) -> impl Iterator<Item = (usize, &PlusSet)> {
        self.sets.iter().enumerate().filter(|(_, s)| s.kind == SetKind::Proper)
    }

    /// All polygon edges.
    pub fn edges(&self) -> Vec<Chord> {
        self.sets.iter().flat_map(|s| s.polygon.edges()).collect()
    }

    /// Every polygon is proper.
    pub fn is_side(&self) -> bool {
        self.sets.iter().all(|s| s.kind == SetKind::Proper)
    }

    /// Some chord cuts off an arc of length exactly `1/d`.
    pub fn has_short_chord(&self) -> bool {
        let target = BigRational::new(BigInt::from(1), BigInt::from(self.degree()));
        self.source.chords().iter().any(|c| c.length() == target)
    }

    /// Copy with the given portal tilts; indices refer to `sets`.
    pub fn with_tilts(&self, tilts: &BTreeMap<usize, Tilt>) -> PortraitPlus {
        let mut p = self.clone();
        for (i, s) in p.sets.iter_mut().enumerate() {
            s.tilt = tilts.get(&i).copied();
        }
        p
    }

    pub fn complementary_components(&self) -> Vec<Component> {
        complementary_components(self)
    }

    /// Index of the set having `x` as a vertex.
    pub fn set_with_vertex(&self, x: &Angle) -> Option<usize> {
        self.sets.iter().position(|s| s.polygon.contains_vertex(x))
    }
}

/// Components of the chord union become polygons, tagged proper or portal.
pub fn build_plus(c: &CriticalCollection) -> Result<PortraitPlus, PortraitError> {
    let d = c.degree;
    let chords = c.chords();
    let verts: BTreeSet<&Angle> = chords.iter().flat_map(|c| c.endpoints()).collect();
    let idx: BTreeMap<&Angle, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for ch in chords {
        uf.union(idx[ch.a()], idx[ch.b()]);
    }
    let mut groups: BTreeMap<usize, Vec<Chord>> = BTreeMap::new();
    for ch in chords {
        groups.entry(uf.find(idx[ch.a()])).or_default().push(ch.clone());
    }
    let mut sets: Vec<PlusSet> = groups
        .into_values()
        .map(|k| {
            let polygon = GapLeaf::new(k.iter().flat_map(|c| [c.a().clone(), c.b().clone()])).expect("non-degenerate");
            let collapse = polygon.vertices()[0].sigma(d);
            let periodic: Vec<&Angle> = polygon
                .vertices()
                .iter()
                .filter(|v| v.classify(d).is_periodic())
                .collect();
            debug_assert!(periodic.len() <= 1, "polygon with two periodic vertices");
            PlusSet {
                chords: k,
                kind: if periodic.is_empty() { SetKind::Proper } else { SetKind::Portal },
                collapse,
                periodic_vertex: periodic.first().map(|v| (*v).clone()),
                polygon,
                tilt: None,
            }
        })
        .collect();
    sets.sort_by(|a, b| a.polygon.cmp(&b.polygon));
    for s in &sets {
        if s.polygon.vertices().iter().any(|v| v.sigma(d) != s.collapse) {
            return Err(PortraitError::NotFull(format!("polygon {} is not all-critical", s.polygon)));
        }
    }
    let p = PortraitPlus { source: c.clone(), sets };
    let comps = complementary_components(&p);
    let share = BigRational::new(BigInt::from(1), BigInt::from(d));
    for comp in &comps {
        if comp.kind == ComponentKind::PartiallyCritical && comp.arc_length() != share {
            return Err(PortraitError::NotFull(format!(
                "a complementary component has boundary arcs of total length {} instead of 1/{}",
                comp.arc_length(),
                d
            )));
        }
    }
    if comps.len() != d as usize {
        return Err(PortraitError::NotFull(format!("{} complementary components instead of {}", comps.len(), d)));
    }
    Ok(p)
}

/// Planar subdivision of the disk by the polygons of `p`.
pub fn complementary_components(p: &PortraitPlus) -> Vec<Component> {
    let edges = p.edges();
    let sub = Subdivision::new(&edges);
    let mut out = vec![];
    for f in &sub.faces {
        if f.steps.is_empty() {
            out.push(Component {
                arcs: vec![Arc { start: Angle::zero(), end: Angle::zero() }],
                junctions: vec![],
                kind: ComponentKind::PartiallyCritical,
            });
            continue;
        }
        if !f.has_arcs() {
            // polygon interior
            continue;
        }
        // rotate so the walk starts with an arc
        let k = f.steps.iter().position(|s| s.arc).unwrap();
        let steps: Vec<_> = f.steps[k..].iter().chain(f.steps[..k].iter()).copied().collect();
        let mut arcs = vec![];
        let mut junctions: Vec<Junction> = vec![];
        for s in &steps {
            let from = sub.vertices[s.from].clone();
            let to = sub.vertices[s.to].clone();
            if s.arc {
                arcs.push(Arc { start: from, end: to.clone() });
                let set = p.set_with_vertex(&to).expect("vertex belongs to a polygon");
                junctions.push(Junction { set, path: vec![to] });
            } else {
                junctions.last_mut().unwrap().path.push(to);
            }
        }
        out.push(Component {
            arcs,
            junctions,
            kind: ComponentKind::PartiallyCritical,
        });
    }
    out.sort_by(|a, b| a.arcs[0].start.cmp(&b.arcs[0].start));
    out
}

/// Polygons carrying a periodic vertex.
pub fn classify_sets(p: &PortraitPlus) -> Vec<SetKind> {
    p.sets.iter().map(|s| s.kind).collect()
}

pub fn is_side(p: &PortraitPlus) -> bool {
    p.is_side()
}

/// Parses and validates in one step, requiring a full collection.
pub fn portrait_from_chords(chords: &[Chord], d: u32) -> Result<PortraitPlus, PortraitError> {
    build_plus(&validate_collection(chords, d)?)
}

/// Sum of lengths is zero only for the empty set.
pub fn total_arc_length(comps: &[Component]) -> BigRational {
    comps.iter().fold(BigRational::zero(), |acc, c| acc + c.arc_length())
}
