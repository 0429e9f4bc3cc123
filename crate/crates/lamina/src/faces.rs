//! Planar subdivision of the closed disk by pairwise unlinked chords.
//!
//! Endpoints are replaced by their ranks around the circle, so tracing is
//! integer work. Each face is walked counterclockwise with the face on the
//! left: circle arcs are only ever traversed counterclockwise, chords in
//! both directions.

use std::collections::{BTreeSet, HashMap};

use crate::angle::Angle;
use crate::chord::Chord;

/// One boundary piece of a face, between vertex ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: usize,
    pub to: usize,
    pub arc: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub steps: Vec<Step>,
}

impl Face {
    pub fn has_arcs(&self) -> bool {
        self.steps.is_empty() || self.steps.iter().any(|s| s.arc)
    }

    /// Distinct vertex ranks in boundary order.
    pub fn vertex_ranks(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        self.steps
            .iter()
            .filter(|s| seen.insert(s.from))
            .map(|s| s.from)
            .collect()
    }
}

/// The subdivision: sorted vertices plus faces.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub vertices: Vec<Angle>,
    pub faces: Vec<Face>,
}

impl Subdivision {
    /// Chords must be pairwise unlinked; degenerate chords are ignored.
    pub fn new<'a, I: IntoIterator<Item = &'a Chord>>(chords: I) -> Subdivision {
        let chords: BTreeSet<&Chord> = chords.into_iter().filter(|c| !c.is_degenerate()).collect();
        let vset: BTreeSet<&Angle> = chords.iter().flat_map(|c| c.endpoints()).collect();
        let vertices: Vec<Angle> = vset.into_iter().cloned().collect();
        let n = vertices.len();
        if n == 0 {
            return Subdivision {
                vertices,
                faces: vec![Face { steps: vec![] }],
            };
        }
        let rank: HashMap<&Angle, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        // outgoing chord keys per vertex: key = ccw rank distance to the neighbour
        let mut keys: Vec<Vec<usize>> = vec![vec![]; n];
        for c in &chords {
            let (i, j) = (rank[c.a()], rank[c.b()]);
            keys[i].push((j + n - i) % n);
            keys[j].push((i + n - j) % n);
        }
        for k in keys.iter_mut() {
            k.sort_unstable();
        }
        // directed edges: (vertex, key); key 0 is the counterclockwise arc
        let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
        let mut starts = vec![];
        for (i, ks) in keys.iter().enumerate() {
            starts.push((i, 0usize));
            for &k in ks {
                starts.push((i, k));
            }
        }
        let target = |v: usize, key: usize| if key == 0 { (v + 1) % n } else { (v + key) % n };
        let mut faces = vec![];
        for &(v0, k0) in &starts {
            if visited.contains_key(&(v0, k0)) {
                continue;
            }
            let mut steps = vec![];
            let (mut v, mut k) = (v0, k0);
            loop {
                visited.insert((v, k), true);
                let w = target(v, k);
                steps.push(Step {
                    from: v,
                    to: w,
                    arc: k == 0,
                });
                // key of the arriving edge as seen from w
                let arrive = if k == 0 { n } else { (v + n - w) % n };
                let next = keys[w].iter().rev().find(|&&kk| kk < arrive).copied().unwrap_or(0);
                v = w;
                k = next;
                if (v, k) == (v0, k0) {
                    break;
                }
            }
            faces.push(Face { steps });
        }
        Subdivision { vertices, faces }
    }

    pub fn face_vertices(&self, f: &Face) -> Vec<Angle> {
        let mut v: Vec<Angle> = f.vertex_ranks().into_iter().map(|r| self.vertices[r].clone()).collect();
        v.sort();
        v
    }

    /// Closed arcs `(start, end)` on the boundary of a face.
    pub fn face_arcs(&self, f: &Face) -> Vec<(Angle, Angle)> {
        f.steps
            .iter()
            .filter(|s| s.arc)
            .map(|s| (self.vertices[s.from].clone(), self.vertices[s.to].clone()))
            .collect()
    }

    /// Chords bounding a face.
    pub fn face_leaves(&self, f: &Face) -> Vec<Chord> {
        let set: BTreeSet<Chord> = f
            .steps
            .iter()
            .filter(|s| !s.arc)
            .map(|s| Chord::new(self.vertices[s.from].clone(), self.vertices[s.to].clone()))
            .collect();
        set.into_iter().collect()
    }

    /// Index of the face whose boundary contains the point `x` in an open
    /// arc or as a vertex reached by an arc; `None` for isolated vertices.
    pub fn face_of_arc_point(&self, x: &Angle) -> Option<usize> {
        if self.vertices.is_empty() {
            return Some(0);
        }
        for (fi, f) in self.faces.iter().enumerate() {
            for s in f.steps.iter().filter(|s| s.arc) {
                let (a, b) = (&self.vertices[s.from], &self.vertices[s.to]);
                if x.in_open_arc(a, b) {
                    return Some(fi);
                }
            }
        }
        None
    }
}
