//! Finite gap-leaves: convex hulls of finite sets of circle points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;

/// Convex hull of at least two circle points; vertices strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapLeaf {
    vertices: Vec<Angle>,
}

impl GapLeaf {
    /// Sorts and deduplicates; `None` when fewer than two distinct points remain.
    pub fn new<I: IntoIterator<Item = Angle>>(points: I) -> Option<GapLeaf> {
        let set: BTreeSet<Angle> = points.into_iter().collect();
        if set.len() < 2 {
            return None;
        }
        Some(GapLeaf {
            vertices: set.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[Angle] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, x: &Angle) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    /// Consecutive-vertex chords; a two-point hull has a single edge.
    pub fn edges(&self) -> Vec<Chord> {
        let n = self.vertices.len();
        if n == 2 {
            return vec![Chord::new(self.vertices[0].clone(), self.vertices[1].clone())];
        }
        (0..n)
            .map(|i| Chord::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    /// Vertex preceding `x` in counterclockwise order.
    pub fn prev_vertex(&self, x: &Angle) -> Option<&Angle> {
        let i = self.vertices.binary_search(x).ok()?;
        let n = self.vertices.len();
        Some(&self.vertices[(i + n - 1) % n])
    }

    pub fn next_vertex(&self, x: &Angle) -> Option<&Angle> {
        let i = self.vertices.binary_search(x).ok()?;
        Some(&self.vertices[(i + 1) % self.vertices.len()])
    }

    /// True when some edge of `self` crosses some edge of `other`, or a
    /// chord crosses an edge; shared vertices are allowed.
    pub fn crosses_chord(&self, c: &Chord) -> bool {
        self.edges().iter().any(|e| e.linked(c))
    }

    /// Closed hulls intersect: shared vertex or crossing edges or nesting.
    pub fn meets(&self, other: &GapLeaf) -> bool {
        if self.vertices.iter().any(|v| other.contains_vertex(v)) {
            return true;
        }
        if self.edges().iter().any(|e| other.crosses_chord(e)) {
            return true;
        }
        // hulls touch the circle only at vertices, so nesting is impossible
        false
    }

    pub fn image_hull(&self, d: u32) -> Image {
        image_of_points(self.vertices.iter(), d)
    }

    pub fn sigma_vertices(&self, d: u32) -> BTreeSet<Angle> {
        self.vertices.iter().map(|v| v.sigma(d)).collect()
    }
}

impl fmt::Display for GapLeaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GapLeaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of a hull under the d-tupling map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Point(Angle),
    Chord(Chord),
    Polygon(GapLeaf),
}

impl Image {
    pub fn vertices(&self) -> Vec<Angle> {
        match self {
            Image::Point(a) => vec![a.clone()],
            Image::Chord(c) => vec![c.a().clone(), c.b().clone()],
            Image::Polygon(g) => g.vertices().to_vec(),
        }
    }
}

fn image_of_points<'a, I: Iterator<Item = &'a Angle>>(pts: I, d: u32) -> Image {
    let set: BTreeSet<Angle> = pts.map(|v| v.sigma(d)).collect();
    let mut v: Vec<Angle> = set.into_iter().collect();
    match v.len() {
        1 => Image::Point(v.pop().unwrap()),
        2 => {
            let b = v.pop().unwrap();
            let a = v.pop().unwrap();
            Image::Chord(Chord::new(a, b))
        }
        _ => Image::Polygon(GapLeaf { vertices: v }),
    }
}

/// Image of a chord: a point when critical.
pub fn chord_image(c: &Chord, d: u32) -> Image {
    image_of_points(c.endpoints().into_iter(), d)
}

/// Holes of a finite set: counterclockwise pairs of consecutive points.
pub fn holes(points: &[Angle]) -> Vec<(Angle, Angle)> {
    let set: BTreeSet<&Angle> = points.iter().collect();
    let v: Vec<&Angle> = set.into_iter().collect();
    let n = v.len();
    (0..n).map(|i| (v[i].clone(), v[(i + 1) % n].clone())).collect()
}

/// Every hole either collapses or maps onto a hole of the image set.
pub fn positively_oriented(points: &[Angle], d: u32) -> bool {
    if points.is_empty() {
        return true;
    }
    let image: Vec<Angle> = points
        .iter()
        .map(|v| v.sigma(d))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let image_holes: BTreeSet<(Angle, Angle)> = holes(&image).into_iter().collect();
    holes(points).into_iter().all(|(x, y)| {
        let (sx, sy) = (x.sigma(d), y.sigma(d));
        sx == sy || image_holes.contains(&(sx, sy))
    })
}
