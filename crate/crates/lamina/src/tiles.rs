//! Tiles: the portrait polygons and their iterated pullbacks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::faces::Subdivision;
use crate::polygon::GapLeaf;
use crate::portrait::PortraitPlus;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSet {
    pub degree: u32,
    /// `generations[k]` holds the tiles first appearing at generation `k`.
    pub generations: Vec<Vec<GapLeaf>>,
}

impl TileSet {
    pub fn all(&self) -> impl Iterator<Item = &GapLeaf> {
        self.generations.iter().flatten()
    }
}

/// Image of a component boundary: `None` is the whole circle.
fn image_arcs(arcs: &[(Angle, Angle)], d: u32) -> Option<Vec<(Angle, Angle)>> {
    let dd = num_rational::BigRational::from_integer(d.into());
    let one = num_rational::BigRational::from_integer(1.into());
    let mut out = vec![];
    for (a, b) in arcs {
        if a.ccw_to(b) * &dd >= one {
            return None;
        }
        out.push((a.sigma(d), b.sigma(d)));
    }
    Some(out)
}

fn lies_inside(t: &GapLeaf, image: &Option<Vec<(Angle, Angle)>>) -> bool {
    let Some(arcs) = image else {
        return true;
    };
    let v = t.vertices();
    v.iter().all(|x| arcs.iter().any(|(a, b)| x.in_closed_arc(a, b))) && v.iter().any(|x| arcs.iter().any(|(a, b)| x.in_open_arc(a, b)))
}

/// Generation 0 is the set of portrait polygons; generation `k + 1` pulls
/// every tile of generation at most `k` that lies inside the image of a
/// component back into that component.
pub fn tiles(p: &PortraitPlus, generations: u32) -> TileSet {
    let d = p.degree();
    let mut gens: Vec<Vec<GapLeaf>> = vec![p.polygons().cloned().collect()];
    let mut seen: BTreeSet<GapLeaf> = gens[0].iter().cloned().collect();
    for _ in 0..generations {
        let edges: BTreeSet<Chord> = seen.iter().flat_map(|t| t.edges()).collect();
        let sub = Subdivision::new(&edges);
        let mut next = BTreeSet::new();
        for f in sub.faces.iter().filter(|f| f.has_arcs()) {
            let arcs = sub.face_arcs(f);
            let image = image_arcs(&arcs, d);
            for t in seen.iter().filter(|t| lies_inside(t, &image)) {
                let pts: BTreeSet<Angle> = t
                    .vertices()
                    .iter()
                    .flat_map(|x| x.preimages(d))
                    .filter(|y| arcs.iter().any(|(a, b)| y.in_closed_arc(a, b)))
                    .collect();
                if let Some(tile) = GapLeaf::new(pts) {
                    if !seen.contains(&tile) {
                        next.insert(tile);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        seen.extend(next.iter().cloned());
        gens.push(next.into_iter().collect());
    }
    TileSet { degree: d, generations: gens }
}

/// Closed form for the all-critical polygon of the `m`-tupling map:
/// generation `k > 0` tiles are `{j/m^k + i/m^(k+1) : 0 <= i <= m}`.
pub fn sigma_m_tile_oracle(m: u32, generations: u32) -> Vec<Vec<GapLeaf>> {
    let m = m as i64;
    let mut out = vec![vec![GapLeaf::new((0..m).map(|i| Angle::new(i, m))).unwrap()]];
    for k in 1..=generations {
        let q = m.pow(k);
        let mut g: Vec<GapLeaf> = (0..q)
            .map(|j| GapLeaf::new((0..=m).map(|i| Angle::new(j * m + i, q * m))).unwrap())
            .collect();
        g.sort();
        out.push(g);
    }
    out
}
