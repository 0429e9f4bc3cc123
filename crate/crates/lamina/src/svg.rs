//! SVG drawings of laminations in the Poincaré disk.

use std::fmt::Write;

use crate::angle::Angle;
use crate::chord::Chord;
use crate::gaps::{GapAnalysis, GapClass};
use crate::polygon::GapLeaf;

/// Screen point of an angle on a circle of radius `r` centred at `(r, r)`.
fn point(t: f64, r: f64) -> (f64, f64) {
    let a = std::f64::consts::TAU * t;
    (r + r * a.cos(), r - r * a.sin())
}

/// Path data for the hyperbolic geodesic between two boundary angles.
pub fn geodesic_path(x: &Angle, y: &Angle, r: f64) -> String {
    let (x1, y1) = point(x.to_f64(), r);
    let (x2, y2) = point(y.to_f64(), r);
    let mut delta = (y.to_f64() - x.to_f64()).abs();
    if delta > 0.5 {
        delta = 1.0 - delta;
    }
    if (delta - 0.5).abs() < 1e-12 {
        return format!("M{x1:.3} {y1:.3}L{x2:.3} {y2:.3}");
    }
    let radius = r * (std::f64::consts::PI * delta).tan();
    // centre lies outside the disk; pick the sweep giving the short arc
    let cross = (x1 - r) * (y2 - r) - (y1 - r) * (x2 - r);
    let sweep = if cross > 0.0 { 0 } else { 1 };
    format!("M{x1:.3} {y1:.3}A{radius:.3} {radius:.3} 0 0 {sweep} {x2:.3} {y2:.3}")
}

/// A gap to fill: cyclic vertices and the closed arcs `(start, end)` among
/// its boundary pieces.
pub struct Shade<'a> {
    pub vertices: &'a [Angle],
    pub arcs: &'a [(Angle, Angle)],
    pub fill: &'a str,
}

fn gap_path(g: &Shade, r: f64) -> String {
    let v = g.vertices;
    let mut d = String::new();
    for (i, x) in v.iter().enumerate() {
        let y = &v[(i + 1) % v.len()];
        let (x0, y0) = point(x.to_f64(), r);
        if i == 0 {
            write!(d, "M{x0:.3} {y0:.3}").unwrap();
        }
        if g.arcs.iter().any(|(a, b)| a == x && b == y) {
            let (x1, y1) = point(y.to_f64(), r);
            let large = if x.ccw_to(y) > num_rational::BigRational::new(1.into(), 2.into()) { 1 } else { 0 };
            write!(d, "A{r:.3} {r:.3} 0 {large} 0 {x1:.3} {y1:.3}").unwrap();
        } else {
            let seg = geodesic_path(x, y, r);
            d.push_str(&seg[seg.find(['A', 'L']).unwrap()..]);
        }
    }
    d.push('Z');
    d
}

/// Leaves as geodesics, portrait polygons highlighted, selected gaps filled.
pub fn render(leaves: &[Chord], polygons: &[GapLeaf], shades: &[Shade], size: u32) -> String {
    let r = size as f64 / 2.0;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="-2 -2 {} {}">"#, size + 4, size + 4).unwrap();
    writeln!(s, r#"<circle cx="{r}" cy="{r}" r="{r}" fill="none" stroke="black" stroke-width="1"/>"#).unwrap();
    for g in shades.iter().filter(|g| g.vertices.len() >= 2) {
        writeln!(s, r#"<path class="gap" d="{}" fill="{}" stroke="none"/>"#, gap_path(g, r), g.fill).unwrap();
    }
    for g in polygons {
        let v = g.vertices();
        let mut d = String::new();
        for (i, x) in v.iter().enumerate() {
            let y = &v[(i + 1) % v.len()];
            let seg = geodesic_path(x, y, r);
            if i == 0 {
                d.push_str(&seg);
            } else {
                d.push_str(&seg[seg.find(['A', 'L']).unwrap()..]);
            }
            if v.len() == 2 {
                break;
            }
        }
        writeln!(s, r#"<path class="portrait" d="{d}" fill="rgba(200,60,60,0.35)" stroke="firebrick" stroke-width="1.5"/>"#).unwrap();
    }
    for c in leaves {
        writeln!(s, r#"<path class="leaf" d="{}" fill="none" stroke="navy" stroke-width="0.6"/>"#, geodesic_path(c.a(), c.b(), r)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Fill colour for a periodic gap class.
pub fn class_fill(c: &GapClass) -> &'static str {
    match c {
        GapClass::Hyperbolic { .. } => "rgba(240,200,60,0.45)",
        GapClass::Siegel => "rgba(90,170,230,0.45)",
        GapClass::Caterpillar => "rgba(120,200,120,0.45)",
        GapClass::Finite => "rgba(180,180,180,0.45)",
        GapClass::Inconclusive => "rgba(230,130,200,0.35)",
    }
}

/// Draws a lamination with its portrait polygons, shading the gaps of
/// every periodic cycle by class.
pub fn render_analysis(leaves: &[Chord], polygons: &[GapLeaf], analysis: Option<&GapAnalysis>, size: u32) -> String {
    let shades: Vec<Shade> = analysis
        .map(|a| {
            a.cycles
                .iter()
                .flat_map(|c| {
                    c.gaps.iter().map(move |&g| Shade {
                        vertices: &a.gaps[g].vertices,
                        arcs: &a.gaps[g].arcs,
                        fill: class_fill(&c.class),
                    })
                })
                .collect()
        })
        .unwrap_or_default();
    render(leaves, polygons, &shades, size)
}
