//! Portal cycles, primality, tuning and the root lamination.
//!
//! Tuning inside a hyperbolic cycle is carried out as a verified search:
//! for every cycle of portals a seed leaf joining its periodic vertex to
//! another point of the same period is chosen (or none), portals are tilted
//! so that pullbacks through their collapse points pick one vertex, and the
//! resulting lamination is accepted only if every root condition holds.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::error::RootError;
use crate::gaps::{analyze, GapAnalysis, GapClass, GapCycle};
use crate::pile::{compute_piles, endpoint_classes, preroot_qlamination, within_resolution, ClassPartition, LaminationApprox};
use crate::polygon::GapLeaf;
use crate::portrait::{PortraitPlus, SetKind, Tilt};
use crate::web::{grow_web, Reorder};

/// Largest `d^n - 1` for which period-`n` seeds are enumerated.
pub const SEED_LIMIT: u64 = 4096;
/// Largest number of seed combinations tried before giving up.
pub const SEARCH_LIMIT: usize = 2000;

/// Portals whose periodic vertices share one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortalCycle {
    /// Indices into `PortraitPlus::sets`.
    pub portals: Vec<usize>,
    /// Orbit of the least periodic vertex, in orbit order.
    pub orbit: Vec<Angle>,
    pub vertex_period: u32,
}

pub fn portal_cycles(p: &PortraitPlus) -> Vec<PortalCycle> {
    let d = p.degree();
    let mut by_orbit: BTreeMap<Angle, Vec<usize>> = BTreeMap::new();
    for (i, s) in p.portals() {
        let v = s.periodic_vertex.clone().expect("portal has a periodic vertex");
        let orbit = orbit_of(&v, d);
        let key = orbit.iter().min().unwrap().clone();
        by_orbit.entry(key).or_default().push(i);
    }
    by_orbit
        .into_iter()
        .map(|(key, portals)| {
            let orbit = orbit_of(&key, d);
            PortalCycle {
                vertex_period: orbit.len() as u32,
                orbit,
                portals,
            }
        })
        .collect()
}

fn orbit_of(x: &Angle, d: u32) -> Vec<Angle> {
    let mut out = vec![x.clone()];
    let mut y = x.sigma(d);
    while &y != x {
        out.push(y.clone());
        y = y.sigma(d);
    }
    out
}

/// Points of exact period `n`, ascending; `None` when there are too many.
pub fn exact_period_points(d: u32, n: u32) -> Option<Vec<Angle>> {
    let q: BigInt = BigInt::from(d).pow(n) - 1;
    let qq = q.to_u64().filter(|&q| q <= SEED_LIMIT)?;
    Some(
        (0..qq)
            .map(|j| Angle::new(j as i64, qq as i64))
            .filter(|a| a.classify(d).period == n)
            .collect(),
    )
}

/// Evidence that a portal cycle sits in a prime hyperbolic cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCertificate {
    pub portal_cycle: usize,
    pub period: u32,
    pub return_degree: u32,
    /// Per gap of the cycle: its degree and the vertex count of the portal inside (0 if none).
    pub gaps: Vec<(u32, usize)>,
    pub model_degree: u32,
}

/// One step of tuning: the leaf added for a portal cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuningStep {
    pub portal_cycle: usize,
    pub seed: Chord,
    /// Which construction applies: `proper-pullback`, `multi-portal`,
    /// `unicritical` or `fixed-portal`.
    pub tag: String,
    pub vertex_period: u32,
    /// Period of the cycle containing the portal before tuning, if periodic.
    pub host_period: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub period: u32,
    pub degree: u32,
    pub class: GapClass,
    pub satellite: bool,
    /// Vertex list of the first gap, truncated for long gaps.
    pub first_gap: Vec<Angle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub degree: u32,
    pub depth: u32,
    pub resolution: Option<u64>,
    pub portrait: Vec<Chord>,
    pub leaves: Vec<Chord>,
    pub classes: Vec<Vec<Angle>>,
    pub cycles: Vec<CycleSummary>,
    pub portal_cycles: Vec<PortalCycle>,
    pub prime_certificates: Vec<PrimeCertificate>,
    pub tuning_log: Vec<TuningStep>,
    pub tilts: BTreeMap<usize, Tilt>,
}

impl RootReport {
    pub fn lamination(&self) -> LaminationApprox {
        LaminationApprox::new(self.degree, self.depth, self.resolution, self.leaves.iter().cloned())
    }

    pub fn class_partition(&self) -> ClassPartition {
        ClassPartition {
            classes: self.classes.clone(),
        }
    }
}

/// Options controlling the root search.
#[derive(Clone, Copy, Default)]
pub struct RootOptions<'a> {
    pub resolution: Option<u64>,
    pub reorder: Option<Reorder<'a>>,
}

/// Pullbacks of `seeds` relative to the tilted portrait, closed under
/// concatenation.
pub fn candidate(
    p: &PortraitPlus,
    seeds: &[Chord],
    depth: u32,
    opts: RootOptions,
) -> (LaminationApprox, ClassPartition) {
    let web = grow_web(p, seeds, depth, opts.reorder);
    let piles = compute_piles(web.iter());
    let hull_edges: BTreeSet<Chord> = piles
        .iter()
        .flat_map(|pl| pl.hull.edges())
        .filter(|c| within_resolution(c, opts.resolution))
        .collect();
    let part = endpoint_classes(&hull_edges);
    let mut lam = LaminationApprox::new(p.degree(), depth, opts.resolution, part.leaves());
    lam.max_hull = piles.iter().map(|pl| pl.hull.len()).max().unwrap_or(0);
    (lam, part)
}

/// Gap whose closure holds every vertex of `g` and whose interior the
/// polygon enters.
pub fn gap_of_polygon(a: &GapAnalysis, g: &GapLeaf) -> Option<usize> {
    let edges = g.edges();
    a.gaps.iter().position(|gap| {
        g.vertices().iter().all(|v| gap.contains_point(v)) && !edges.iter().all(|e| gap.leaves.contains(e))
    })
}

/// Checks the root conditions; on success returns one certificate per
/// portal cycle.
pub fn verify_root(
    p: &PortraitPlus,
    lam: &LaminationApprox,
    classes: &ClassPartition,
    analysis: &GapAnalysis,
    cycles: &[PortalCycle],
) -> Result<Vec<PrimeCertificate>, String> {
    if !lam.crossing_free {
        return Err("leaves cross".into());
    }
    if !lam.proper {
        return Err("improper leaf".into());
    }
    for e in p.edges() {
        if let Some(l) = lam.leaves.iter().find(|l| l.linked(&e)) {
            return Err(format!("portrait edge {e} crosses leaf {l}"));
        }
    }
    for (_, s) in p.proper_sets() {
        let v = s.polygon.vertices();
        if !v.iter().all(|x| classes.same_class(&v[0], x)) {
            return Err(format!("proper set {} is split", s.polygon));
        }
    }
    let mut certs = vec![];
    for (ci, pc) in cycles.iter().enumerate() {
        certs.push(prime_certificate(p, analysis, ci, pc)?);
    }
    Ok(certs)
}

fn prime_certificate(p: &PortraitPlus, a: &GapAnalysis, ci: usize, pc: &PortalCycle) -> Result<PrimeCertificate, String> {
    let portal_gaps: Vec<(usize, usize)> = pc
        .portals
        .iter()
        .map(|&i| gap_of_polygon(a, &p.sets[i].polygon).map(|g| (g, i)).ok_or(format!("portal {} in no gap", p.sets[i].polygon)))
        .collect::<Result<_, _>>()?;
    let host = a
        .cycle_of(portal_gaps[0].0)
        .ok_or_else(|| format!("portal {} is not in a periodic gap", p.sets[pc.portals[0]].polygon))?;
    let (mut cert, ok) = is_prime(p, a, host, pc)?;
    cert.portal_cycle = ci;
    if !ok {
        return Err(format!("cycle of period {} with portal period {} is not prime", host.period, pc.vertex_period));
    }
    Ok(cert)
}

/// Exactly the portals of `pc` lie in the cycle, periods agree, and every
/// degree-`k` gap holds a `k`-gon portal.
pub fn is_prime(p: &PortraitPlus, a: &GapAnalysis, cycle: &GapCycle, pc: &PortalCycle) -> Result<(PrimeCertificate, bool), String> {
    let GapClass::Hyperbolic { degree } = cycle.class else {
        return Err("host cycle is not hyperbolic".into());
    };
    let in_gap: BTreeMap<usize, Vec<usize>> = p
        .portals()
        .filter_map(|(i, s)| gap_of_polygon(a, &s.polygon).map(|g| (g, i)))
        .fold(BTreeMap::new(), |mut m, (g, i)| {
            m.entry(g).or_insert_with(Vec::new).push(i);
            m
        });
    let mut ok = cycle.period == pc.vertex_period;
    let mut gaps = vec![];
    for &g in &cycle.gaps {
        let k = a.gaps[g].degree;
        let portals = in_gap.get(&g).cloned().unwrap_or_default();
        let size = portals.first().map(|&i| p.sets[i].polygon.len()).unwrap_or(0);
        ok &= portals.len() <= 1 && portals.iter().all(|i| pc.portals.contains(i));
        ok &= if k > 1 { size == k as usize } else { size == 0 };
        gaps.push((k, size));
    }
    let model_degree = degree;
    Ok((
        PrimeCertificate {
            portal_cycle: 0,
            period: cycle.period,
            return_degree: degree,
            gaps,
            model_degree,
        },
        ok,
    ))
}

/// Seed leaves for one portal cycle: `None` first, then leaves from the
/// periodic vertex to other points of the same period, compatible with
/// the portrait. The flag is false when enumeration was cut off.
fn seed_options(p: &PortraitPlus, pc: &PortalCycle) -> (Vec<Option<Chord>>, bool) {
    let d = p.degree();
    let x = p.sets[pc.portals[0]].periodic_vertex.clone().unwrap();
    let mut out = vec![None];
    let Some(points) = exact_period_points(d, pc.vertex_period) else {
        return (out, false);
    };
    let edges = p.edges();
    for y in points.into_iter().filter(|y| y != &x) {
        let seed = Chord::new(x.clone(), y);
        let orbit = chord_orbit(&seed, d);
        let clean = orbit.iter().all(|c| !edges.iter().any(|e| e.linked(c)))
            && orbit.iter().enumerate().all(|(i, c)| orbit[i + 1..].iter().all(|o| !o.linked(c)));
        if clean {
            out.push(Some(seed));
        }
    }
    (out, true)
}

/// Forward orbit of a chord with periodic endpoints.
pub fn chord_orbit(c: &Chord, d: u32) -> Vec<Chord> {
    let mut out = vec![c.clone()];
    let mut cur = c.sigma(d);
    while !out.contains(&cur) && !cur.is_degenerate() {
        out.push(cur.clone());
        cur = cur.sigma(d);
    }
    out
}

/// Tilt assignments worth distinguishing: portals whose collapse point is
/// an endpoint of some seed-orbit leaf get both signs.
fn tilt_options(p: &PortraitPlus, seeds: &[Chord]) -> Vec<BTreeMap<usize, Tilt>> {
    let hit: Vec<usize> = p
        .portals()
        .filter(|(_, s)| seeds.iter().any(|c| c.has_endpoint(&s.collapse)))
        .map(|(i, _)| i)
        .collect();
    let mut out = vec![BTreeMap::new()];
    for i in hit {
        out = out
            .into_iter()
            .flat_map(|m| {
                [Tilt::Ccw, Tilt::Cw].into_iter().map(move |t| {
                    let mut m = m.clone();
                    m.insert(i, t);
                    m
                })
            })
            .collect();
    }
    out
}

struct Verified {
    lam: LaminationApprox,
    classes: ClassPartition,
    analysis: GapAnalysis,
    certs: Vec<PrimeCertificate>,
    tilts: BTreeMap<usize, Tilt>,
}

/// Evaluates one seed choice under every relevant tilt. `Ok(None)` when no
/// tilt verifies; an error when verified results disagree.
fn try_seeds(
    p: &PortraitPlus,
    choice: &[Option<Chord>],
    cycles: &[PortalCycle],
    depth: u32,
    opts: RootOptions,
) -> Result<Option<Verified>, RootError> {
    let d = p.degree();
    let mut seeds: Vec<Chord> = p.proper_sets().flat_map(|(_, s)| s.polygon.edges()).collect();
    let mut orbit_leaves = vec![];
    for c in choice.iter().flatten() {
        orbit_leaves.extend(chord_orbit(c, d));
    }
    seeds.extend(orbit_leaves.iter().cloned());
    let mut found: Option<Verified> = None;
    for tilts in tilt_options(p, &orbit_leaves) {
        let tp = p.with_tilts(&tilts);
        let (lam, classes) = candidate(&tp, &seeds, depth, opts);
        let analysis = analyze(&lam, &classes, None);
        if let Ok(certs) = verify_root(p, &lam, &classes, &analysis, cycles) {
            match &found {
                Some(f) if f.lam.leaves != lam.leaves => {
                    return Err(RootError::Inconclusive(format!(
                        "two tilts give different laminations for seeds {:?}",
                        choice.iter().flatten().collect::<Vec<_>>()
                    )));
                }
                Some(_) => {}
                None => {
                    found = Some(Verified {
                        lam,
                        classes,
                        analysis,
                        certs,
                        tilts,
                    })
                }
            }
        }
    }
    Ok(found)
}

/// The construction a seed realizes, judged from the preroot gaps.
fn dispatch_tag(p: &PortraitPlus, pre: &GapAnalysis, pc: &PortalCycle) -> (String, Option<u32>) {
    let gap = gap_of_polygon(pre, &p.sets[pc.portals[0]].polygon);
    let host = gap.and_then(|g| pre.cycle_of(g));
    let host_gaps: Vec<usize> = host.map(|c| c.gaps.clone()).unwrap_or_else(|| gap.into_iter().collect());
    let sets_in = |kind: SetKind| {
        p.sets
            .iter()
            .filter(|s| s.kind == kind)
            .filter(|s| gap_of_polygon(pre, &s.polygon).is_some_and(|g| host_gaps.contains(&g)))
            .count()
    };
    let host_period = host.map(|c| c.period);
    let tag = if sets_in(SetKind::Proper) > 0 {
        "proper-pullback"
    } else if sets_in(SetKind::Portal) > 1 {
        "multi-portal"
    } else if host_period.is_some_and(|k| pc.vertex_period > k) {
        "unicritical"
    } else {
        "fixed-portal"
    };
    (tag.to_string(), host_period)
}

/// Root lamination at the given depth.
pub fn build_root(p: &PortraitPlus, depth: u32, opts: RootOptions) -> Result<RootReport, RootError> {
    let cycles = portal_cycles(p);
    let (pre_lam, pre_classes) = preroot_qlamination(p, depth, opts.resolution)?;
    let pre = analyze(&pre_lam, &pre_classes, None);
    let mut options = vec![];
    let mut complete = true;
    for pc in &cycles {
        let (o, full) = seed_options(p, pc);
        complete &= full;
        options.push(o);
    }
    let exhausted = || RootError::DepthExhausted {
        depth,
        suggested: depth + 2,
    };
    let mut tried = 0usize;
    let mut idx = vec![0usize; cycles.len()];
    loop {
        let choice: Vec<Option<Chord>> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        tried += 1;
        if let Some(v) = try_seeds(p, &choice, &cycles, depth, opts)? {
            let tuning_log = choice
                .iter()
                .enumerate()
                .filter_map(|(ci, s)| {
                    s.clone().map(|seed| {
                        let (tag, host_period) = dispatch_tag(p, &pre, &cycles[ci]);
                        TuningStep {
                            portal_cycle: ci,
                            seed,
                            tag,
                            vertex_period: cycles[ci].vertex_period,
                            host_period,
                        }
                    })
                })
                .collect();
            return Ok(report(p, depth, opts, v, cycles, tuning_log));
        }
        if tried >= SEARCH_LIMIT || !advance(&mut idx, &options) {
            break;
        }
    }
    let _ = complete;
    Err(exhausted())
}

/// Odometer over the seed options; false once every choice was visited.
fn advance(idx: &mut [usize], options: &[Vec<Option<Chord>>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < options[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn report(p: &PortraitPlus, depth: u32, opts: RootOptions, v: Verified, cycles: Vec<PortalCycle>, tuning_log: Vec<TuningStep>) -> RootReport {
    RootReport {
        degree: p.degree(),
        depth,
        resolution: opts.resolution,
        portrait: p.source.chords().to_vec(),
        leaves: v.lam.leaves.clone(),
        classes: v.classes.classes.clone(),
        cycles: summarize_cycles(&v.analysis),
        portal_cycles: cycles,
        prime_certificates: v.certs,
        tuning_log,
        tilts: v.tilts,
    }
}

/// Periodic cycles with infinite candidates; finite periodic polygons are
/// listed too.
pub fn summarize_cycles(a: &GapAnalysis) -> Vec<CycleSummary> {
    a.cycles
        .iter()
        .map(|c| CycleSummary {
            period: c.period,
            degree: c.degree,
            class: c.class,
            satellite: c.satellite,
            first_gap: a.gaps[c.gaps[0]].vertices.iter().take(16).cloned().collect(),
        })
        .collect()
}

/// Tunes one portal cycle on top of the preroot: the least compatible seed
/// leaf that puts this cycle into a prime hyperbolic cycle.
pub fn tune_cycle(p: &PortraitPlus, portal_cycle: usize, depth: u32, opts: RootOptions) -> Result<(LaminationApprox, TuningStep), RootError> {
    let cycles = portal_cycles(p);
    let pc = cycles.get(portal_cycle).ok_or(RootError::NotHyperbolic)?;
    let (pre_lam, pre_classes) = preroot_qlamination(p, depth, opts.resolution)?;
    let pre = analyze(&pre_lam, &pre_classes, None);
    let one = std::slice::from_ref(pc);
    let (options, _) = seed_options(p, pc);
    for seed in options {
        let Some(v) = try_seeds(p, std::slice::from_ref(&seed), one, depth, opts)? else {
            continue;
        };
        let Some(seed) = seed else {
            return Err(RootError::PrimeCycle);
        };
        let (tag, host_period) = dispatch_tag(p, &pre, pc);
        let step = TuningStep {
            portal_cycle,
            seed,
            tag,
            vertex_period: pc.vertex_period,
            host_period,
        };
        return Ok((v.lam, step));
    }
    Err(RootError::DepthExhausted {
        depth,
        suggested: depth + 2,
    })
}

/// Boundary correspondence of a hyperbolic gap with the `m`-tupling map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalModel {
    pub period: u32,
    pub m: u32,
    /// Boundary points of the first gap (a vertex, or both ends of an edge)
    /// with their model angles; levels up to `level` are complete.
    pub points: Vec<(Vec<Angle>, Angle)>,
    pub level: u32,
}

impl CanonicalModel {
    /// Model angle of a boundary vertex.
    pub fn model_angle(&self, x: &Angle) -> Option<&Angle> {
        self.points.iter().find(|(v, _)| v.contains(x)).map(|(_, t)| t)
    }
}

/// Collapses the edges of the first gap of a hyperbolic cycle and reads off
/// model angles: a boundary point reaching the base point after `j` returns
/// sits at `r / m^j`, by cyclic rank.
pub fn canonical_model(a: &GapAnalysis, cycle: &GapCycle, base: &Angle) -> Result<CanonicalModel, RootError> {
    let GapClass::Hyperbolic { degree: m } = cycle.class else {
        return Err(RootError::NotHyperbolic);
    };
    let g = &a.gaps[cycle.gaps[0]];
    if g.is_whole_disk() {
        return Ok(CanonicalModel {
            period: cycle.period,
            m,
            points: vec![],
            level: u32::MAX,
        });
    }
    let d = a.degree;
    let n = cycle.period;
    // boundary points: edges collapse, other vertices stay single
    let mut points: Vec<Vec<Angle>> = g.leaves.iter().map(|e| vec![e.a().clone(), e.b().clone()]).collect();
    let on_edge: BTreeSet<&Angle> = g.leaves.iter().flat_map(|e| e.endpoints()).collect();
    points.extend(g.vertices.iter().filter(|v| !on_edge.contains(v)).map(|v| vec![v.clone()]));
    let point_of = |x: &Angle| points.iter().position(|pt| pt.contains(x));
    let base_pt = point_of(base).ok_or(RootError::Inconclusive(format!("{base} is not on the gap boundary")))?;
    let ret = |i: usize| point_of(&points[i][0].sigma_pow(d, n));
    let mut level: BTreeMap<usize, u32> = BTreeMap::new();
    level.insert(base_pt, 0);
    for i in 0..points.len() {
        let mut j = 0;
        let mut cur = Some(i);
        while let Some(c) = cur {
            if c == base_pt && (j > 0 || i == base_pt) {
                level.entry(i).or_insert(j);
                break;
            }
            j += 1;
            if j > 64 {
                break;
            }
            cur = ret(c);
        }
    }
    let mut complete = 0;
    let mut mj: u64 = 1;
    for j in 0.. {
        let count = level.values().filter(|&&l| l <= j).count() as u64;
        if count != mj {
            break;
        }
        complete = j;
        match mj.checked_mul(m as u64) {
            Some(v) => mj = v,
            None => break,
        }
    }
    // points of level <= complete, cyclically ordered from the base point
    let mut order: Vec<usize> = level.iter().filter(|(_, &l)| l <= complete).map(|(&i, _)| i).collect();
    let start = points[base_pt].iter().min().unwrap().clone();
    order.sort_by_key(|&i| start.ccw_to(points[i].iter().min().unwrap()));
    let q = (m as i64).pow(complete);
    let out = order
        .into_iter()
        .enumerate()
        .map(|(r, i)| (points[i].clone(), Angle::new(r as i64, q)))
        .collect();
    Ok(CanonicalModel {
        period: n,
        m,
        points: out,
        level: complete,
    })
}

/// Portrait sets in the first gap of the cycle, in model coordinates.
pub fn induced_collection(model: &CanonicalModel, a: &GapAnalysis, cycle: &GapCycle, p: &PortraitPlus) -> Vec<GapLeaf> {
    let g0 = cycle.gaps[0];
    p.sets
        .iter()
        .filter(|s| gap_of_polygon(a, &s.polygon) == Some(g0))
        .filter_map(|s| {
            if model.points.is_empty() {
                return Some(s.polygon.clone());
            }
            let pts: Option<Vec<Angle>> = s.polygon.vertices().iter().map(|v| model.model_angle(v).cloned()).collect();
            pts.and_then(GapLeaf::new)
        })
        .collect()
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

    #[test]
    fn portal_cycle_examples() {
        let c = portal_cycles(&plus(&["1/6-2/3"], 2));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].vertex_period, 2);
        assert_eq!(c[0].orbit, vec![Angle::new(1, 3), Angle::new(2, 3)]);
        let c = portal_cycles(&plus(&["0-1/3", "0-2/3"], 3));
        assert_eq!((c.len(), c[0].vertex_period), (1, 1));
        assert!(portal_cycles(&plus(&["1/9-4/9", "5/9-8/9"], 3)).is_empty());
    }

    #[test]
    fn conic_is_prime() {
        let r = build_root(&plus(&["0-1/3", "0-2/3"], 3), 4, RootOptions::default()).unwrap();
        assert!(r.leaves.is_empty());
        assert!(r.tuning_log.is_empty());
        let c = &r.prime_certificates[0];
        assert_eq!((c.period, c.return_degree, c.gaps.clone()), (1, 3, vec![(3, 3)]));
        assert!(matches!(
            tune_cycle(&plus(&["0-1/3", "0-2/3"], 3), 0, 3, RootOptions::default()),
            Err(RootError::PrimeCycle)
        ));
    }

    #[test]
    fn quadratic_fixed_diameter_is_prime() {
        let r = build_root(&plus(&["0-1/2"], 2), 4, RootOptions::default()).unwrap();
        assert!(r.leaves.is_empty());
    }

    #[test]
    fn basilica_root() {
        let p = plus(&["1/6-2/3"], 2);
        let r = build_root(&p, 6, RootOptions::default()).unwrap();
        assert!(r.leaves.contains(&ch("1/3-2/3")));
        assert!(r.leaves.contains(&ch("1/6-5/6")));
        assert_eq!(r.tuning_log.len(), 1);
        assert_eq!(r.tuning_log[0].seed, ch("1/3-2/3"));
        assert_eq!(r.tuning_log[0].tag, "unicritical");
        let c = &r.prime_certificates[0];
        assert_eq!((c.period, c.return_degree), (2, 2));
        let hyp: Vec<&CycleSummary> = r.cycles.iter().filter(|c| matches!(c.class, GapClass::Hyperbolic { .. })).collect();
        assert_eq!(hyp.len(), 1);
        assert!(hyp[0].satellite);
    }

    #[test]
    fn chebyshev_root_is_preroot() {
        let p = plus(&["1/4-3/4"], 2);
        let r = build_root(&p, 4, RootOptions::default()).unwrap();
        let (pre, _) = preroot_qlamination(&p, 4, None).unwrap();
        assert_eq!(r.leaves, pre.leaves);
    }

    #[test]
    fn two_fixed_portals_get_a_fixed_leaf() {
        let p = plus(&["0-1/3", "1/2-5/6"], 3);
        let r = build_root(&p, 4, RootOptions::default()).unwrap();
        assert!(r.leaves.contains(&ch("0-1/2")));
        assert!(r.tuning_log.iter().all(|s| s.tag == "multi-portal"));
        let lam = r.lamination();
        assert!(lam.crossing_free && lam.proper);
        for e in p.edges() {
            assert!(r.leaves.iter().all(|l| !l.linked(&e)));
        }
    }

    #[test]
    fn basilica_model() {
        let p = plus(&["1/6-2/3"], 2);
        let r = build_root(&p, 6, RootOptions::default()).unwrap();
        let lam = r.lamination();
        let classes = r.class_partition();
        let a = analyze(&lam, &classes, None);
        let cyc = a.hyperbolic_cycles().next().unwrap().clone();
        // rotate so the first gap holds the portal
        let g = gap_of_polygon(&a, &p.sets[0].polygon).unwrap();
        let k = cyc.gaps.iter().position(|&x| x == g).unwrap();
        let mut c2 = cyc.clone();
        c2.gaps.rotate_left(k);
        let model = canonical_model(&a, &c2, &Angle::new(2, 3)).unwrap();
        assert_eq!(model.m, 2);
        assert!(model.level >= 1);
        let induced = induced_collection(&model, &a, &c2, &p);
        assert_eq!(induced.len(), 1);
        assert_eq!(induced[0].to_string(), "{0/1,1/2}");
    }

    #[test]
    fn whole_disk_model_is_identity() {
        let p = plus(&["1/6-2/3"], 2);
        let lam = LaminationApprox::empty(2, 0);
        let a = analyze(&lam, &ClassPartition::default(), None);
        let model = canonical_model(&a, &a.cycles[0], &Angle::zero()).unwrap();
        assert_eq!(model.m, 2);
        let induced = induced_collection(&model, &a, &a.cycles[0], &p);
        assert_eq!(induced[0].to_string(), "{1/6,2/3}");
    }
}
