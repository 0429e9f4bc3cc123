//! JSON shapes for portraits, settings and reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::chord::Chord;
use crate::error::PortraitError;
use crate::gaps::{kiwi_guard, vertex_histogram, GapAnalysis, KiwiReport};
use crate::pile::{ClassPartition, LaminationApprox};
use crate::polygon::GapLeaf;
use crate::portrait::{portrait_from_chords, validate_collection, PortraitPlus, SetKind};

/// `{"degree": 2, "chords": ["1/6-2/3"]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitSpec {
    pub degree: u32,
    pub chords: Vec<Chord>,
}

impl PortraitSpec {
    pub fn plus(&self) -> Result<PortraitPlus, PortraitError> {
        portrait_from_chords(&self.chords, self.degree)
    }
}

fn default_depth() -> u32 {
    6
}

fn default_horizon() -> u32 {
    8
}

fn default_generations() -> u32 {
    3
}

/// Settings shared by the subcommands; every field has a default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default)]
    pub resolution: Option<u64>,
    #[serde(default = "default_horizon")]
    pub kiwi_horizon: u32,
    #[serde(default = "default_generations")]
    pub generations: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            depth: default_depth(),
            resolution: None,
            kiwi_horizon: default_horizon(),
            generations: default_generations(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSummary {
    pub polygon: GapLeaf,
    pub kind: SetKind,
    pub collapse: Angle,
    pub periodic_vertex: Option<Angle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub degree: u32,
    pub chords: Vec<Chord>,
    pub rank: usize,
    pub full: bool,
    pub sets: Vec<SetSummary>,
    pub side: bool,
    pub short_chord: bool,
}

/// Validates the collection; a collection that is not full still gets a
/// report with `full: false`.
pub fn validate_report(spec: &PortraitSpec) -> Result<ValidateReport, PortraitError> {
    let c = validate_collection(&spec.chords, spec.degree)?;
    let plus = match spec.plus() {
        Ok(p) => Some(p),
        Err(PortraitError::NotFull(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ValidateReport {
        degree: c.degree(),
        chords: c.chords().to_vec(),
        rank: c.rank(),
        full: plus.is_some(),
        sets: plus
            .as_ref()
            .map(|p| {
                p.sets
                    .iter()
                    .map(|s| SetSummary {
                        polygon: s.polygon.clone(),
                        kind: s.kind,
                        collapse: s.collapse.clone(),
                        periodic_vertex: s.periodic_vertex.clone(),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        side: plus.as_ref().is_some_and(|p| p.is_side()),
        short_chord: plus.as_ref().is_some_and(|p| p.has_short_chord()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationReport {
    pub degree: u32,
    pub depth: u32,
    pub resolution: Option<u64>,
    pub crossing_free: bool,
    pub proper: bool,
    pub max_hull: usize,
    pub leaves: Vec<Chord>,
    pub off_web: Vec<Chord>,
    pub classes: Vec<Vec<Angle>>,
}

impl LaminationReport {
    pub fn new(lam: &LaminationApprox, classes: &ClassPartition) -> Self {
        LaminationReport {
            degree: lam.degree,
            depth: lam.depth,
            resolution: lam.resolution,
            crossing_free: lam.crossing_free,
            proper: lam.proper,
            max_hull: lam.max_hull,
            leaves: lam.leaves.clone(),
            off_web: lam.off_web.clone(),
            classes: classes.classes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapsReport {
    pub analysis: GapAnalysis,
    pub kiwi: KiwiReport,
    pub histogram: BTreeMap<usize, usize>,
}

impl GapsReport {
    pub fn new(analysis: GapAnalysis, horizon: u32) -> Self {
        let kiwi = kiwi_guard(&analysis.gaps, analysis.degree, horizon);
        let histogram = vertex_histogram(&analysis.gaps);
        GapsReport { analysis, kiwi, histogram }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
