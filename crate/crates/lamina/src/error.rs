//! Error types shared across the crate.

use thiserror::Error;

use crate::chord::Chord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed angle `{0}` (expected p/q in [0,1) with q > 0)")]
    Angle(String),
    #[error("malformed chord `{0}` (expected p1/q1-p2/q2)")]
    Chord(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate chord where a proper chord is required")]
    Degenerate,
}

/// Rejections of a critical collection, with chord indices from the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PortraitError {
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("chord #{index} {chord} is degenerate")]
    Degenerate { index: usize, chord: Chord },
    #[error("chord #{index} {chord} is not critical")]
    NotCritical { index: usize, chord: Chord },
    #[error("chords #{i} {c1} and #{j} {c2} are linked")]
    Linked { i: usize, c1: Chord, j: usize, c2: Chord },
    #[error("chords #{i} and #{j} are the same chord {chord}")]
    Duplicate { i: usize, j: usize, chord: Chord },
    #[error("collection is not full: {0}")]
    NotFull(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaminationError {
    #[error("hull edge {edge} is not a member of its pile")]
    HullEdgeNotInPile { edge: Chord },
    #[error("class hull edge {edge} is not proper")]
    ImproperDetected { edge: Chord },
    #[error("leaves {0} and {1} cross")]
    Crossing(Chord, Chord),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("cycle is prime; no tuning exists")]
    PrimeCycle,
    #[error("tuning could not be certified: {0}")]
    Inconclusive(String),
    #[error("depth {depth} exhausted before the root was certified; try depth {suggested}")]
    DepthExhausted { depth: u32, suggested: u32 },
    #[error("cycle is not hyperbolic")]
    NotHyperbolic,
    #[error(transparent)]
    Lamination(#[from] LaminationError),
}
