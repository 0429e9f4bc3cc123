//! Exact invariant laminations of the angle d-tupling map, built from critical portraits.
//!
//! Angles are exact rationals in `[0, 1)`. A validated [`CriticalCollection`]
//! becomes a [`PortraitPlus`]; pulling its proper polygons back yields a web,
//! the web yields piles and a lamination, and [`root::build_root`] tunes
//! hyperbolic cycles until every portal sits in a prime one.
//!
//! ```
//! use lamina::{portrait_from_chords, Chord};
//! use lamina::root::{build_root, RootOptions};
//!
//! let chords: Vec<Chord> = vec!["1/6-2/3".parse().unwrap()];
//! let p = portrait_from_chords(&chords, 2).unwrap();
//! let root = build_root(&p, 5, RootOptions::default()).unwrap();
//! assert!(root.leaves.contains(&"1/3-2/3".parse().unwrap()));
//! ```

// Errors carry the offending exact chords.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod angle;
pub mod atlas;
pub mod chord;
pub mod error;
pub mod faces;
pub mod gaps;
pub mod io;
pub mod legal;
pub mod pile;
pub mod polygon;
pub mod portrait;
pub mod pullback;
pub mod root;
pub mod svg;
pub mod tiles;
pub mod web;

pub use angle::{classify_orbit, sigma, Angle, OrbitClass, OrbitKind};
pub use chord::Chord;
pub use error::*;
pub use polygon::GapLeaf;
pub use portrait::{build_plus, portrait_from_chords, validate_collection, CriticalCollection, PortraitPlus};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/ch01-angles.md")]
    pub mod ch01 {}
    #[doc = include_str!("../../../book/src/ch02-portraits.md")]
    pub mod ch02 {}
    #[doc = include_str!("../../../book/src/ch03-pullbacks.md")]
    pub mod ch03 {}
    #[doc = include_str!("../../../book/src/ch04-piles.md")]
    pub mod ch04 {}
    #[doc = include_str!("../../../book/src/ch05-gaps.md")]
    pub mod ch05 {}
    #[doc = include_str!("../../../book/src/ch06-root.md")]
    pub mod ch06 {}
    #[doc = include_str!("../../../book/src/ch07-tiles.md")]
    pub mod ch07 {}
    #[doc = include_str!("../../../book/src/ch08-cli.md")]
    pub mod ch08 {}
}
