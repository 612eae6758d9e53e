//! Labeled cubical homology for higher-dimensional automata.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod chain;
pub mod dimap;
pub mod error;
pub mod exterior;
pub mod hda;
pub mod homology;
pub mod lattice;
pub mod matrix;
pub mod models;
pub mod precubical;
pub mod ring;
pub mod snf;
pub mod tensor;
pub mod validation;

pub use error::*;
pub use exterior::{Alphabet, Blade, ExteriorElement, Letter, Word};
pub use precubical::{Coord, CubeId, CubeKey, Grid, Path, PcMorphism, PrecubicalSet};
pub use ring::CoefficientRing;
pub use validation::{ValidationReport, Violation};
