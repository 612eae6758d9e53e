//! Validation findings. Violations are data: validators collect all of them
//! instead of stopping at the first one.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateCube {
        cube: String,
        dim: usize,
    },
    FaceCount {
        cube: String,
        dim: usize,
        found: usize,
    },
    MissingFace {
        cube: String,
        k: u8,
        i: usize,
        face: String,
    },
    /// `d^k_i d^l_j x != d^l_{j-1} d^k_i x`.
    Identity {
        cube: String,
        k: u8,
        i: usize,
        l: u8,
        j: usize,
    },
    UnknownState {
        state: String,
    },
    UnknownLetter {
        letter: String,
    },
    MissingLabel {
        edge: String,
    },
    /// `λ(d^0_i x) != λ(d^1_i x)` for a 2-cube `x`.
    SquareLabel {
        cube: String,
        i: usize,
    },
    /// Two parallel edges of a subdivided cube carry different labels.
    ParallelEdge {
        cube: String,
        edge: String,
        reference: String,
    },
    FaceShape {
        cube: String,
        k: u8,
        i: usize,
    },
    FacePermutation {
        cube: String,
        k: u8,
        i: usize,
    },
    FaceFlattening {
        cube: String,
        k: u8,
        i: usize,
        grid_cube: String,
    },
    BadShape {
        cube: String,
    },
    BadPermutation {
        cube: String,
    },
    FlatteningIncomplete {
        cube: String,
        grid_cube: String,
    },
    FlatteningNotMorphism {
        cube: String,
        grid_cube: String,
        k: u8,
        i: usize,
    },
    EdgeEndpoint {
        cube: String,
        k: u8,
    },
    EdgeLabel {
        cube: String,
    },
    InitialNotPreserved {
        state: String,
    },
    FinalNotPreserved {
        state: String,
    },
    MissingCubeData {
        cube: String,
    },
    VertexMap {
        vertex: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateCube { cube, dim } => write!(f, "cube {cube} of dimension {dim} declared twice"),
            FaceCount { cube, dim, found } => {
                write!(f, "cube {cube}: expected {dim} faces per side, found {found}")
            }
            MissingFace { cube, k, i, face } => {
                write!(f, "cube {cube}: face d^{k}_{i} = {face} does not exist one dimension down")
            }
            Identity { cube, k, i, l, j } => write!(f, "cube {cube}: d^{k}_{i} d^{l}_{j} != d^{l}_{} d^{k}_{i}", j - 1),
            UnknownState { state } => write!(f, "state {state} is not a vertex"),
            UnknownLetter { letter } => write!(f, "letter {letter:?} is not in the alphabet"),
            MissingLabel { edge } => write!(f, "edge {edge} has no label"),
            SquareLabel { cube, i } => write!(f, "square {cube}: opposite edges d^0_{i}, d^1_{i} have different labels"),
            ParallelEdge { cube, edge, reference } => write!(f, "cube {cube}: parallel edges {edge} and {reference} have different labels"),
            FaceShape { cube, k, i } => write!(f, "cube {cube}: shape of face d^{k}_{i} is incompatible"),
            FacePermutation { cube, k, i } => {
                write!(f, "cube {cube}: permutation of face d^{k}_{i} is incompatible")
            }
            FaceFlattening { cube, k, i, grid_cube } => {
                write!(f, "cube {cube}: flattening of face d^{k}_{i} differs at grid cube {grid_cube}")
            }
            BadShape { cube } => write!(f, "cube {cube}: shape must list one positive length per dimension"),
            BadPermutation { cube } => write!(f, "cube {cube}: sigma is not a permutation"),
            FlatteningIncomplete { cube, grid_cube } => {
                write!(f, "cube {cube}: flattening misses grid cube {grid_cube}")
            }
            FlatteningNotMorphism { cube, grid_cube, k, i } => {
                write!(f, "cube {cube}: flattening does not commute with d^{k}_{i} at grid cube {grid_cube}")
            }
            EdgeEndpoint { cube, k } => write!(f, "edge {cube}: endpoint d^{k}_1 is not mapped by f0 to the flattened endpoint"),
            EdgeLabel { cube } => write!(f, "edge {cube}: label is not the concatenation of the flattened labels"),
            InitialNotPreserved { state } => write!(f, "initial state {state} is not sent to an initial state"),
            FinalNotPreserved { state } => write!(f, "final state {state} is not sent to a final state"),
            MissingCubeData { cube } => write!(f, "no dimap data for cube {cube}"),
            VertexMap { vertex } => write!(f, "vertex {vertex} has no valid image under f0"),
        }
    }
}

/// Outcome of a validator: `ok` iff no violations were found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        ValidationReport::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

/// Outcome of checking an identity on many instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checked: usize,
    /// One line per failing instance.
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn new() -> Self {
        PropertyReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance, keeping `failure` when `ok` is false.
    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}
