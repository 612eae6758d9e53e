use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("cannot parse coefficient ring {0:?} (expected `z` or `zp:<p>`)")]
    Unparsable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements live over different alphabets")]
    AlphabetMismatch,
    #[error("elements live over different coefficient rings")]
    RingMismatch,
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter {0:?} occurs twice in the alphabet")]
    DuplicateLetter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("face index {index} out of range for a cube of dimension {dim}")]
    IndexOutOfRange { dim: usize, index: usize },
    #[error("expected a cube of dimension {expected}, got dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("path endpoints do not match")]
    EndpointMismatch,
    #[error("cube does not belong to this precubical set")]
    NotInSet,
    #[error("consecutive edges of a path do not meet")]
    BrokenPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("the boundary of a degree-0 chain is not defined")]
    DegreeZero,
    #[error("expected a chain of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain refers to a cube that does not exist")]
    UnknownCube,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HdaError {
    #[error("expected {expected} edge labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("initial or final state is not a vertex of the automaton")]
    StateNotVertex,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimapError {
    #[error("a dimap chain needs at least one stage")]
    EmptyChain,
    #[error("dimap stage {0} does not end where stage {1} begins")]
    StageMismatch(usize, usize),
    #[error("no data for source cube {0}")]
    MissingCube(String),
    #[error("grid cube {0} has no image under the flattening")]
    MissingGridCube(String),
    #[error("vertex {0} has no image under f0")]
    MissingVertex(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cube(#[from] CubeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("process {process}: initial local state {state:?} is not declared")]
    UnknownLocalState { process: String, state: String },
    #[error("variable {0:?} is not declared")]
    UnknownVariable(String),
    #[error("variable {0:?} is declared twice")]
    DuplicateVariable(String),
    #[error("process {process}: action {action:?} is declared twice")]
    DuplicateAction { process: String, action: String },
    #[error("variable {variable:?}: value {value} is outside its domain")]
    OutOfDomain { variable: String, value: i64 },
    #[error("variable {0:?} has an empty domain or no initial value")]
    EmptyDomain(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a directed circle needs at least one edge")]
    EmptyCircle,
    #[error("the Klein bottle identification needs a_1 = a_2")]
    KleinLabelsDiffer,
    #[error("the dining philosophers need at least two philosophers, got {0}")]
    TooFewPhilosophers(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Hda(#[from] HdaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("part {part}: no homology generator {index} in degree {degree}")]
    NoSuchClass { part: usize, degree: usize, index: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
