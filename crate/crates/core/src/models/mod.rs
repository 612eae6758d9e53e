//! Example automata and models of shared-variable programs.

pub mod examples;
pub mod program;
pub mod programs;

pub use examples::*;
pub use program::{program_to_hda, program_to_hda_with, SharedVariableProgram};
pub use programs::*;
