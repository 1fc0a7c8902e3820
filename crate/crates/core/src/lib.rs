//! Puzzle engine for populations of truth-tellers, liars and alternators
//! that may also be sane, delusional or partially sane.

pub mod agent;
pub mod cli;
pub mod discrimination;
pub mod error;
pub mod extraction;
pub mod lang;
pub mod output;
pub mod puzzle;
pub mod solver;
pub mod world;

pub use agent::{Answer, ExtendedType, SanityClass, TruthClass};
pub use error::{Error, ExtractionError, ParseError, Result, SolveError};
pub use puzzle::PuzzleSpec;
pub use solver::{solve_all, SolveOptions, SolveResult, SolveStatus};
pub use world::{Declarations, World};
