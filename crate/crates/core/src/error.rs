use std::fmt;
use std::time::Duration;

use thiserror::Error;

/// A 1-based position in some source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {location}: {message}")]
    Syntax { location: Location, message: String },
    #[error("semantic error at {location} ({path}): {message}")]
    Semantic {
        location: Location,
        path: String,
        message: String,
    },
}

impl ParseError {
    pub fn location(&self) -> Location {
        match self {
            ParseError::Syntax { location, .. } | ParseError::Semantic { location, .. } => {
                *location
            }
        }
    }

    /// Shifts a location computed relative to a statement fragment so it
    /// points into the enclosing file.
    pub(crate) fn offset(self, line: usize, column: usize) -> Self {
        let shift = |loc: Location| Location {
            line: loc.line + line - 1,
            column: if loc.line == 1 {
                loc.column + column - 1
            } else {
                loc.column
            },
        };
        match self {
            ParseError::Syntax { location, message } => ParseError::Syntax {
                location: shift(location),
                message,
            },
            ParseError::Semantic {
                location,
                path,
                message,
            } => ParseError::Semantic {
                location: shift(location),
                path,
                message,
            },
        }
    }
}

/// Misuse of a statement at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("`believes` may only wrap an uttered statement at the outermost position")]
    NestedBelief,
    #[error("`me` used without a speaker")]
    NoSpeaker,
    #[error("unknown person `{0}`")]
    UnknownPerson(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{predicate}`: {message}")]
    BadArguments { predicate: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Semantic(#[from] SemanticError),
    #[error("world does not match the puzzle declarations: {0}")]
    DeclarationMismatch(String),
    #[error("{questions} questions but {answers} answers")]
    LengthMismatch { questions: usize, answers: usize },
    #[error("question `{0}` cannot be answered from the speaker's type alone")]
    UnsupportedQuestion(String),
    #[error("search budget exceeded after {nodes} nodes ({elapsed:?})")]
    BudgetExceeded { nodes: u64, elapsed: Duration },
    #[error("world is inconsistent with the puzzle: {0}")]
    InconsistentWorld(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("extraction needs a unique solution, found {0} worlds")]
    NotUnique(usize),
    #[error("{person}: unknown value `{value}` for category `{category}`")]
    UnknownValue {
        person: String,
        category: String,
        value: String,
    },
    #[error("{person}: value {value} has no letter (expected 1..=26)")]
    OutOfRange { person: String, value: u32 },
    #[error("puzzle has no extraction section")]
    NotConfigured,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Semantic(#[from] SemanticError),
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
