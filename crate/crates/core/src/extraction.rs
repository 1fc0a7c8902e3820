//! Ternary letter extraction from the solved per-person report.
//!
//! Each category lists three values; a value's position is its digit.
//! Digits are read as a base-3 number, first category most significant,
//! and the number is mapped to a letter with A = 1.

use crate::agent::{SanityClass, TruthClass};
use crate::error::ExtractionError;
use crate::puzzle::PuzzleSpec;
use crate::solver::{SolveResult, SolveStatus};
use crate::world::World;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategorySource {
    Sanity,
    Truth,
    Fluent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub name: String,
    pub source: CategorySource,
    /// Exactly three values, in digit order.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PersonOrder {
    Alphabetical,
    Declaration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionConfig {
    pub categories: Vec<Category>,
    pub order: PersonOrder,
}

/// Canonical spelling of the class names used in reports.
pub fn sanity_names() -> [&'static str; 3] {
    [
        SanityClass::Sane,
        SanityClass::Delusional,
        SanityClass::Partial,
    ]
    .map(SanityClass::name)
}

pub fn truth_names() -> [&'static str; 3] {
    [
        TruthClass::Truthteller,
        TruthClass::Liar,
        TruthClass::Alternator,
    ]
    .map(TruthClass::name)
}

impl Category {
    /// The report value of this category for one person.
    pub fn value_of(&self, puzzle: &PuzzleSpec, world: &World, person: usize) -> String {
        let ty = world.type_of(person);
        match self.source {
            CategorySource::Sanity => ty.sanity().name().to_string(),
            CategorySource::Truth => ty.truth().name().to_string(),
            CategorySource::Fluent(f) => puzzle.decls.fluents()[f]
                .value_name(world.fluent(f, person))
                .to_string(),
        }
    }
}

/// One row of the extraction table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedRow {
    pub person: String,
    pub values: Vec<String>,
    pub digits: String,
    pub value: u32,
    pub letter: char,
}

/// Digits and base-3 value of one person's report values.
pub fn encode_person(
    person: &str,
    values: &[impl AsRef<str>],
    config: &ExtractionConfig,
) -> Result<(String, u32), ExtractionError> {
    let mut digits = String::new();
    let mut number = 0u32;
    for (category, value) in config.categories.iter().zip(values) {
        let value = value.as_ref();
        let digit = category
            .values
            .iter()
            .position(|v| v == value)
            .ok_or_else(|| ExtractionError::UnknownValue {
                person: person.to_string(),
                category: category.name.clone(),
                value: value.to_string(),
            })?;
        digits.push(char::from(b'0' + digit as u8));
        number = number * 3 + digit as u32;
    }
    Ok((digits, number))
}

pub fn value_to_letter(person: &str, value: u32) -> Result<char, ExtractionError> {
    if (1..=26).contains(&value) {
        Ok(char::from(b'A' + (value - 1) as u8))
    } else {
        Err(ExtractionError::OutOfRange {
            person: person.to_string(),
            value,
        })
    }
}

/// Person indices in the order letters are read.
pub fn reading_order(puzzle: &PuzzleSpec, config: &ExtractionConfig) -> Vec<usize> {
    let mut order: Vec<usize> = (0..puzzle.decls.person_count()).collect();
    if config.order == PersonOrder::Alphabetical {
        order.sort_by(|&a, &b| puzzle.decls.person_name(a).cmp(puzzle.decls.person_name(b)));
    }
    order
}

pub fn extract_rows(
    puzzle: &PuzzleSpec,
    world: &World,
    config: &ExtractionConfig,
) -> Result<Vec<ExtractedRow>, ExtractionError> {
    reading_order(puzzle, config)
        .into_iter()
        .map(|p| {
            let person = puzzle.decls.person_name(p);
            let values: Vec<String> = config
                .categories
                .iter()
                .map(|c| c.value_of(puzzle, world, p))
                .collect();
            let (digits, value) = encode_person(person, &values, config)?;
            let letter = value_to_letter(person, value)?;
            Ok(ExtractedRow {
                person: person.to_string(),
                values,
                digits,
                value,
                letter,
            })
        })
        .collect()
}

/// The answer word of a uniquely solved puzzle.
pub fn extract_word(puzzle: &PuzzleSpec, result: &SolveResult) -> Result<String, ExtractionError> {
    let config = puzzle
        .extraction
        .as_ref()
        .ok_or(ExtractionError::NotConfigured)?;
    if result.status != SolveStatus::Unique {
        return Err(ExtractionError::NotUnique(result.worlds.len()));
    }
    Ok(extract_rows(puzzle, &result.worlds[0], config)?
        .iter()
        .map(|r| r.letter)
        .collect())
}
