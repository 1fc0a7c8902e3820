//! Serializable documents for `--format structured`. Field names here are
//! the public schema; see the README.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::agent::Answer;
use crate::extraction::ExtractedRow;
use crate::puzzle::PuzzleSpec;
use crate::solver::{
    CheckReport, Explanation, SolveResult, SolveStatus, TranscriptEntry, TranscriptRound,
};
use crate::world::World;

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

#[derive(Debug, Serialize)]
pub struct PersonDoc {
    pub name: String,
    /// Label at the puzzle's anchor round.
    #[serde(rename = "type")]
    pub type_label: String,
    pub epoch_type: String,
    pub fluents: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
pub struct WorldDoc {
    pub persons: Vec<PersonDoc>,
}

impl WorldDoc {
    pub fn new(puzzle: &PuzzleSpec, world: &World) -> Self {
        let decls = &puzzle.decls;
        let persons = (0..decls.person_count())
            .map(|p| PersonDoc {
                name: decls.person_name(p).to_string(),
                type_label: puzzle.display_type(p, world.type_of(p)).label().to_string(),
                epoch_type: world.type_of(p).label().to_string(),
                fluents: decls
                    .fluents()
                    .iter()
                    .enumerate()
                    .map(|(f, d)| (d.name.clone(), d.value_name(world.fluent(f, p)).to_string()))
                    .collect(),
            })
            .collect();
        WorldDoc { persons }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub person: String,
    pub values: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct StatisticsDoc {
    pub nodes: u64,
}

#[derive(Debug, Serialize)]
pub struct ExtractionRowDoc {
    pub person: String,
    pub values: Vec<String>,
    pub digits: String,
    pub value: u32,
    pub letter: String,
}

#[derive(Debug, Serialize)]
pub struct ExtractionDoc {
    pub rows: Vec<ExtractionRowDoc>,
    pub word: String,
}

impl ExtractionDoc {
    pub fn new(rows: &[ExtractedRow]) -> Self {
        ExtractionDoc {
            rows: rows
                .iter()
                .map(|r| ExtractionRowDoc {
                    person: r.person.clone(),
                    values: r.values.clone(),
                    digits: r.digits.clone(),
                    value: r.value,
                    letter: r.letter.to_string(),
                })
                .collect(),
            word: rows.iter().map(|r| r.letter).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExplanationDoc {
    pub round: usize,
    pub person: String,
    pub phases: String,
    pub utterance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<String>,
    pub decoded: String,
}

impl ExplanationDoc {
    pub fn new(puzzle: &PuzzleSpec, e: &Explanation) -> Self {
        ExplanationDoc {
            round: e.round,
            person: puzzle.decls.person_name(e.person).to_string(),
            phases: e.phase_label().to_string(),
            utterance: e.utterance.to_string(),
            answer: e.answer.map(|a| a.word().to_string()),
            decoded: e.decoded.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveDoc {
    pub digest: String,
    pub status: SolveStatus,
    pub world_count: usize,
    pub labels: String,
    pub worlds: Vec<WorldDoc>,
    pub report: Option<Vec<ReportDoc>>,
    pub statistics: StatisticsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extraction: Option<ExtractionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<Vec<ExplanationDoc>>,
}

pub fn labels_name(puzzle: &PuzzleSpec) -> String {
    match puzzle.label_round {
        0 => "epoch".to_string(),
        r => format!("before round {r}"),
    }
}

impl SolveDoc {
    pub fn new(digest: String, puzzle: &PuzzleSpec, result: &SolveResult) -> Self {
        SolveDoc {
            digest,
            status: result.status,
            world_count: result.worlds.len(),
            labels: labels_name(puzzle),
            worlds: result
                .worlds
                .iter()
                .map(|w| WorldDoc::new(puzzle, w))
                .collect(),
            report: result.report.as_ref().map(|rows| {
                rows.iter()
                    .map(|r| ReportDoc {
                        person: r.person.clone(),
                        values: r.values.clone(),
                    })
                    .collect()
            }),
            statistics: StatisticsDoc {
                nodes: result.stats.nodes,
            },
            extraction: None,
            explanation: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationDoc {
    pub round: Option<usize>,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub digest: String,
    pub consistent: bool,
    pub violation: Option<ViolationDoc>,
}

impl CheckDoc {
    pub fn new(digest: String, report: &CheckReport) -> Self {
        CheckDoc {
            digest,
            consistent: report.consistent(),
            violation: report.violation.as_ref().map(|v| ViolationDoc {
                round: v.round(),
                message: v.to_string(),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EntryDoc {
    pub person: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recorded: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct RoundDoc {
    pub round: usize,
    pub label: Option<String>,
    pub entries: Vec<EntryDoc>,
}

pub fn transcript_doc(puzzle: &PuzzleSpec, rounds: &[TranscriptRound]) -> Vec<RoundDoc> {
    let name = |p: usize| puzzle.decls.person_name(p).to_string();
    let word = |a: Answer| a.word().to_string();
    rounds
        .iter()
        .map(|r| RoundDoc {
            round: r.round,
            label: r.label.clone(),
            entries: r
                .entries
                .iter()
                .map(|e| match e {
                    TranscriptEntry::Answer {
                        person,
                        answer,
                        recorded,
                    } => EntryDoc {
                        person: name(*person),
                        answer: Some(word(*answer)),
                        recorded: recorded.map(word),
                        statement: None,
                        consistent: None,
                    },
                    TranscriptEntry::Statement {
                        person,
                        statement,
                        consistent,
                    } => EntryDoc {
                        person: name(*person),
                        answer: None,
                        recorded: None,
                        statement: Some(statement.to_string()),
                        consistent: Some(*consistent),
                    },
                })
                .collect(),
        })
        .collect()
}
