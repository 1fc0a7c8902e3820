//! A parsed puzzle: who is there, what can be true of them, and what they said.

use crate::agent::{AgentState, Answer, ExtendedType};
use crate::extraction::ExtractionConfig;
use crate::lang::Statement;
use crate::world::{Declarations, World};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    pub speaker: usize,
    pub statement: Statement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Round {
    /// Each listed person utters one statement, in order.
    Statements {
        label: Option<String>,
        utterances: Vec<Utterance>,
    },
    /// The same yes/no question put to each addressed person in order.
    /// `answers` is `None` when the transcript does not record them.
    Question {
        label: String,
        addressed: Vec<usize>,
        question: Statement,
        answers: Option<Vec<Answer>>,
    },
}

impl Round {
    pub fn speakers(&self) -> Vec<usize> {
        match self {
            Round::Statements { utterances, .. } => utterances.iter().map(|u| u.speaker).collect(),
            Round::Question { addressed, .. } => addressed.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleSpec {
    pub decls: Declarations,
    pub axioms: Vec<Statement>,
    pub rounds: Vec<Round>,
    pub extraction: Option<ExtractionConfig>,
    /// Type labels in reports and world files describe each person's state
    /// before this round. 0 means the epoch itself.
    pub label_round: usize,
}

impl PuzzleSpec {
    pub fn new(decls: Declarations) -> Self {
        PuzzleSpec {
            decls,
            axioms: Vec::new(),
            rounds: Vec::new(),
            extraction: None,
            label_round: 0,
        }
    }

    /// Utterances `person` makes in rounds `0..round`.
    pub fn utterances_before(&self, round: usize, person: usize) -> u32 {
        self.rounds[..round.min(self.rounds.len())]
            .iter()
            .map(|r| r.speakers().iter().filter(|&&s| s == person).count() as u32)
            .sum()
    }

    /// The label a person's epoch type is displayed under.
    pub fn display_type(&self, person: usize, epoch_type: ExtendedType) -> ExtendedType {
        epoch_type.relabeled_after(self.utterances_before(self.label_round, person))
    }

    /// Inverse of [`display_type`](Self::display_type) for an arbitrary anchor round.
    pub fn epoch_type(
        &self,
        person: usize,
        label: ExtendedType,
        anchor_round: usize,
    ) -> ExtendedType {
        label.relabeled_after(self.utterances_before(anchor_round, person))
    }

    pub fn state_before(&self, round: usize, person: usize, world: &World) -> AgentState {
        AgentState::new(world.type_of(person), self.utterances_before(round, person))
    }

    /// The same puzzle restricted to its first `count` rounds.
    pub fn truncated(&self, count: usize) -> PuzzleSpec {
        let mut out = self.clone();
        out.rounds.truncate(count);
        out.label_round = out.label_round.min(count);
        out
    }

    /// Every statement in the puzzle, for round-trip checks and tooling.
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.axioms
            .iter()
            .chain(self.rounds.iter().flat_map(|r| -> Vec<&Statement> {
                match r {
                    Round::Statements { utterances, .. } => {
                        utterances.iter().map(|u| &u.statement).collect()
                    }
                    Round::Question { question, .. } => vec![question],
                }
            }))
    }
}
