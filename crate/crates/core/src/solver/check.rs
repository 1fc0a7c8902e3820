//! Direct replay of a transcript against one complete world. This is the
//! brute-force oracle the search is tested against, so it goes through the
//! plain evaluator and `would_assert`, never the compiled constraints.

use std::fmt;

use crate::agent::{
    answer_yes_no, decode_answer, decode_assertion, would_assert, AgentState, Answer, ExtendedType,
    Phases,
};
use crate::discrimination::answer_signature;
use crate::error::SolveError;
use crate::lang::{eval_closed, Statement};
use crate::puzzle::{PuzzleSpec, Round};
use crate::world::World;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Axiom {
        index: usize,
        axiom: Statement,
    },
    Statement {
        round: usize,
        speaker: String,
        epoch_type: ExtendedType,
        statement: Statement,
    },
    Answer {
        round: usize,
        speaker: String,
        epoch_type: ExtendedType,
        recorded: Answer,
        simulated: Answer,
    },
}

impl Violation {
    pub fn round(&self) -> Option<usize> {
        match self {
            Violation::Axiom { .. } => None,
            Violation::Statement { round, .. } | Violation::Answer { round, .. } => Some(*round),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Axiom { index, axiom } => write!(f, "axiom {} is false: {axiom}", index + 1),
            Violation::Statement {
                round,
                speaker,
                epoch_type,
                statement,
            } => write!(
                f,
                "round {round}: {speaker} (epoch type {epoch_type}) could not have said `{statement}`"
            ),
            Violation::Answer {
                round,
                speaker,
                epoch_type,
                recorded,
                simulated,
            } => write!(
                f,
                "round {round}: {speaker} (epoch type {epoch_type}) would answer {} but the transcript records {}",
                simulated.word(),
                recorded.word()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub violation: Option<Violation>,
}

impl CheckReport {
    pub fn consistent(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks axioms, then every round in transcript order.
pub fn check_world(puzzle: &PuzzleSpec, world: &World) -> Result<CheckReport, SolveError> {
    let decls = &puzzle.decls;
    world.check_shape(decls)?;
    for (index, axiom) in puzzle.axioms.iter().enumerate() {
        if !eval_closed(decls, world, axiom, None)? {
            return Ok(CheckReport {
                violation: Some(Violation::Axiom {
                    index,
                    axiom: axiom.clone(),
                }),
            });
        }
    }
    let mut states: Vec<AgentState> = world
        .types()
        .iter()
        .map(|&t| AgentState::at_epoch(t))
        .collect();
    for (r, round) in puzzle.rounds.iter().enumerate() {
        match round {
            Round::Statements { utterances, .. } => {
                for u in utterances {
                    let state = states[u.speaker];
                    if !would_assert(state, decls, world, u.speaker, &u.statement)? {
                        return Ok(CheckReport {
                            violation: Some(Violation::Statement {
                                round: r,
                                speaker: decls.person_name(u.speaker).to_string(),
                                epoch_type: state.ty,
                                statement: u.statement.clone(),
                            }),
                        });
                    }
                    states[u.speaker] = state.advance();
                }
            }
            Round::Question {
                addressed,
                question,
                answers,
                ..
            } => {
                for (i, &p) in addressed.iter().enumerate() {
                    let (simulated, next) = answer_yes_no(states[p], decls, world, p, question)?;
                    if let Some(recorded) = answers.as_ref().map(|a| a[i]) {
                        if recorded != simulated {
                            return Ok(CheckReport {
                                violation: Some(Violation::Answer {
                                    round: r,
                                    speaker: decls.person_name(p).to_string(),
                                    epoch_type: states[p].ty,
                                    recorded,
                                    simulated,
                                }),
                            });
                        }
                    }
                    states[p] = next;
                }
            }
        }
    }
    Ok(CheckReport { violation: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranscriptEntry {
    Answer {
        person: usize,
        answer: Answer,
        recorded: Option<Answer>,
    },
    Statement {
        person: usize,
        statement: Statement,
        consistent: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptRound {
    pub round: usize,
    pub label: Option<String>,
    pub entries: Vec<TranscriptEntry>,
}

/// What the puzzle's population would produce in `world`: simulated
/// answers for question rounds and consistency marks for statements.
pub fn simulate_transcript(
    puzzle: &PuzzleSpec,
    world: &World,
) -> Result<Vec<TranscriptRound>, SolveError> {
    let decls = &puzzle.decls;
    world.check_shape(decls)?;
    let mut states: Vec<AgentState> = world
        .types()
        .iter()
        .map(|&t| AgentState::at_epoch(t))
        .collect();
    let mut out = Vec::with_capacity(puzzle.rounds.len());
    for (r, round) in puzzle.rounds.iter().enumerate() {
        let mut entries = Vec::new();
        let label = match round {
            Round::Statements { label, utterances } => {
                for u in utterances {
                    let consistent =
                        would_assert(states[u.speaker], decls, world, u.speaker, &u.statement)?;
                    entries.push(TranscriptEntry::Statement {
                        person: u.speaker,
                        statement: u.statement.clone(),
                        consistent,
                    });
                    states[u.speaker] = states[u.speaker].advance();
                }
                label.clone()
            }
            Round::Question {
                label,
                addressed,
                question,
                answers,
            } => {
                for (i, &p) in addressed.iter().enumerate() {
                    let (answer, next) = answer_yes_no(states[p], decls, world, p, question)?;
                    entries.push(TranscriptEntry::Answer {
                        person: p,
                        answer,
                        recorded: answers.as_ref().map(|a| a[i]),
                    });
                    states[p] = next;
                }
                Some(label.clone())
            }
        };
        out.push(TranscriptRound {
            round: r,
            label,
            entries,
        });
    }
    Ok(out)
}

/// One decoded utterance: who spoke, in which phases, and the fact it
/// certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub round: usize,
    pub person: usize,
    pub phases: Phases,
    /// The utterance with `me` replaced by the speaker's name; for question
    /// rounds, the question.
    pub utterance: Statement,
    pub answer: Option<Answer>,
    pub decoded: Statement,
}

impl Explanation {
    pub fn phase_label(&self) -> &'static str {
        match (self.phases.sane, self.phases.truthful) {
            (true, true) => "sane, truthful",
            (true, false) => "sane, lying",
            (false, true) => "insane, truthful",
            (false, false) => "insane, lying",
        }
    }
}

/// Decodes every utterance of a consistent world into the fact it certifies.
pub fn explain_solution(
    puzzle: &PuzzleSpec,
    world: &World,
) -> Result<Vec<Explanation>, SolveError> {
    if let Some(v) = check_world(puzzle, world)?.violation {
        return Err(SolveError::InconsistentWorld(v.to_string()));
    }
    let decls = &puzzle.decls;
    let mut states: Vec<AgentState> = world
        .types()
        .iter()
        .map(|&t| AgentState::at_epoch(t))
        .collect();
    let mut out = Vec::new();
    for (r, round) in puzzle.rounds.iter().enumerate() {
        match round {
            Round::Statements { utterances, .. } => {
                for u in utterances {
                    let state = states[u.speaker];
                    let name = decls.person_name(u.speaker);
                    let utterance = u.statement.with_speaker(name);
                    out.push(Explanation {
                        round: r,
                        person: u.speaker,
                        phases: state.phases(),
                        decoded: decode_assertion(state, &utterance),
                        utterance,
                        answer: None,
                    });
                    states[u.speaker] = state.advance();
                }
            }
            Round::Question {
                addressed,
                question,
                answers,
                ..
            } => {
                for (i, &p) in addressed.iter().enumerate() {
                    let state = states[p];
                    let answer = match answers {
                        Some(a) => a[i],
                        None => answer_yes_no(state, decls, world, p, question)?.0,
                    };
                    let utterance = question.with_speaker(decls.person_name(p));
                    out.push(Explanation {
                        round: r,
                        person: p,
                        phases: state.phases(),
                        decoded: decode_answer(state, &utterance, answer),
                        utterance,
                        answer: Some(answer),
                    });
                    states[p] = state.advance();
                }
            }
        }
    }
    Ok(out)
}

/// Epoch types whose answers to `questions`, starting `epoch_offset`
/// utterances after the epoch, are exactly `answers`.
pub fn filter_types_by_signature(
    questions: &[Statement],
    answers: &[Answer],
    epoch_offset: u32,
) -> Result<Vec<ExtendedType>, SolveError> {
    if questions.len() != answers.len() {
        return Err(SolveError::LengthMismatch {
            questions: questions.len(),
            answers: answers.len(),
        });
    }
    let wanted: String = answers.iter().map(|a| a.letter()).collect();
    let mut out = Vec::new();
    for t in ExtendedType::ALL {
        if answer_signature(t, questions, epoch_offset)?.as_str() == wanted {
            out.push(t);
        }
    }
    Ok(out)
}
