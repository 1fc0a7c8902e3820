//! Answer signatures of the 16 types and the partitions they induce.

use std::fmt::{self, Write as _};

use crate::agent::{would_assert, AgentState, ExtendedType};
use crate::error::SolveError;
use crate::lang::{Statement, Term, BUILTIN_PREDICATES};
use crate::world::{Declarations, World};

/// Y/N answers, one per question.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(String);

impl Signature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Questions must be about the speaker's own type: built-in predicates on
/// `me` under connectives, optionally wrapped in `believes`.
fn self_referential(stmt: &Statement) -> bool {
    match stmt {
        Statement::Atom(atom) => {
            atom.subject == Term::Me
                && atom.value.is_none()
                && BUILTIN_PREDICATES.contains(&atom.predicate.as_str())
        }
        Statement::Not(s) => self_referential(s),
        Statement::And(items) | Statement::Or(items) => items.iter().all(self_referential),
        Statement::Implies(a, b) => self_referential(a) && self_referential(b),
        Statement::Exists(..)
        | Statement::ForAll(..)
        | Statement::AtLeast(..)
        | Statement::Believes(_) => false,
    }
}

pub fn answer_signature(
    ty: ExtendedType,
    questions: &[Statement],
    epoch_offset: u32,
) -> Result<Signature, SolveError> {
    let decls = Declarations::new(["Speaker"], vec![]);
    let world = World::with_types(&decls, vec![ty]);
    let mut state = AgentState::new(ty, epoch_offset);
    let mut out = String::with_capacity(questions.len());
    for q in questions {
        if !self_referential(q.split_belief().1) {
            return Err(SolveError::UnsupportedQuestion(q.to_string()));
        }
        let yes = would_assert(state, &decls, &world, 0, q)?;
        out.push(if yes { 'Y' } else { 'N' });
        state = state.advance();
    }
    Ok(Signature(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeClass {
    pub signature: Signature,
    /// Epoch types, canonical order.
    pub members: Vec<ExtendedType>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    pub epoch_offset: u32,
    pub classes: Vec<TypeClass>,
}

impl TypeClass {
    /// Members relabeled by their phases at the first question, i.e.
    /// `epoch_offset` utterances after the epoch.
    pub fn labels_at_offset(&self, epoch_offset: u32) -> Vec<ExtendedType> {
        let mut out: Vec<_> = self
            .members
            .iter()
            .map(|t| t.relabeled_after(epoch_offset))
            .collect();
        out.sort();
        out
    }
}

impl TypePartition {
    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.members.len() == 1)
    }

    pub fn class_of(&self, signature: &str) -> Option<&TypeClass> {
        self.classes
            .iter()
            .find(|c| c.signature.as_str() == signature)
    }
}

/// Groups all 16 types by signature. Classes are ordered by their first
/// member as labelled at the first question.
pub fn partition_types(
    questions: &[Statement],
    epoch_offset: u32,
) -> Result<TypePartition, SolveError> {
    let mut classes: Vec<TypeClass> = Vec::new();
    for t in ExtendedType::ALL {
        let sig = answer_signature(t, questions, epoch_offset)?;
        match classes.iter_mut().find(|c| c.signature == sig) {
            Some(c) => c.members.push(t),
            None => classes.push(TypeClass {
                signature: sig,
                members: vec![t],
            }),
        }
    }
    classes.sort_by_key(|c| c.labels_at_offset(epoch_offset)[0]);
    Ok(TypePartition {
        epoch_offset,
        classes,
    })
}

pub fn patient_question() -> Statement {
    Statement::atom("patient", Term::Me)
}

pub fn belief_question() -> Statement {
    Statement::believes(patient_question())
}

/// Reference answers of the four non-switching types to [patient,
/// believes-patient]. The liar rows are wrong: they disagree with the
/// engine and with the 16-type table. `render_tables` flags them.
pub const REFERENCE_NON_SWITCHING: [(&str, &str, &str); 4] = [
    ("ST", "sane truth-teller", "NN"),
    ("SL", "sane liar", "YN"),
    ("DT", "insane truth-teller", "NY"),
    ("DL", "insane liar", "YY"),
];

/// The fixed-layout text printed by `asylum tables`.
pub fn render_tables() -> String {
    let q = patient_question();
    let b = belief_question();
    let sig = |t: ExtendedType, qs: &[Statement], off| {
        answer_signature(t, qs, off).expect("patient questions are self-referential")
    };
    let mut out = String::new();

    let _ = writeln!(out, "Q = {q}");
    let _ = writeln!(out, "B = {b}");
    out.push('\n');

    let _ = writeln!(out, "Non-switching types: questions [Q, B] at the epoch");
    let _ = writeln!(out, "{:<26}{:<4}{:<4}reference", "type", "Q", "B");
    let mut errata = Vec::new();
    for (label, name, printed) in REFERENCE_NON_SWITCHING {
        let t = ExtendedType::from_label(label).unwrap();
        let s = sig(t, &[q.clone(), b.clone()], 0);
        let mark = if s.as_str() == printed {
            ""
        } else {
            errata.push(label);
            " *"
        };
        let cells: Vec<char> = s.as_str().chars().collect();
        let _ = writeln!(
            out,
            "{:<26}{:<4}{:<4}{}{}",
            format!("{name} ({label})"),
            cells[0],
            cells[1],
            printed,
            mark
        );
    }
    let _ = writeln!(
        out,
        "* erratum: the reference values swap the liars' B answers. \"I believe S\" is asserted iff \
         truthful == S whatever the sanity, as the 16-type table below also shows. Differing rows: {}.",
        errata.join(", ")
    );
    out.push('\n');

    let questions = [q.clone(), q.clone(), b.clone(), b.clone()];
    let _ = writeln!(out, "All 16 types: answers to [Q, Q, B, B] at the epoch");
    let _ = write!(out, "{:<4}", "");
    for t in ExtendedType::ALL {
        let _ = write!(out, "{:<5}", t.label());
    }
    out.truncate(out.trim_end_matches(' ').len());
    out.push('\n');
    let sigs: Vec<Vec<char>> = ExtendedType::ALL
        .iter()
        .map(|&t| sig(t, &questions, 0).as_str().chars().collect())
        .collect();
    for (row, name) in ["Q", "Q", "B", "B"].iter().enumerate() {
        let _ = write!(out, "{name:<4}");
        for s in &sigs {
            let _ = write!(out, "{:<5}", s[row]);
        }
        out.truncate(out.trim_end_matches(' ').len());
        out.push('\n');
    }
    out.push('\n');

    let _ = writeln!(
        out,
        "Pairs: types sharing answers to [Q, Q, B] asked after one earlier utterance"
    );
    let _ = writeln!(
        out,
        "(labels give phases at the first question; epoch labels in brackets)"
    );
    let partition =
        partition_types(&[q.clone(), q.clone(), b.clone()], 1).expect("self-referential");
    for class in &partition.classes {
        let at = class.labels_at_offset(1);
        let at: Vec<&str> = at.iter().map(|t| t.label()).collect();
        let epoch: Vec<&str> = class.members.iter().map(|t| t.label()).collect();
        let _ = writeln!(
            out,
            "{} → {:<10}[epoch: {}]",
            class.signature,
            at.join(", "),
            epoch.join(", ")
        );
    }
    out
}
