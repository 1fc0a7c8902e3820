//! Islander behaviour: truthfulness crossed with sanity, with alternators
//! and partials toggling their phase after each of their own utterances.
//!
//! An [`ExtendedType`] fixes both classes and the phases an agent is in at
//! its epoch, the instant before its first utterance in a transcript. An
//! [`AgentState`] pairs that with the number of utterances made since.

use std::fmt;
use std::str::FromStr;

use crate::error::SemanticError;
use crate::lang::{eval_closed, Statement};
use crate::world::{Declarations, World};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SanityClass {
    Sane,
    Delusional,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthClass {
    Truthteller,
    Liar,
    Alternator,
}

impl SanityClass {
    pub fn name(self) -> &'static str {
        match self {
            SanityClass::Sane => "sane",
            SanityClass::Delusional => "delusional",
            SanityClass::Partial => "partial",
        }
    }
}

impl TruthClass {
    pub fn name(self) -> &'static str {
        match self {
            TruthClass::Truthteller => "truth-teller",
            TruthClass::Liar => "liar",
            TruthClass::Alternator => "alternator",
        }
    }
}

const LABELS: [&str; 16] = [
    "ST", "SL", "SAt", "SAl", "DT", "DL", "DAt", "DAl", "PiT", "PiL", "PiAt", "PiAl", "PsT", "PsL",
    "PsAt", "PsAl",
];

/// One of the 16 behavioural types, stored as its canonical index
/// (ST = 0 … PsAl = 15).
///
/// The index is `4 * sanity_part + truth_part` with sanity parts
/// S, D, Pi, Ps and truth parts T, L, At, Al.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedType(u8);

impl ExtendedType {
    pub const ALL: [ExtendedType; 16] = {
        let mut all = [ExtendedType(0); 16];
        let mut i = 0;
        while i < 16 {
            all[i] = ExtendedType(i as u8);
            i += 1;
        }
        all
    };

    pub fn from_index(index: usize) -> Option<Self> {
        (index < 16).then_some(ExtendedType(index as u8))
    }

    pub fn from_label(label: &str) -> Option<Self> {
        LABELS
            .iter()
            .position(|l| *l == label)
            .map(|i| ExtendedType(i as u8))
    }

    pub fn new(
        sanity: SanityClass,
        truth: TruthClass,
        truthful_at_epoch: bool,
        sane_at_epoch: bool,
    ) -> Option<Self> {
        let sanity_part = match (sanity, sane_at_epoch) {
            (SanityClass::Sane, true) => 0,
            (SanityClass::Delusional, false) => 1,
            (SanityClass::Partial, false) => 2,
            (SanityClass::Partial, true) => 3,
            _ => return None,
        };
        let truth_part = match (truth, truthful_at_epoch) {
            (TruthClass::Truthteller, true) => 0,
            (TruthClass::Liar, false) => 1,
            (TruthClass::Alternator, true) => 2,
            (TruthClass::Alternator, false) => 3,
            _ => return None,
        };
        Some(ExtendedType(sanity_part * 4 + truth_part))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> &'static str {
        LABELS[self.index()]
    }

    pub fn sanity(self) -> SanityClass {
        match self.0 / 4 {
            0 => SanityClass::Sane,
            1 => SanityClass::Delusional,
            _ => SanityClass::Partial,
        }
    }

    pub fn truth(self) -> TruthClass {
        match self.0 % 4 {
            0 => TruthClass::Truthteller,
            1 => TruthClass::Liar,
            _ => TruthClass::Alternator,
        }
    }

    pub fn truthful_at_epoch(self) -> bool {
        matches!(self.0 % 4, 0 | 2)
    }

    pub fn sane_at_epoch(self) -> bool {
        matches!(self.0 / 4, 0 | 3)
    }

    /// The type whose epoch phases equal this type's phases after
    /// `utterances` utterances. Converts between labels anchored at
    /// different points of a transcript; applying it twice with the same
    /// count is the identity.
    pub fn relabeled_after(self, utterances: u32) -> ExtendedType {
        let phases = AgentState::new(self, utterances).phases();
        ExtendedType::new(self.sanity(), self.truth(), phases.truthful, phases.sane)
            .expect("phases of a valid state always form a valid type")
    }
}

impl fmt::Debug for ExtendedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for ExtendedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ExtendedType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExtendedType::from_label(s).ok_or_else(|| format!("unknown type label `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phases {
    pub truthful: bool,
    pub sane: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentState {
    pub ty: ExtendedType,
    pub utterances: u32,
}

impl AgentState {
    pub fn new(ty: ExtendedType, utterances: u32) -> Self {
        AgentState { ty, utterances }
    }

    pub fn at_epoch(ty: ExtendedType) -> Self {
        AgentState::new(ty, 0)
    }

    pub fn phases(self) -> Phases {
        let odd = self.utterances % 2 == 1;
        Phases {
            truthful: self.ty.truthful_at_epoch()
                ^ (odd && self.ty.truth() == TruthClass::Alternator),
            sane: self.ty.sane_at_epoch() ^ (odd && self.ty.sanity() == SanityClass::Partial),
        }
    }

    #[must_use]
    pub fn advance(self) -> Self {
        AgentState::new(self.ty, self.utterances + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn letter(self) -> char {
        match self {
            Answer::Yes => 'Y',
            Answer::No => 'N',
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        }
    }
}

/// Whether an agent in `state` could utter `stmt`, spoken by `speaker`.
///
/// `believes(S)` is governed by the truthful phase alone: it is assertable
/// iff `truthful == S`. A bare statement is assertable iff
/// `(truthful == sane) == S`.
pub fn would_assert(
    state: AgentState,
    decls: &Declarations,
    world: &World,
    speaker: usize,
    stmt: &Statement,
) -> Result<bool, SemanticError> {
    let (believed, body) = stmt.split_belief();
    let value = eval_closed(decls, world, body, Some(speaker))?;
    Ok(assertable(state.phases(), believed, value))
}

/// The decision rule behind [`would_assert`], on an already evaluated body.
pub fn assertable(phases: Phases, believed: bool, value: bool) -> bool {
    if believed {
        phases.truthful == value
    } else {
        (phases.truthful == phases.sane) == value
    }
}

/// Yes iff the agent could assert the question's statement. Returns the
/// answer and the advanced state.
pub fn answer_yes_no(
    state: AgentState,
    decls: &Declarations,
    world: &World,
    speaker: usize,
    question: &Statement,
) -> Result<(Answer, AgentState), SemanticError> {
    let yes = would_assert(state, decls, world, speaker, question)?;
    Ok((Answer::from_bool(yes), state.advance()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanItem {
    Question(Statement),
    Assertion(Statement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Answered(Answer),
    /// Whether uttering the assertion is consistent with the agent's behaviour.
    Asserted(bool),
}

/// Runs one person through a plan of utterances, advancing the counter once
/// per item. Returns the outcomes and the final state.
pub fn simulate_person(
    start: AgentState,
    decls: &Declarations,
    world: &World,
    speaker: usize,
    plan: &[PlanItem],
) -> Result<(Vec<Outcome>, AgentState), SemanticError> {
    let mut state = start;
    let mut out = Vec::with_capacity(plan.len());
    for item in plan {
        let outcome = match item {
            PlanItem::Question(q) => Outcome::Answered(Answer::from_bool(would_assert(
                state, decls, world, speaker, q,
            )?)),
            PlanItem::Assertion(s) => {
                Outcome::Asserted(would_assert(state, decls, world, speaker, s)?)
            }
        };
        out.push(outcome);
        state = state.advance();
    }
    Ok((out, state))
}

/// The belief-free fact an utterance certifies, given the speaker's phases:
/// the body itself when the utterance is a faithful report, its negation
/// otherwise.
pub fn decode_assertion(state: AgentState, stmt: &Statement) -> Statement {
    let (believed, body) = stmt.split_belief();
    let phases = state.phases();
    let faithful = if believed {
        phases.truthful
    } else {
        phases.truthful == phases.sane
    };
    if faithful {
        body.clone()
    } else {
        body.negated()
    }
}

/// The fact certified by a yes/no answer. "No" means the agent could not
/// assert the question, which certifies the opposite of what a "yes" would.
pub fn decode_answer(state: AgentState, question: &Statement, answer: Answer) -> Statement {
    let yes_fact = decode_assertion(state, question);
    match answer {
        Answer::Yes => yes_fact,
        Answer::No => yes_fact.negated(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_statement, Term};

    fn ty(label: &str) -> ExtendedType {
        ExtendedType::from_label(label).unwrap()
    }

    fn one_person(t: ExtendedType) -> (Declarations, World) {
        let decls = Declarations::new(["Solo"], vec![]);
        let world = World::with_types(&decls, vec![t]);
        (decls, world)
    }

    #[test]
    fn labels_roundtrip_and_invariants() {
        for t in ExtendedType::ALL {
            assert_eq!(ExtendedType::from_label(t.label()), Some(t));
            assert_eq!(
                ExtendedType::new(
                    t.sanity(),
                    t.truth(),
                    t.truthful_at_epoch(),
                    t.sane_at_epoch()
                ),
                Some(t)
            );
            match t.truth() {
                TruthClass::Truthteller => assert!(t.truthful_at_epoch()),
                TruthClass::Liar => assert!(!t.truthful_at_epoch()),
                TruthClass::Alternator => {}
            }
            match t.sanity() {
                SanityClass::Sane => assert!(t.sane_at_epoch()),
                SanityClass::Delusional => assert!(!t.sane_at_epoch()),
                SanityClass::Partial => {}
            }
        }
        assert_eq!(
            ExtendedType::new(SanityClass::Sane, TruthClass::Liar, true, true),
            None
        );
        assert_eq!(ExtendedType::from_label("XY"), None);
    }

    #[test]
    fn current_phases_examples() {
        let p = AgentState::new(ty("ST"), 7).phases();
        assert_eq!((p.truthful, p.sane), (true, true));
        let p = AgentState::new(ty("PsAt"), 0).phases();
        assert_eq!((p.truthful, p.sane), (true, true));
        let p = AgentState::new(ty("PsAt"), 3).phases();
        assert_eq!((p.truthful, p.sane), (false, false));
        for k in 0..6 {
            let p = AgentState::new(ty("DL"), k).phases();
            assert_eq!((p.truthful, p.sane), (false, false));
        }
    }

    #[test]
    fn advance_examples() {
        assert!(AgentState::at_epoch(ty("SAl")).advance().phases().truthful);
        assert!(AgentState::at_epoch(ty("ST")).advance().phases().truthful);
        for t in ExtendedType::ALL {
            for k in 0..4 {
                let s = AgentState::new(t, k);
                assert_eq!(s.advance().advance().phases(), s.phases());
                assert_eq!(s.advance().ty, t);
                assert_eq!(s.advance().utterances, k + 1);
            }
        }
    }

    #[test]
    fn relabeling() {
        assert_eq!(ty("PiAl").relabeled_after(1), ty("PsAt"));
        assert_eq!(ty("PiAl").relabeled_after(2), ty("PiAl"));
        assert_eq!(ty("DL").relabeled_after(1), ty("DL"));
        for t in ExtendedType::ALL {
            assert_eq!(t.relabeled_after(1).relabeled_after(1), t);
        }
    }

    #[test]
    fn would_assert_examples() {
        let fact = parse_statement("sane(Solo)").unwrap();
        let (d, w) = one_person(ty("ST"));
        // DL about a true bare fact
        assert!(would_assert(AgentState::new(ty("DL"), 5), &d, &w, 0, &fact).unwrap());
        // truthful speaker, belief in a truth
        assert!(would_assert(
            AgentState::at_epoch(ty("ST")),
            &d,
            &w,
            0,
            &Statement::believes(fact.clone())
        )
        .unwrap());
        // sane liar denies truths
        assert!(!would_assert(AgentState::at_epoch(ty("SL")), &d, &w, 0, &fact).unwrap());
        // nested beliefs collapse
        let nested = Statement::believes(Statement::believes(fact.clone()));
        for t in ExtendedType::ALL {
            let s = AgentState::at_epoch(t);
            assert_eq!(
                would_assert(s, &d, &w, 0, &nested).unwrap(),
                would_assert(s, &d, &w, 0, &Statement::believes(fact.clone())).unwrap()
            );
        }
    }

    #[test]
    fn answers_to_patient_questions() {
        let q = Statement::atom("patient", Term::Me);
        let b = Statement::believes(q.clone());
        let (d, w) = one_person(ty("ST"));
        let (a, next) = answer_yes_no(AgentState::at_epoch(ty("ST")), &d, &w, 0, &q).unwrap();
        assert_eq!(a, Answer::No);
        assert_eq!(next.utterances, 1);

        let (d, w) = one_person(ty("DL"));
        let plan = vec![PlanItem::Question(b.clone()), PlanItem::Question(b.clone())];
        let (out, _) = simulate_person(AgentState::at_epoch(ty("DL")), &d, &w, 0, &plan).unwrap();
        assert_eq!(out, vec![Outcome::Answered(Answer::No); 2]);

        let (d, w) = one_person(ty("PsAt"));
        let plan: Vec<_> = [&q, &q, &b, &b]
            .iter()
            .map(|s| PlanItem::Question((*s).clone()))
            .collect();
        let (out, end) =
            simulate_person(AgentState::at_epoch(ty("PsAt")), &d, &w, 0, &plan).unwrap();
        let letters: String = out
            .iter()
            .map(|o| match o {
                Outcome::Answered(a) => a.letter(),
                Outcome::Asserted(_) => unreachable!(),
            })
            .collect();
        assert_eq!(letters, "YYYN");
        assert_eq!(end.utterances, 4);
    }

    #[test]
    fn empty_plan_leaves_state() {
        let (d, w) = one_person(ty("SAt"));
        let s = AgentState::new(ty("SAt"), 3);
        let (out, end) = simulate_person(s, &d, &w, 0, &[]).unwrap();
        assert!(out.is_empty());
        assert_eq!(end, s);
    }

    #[test]
    fn decode_examples() {
        let killer_doc =
            parse_statement("believes(exists x . doctor(x) and guilt(x, guilty))").unwrap();
        let decoded = decode_assertion(AgentState::new(ty("DL"), 5), &killer_doc);
        assert_eq!(
            decoded.to_string(),
            "not (exists x . doctor(x) and guilt(x, guilty))"
        );

        // PsAt at epoch is PiAl one utterance later... after five it lies.
        let non_lover =
            parse_statement("believes(exists x . not lover(x) and not guilt(x, innocent))")
                .unwrap();
        let decoded = decode_assertion(AgentState::new(ty("PsAt"), 5), &non_lover);
        assert_eq!(
            decoded.to_string(),
            "not (exists x . not lover(x) and not guilt(x, innocent))"
        );

        let bare = parse_statement("lover(Beth)").unwrap();
        assert_eq!(
            decode_assertion(AgentState::at_epoch(ty("ST")), &bare),
            bare
        );
        assert_eq!(
            decode_assertion(AgentState::at_epoch(ty("SL")), &bare),
            Statement::not(bare.clone())
        );
        // double negation cancels
        let neg = parse_statement("believes(not lover(Grace))").unwrap();
        assert_eq!(
            decode_assertion(AgentState::at_epoch(ty("DL")), &neg).to_string(),
            "lover(Grace)"
        );
    }

    #[test]
    fn decode_answer_matches_exactly_one_answer() {
        let q = Statement::atom("patient", Term::Me);
        let (d, _) = one_person(ty("ST"));
        for t in ExtendedType::ALL {
            let w = World::with_types(&d, vec![t]);
            for k in 0..2 {
                let s = AgentState::new(t, k);
                for stmt in [q.clone(), Statement::believes(q.clone())] {
                    let (a, _) = answer_yes_no(s, &d, &w, 0, &stmt).unwrap();
                    let fact = decode_answer(s, &stmt, a).with_speaker("Solo");
                    assert!(eval_closed(&d, &w, &fact, None).unwrap(), "{t} {k} {stmt}");
                }
            }
        }
    }
}
