//! Statements compiled against a puzzle's declarations and evaluated in
//! Kleene three-valued logic over partial assignments.
//!
//! Assignment layout: variable `p` (for `p < n`) is person `p`'s type
//! index; variable `n + f * n + p` is fluent `f` of person `p`.

use crate::agent::{assertable, AgentState, ExtendedType, SanityClass, TruthClass};
use crate::error::SemanticError;
use crate::lang::{Atom, Statement, Term};
use crate::world::Declarations;

pub(crate) const UNASSIGNED: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tri {
    False,
    True,
    Unknown,
}

impl Tri {
    fn not(self) -> Tri {
        match self {
            Tri::False => Tri::True,
            Tri::True => Tri::False,
            Tri::Unknown => Tri::Unknown,
        }
    }

    fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Subject {
    Person(usize),
    Slot(usize),
}

#[derive(Debug, Clone, Copy)]
enum Quant {
    Exists,
    ForAll,
    AtLeast(usize),
}

#[derive(Debug, Clone)]
enum Formula {
    /// True iff the subject's type index is in `mask`.
    Type {
        mask: u16,
        subject: Subject,
    },
    Fluent {
        var_base: usize,
        value: u8,
        subject: Subject,
    },
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant {
        quant: Quant,
        slot: usize,
        body: Box<Formula>,
    },
}

fn type_mask(pred: impl Fn(ExtendedType) -> bool) -> u16 {
    ExtendedType::ALL
        .iter()
        .filter(|t| pred(**t))
        .fold(0, |m, t| m | (1 << t.index()))
}

struct Compiler<'a> {
    decls: &'a Declarations,
    speaker: Option<usize>,
    scope: Vec<String>,
}

impl Compiler<'_> {
    fn subject(&self, term: &Term) -> Result<Subject, SemanticError> {
        match term {
            Term::Me => self
                .speaker
                .map(Subject::Person)
                .ok_or(SemanticError::NoSpeaker),
            Term::Person(name) => self
                .decls
                .person_index(name)
                .map(Subject::Person)
                .ok_or_else(|| SemanticError::UnknownPerson(name.clone())),
            Term::Var(name) => self
                .scope
                .iter()
                .rposition(|v| v == name)
                .map(Subject::Slot)
                .ok_or_else(|| SemanticError::UnboundVariable(name.clone())),
        }
    }

    fn atom(&self, atom: &Atom) -> Result<Formula, SemanticError> {
        let subject = self.subject(&atom.subject)?;
        let mask = match atom.predicate.as_str() {
            "patient" => Some(type_mask(|t| t.sanity() != SanityClass::Sane)),
            "doctor" | "sane" => Some(type_mask(|t| t.sanity() == SanityClass::Sane)),
            "delusional" => Some(type_mask(|t| t.sanity() == SanityClass::Delusional)),
            "partial" => Some(type_mask(|t| t.sanity() == SanityClass::Partial)),
            "truthteller" => Some(type_mask(|t| t.truth() == TruthClass::Truthteller)),
            "liar" => Some(type_mask(|t| t.truth() == TruthClass::Liar)),
            "alternator" => Some(type_mask(|t| t.truth() == TruthClass::Alternator)),
            _ => None,
        };
        let bad = |message: &str| SemanticError::BadArguments {
            predicate: atom.predicate.clone(),
            message: message.into(),
        };
        if let Some(mask) = mask {
            if atom.value.is_some() {
                return Err(bad("built-in predicates take no value"));
            }
            return Ok(Formula::Type { mask, subject });
        }
        let f = self
            .decls
            .fluent_index(&atom.predicate)
            .ok_or_else(|| SemanticError::UnknownPredicate(atom.predicate.clone()))?;
        let decl = &self.decls.fluents()[f];
        let value = match (&atom.value, decl.is_bool()) {
            (None, true) => 1,
            (Some(v), false) => decl
                .value_index(v)
                .ok_or_else(|| bad(&format!("`{v}` is not in its domain")))?,
            (Some(_), true) => return Err(bad("boolean fluents take no value")),
            (None, false) => return Err(bad("categorical fluents need a value")),
        };
        let n = self.decls.person_count();
        Ok(Formula::Fluent {
            var_base: n + f * n,
            value,
            subject,
        })
    }

    fn compile(&mut self, stmt: &Statement) -> Result<Formula, SemanticError> {
        Ok(match stmt {
            Statement::Atom(atom) => self.atom(atom)?,
            Statement::Not(s) => Formula::Not(Box::new(self.compile(s)?)),
            Statement::And(items) => Formula::And(
                items
                    .iter()
                    .map(|s| self.compile(s))
                    .collect::<Result<_, _>>()?,
            ),
            Statement::Or(items) => Formula::Or(
                items
                    .iter()
                    .map(|s| self.compile(s))
                    .collect::<Result<_, _>>()?,
            ),
            Statement::Implies(a, b) => {
                Formula::Implies(Box::new(self.compile(a)?), Box::new(self.compile(b)?))
            }
            Statement::Exists(var, body) => self.quant(Quant::Exists, var, body)?,
            Statement::ForAll(var, body) => self.quant(Quant::ForAll, var, body)?,
            Statement::AtLeast(k, var, body) => {
                self.quant(Quant::AtLeast(*k as usize), var, body)?
            }
            Statement::Believes(_) => return Err(SemanticError::NestedBelief),
        })
    }

    fn quant(
        &mut self,
        quant: Quant,
        var: &str,
        body: &Statement,
    ) -> Result<Formula, SemanticError> {
        let slot = self.scope.len();
        self.scope.push(var.to_string());
        let body = self.compile(body);
        self.scope.pop();
        Ok(Formula::Quant {
            quant,
            slot,
            body: Box::new(body?),
        })
    }
}

impl Formula {
    fn person(subject: Subject, env: &[usize]) -> usize {
        match subject {
            Subject::Person(p) => p,
            Subject::Slot(s) => env[s],
        }
    }

    fn eval(&self, assign: &[u8], persons: usize, env: &mut Vec<usize>) -> Tri {
        match self {
            Formula::Type { mask, subject } => {
                let t = assign[Self::person(*subject, env)];
                if t == UNASSIGNED {
                    Tri::Unknown
                } else {
                    Tri::from_bool(mask & (1 << t) != 0)
                }
            }
            Formula::Fluent {
                var_base,
                value,
                subject,
            } => {
                let v = assign[var_base + Self::person(*subject, env)];
                if v == UNASSIGNED {
                    Tri::Unknown
                } else {
                    Tri::from_bool(v == *value)
                }
            }
            Formula::Not(inner) => inner.eval(assign, persons, env).not(),
            Formula::And(items) => {
                let mut out = Tri::True;
                for item in items {
                    match item.eval(assign, persons, env) {
                        Tri::False => return Tri::False,
                        Tri::Unknown => out = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                out
            }
            Formula::Or(items) => {
                let mut out = Tri::False;
                for item in items {
                    match item.eval(assign, persons, env) {
                        Tri::True => return Tri::True,
                        Tri::Unknown => out = Tri::Unknown,
                        Tri::False => {}
                    }
                }
                out
            }
            Formula::Implies(a, b) => match a.eval(assign, persons, env) {
                Tri::False => Tri::True,
                Tri::True => b.eval(assign, persons, env),
                Tri::Unknown => match b.eval(assign, persons, env) {
                    Tri::True => Tri::True,
                    _ => Tri::Unknown,
                },
            },
            Formula::Quant { quant, slot, body } => {
                let mut trues = 0;
                let mut unknowns = 0;
                env.truncate(*slot);
                env.push(0);
                for p in 0..persons {
                    env[*slot] = p;
                    match body.eval(assign, persons, env) {
                        Tri::True => trues += 1,
                        Tri::Unknown => unknowns += 1,
                        Tri::False => {}
                    }
                }
                env.truncate(*slot);
                let need = match quant {
                    Quant::Exists => 1,
                    Quant::ForAll => persons,
                    Quant::AtLeast(k) => *k,
                };
                if trues >= need {
                    Tri::True
                } else if trues + unknowns < need {
                    Tri::False
                } else {
                    Tri::Unknown
                }
            }
        }
    }

    fn collect_vars(&self, persons: usize, out: &mut Vec<usize>) {
        let mut add = |base: usize, subject: Subject| match subject {
            Subject::Person(p) => out.push(base + p),
            Subject::Slot(_) => out.extend((0..persons).map(|p| base + p)),
        };
        match self {
            Formula::Type { subject, .. } => add(0, *subject),
            Formula::Fluent {
                var_base, subject, ..
            } => add(*var_base, *subject),
            Formula::Not(inner) => inner.collect_vars(persons, out),
            Formula::And(items) | Formula::Or(items) => {
                items.iter().for_each(|i| i.collect_vars(persons, out))
            }
            Formula::Implies(a, b) => {
                a.collect_vars(persons, out);
                b.collect_vars(persons, out);
            }
            Formula::Quant { body, .. } => body.collect_vars(persons, out),
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Axiom,
    Utterance {
        speaker: usize,
        utterances: u32,
        believed: bool,
        /// Whether the agent must be able to assert the body (false for a
        /// recorded "no").
        expected: bool,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    kind: Kind,
    formula: Formula,
    pub vars: Vec<usize>,
}

impl Constraint {
    pub fn axiom(decls: &Declarations, stmt: &Statement) -> Result<Self, SemanticError> {
        let formula = Compiler {
            decls,
            speaker: None,
            scope: Vec::new(),
        }
        .compile(stmt)?;
        Ok(Self::finish(decls, Kind::Axiom, formula))
    }

    pub fn utterance(
        decls: &Declarations,
        speaker: usize,
        utterances: u32,
        stmt: &Statement,
        expected: bool,
    ) -> Result<Self, SemanticError> {
        let (believed, body) = stmt.split_belief();
        let formula = Compiler {
            decls,
            speaker: Some(speaker),
            scope: Vec::new(),
        }
        .compile(body)?;
        let kind = Kind::Utterance {
            speaker,
            utterances,
            believed,
            expected,
        };
        Ok(Self::finish(decls, kind, formula))
    }

    fn finish(decls: &Declarations, kind: Kind, formula: Formula) -> Self {
        let n = decls.person_count();
        let mut vars = Vec::new();
        formula.collect_vars(n, &mut vars);
        if let Kind::Utterance { speaker, .. } = kind {
            vars.push(speaker);
        }
        vars.sort_unstable();
        vars.dedup();
        Constraint {
            kind,
            formula,
            vars,
        }
    }

    pub fn eval(&self, assign: &[u8], persons: usize, env: &mut Vec<usize>) -> Tri {
        match self.kind {
            Kind::Axiom => self.formula.eval(assign, persons, env),
            Kind::Utterance {
                speaker,
                utterances,
                believed,
                expected,
            } => {
                let t = assign[speaker];
                if t == UNASSIGNED {
                    return Tri::Unknown;
                }
                let value = match self.formula.eval(assign, persons, env) {
                    Tri::Unknown => return Tri::Unknown,
                    v => v == Tri::True,
                };
                let ty =
                    ExtendedType::from_index(t as usize).expect("type variables hold type indices");
                let phases = AgentState::new(ty, utterances).phases();
                Tri::from_bool(assertable(phases, believed, value) == expected)
            }
        }
    }
}
