//! Classical evaluation of closed, belief-free statements, plus the
//! declaration checks shared by the puzzle parser.

use super::ast::{Atom, Statement, Term};
use crate::agent::{SanityClass, TruthClass};
use crate::error::SemanticError;
use crate::world::{Declarations, World};

pub const BUILTIN_PREDICATES: &[&str] = &[
    "patient",
    "doctor",
    "sane",
    "delusional",
    "partial",
    "truthteller",
    "liar",
    "alternator",
];

/// Evaluates `stmt` in `world`. `me` denotes `speaker`.
pub fn eval_closed(
    decls: &Declarations,
    world: &World,
    stmt: &Statement,
    speaker: Option<usize>,
) -> Result<bool, SemanticError> {
    let mut env = Vec::new();
    eval(decls, world, stmt, speaker, &mut env)
}

fn eval(
    decls: &Declarations,
    world: &World,
    stmt: &Statement,
    speaker: Option<usize>,
    env: &mut Vec<(String, usize)>,
) -> Result<bool, SemanticError> {
    match stmt {
        Statement::Atom(atom) => eval_atom(decls, world, atom, speaker, env),
        Statement::Not(s) => Ok(!eval(decls, world, s, speaker, env)?),
        Statement::And(items) => {
            for item in items {
                if !eval(decls, world, item, speaker, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Statement::Or(items) => {
            for item in items {
                if eval(decls, world, item, speaker, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Statement::Implies(a, b) => {
            Ok(!eval(decls, world, a, speaker, env)? || eval(decls, world, b, speaker, env)?)
        }
        Statement::Exists(var, body) => {
            Ok(count_witnesses(decls, world, var, body, speaker, env, Some(1))? >= 1)
        }
        Statement::ForAll(var, body) => {
            for p in 0..decls.person_count() {
                env.push((var.clone(), p));
                let holds = eval(decls, world, body, speaker, env);
                env.pop();
                if !holds? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Statement::AtLeast(k, var, body) => {
            Ok(
                count_witnesses(decls, world, var, body, speaker, env, Some(*k as usize))?
                    >= *k as usize,
            )
        }
        Statement::Believes(_) => Err(SemanticError::NestedBelief),
    }
}

fn count_witnesses(
    decls: &Declarations,
    world: &World,
    var: &str,
    body: &Statement,
    speaker: Option<usize>,
    env: &mut Vec<(String, usize)>,
    enough: Option<usize>,
) -> Result<usize, SemanticError> {
    let mut count = 0;
    for p in 0..decls.person_count() {
        if enough.is_some_and(|k| count >= k) {
            break;
        }
        env.push((var.to_string(), p));
        let holds = eval(decls, world, body, speaker, env);
        env.pop();
        if holds? {
            count += 1;
        }
    }
    Ok(count)
}

fn resolve_term(
    decls: &Declarations,
    term: &Term,
    speaker: Option<usize>,
    env: &[(String, usize)],
) -> Result<usize, SemanticError> {
    match term {
        Term::Me => speaker.ok_or(SemanticError::NoSpeaker),
        Term::Person(name) => decls
            .person_index(name)
            .ok_or_else(|| SemanticError::UnknownPerson(name.clone())),
        Term::Var(name) => env
            .iter()
            .rev()
            .find(|(v, _)| v == name)
            .map(|&(_, p)| p)
            .ok_or_else(|| SemanticError::UnboundVariable(name.clone())),
    }
}

fn eval_atom(
    decls: &Declarations,
    world: &World,
    atom: &Atom,
    speaker: Option<usize>,
    env: &[(String, usize)],
) -> Result<bool, SemanticError> {
    let person = resolve_term(decls, &atom.subject, speaker, env)?;
    let ty = world.type_of(person);
    let builtin = match atom.predicate.as_str() {
        "patient" => Some(ty.sanity() != SanityClass::Sane),
        "doctor" => Some(ty.sanity() == SanityClass::Sane),
        "sane" => Some(ty.sanity() == SanityClass::Sane),
        "delusional" => Some(ty.sanity() == SanityClass::Delusional),
        "partial" => Some(ty.sanity() == SanityClass::Partial),
        "truthteller" => Some(ty.truth() == TruthClass::Truthteller),
        "liar" => Some(ty.truth() == TruthClass::Liar),
        "alternator" => Some(ty.truth() == TruthClass::Alternator),
        _ => None,
    };
    if let Some(value) = builtin {
        if atom.value.is_some() {
            return Err(bad_args(atom, "built-in predicates take no value"));
        }
        return Ok(value);
    }
    let f = decls
        .fluent_index(&atom.predicate)
        .ok_or_else(|| SemanticError::UnknownPredicate(atom.predicate.clone()))?;
    let decl = &decls.fluents()[f];
    let wanted = match (&atom.value, decl.is_bool()) {
        (None, true) => 1,
        (Some(v), false) => decl
            .value_index(v)
            .ok_or_else(|| bad_args(atom, &format!("`{v}` is not in its domain")))?,
        (Some(_), true) => return Err(bad_args(atom, "boolean fluents take no value")),
        (None, false) => return Err(bad_args(atom, "categorical fluents need a value")),
    };
    Ok(world.fluent(f, person) == wanted)
}

fn bad_args(atom: &Atom, message: &str) -> SemanticError {
    SemanticError::BadArguments {
        predicate: atom.predicate.clone(),
        message: message.to_string(),
    }
}

/// Where a statement is used; decides whether `me` and `believes` are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Usage {
    /// Background fact: no speaker, no beliefs.
    Axiom,
    /// Uttered by a person (statement or question): `me` allowed and a
    /// `believes` chain allowed at the top.
    Utterance,
}

/// Checks `stmt` against the declarations. On failure returns the path of
/// the offending node and the error.
pub fn validate(
    decls: &Declarations,
    stmt: &Statement,
    usage: Usage,
) -> Result<(), (String, SemanticError)> {
    let body = match usage {
        Usage::Utterance => stmt.split_belief().1,
        Usage::Axiom => stmt,
    };
    let mut path = vec!["statement".to_string()];
    let mut scope = Vec::new();
    check(decls, body, usage, &mut path, &mut scope).map_err(|e| (path.join(" / "), e))
}

fn check(
    decls: &Declarations,
    stmt: &Statement,
    usage: Usage,
    path: &mut Vec<String>,
    scope: &mut Vec<String>,
) -> Result<(), SemanticError> {
    let mut descend = |label: String, s: &Statement, scope: &mut Vec<String>| {
        path.push(label);
        check(decls, s, usage, path, scope)?;
        path.pop();
        Ok(())
    };
    match stmt {
        Statement::Atom(atom) => {
            match &atom.subject {
                Term::Me if usage == Usage::Axiom => return Err(SemanticError::NoSpeaker),
                Term::Me => {}
                Term::Person(name) => {
                    if decls.person_index(name).is_none() {
                        return Err(SemanticError::UnknownPerson(name.clone()));
                    }
                }
                Term::Var(name) => {
                    if !scope.contains(name) {
                        return Err(SemanticError::UnboundVariable(name.clone()));
                    }
                }
            }
            if BUILTIN_PREDICATES.contains(&atom.predicate.as_str()) {
                if atom.value.is_some() {
                    return Err(bad_args(atom, "built-in predicates take no value"));
                }
                return Ok(());
            }
            let f = decls
                .fluent_index(&atom.predicate)
                .ok_or_else(|| SemanticError::UnknownPredicate(atom.predicate.clone()))?;
            let decl = &decls.fluents()[f];
            match (&atom.value, decl.is_bool()) {
                (None, true) => Ok(()),
                (Some(v), false) if decl.value_index(v).is_some() => Ok(()),
                (Some(v), false) => Err(bad_args(atom, &format!("`{v}` is not in its domain"))),
                (Some(_), true) => Err(bad_args(atom, "boolean fluents take no value")),
                (None, false) => Err(bad_args(atom, "categorical fluents need a value")),
            }
        }
        Statement::Not(s) => descend("not".into(), s, scope),
        Statement::And(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, s)| descend(format!("and[{i}]"), s, scope)),
        Statement::Or(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, s)| descend(format!("or[{i}]"), s, scope)),
        Statement::Implies(a, b) => {
            descend("implies.lhs".into(), a, scope)?;
            descend("implies.rhs".into(), b, scope)
        }
        Statement::Exists(var, body)
        | Statement::ForAll(var, body)
        | Statement::AtLeast(_, var, body) => {
            let kind = match stmt {
                Statement::Exists(..) => "exists",
                Statement::ForAll(..) => "forall",
                _ => "atleast",
            };
            scope.push(var.clone());
            let out = descend(format!("{kind} {var}"), body, scope);
            scope.pop();
            out
        }
        Statement::Believes(_) => Err(SemanticError::NestedBelief),
    }
}
