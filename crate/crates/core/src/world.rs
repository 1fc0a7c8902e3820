//! Puzzle declarations and complete world assignments.

use crate::agent::ExtendedType;
use crate::error::SolveError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PersonId {
    pub index: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FluentDomain {
    Bool,
    Enum(Vec<String>),
}

/// A per-person attribute declared by a puzzle, e.g. `lover : bool` or
/// `guilt : { accomplice, guilty, innocent }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluentDecl {
    pub name: String,
    pub domain: FluentDomain,
}

impl FluentDecl {
    pub fn bool(name: impl Into<String>) -> Self {
        FluentDecl {
            name: name.into(),
            domain: FluentDomain::Bool,
        }
    }

    pub fn enumerated<S: Into<String>>(
        name: impl Into<String>,
        values: impl IntoIterator<Item = S>,
    ) -> Self {
        FluentDecl {
            name: name.into(),
            domain: FluentDomain::Enum(values.into_iter().map(Into::into).collect()),
        }
    }

    pub fn is_bool(&self) -> bool {
        matches!(self.domain, FluentDomain::Bool)
    }

    /// Number of values in the domain. Booleans are `[false, true]`.
    pub fn arity(&self) -> usize {
        match &self.domain {
            FluentDomain::Bool => 2,
            FluentDomain::Enum(values) => values.len(),
        }
    }

    pub fn value_name(&self, index: u8) -> &str {
        match &self.domain {
            FluentDomain::Bool => {
                if index == 0 {
                    "false"
                } else {
                    "true"
                }
            }
            FluentDomain::Enum(values) => &values[index as usize],
        }
    }

    pub fn value_index(&self, name: &str) -> Option<u8> {
        match &self.domain {
            FluentDomain::Bool => match name {
                "false" => Some(0),
                "true" => Some(1),
                _ => None,
            },
            FluentDomain::Enum(values) => values.iter().position(|v| v == name).map(|i| i as u8),
        }
    }
}

/// Persons and fluents of one puzzle; the universe statements range over.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    persons: Vec<PersonId>,
    fluents: Vec<FluentDecl>,
}

impl Declarations {
    /// Panics on duplicate names; the puzzle parser reports those as
    /// located errors before getting here.
    pub fn new<S: Into<String>>(
        persons: impl IntoIterator<Item = S>,
        fluents: Vec<FluentDecl>,
    ) -> Self {
        let persons: Vec<PersonId> = persons
            .into_iter()
            .enumerate()
            .map(|(index, name)| PersonId {
                index,
                name: name.into(),
            })
            .collect();
        for (i, p) in persons.iter().enumerate() {
            assert!(
                persons[..i].iter().all(|q| q.name != p.name),
                "duplicate person `{}`",
                p.name
            );
        }
        for (i, f) in fluents.iter().enumerate() {
            assert!(
                fluents[..i].iter().all(|g| g.name != f.name),
                "duplicate fluent `{}`",
                f.name
            );
        }
        Declarations { persons, fluents }
    }

    pub fn persons(&self) -> &[PersonId] {
        &self.persons
    }

    pub fn fluents(&self) -> &[FluentDecl] {
        &self.fluents
    }

    pub fn person_count(&self) -> usize {
        self.persons.len()
    }

    pub fn person_index(&self, name: &str) -> Option<usize> {
        self.persons.iter().position(|p| p.name == name)
    }

    pub fn person_name(&self, index: usize) -> &str {
        &self.persons[index].name
    }

    pub fn fluent_index(&self, name: &str) -> Option<usize> {
        self.fluents.iter().position(|f| f.name == name)
    }
}

/// A complete assignment: one extended type per person (anchored at the
/// epoch) and one domain value per person for every fluent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    types: Vec<ExtendedType>,
    /// `fluents[f][p]` is the value index of fluent `f` for person `p`.
    fluents: Vec<Vec<u8>>,
}

impl World {
    pub fn new(types: Vec<ExtendedType>, fluents: Vec<Vec<u8>>) -> Self {
        World { types, fluents }
    }

    /// A world with the given types and every fluent at its first domain value.
    pub fn with_types(decls: &Declarations, types: Vec<ExtendedType>) -> Self {
        let n = decls.person_count();
        World {
            types,
            fluents: vec![vec![0; n]; decls.fluents().len()],
        }
    }

    pub fn types(&self) -> &[ExtendedType] {
        &self.types
    }

    pub fn type_of(&self, person: usize) -> ExtendedType {
        self.types[person]
    }

    pub fn set_type(&mut self, person: usize, ty: ExtendedType) {
        self.types[person] = ty;
    }

    pub fn fluent(&self, fluent: usize, person: usize) -> u8 {
        self.fluents[fluent][person]
    }

    pub fn set_fluent(&mut self, fluent: usize, person: usize, value: u8) {
        self.fluents[fluent][person] = value;
    }

    pub fn fluent_rows(&self) -> &[Vec<u8>] {
        &self.fluents
    }

    /// Canonical sort key: types by person index, then fluent values in
    /// declaration order.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.types
            .iter()
            .map(|t| t.index() as u8)
            .chain(self.fluents.iter().flatten().copied())
            .collect()
    }

    pub fn check_shape(&self, decls: &Declarations) -> Result<(), SolveError> {
        let n = decls.person_count();
        if self.types.len() != n {
            return Err(SolveError::DeclarationMismatch(format!(
                "{} types for {} persons",
                self.types.len(),
                n
            )));
        }
        if self.fluents.len() != decls.fluents().len() {
            return Err(SolveError::DeclarationMismatch(format!(
                "{} fluent rows for {} declared fluents",
                self.fluents.len(),
                decls.fluents().len()
            )));
        }
        for (row, decl) in self.fluents.iter().zip(decls.fluents()) {
            if row.len() != n {
                return Err(SolveError::DeclarationMismatch(format!(
                    "fluent `{}` has {} values for {} persons",
                    decl.name,
                    row.len(),
                    n
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v as usize >= decl.arity()) {
                return Err(SolveError::DeclarationMismatch(format!(
                    "fluent `{}` value index {} outside its domain",
                    decl.name, v
                )));
            }
        }
        Ok(())
    }
}
