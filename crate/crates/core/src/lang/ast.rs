use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A declared person, written with an upper-case initial.
    Person(String),
    /// A quantifier-bound variable, written with a lower-case initial.
    Var(String),
    /// The speaker of the enclosing utterance.
    Me,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub subject: Term,
    /// Present only for categorical fluents: `guilt(x, guilty)`.
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    Atom(Atom),
    Not(Box<Statement>),
    And(Vec<Statement>),
    Or(Vec<Statement>),
    Implies(Box<Statement>, Box<Statement>),
    Exists(String, Box<Statement>),
    ForAll(String, Box<Statement>),
    AtLeast(u32, String, Box<Statement>),
    Believes(Box<Statement>),
}

impl Statement {
    pub fn atom(predicate: impl Into<String>, subject: Term) -> Self {
        Statement::Atom(Atom {
            predicate: predicate.into(),
            subject,
            value: None,
        })
    }

    pub fn valued(predicate: impl Into<String>, subject: Term, value: impl Into<String>) -> Self {
        Statement::Atom(Atom {
            predicate: predicate.into(),
            subject,
            value: Some(value.into()),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Statement) -> Self {
        Statement::Not(Box::new(inner))
    }

    pub fn believes(inner: Statement) -> Self {
        Statement::Believes(Box::new(inner))
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(
            self,
            Statement::Exists(..) | Statement::ForAll(..) | Statement::AtLeast(..)
        )
    }

    /// Peels every outermost `believes`, so `believes(believes(s))` is read
    /// as `believes(s)`. Returns whether any belief wrapper was present.
    pub fn split_belief(&self) -> (bool, &Statement) {
        let mut current = self;
        let mut believed = false;
        while let Statement::Believes(inner) = current {
            believed = true;
            current = inner;
        }
        (believed, current)
    }

    pub fn contains_belief(&self) -> bool {
        self.any_node(&mut |s| matches!(s, Statement::Believes(_)))
    }

    pub fn mentions_me(&self) -> bool {
        self.any_node(&mut |s| {
            matches!(
                s,
                Statement::Atom(Atom {
                    subject: Term::Me,
                    ..
                })
            )
        })
    }

    fn any_node(&self, pred: &mut impl FnMut(&Statement) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Statement::Atom(_) => false,
            Statement::Not(s)
            | Statement::Believes(s)
            | Statement::Exists(_, s)
            | Statement::ForAll(_, s)
            | Statement::AtLeast(_, _, s) => s.any_node(pred),
            Statement::And(items) | Statement::Or(items) => items.iter().any(|s| s.any_node(pred)),
            Statement::Implies(a, b) => a.any_node(pred) || b.any_node(pred),
        }
    }

    /// Replaces `me` with the named person.
    pub fn with_speaker(&self, name: &str) -> Statement {
        self.map_atoms(&|atom| {
            let mut atom = atom.clone();
            if atom.subject == Term::Me {
                atom.subject = Term::Person(name.to_string());
            }
            Statement::Atom(atom)
        })
    }

    fn map_atoms(&self, f: &impl Fn(&Atom) -> Statement) -> Statement {
        let boxed = |s: &Statement| Box::new(s.map_atoms(f));
        match self {
            Statement::Atom(a) => f(a),
            Statement::Not(s) => Statement::Not(boxed(s)),
            Statement::Believes(s) => Statement::Believes(boxed(s)),
            Statement::And(items) => Statement::And(items.iter().map(|s| s.map_atoms(f)).collect()),
            Statement::Or(items) => Statement::Or(items.iter().map(|s| s.map_atoms(f)).collect()),
            Statement::Implies(a, b) => Statement::Implies(boxed(a), boxed(b)),
            Statement::Exists(v, s) => Statement::Exists(v.clone(), boxed(s)),
            Statement::ForAll(v, s) => Statement::ForAll(v.clone(), boxed(s)),
            Statement::AtLeast(k, v, s) => Statement::AtLeast(*k, v.clone(), boxed(s)),
        }
    }

    /// Logical negation that cancels a leading `not` instead of stacking one.
    pub fn negated(&self) -> Statement {
        match self {
            Statement::Not(inner) => (**inner).clone(),
            other => Statement::not(other.clone()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Person(name) | Term::Var(name) => f.write_str(name),
            Term::Me => f.write_str("me"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(value) => write!(f, "{}({}, {})", self.predicate, self.subject, value),
            None => write!(f, "{}({})", self.predicate, self.subject),
        }
    }
}

/// Canonical rendering. Operands are parenthesized whenever re-parsing
/// would otherwise regroup them; quantifiers used as operands are always
/// parenthesized because their bodies extend to the right.
impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, s: &Statement, wrap: bool) -> fmt::Result {
            if wrap || s.is_quantifier() {
                write!(f, "({s})")
            } else {
                write!(f, "{s}")
            }
        }
        fn join(
            f: &mut fmt::Formatter<'_>,
            items: &[Statement],
            op: &str,
            wrap: impl Fn(&Statement) -> bool,
        ) -> fmt::Result {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                operand(f, item, wrap(item))?;
            }
            Ok(())
        }

        match self {
            Statement::Atom(atom) => write!(f, "{atom}"),
            Statement::Not(inner) => {
                f.write_str("not ")?;
                let wrap = matches!(
                    **inner,
                    Statement::And(_) | Statement::Or(_) | Statement::Implies(..)
                );
                operand(f, inner, wrap)
            }
            Statement::And(items) => join(f, items, "and", |s| {
                matches!(
                    s,
                    Statement::And(_) | Statement::Or(_) | Statement::Implies(..)
                )
            }),
            Statement::Or(items) => join(f, items, "or", |s| {
                matches!(s, Statement::Or(_) | Statement::Implies(..))
            }),
            Statement::Implies(lhs, rhs) => {
                operand(f, lhs, matches!(**lhs, Statement::Implies(..)))?;
                f.write_str(" implies ")?;
                operand(f, rhs, false)
            }
            Statement::Exists(var, body) => write!(f, "exists {var} . {body}"),
            Statement::ForAll(var, body) => write!(f, "forall {var} . {body}"),
            Statement::AtLeast(k, var, body) => write!(f, "atleast {k} {var} . {body}"),
            Statement::Believes(inner) => write!(f, "believes({inner})"),
        }
    }
}
