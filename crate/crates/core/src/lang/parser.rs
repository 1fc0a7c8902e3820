//! Recursive-descent parser for the statement language.
//!
//! ```text
//! stmt := 'believes' '(' stmt ')' | body
//! body := 'not' body | body 'and' body | body 'or' body | body 'implies' body
//!       | ('exists'|'forall') IDENT '.' body | 'atleast' NAT IDENT '.' body
//!       | PRED '(' term (',' VALUE)? ')' | '(' body ')'
//! term := PERSON | VAR | 'me'
//! ```
//!
//! Precedence is `not` > `and` > `or` > `implies`; `implies` associates to
//! the right and quantifier bodies extend as far right as possible.
//! Person names start with an upper-case letter, variables with a
//! lower-case one.

use super::ast::{Atom, Statement, Term};
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Location, ParseError};

pub(crate) const KEYWORDS: &[&str] = &[
    "not", "and", "or", "implies", "exists", "forall", "atleast", "believes", "me",
];

pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        scope: Vec::new(),
        path: Vec::new(),
    };
    let stmt = parser.statement()?;
    parser.expect_eof()?;
    Ok(stmt)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
    path: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn at(&self) -> Location {
        self.tokens[self.pos].at
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            location: self.at(),
            message: message.into(),
        })
    }

    fn semantic<T>(&self, location: Location, message: impl Into<String>) -> Result<T, ParseError> {
        let path = if self.path.is_empty() {
            "statement".to_string()
        } else {
            self.path.join(" / ")
        };
        Err(ParseError::Semantic {
            location,
            path,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.syntax(format!(
                "expected end of input, found {}",
                self.peek().describe()
            ))
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        if self.peek_keyword("believes") {
            self.bump();
            self.expect(Tok::LParen)?;
            self.path.push("believes".into());
            let inner = self.statement()?;
            self.path.pop();
            self.expect(Tok::RParen)?;
            Ok(Statement::believes(inner))
        } else {
            self.body()
        }
    }

    fn body(&mut self) -> Result<Statement, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek_keyword("implies") {
            self.bump();
            let rhs = self.body()?;
            Ok(Statement::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Statement, ParseError> {
        let mut items = vec![self.conjunction()?];
        while self.peek_keyword("or") {
            self.bump();
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Statement::Or(items)
        })
    }

    fn conjunction(&mut self) -> Result<Statement, ParseError> {
        let mut items = vec![self.unary()?];
        while self.peek_keyword("and") {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Statement::And(items)
        })
    }

    fn unary(&mut self) -> Result<Statement, ParseError> {
        let at = self.at();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.body()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(word) => match word.as_str() {
                "not" => {
                    self.bump();
                    self.path.push("not".into());
                    let inner = self.unary()?;
                    self.path.pop();
                    Ok(Statement::not(inner))
                }
                "exists" | "forall" => {
                    self.bump();
                    let var = self.binder()?;
                    self.expect(Tok::Dot)?;
                    let body = self.scoped(&word, &var, |p| p.body())?;
                    Ok(if word == "exists" {
                        Statement::Exists(var, Box::new(body))
                    } else {
                        Statement::ForAll(var, Box::new(body))
                    })
                }
                "atleast" => {
                    self.bump();
                    let k = match self.peek() {
                        Tok::Nat(k) => *k,
                        other => {
                            return self.syntax(format!(
                                "expected a count after `atleast`, found {}",
                                other.describe()
                            ))
                        }
                    };
                    self.bump();
                    let var = self.binder()?;
                    self.expect(Tok::Dot)?;
                    let body = self.scoped("atleast", &var, |p| p.body())?;
                    Ok(Statement::AtLeast(k, var, Box::new(body)))
                }
                "believes" => self.semantic(
                    at,
                    "`believes` may only appear as the outermost node of an utterance",
                ),
                w if KEYWORDS.contains(&w) => self.syntax(format!("unexpected keyword `{w}`")),
                _ => self.atom(),
            },
            other => self.syntax(format!("expected a statement, found {}", other.describe())),
        }
    }

    fn scoped<T>(
        &mut self,
        kind: &str,
        var: &str,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.scope.push(var.to_string());
        self.path.push(format!("{kind} {var}"));
        let out = f(self);
        self.path.pop();
        self.scope.pop();
        out
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) && starts_lowercase(&name) => {
                self.bump();
                Ok(name)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => self.syntax(format!(
                "variable `{name}` must start with a lower-case letter"
            )),
            other => self.syntax(format!("expected a variable, found {}", other.describe())),
        }
    }

    fn atom(&mut self) -> Result<Statement, ParseError> {
        let predicate = match self.bump().tok {
            Tok::Ident(name) => name,
            _ => unreachable!("atom() is only entered on an identifier"),
        };
        self.expect(Tok::LParen)?;
        let at = self.at();
        let subject = match self.peek().clone() {
            Tok::Ident(name) if name == "me" => Term::Me,
            Tok::Ident(name) if KEYWORDS.contains(&name.as_str()) => {
                return self.syntax(format!("unexpected keyword `{name}` in argument position"))
            }
            Tok::Ident(name) if starts_lowercase(&name) => {
                if !self.scope.contains(&name) {
                    self.path.push(format!("atom {predicate}"));
                    let err = self.semantic(at, format!("unbound variable `{name}`"));
                    self.path.pop();
                    return err;
                }
                Term::Var(name)
            }
            Tok::Ident(name) => Term::Person(name),
            other => {
                return self.syntax(format!(
                    "expected a person or variable, found {}",
                    other.describe()
                ))
            }
        };
        self.bump();
        let value = if *self.peek() == Tok::Comma {
            self.bump();
            match self.bump().tok {
                Tok::Ident(v) if !KEYWORDS.contains(&v.as_str()) => Some(v),
                other => {
                    self.pos -= 1;
                    return self.syntax(format!("expected a value, found {}", other.describe()));
                }
            }
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        Ok(Statement::Atom(Atom {
            predicate,
            subject,
            value,
        }))
    }
}

fn starts_lowercase(s: &str) -> bool {
    s.chars()
        .next()
        .is_some_and(|c| c.is_lowercase() || c == '_')
}
