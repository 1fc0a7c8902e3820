//! The statement language and the puzzle/world file formats built on it.

mod ast;
mod eval;
mod file;
mod lexer;
mod parser;

pub use ast::{Atom, Statement, Term};
pub use eval::{eval_closed, validate, Usage, BUILTIN_PREDICATES};
pub use file::{parse_puzzle_file, parse_world_file, render_world_file};
pub use parser::parse_statement;

/// Canonical text of a statement; `parse_statement(&render_statement(s)) == s`.
pub fn render_statement(stmt: &Statement) -> String {
    stmt.to_string()
}
