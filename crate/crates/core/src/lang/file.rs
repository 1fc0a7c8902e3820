//! Line-oriented puzzle and world files.
//!
//! ```text
//! persons: Ann, Beth
//! fluent lover : bool
//! fluent guilt : { accomplice, guilty, innocent }
//! axiom exists x . guilt(x, guilty)
//! labels: before round 1
//!
//! round statements "lovers"
//!   Ann: lover(me)
//!   Beth: lover(me)
//! round question "patient" to all: patient(me)
//!   answers: Ann=yes Beth=no
//!
//! extraction:
//!   category sanity: partial, delusional, sane
//!   category truthfulness: alternator, liar, truth-teller
//!   category guilt: accomplice, guilty, innocent
//!   order: alphabetical
//! ```
//!
//! A world file has a `world:` line followed by one line per person:
//! `Ann: PsAt lover=true guilt=guilty`. Type labels are read relative to
//! the puzzle's `labels:` anchor unless the world file sets its own.

use std::fmt::Write as _;

use super::ast::Statement;
use super::eval::{validate, Usage, BUILTIN_PREDICATES};
use super::parser::{parse_statement, KEYWORDS};
use crate::agent::{Answer, ExtendedType};
use crate::error::{Location, ParseError};
use crate::extraction::{
    sanity_names, truth_names, Category, CategorySource, ExtractionConfig, PersonOrder,
};
use crate::puzzle::{PuzzleSpec, Round, Utterance};
use crate::world::{Declarations, FluentDecl, FluentDomain, World};

struct Line<'a> {
    number: usize,
    /// Column of the first non-blank character.
    indent: usize,
    text: &'a str,
}

impl Line<'_> {
    fn loc(&self, offset: usize) -> Location {
        Location {
            line: self.number,
            column: self.indent + offset,
        }
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            location: self.loc(offset),
            message: message.into(),
        })
    }

    /// Parses the statement that starts at byte `offset` of the line.
    fn statement(&self, offset: usize) -> Result<(Statement, Location), ParseError> {
        let rest = &self.text[offset..];
        let skipped = rest.len() - rest.trim_start().len();
        let at = self.loc(offset + skipped);
        let stmt = parse_statement(rest.trim()).map_err(|e| e.offset(at.line, at.column))?;
        Ok((stmt, at))
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let without_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed_start = without_comment.trim_start();
        let text = trimmed_start.trim_end();
        if text.is_empty() {
            return None;
        }
        Some(Line {
            number: i + 1,
            indent: without_comment[..without_comment.len() - trimmed_start.len()]
                .chars()
                .count()
                + 1,
            text,
        })
    })
}

fn is_person_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_uppercase()) && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_lowercase() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Splits `Name: rest` lines. Returns the name and the byte offset of `rest`.
fn person_prefix(text: &str) -> Option<(&str, usize)> {
    let colon = text.find(':')?;
    let name = text[..colon].trim_end();
    is_person_name(name).then_some((name, colon + 1))
}

fn parse_labels(line: &Line<'_>, offset: usize) -> Result<usize, ParseError> {
    let rest = line.text[offset..].trim();
    if rest == "epoch" {
        return Ok(0);
    }
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["before", "round", n] => n
            .parse()
            .or_else(|_| line.error(offset, format!("bad round number `{n}`"))),
        _ => line.error(offset, "expected `epoch` or `before round N`"),
    }
}

#[derive(PartialEq)]
enum Section {
    Top,
    Statements,
    Question,
    Extraction,
}

struct RawUtterance {
    speaker: (String, Location),
    statement: Statement,
    at: Location,
}

enum RawRound {
    Statements {
        label: Option<String>,
        utterances: Vec<RawUtterance>,
    },
    Question {
        label: String,
        addressed: Option<Vec<(String, Location)>>,
        question: Statement,
        at: Location,
        answers: Option<Vec<((String, Location), Answer)>>,
    },
}

struct RawCategory {
    name: String,
    values: Vec<String>,
    at: Location,
}

pub fn parse_puzzle_file(text: &str) -> Result<PuzzleSpec, ParseError> {
    let mut persons: Option<Vec<(String, Location)>> = None;
    let mut fluents: Vec<(FluentDecl, Location)> = Vec::new();
    let mut axioms: Vec<(Statement, Location)> = Vec::new();
    let mut rounds: Vec<RawRound> = Vec::new();
    let mut categories: Vec<RawCategory> = Vec::new();
    let mut order: Option<PersonOrder> = None;
    let mut extraction_seen = false;
    let mut label_round: Option<(usize, Location)> = None;
    let mut section = Section::Top;

    for line in lines(text) {
        let t = line.text;
        let first = t
            .split(|c: char| c.is_whitespace() || c == ':')
            .next()
            .unwrap_or("");
        let keyword_colon = t[first.len()..].starts_with(':');

        match first {
            "persons" if keyword_colon => {
                if persons.is_some() {
                    return line.error(0, "`persons:` given twice");
                }
                let mut list = Vec::new();
                let mut offset = first.len() + 1;
                for part in t[offset..].split(',') {
                    let name = part.trim();
                    let at = line.loc(offset + part.len() - part.trim_start().len());
                    if !is_person_name(name) {
                        return Err(ParseError::Syntax {
                            location: at,
                            message: format!("`{name}` is not a person name (names start with an upper-case letter)"),
                        });
                    }
                    if list.iter().any(|(n, _)| n == name) {
                        return Err(ParseError::Syntax {
                            location: at,
                            message: format!("duplicate person `{name}`"),
                        });
                    }
                    list.push((name.to_string(), at));
                    offset += part.len() + 1;
                }
                persons = Some(list);
                section = Section::Top;
            }
            "fluent" => {
                let rest = &t["fluent".len()..];
                let Some(colon) = rest.find(':') else {
                    return line.error(0, "expected `fluent <name> : <domain>`");
                };
                let name = rest[..colon].trim();
                if !is_lower_ident(name)
                    || KEYWORDS.contains(&name)
                    || BUILTIN_PREDICATES.contains(&name)
                {
                    return line.error(7, format!("`{name}` cannot be used as a fluent name"));
                }
                if fluents.iter().any(|(f, _)| f.name == name) {
                    return line.error(7, format!("duplicate fluent `{name}`"));
                }
                let domain_offset = "fluent".len() + colon + 1;
                let domain = rest[colon + 1..].trim();
                let decl = if domain == "bool" {
                    FluentDecl::bool(name)
                } else if let Some(inner) =
                    domain.strip_prefix('{').and_then(|d| d.strip_suffix('}'))
                {
                    let values: Vec<String> =
                        inner.split(',').map(|v| v.trim().to_string()).collect();
                    for (i, v) in values.iter().enumerate() {
                        if !is_lower_ident(v) || KEYWORDS.contains(&v.as_str()) {
                            return line.error(domain_offset, format!("bad fluent value `{v}`"));
                        }
                        if values[..i].contains(v) {
                            return line.error(domain_offset, format!("duplicate value `{v}`"));
                        }
                    }
                    FluentDecl::enumerated(name, values)
                } else {
                    return line.error(domain_offset, "expected `bool` or `{ v1, v2, ... }`");
                };
                fluents.push((decl, line.loc(0)));
                section = Section::Top;
            }
            "axiom" => {
                let (stmt, at) = line.statement("axiom".len())?;
                axioms.push((stmt, at));
                section = Section::Top;
            }
            "labels" if keyword_colon => {
                label_round = Some((parse_labels(&line, first.len() + 1)?, line.loc(0)));
                section = Section::Top;
            }
            "round" => {
                let rest = t["round".len()..].trim_start();
                let rest_offset = t.len() - rest.len();
                if let Some(after) = rest.strip_prefix("statements") {
                    let label = after.trim();
                    let label = if label.is_empty() {
                        None
                    } else {
                        Some(
                            unquote(label)
                                .ok_or_else(|| ParseError::Syntax {
                                    location: line.loc(rest_offset + "statements".len()),
                                    message: "round label must be a quoted string".into(),
                                })?
                                .to_string(),
                        )
                    };
                    rounds.push(RawRound::Statements {
                        label,
                        utterances: Vec::new(),
                    });
                    section = Section::Statements;
                } else if let Some(after) = rest.strip_prefix("question") {
                    let base = rest_offset + "question".len();
                    let after_trim = after.trim_start();
                    let label_start = base + after.len() - after_trim.len();
                    let Some(end) = after_trim.strip_prefix('"').and_then(|s| s.find('"')) else {
                        return line.error(label_start, "expected a quoted question label");
                    };
                    let label = after_trim[1..1 + end].to_string();
                    let tail = &after_trim[end + 2..];
                    let tail_offset = label_start + end + 2;
                    let tail_trim = tail.trim_start();
                    let to_offset = tail_offset + tail.len() - tail_trim.len();
                    let Some(targets) = tail_trim.strip_prefix("to ") else {
                        return line.error(to_offset, "expected `to all` or `to <names>`");
                    };
                    let Some(colon) = targets.find(':') else {
                        return line.error(to_offset, "expected `:` before the question");
                    };
                    let targets_offset = to_offset + 3;
                    let addressed = if targets[..colon].trim() == "all" {
                        None
                    } else {
                        let mut list = Vec::new();
                        let mut off = targets_offset;
                        for part in targets[..colon].split(',') {
                            let name = part.trim();
                            let at = line.loc(off + part.len() - part.trim_start().len());
                            if !is_person_name(name) {
                                return Err(ParseError::Syntax {
                                    location: at,
                                    message: format!("`{name}` is not a person name"),
                                });
                            }
                            list.push((name.to_string(), at));
                            off += part.len() + 1;
                        }
                        Some(list)
                    };
                    let (question, at) = line.statement(targets_offset + colon + 1)?;
                    rounds.push(RawRound::Question {
                        label,
                        addressed,
                        question,
                        at,
                        answers: None,
                    });
                    section = Section::Question;
                } else {
                    return line.error(
                        rest_offset,
                        "expected `round statements` or `round question`",
                    );
                }
            }
            "answers" if keyword_colon => {
                let Some(RawRound::Question { answers, .. }) =
                    rounds.last_mut().filter(|_| section == Section::Question)
                else {
                    return line.error(0, "`answers:` must follow a question round");
                };
                let list = answers.get_or_insert_with(Vec::new);
                let mut offset = first.len() + 1;
                for word in t[offset..].split(|c: char| c.is_whitespace() || c == ',') {
                    if word.is_empty() {
                        offset += 1;
                        continue;
                    }
                    let at = line.loc(offset);
                    let Some((name, value)) = word.split_once('=') else {
                        return line
                            .error(offset, format!("expected `Name=yes|no`, found `{word}`"));
                    };
                    let answer = match value {
                        "yes" => Answer::Yes,
                        "no" => Answer::No,
                        _ => {
                            return line.error(
                                offset,
                                format!("answer must be `yes` or `no`, found `{value}`"),
                            )
                        }
                    };
                    list.push(((name.to_string(), at), answer));
                    offset += word.len() + 1;
                }
            }
            "extraction" if keyword_colon => {
                if extraction_seen {
                    return line.error(0, "`extraction:` given twice");
                }
                extraction_seen = true;
                section = Section::Extraction;
            }
            "category" if section == Section::Extraction => {
                let rest = &t["category".len()..];
                let Some(colon) = rest.find(':') else {
                    return line.error(0, "expected `category <name>: v1, v2, v3`");
                };
                categories.push(RawCategory {
                    name: rest[..colon].trim().to_string(),
                    values: rest[colon + 1..]
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .collect(),
                    at: line.loc(0),
                });
            }
            "order" if keyword_colon && section == Section::Extraction => {
                order = Some(match t[first.len() + 1..].trim() {
                    "alphabetical" => PersonOrder::Alphabetical,
                    "declaration" => PersonOrder::Declaration,
                    other => {
                        return line.error(first.len() + 1, format!("unknown order `{other}`"))
                    }
                });
            }
            _ => {
                if let (Some((name, offset)), Section::Statements) = (person_prefix(t), &section) {
                    let (statement, at) = line.statement(offset)?;
                    let Some(RawRound::Statements { utterances, .. }) = rounds.last_mut() else {
                        unreachable!("statements section always has an open round");
                    };
                    utterances.push(RawUtterance {
                        speaker: (name.to_string(), line.loc(0)),
                        statement,
                        at,
                    });
                } else {
                    return line.error(0, format!("unexpected line `{t}`"));
                }
            }
        }
    }

    let persons = persons.ok_or_else(|| ParseError::Syntax {
        location: Location { line: 1, column: 1 },
        message: "missing `persons:` line".into(),
    })?;
    let decls = Declarations::new(
        persons.iter().map(|(n, _)| n.clone()),
        fluents.into_iter().map(|(f, _)| f).collect(),
    );

    let check = |stmt: &Statement, at: Location, usage: Usage| {
        validate(&decls, stmt, usage).map_err(|(path, err)| ParseError::Semantic {
            location: at,
            path,
            message: err.to_string(),
        })
    };
    let person = |(name, at): &(String, Location)| {
        decls
            .person_index(name)
            .ok_or_else(|| ParseError::Semantic {
                location: *at,
                path: "person".into(),
                message: format!("unknown person `{name}`"),
            })
    };

    let mut puzzle = PuzzleSpec::new(decls.clone());
    for (stmt, at) in axioms {
        check(&stmt, at, Usage::Axiom)?;
        puzzle.axioms.push(stmt);
    }

    for raw in rounds {
        let round = match raw {
            RawRound::Statements { label, utterances } => {
                let mut out: Vec<Utterance> = Vec::new();
                for u in utterances {
                    let speaker = person(&u.speaker)?;
                    if out.iter().any(|o| o.speaker == speaker) {
                        return Err(ParseError::Semantic {
                            location: u.speaker.1,
                            path: "round".into(),
                            message: format!("`{}` speaks twice in one round", u.speaker.0),
                        });
                    }
                    check(&u.statement, u.at, Usage::Utterance)?;
                    out.push(Utterance {
                        speaker,
                        statement: u.statement,
                    });
                }
                Round::Statements {
                    label,
                    utterances: out,
                }
            }
            RawRound::Question {
                label,
                addressed,
                question,
                at,
                answers,
            } => {
                check(&question, at, Usage::Utterance)?;
                let addressed: Vec<usize> = match addressed {
                    None => (0..decls.person_count()).collect(),
                    Some(list) => {
                        let mut out = Vec::new();
                        for entry in &list {
                            let p = person(entry)?;
                            if out.contains(&p) {
                                return Err(ParseError::Semantic {
                                    location: entry.1,
                                    path: "round".into(),
                                    message: format!("`{}` addressed twice", entry.0),
                                });
                            }
                            out.push(p);
                        }
                        out
                    }
                };
                let answers = match answers {
                    None => None,
                    Some(list) => {
                        let mut slots: Vec<Option<Answer>> = vec![None; addressed.len()];
                        for (entry, answer) in &list {
                            let p = person(entry)?;
                            let Some(slot) = addressed.iter().position(|&a| a == p) else {
                                return Err(ParseError::Semantic {
                                    location: entry.1,
                                    path: format!("round question \"{label}\""),
                                    message: format!(
                                        "answer recorded for `{}`, who was not asked",
                                        entry.0
                                    ),
                                });
                            };
                            if slots[slot].replace(*answer).is_some() {
                                return Err(ParseError::Semantic {
                                    location: entry.1,
                                    path: format!("round question \"{label}\""),
                                    message: format!("two answers recorded for `{}`", entry.0),
                                });
                            }
                        }
                        if let Some(missing) = slots.iter().position(Option::is_none) {
                            return Err(ParseError::Semantic {
                                location: at,
                                path: format!("round question \"{label}\""),
                                message: format!(
                                    "no answer recorded for `{}`",
                                    decls.person_name(addressed[missing])
                                ),
                            });
                        }
                        Some(slots.into_iter().map(Option::unwrap).collect())
                    }
                };
                Round::Question {
                    label,
                    addressed,
                    question,
                    answers,
                }
            }
        };
        puzzle.rounds.push(round);
    }

    if let Some((round, at)) = label_round {
        if round > puzzle.rounds.len() {
            return Err(ParseError::Semantic {
                location: at,
                path: "labels".into(),
                message: format!("puzzle has only {} rounds", puzzle.rounds.len()),
            });
        }
        puzzle.label_round = round;
    }

    if extraction_seen {
        puzzle.extraction = Some(build_extraction(&decls, categories, order)?);
    }
    Ok(puzzle)
}

fn unquote(s: &str) -> Option<&str> {
    s.strip_prefix('"')?
        .strip_suffix('"')
        .filter(|inner| !inner.contains('"'))
}

fn build_extraction(
    decls: &Declarations,
    categories: Vec<RawCategory>,
    order: Option<PersonOrder>,
) -> Result<ExtractionConfig, ParseError> {
    let mut out = Vec::new();
    for raw in categories {
        let err = |message: String| ParseError::Semantic {
            location: raw.at,
            path: format!("extraction / category {}", raw.name),
            message,
        };
        if raw.values.len() != 3 {
            return Err(err(format!(
                "needs exactly 3 values, found {}",
                raw.values.len()
            )));
        }
        let (source, domain): (CategorySource, Vec<String>) = match raw.name.as_str() {
            "sanity" => (
                CategorySource::Sanity,
                sanity_names().map(String::from).to_vec(),
            ),
            "truthfulness" | "truth" => (
                CategorySource::Truth,
                truth_names().map(String::from).to_vec(),
            ),
            name => {
                let f = decls.fluent_index(name).ok_or_else(|| {
                    err(format!(
                        "`{name}` is neither a built-in category nor a fluent"
                    ))
                })?;
                match &decls.fluents()[f].domain {
                    FluentDomain::Enum(values) => (CategorySource::Fluent(f), values.clone()),
                    FluentDomain::Bool => {
                        return Err(err("boolean fluents cannot be categories".into()))
                    }
                }
            }
        };
        let values: Vec<String> = raw
            .values
            .iter()
            .map(|v| {
                if v == "truthteller" {
                    "truth-teller".to_string()
                } else {
                    v.clone()
                }
            })
            .collect();
        let mut sorted_values = values.clone();
        sorted_values.sort();
        let mut sorted_domain = domain.clone();
        sorted_domain.sort();
        if sorted_values != sorted_domain {
            return Err(err(format!(
                "values must be an ordering of {{{}}}",
                domain.join(", ")
            )));
        }
        out.push(Category {
            name: raw.name,
            source,
            values,
        });
    }
    Ok(ExtractionConfig {
        categories: out,
        order: order.unwrap_or(PersonOrder::Alphabetical),
    })
}

/// Reads a world file against a parsed puzzle. Type labels are anchored at
/// the puzzle's `labels:` round unless the file has its own `labels:` line.
pub fn parse_world_file(text: &str, puzzle: &PuzzleSpec) -> Result<World, ParseError> {
    let decls = &puzzle.decls;
    let n = decls.person_count();
    let mut anchor = puzzle.label_round;
    let mut seen_header = false;
    let mut labels: Vec<Option<ExtendedType>> = vec![None; n];
    let mut fluents: Vec<Vec<Option<u8>>> = vec![vec![None; n]; decls.fluents().len()];
    let mut last_line = 1;

    for line in lines(text) {
        last_line = line.number;
        let t = line.text;
        if t == "world:" {
            if seen_header {
                return line.error(0, "`world:` given twice");
            }
            seen_header = true;
            continue;
        }
        if !seen_header {
            return line.error(0, "expected `world:`");
        }
        if t.starts_with("labels:") {
            anchor = parse_labels(&line, "labels:".len())?;
            if anchor > puzzle.rounds.len() {
                return line.error(0, format!("puzzle has only {} rounds", puzzle.rounds.len()));
            }
            continue;
        }
        let Some((name, offset)) = person_prefix(t) else {
            return line.error(0, format!("unexpected line `{t}`"));
        };
        let Some(p) = decls.person_index(name) else {
            return line.error(0, format!("unknown person `{name}`"));
        };
        if labels[p].is_some() {
            return line.error(0, format!("`{name}` assigned twice"));
        }
        let mut pos = offset;
        let mut words = Vec::new();
        for word in t[offset..].split(' ') {
            if !word.is_empty() {
                words.push((word, pos));
            }
            pos += word.len() + 1;
        }
        let Some(&(label, label_at)) = words.first() else {
            return line.error(offset, "expected a type label");
        };
        let Some(ty) = ExtendedType::from_label(label) else {
            return line.error(label_at, format!("unknown type label `{label}`"));
        };
        labels[p] = Some(ty);
        for &(word, at) in &words[1..] {
            let Some((fname, value)) = word.split_once('=') else {
                return line.error(at, format!("expected `fluent=value`, found `{word}`"));
            };
            let Some(f) = decls.fluent_index(fname) else {
                return line.error(at, format!("unknown fluent `{fname}`"));
            };
            let Some(v) = decls.fluents()[f].value_index(value) else {
                return line.error(at, format!("`{value}` is not a value of `{fname}`"));
            };
            if fluents[f][p].replace(v).is_some() {
                return line.error(at, format!("`{fname}` assigned twice for `{name}`"));
            }
        }
    }

    let end = Location {
        line: last_line,
        column: 1,
    };
    if !seen_header {
        return Err(ParseError::Syntax {
            location: end,
            message: "missing `world:` section".into(),
        });
    }
    let missing = |what: String| ParseError::Semantic {
        location: end,
        path: "world".into(),
        message: what,
    };
    let mut types = Vec::with_capacity(n);
    for (p, label) in labels.iter().enumerate() {
        let label =
            label.ok_or_else(|| missing(format!("no line for `{}`", decls.person_name(p))))?;
        types.push(puzzle.epoch_type(p, label, anchor));
    }
    let mut rows = Vec::with_capacity(fluents.len());
    for (f, row) in fluents.iter().enumerate() {
        let mut values = Vec::with_capacity(n);
        for (p, v) in row.iter().enumerate() {
            values.push(v.ok_or_else(|| {
                missing(format!(
                    "`{}` has no value for `{}`",
                    decls.person_name(p),
                    decls.fluents()[f].name
                ))
            })?);
        }
        rows.push(values);
    }
    Ok(World::new(types, rows))
}

/// Writes `world` in world-file syntax, labels anchored like the puzzle's.
pub fn render_world_file(puzzle: &PuzzleSpec, world: &World) -> String {
    let decls = &puzzle.decls;
    let mut out = String::from("world:\n");
    if puzzle.label_round == 0 {
        out.push_str("labels: epoch\n");
    } else {
        let _ = writeln!(out, "labels: before round {}", puzzle.label_round);
    }
    for p in 0..decls.person_count() {
        let _ = write!(
            out,
            "{}: {}",
            decls.person_name(p),
            puzzle.display_type(p, world.type_of(p))
        );
        for (f, decl) in decls.fluents().iter().enumerate() {
            let _ = write!(
                out,
                " {}={}",
                decl.name,
                decl.value_name(world.fluent(f, p))
            );
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
# two people
persons: Ann, Bob
fluent lover : bool
fluent guilt : { accomplice, guilty, innocent }
axiom exists x . guilt(x, guilty)

round statements "lovers"
  Ann: lover(me)
  Bob: believes(not lover(Ann))
round question "patient" to Bob: patient(me)
  answers: Bob=no
round question "again" to all: patient(me)

extraction:
  category sanity: partial, delusional, sane
  category truthfulness: alternator, liar, truthteller
  category guilt: accomplice, guilty, innocent
  order: alphabetical
"#;

    #[test]
    fn parses_small_puzzle() {
        let p = parse_puzzle_file(SMALL).unwrap();
        assert_eq!(p.decls.person_count(), 2);
        assert_eq!(p.decls.fluents().len(), 2);
        assert_eq!(p.axioms.len(), 1);
        assert_eq!(p.rounds.len(), 3);
        match &p.rounds[1] {
            Round::Question {
                addressed, answers, ..
            } => {
                assert_eq!(addressed, &vec![1]);
                assert_eq!(answers.as_deref(), Some(&[Answer::No][..]));
            }
            other => panic!("{other:?}"),
        }
        assert!(
            matches!(&p.rounds[2], Round::Question { answers: None, addressed, .. } if addressed.len() == 2)
        );
        let ex = p.extraction.clone().unwrap();
        assert_eq!(ex.categories[1].values[2], "truth-teller");
        assert_eq!(p.utterances_before(3, 1), 3);
        assert_eq!(p.utterances_before(2, 0), 1);
    }

    #[test]
    fn minimal_file() {
        let p = parse_puzzle_file("persons: Solo\n").unwrap();
        assert_eq!(p.decls.person_count(), 1);
        assert!(p.rounds.is_empty() && p.axioms.is_empty() && p.extraction.is_none());
    }

    fn err(text: &str) -> ParseError {
        parse_puzzle_file(text).expect_err(text)
    }

    #[test]
    fn rejects_answer_for_unaddressed_person() {
        let e = err("persons: Ann, Bob\nround question \"q\" to Ann: patient(me)\nanswers: Ann=yes Bob=no\n");
        assert!(matches!(e, ParseError::Semantic { .. }), "{e}");
        assert_eq!(e.location().line, 3);
    }

    #[test]
    fn rejects_bad_files() {
        err("persons: Ann, Ann\n");
        err("persons: Ann\nfluent f : bool\nfluent f : bool\n");
        err("persons: Ann\nfluent patient : bool\n");
        err("persons: Ann\naxiom lover(Ann)\n");
        err("persons: Ann\naxiom patient(me)\n");
        err("persons: Ann\naxiom believes(patient(Ann))\n");
        err("persons: Ann\nround statements\n  Bob: patient(me)\n");
        err("persons: Ann\nround statements\n  Ann: patient(me)\n  Ann: patient(me)\n");
        err("persons: Ann\nround question \"q\" to all: patient(me)\nanswers: Ann=maybe\n");
        err("persons: Ann, Bob\nround question \"q\" to all: patient(me)\nanswers: Ann=yes\n");
        err("persons: Ann\nanswers: Ann=yes\n");
        err("persons: Ann\nlabels: before round 2\n");
        err("persons: Ann\nextraction:\n  category sanity: sane, delusional\n");
        err("persons: Ann\nextraction:\n  category sanity: sane, delusional, crazy\n");
        err("persons: Ann\nwhatever\n");
        err("fluent f : bool\n");
    }

    #[test]
    fn statement_errors_point_into_the_file() {
        let e = err("persons: Ann\n\naxiom   exists x . p(x) and\n");
        assert_eq!(e.location().line, 3);
        let e = err("persons: Ann\naxiom lover(Ann) $\n");
        assert_eq!(
            e.location(),
            Location {
                line: 2,
                column: 18
            }
        );
    }

    #[test]
    fn world_roundtrip_with_anchor() {
        let mut text = SMALL.to_string();
        text.push_str("labels: before round 1\n");
        let p = parse_puzzle_file(&text).unwrap();
        assert_eq!(p.label_round, 1);
        let w = parse_world_file(
            "world:\nAnn: PsAt lover=true guilt=guilty\nBob: SAl lover=false guilt=innocent\n",
            &p,
        )
        .unwrap();
        // Ann spoke once before round 1, so her epoch label is one step back.
        assert_eq!(w.type_of(0).label(), "PiAl");
        assert_eq!(w.type_of(1).label(), "SAt");
        let again = parse_world_file(&render_world_file(&p, &w), &p).unwrap();
        assert_eq!(again, w);

        let epoch = parse_world_file(
            "world:\nlabels: epoch\nAnn: PiAl lover=true guilt=guilty\nBob: SAt lover=false guilt=innocent\n",
            &p,
        )
        .unwrap();
        assert_eq!(epoch, w);
    }

    #[test]
    fn world_errors() {
        let p = parse_puzzle_file(SMALL).unwrap();
        for bad in [
            "Ann: ST lover=true guilt=guilty\n",
            "world:\nAnn: ST lover=true guilt=guilty\n",
            "world:\nAnn: XX lover=true guilt=guilty\nBob: ST lover=true guilt=guilty\n",
            "world:\nAnn: ST lover=yes guilt=guilty\nBob: ST lover=true guilt=guilty\n",
            "world:\nAnn: ST lover=true\nBob: ST lover=true guilt=guilty\n",
            "world:\nAnn: ST lover=true guilt=guilty\nZed: ST\n",
        ] {
            assert!(parse_world_file(bad, &p).is_err(), "{bad}");
        }
    }
}
