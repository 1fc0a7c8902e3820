//! The `asylum` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::agent::ExtendedType;
use crate::discrimination::{
    answer_signature, belief_question, partition_types, patient_question, render_tables,
};
use crate::error::{ExtractionError, SolveError};
use crate::extraction::extract_rows;
use crate::lang::{parse_puzzle_file, parse_world_file};
use crate::output::{self, CheckDoc, ExplanationDoc, ExtractionDoc, SolveDoc};
use crate::puzzle::PuzzleSpec;
use crate::solver::{
    check_world, explain_solution, simulate_transcript, solve_all, Budget, SolveOptions,
    SolveResult, SolveStatus, TranscriptEntry,
};
use crate::world::World;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_WORLD: i32 = 10;
pub const EXIT_NOT_UNIQUE: i32 = 11;
pub const EXIT_BUDGET: i32 = 12;
pub const EXIT_VIOLATION: i32 = 13;
pub const EXIT_EXTRACTION: i32 = 14;

#[derive(Debug, Parser)]
#[command(
    name = "asylum",
    version,
    about = "Solve and check truth-teller/liar/alternator asylum puzzles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate every world consistent with a puzzle.
    Solve {
        puzzle: PathBuf,
        /// Decode every utterance of the unique solution.
        #[arg(long)]
        explain: bool,
        /// Print the extraction table and answer word.
        #[arg(long)]
        extract: bool,
        /// Exit 11 unless exactly one world is consistent.
        #[arg(long)]
        expect_unique: bool,
        #[arg(long, value_name = "N")]
        budget_nodes: Option<u64>,
        #[arg(long, value_name = "S")]
        budget_seconds: Option<f64>,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Replay a puzzle against one world and report the first violation.
    Check {
        puzzle: PathBuf,
        world: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the answer-signature tables.
    Tables {
        #[command(flatten)]
        common: Common,
    },
    /// Print the transcript a world's population would produce.
    Simulate {
        puzzle: PathBuf,
        world: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut ctx = Ctx { out, err };
    match cli.command {
        Command::Solve {
            puzzle,
            explain,
            extract,
            expect_unique,
            budget_nodes,
            budget_seconds,
            threads,
            common,
        } => {
            let mut budget = Budget::default();
            if let Some(n) = budget_nodes {
                budget.max_nodes = n;
            }
            if let Some(s) = budget_seconds {
                match Duration::try_from_secs_f64(s) {
                    Ok(d) => budget.max_time = d,
                    Err(_) => {
                        return ctx.fail(EXIT_USAGE, &format!("invalid --budget-seconds {s}"))
                    }
                }
            }
            let flags = SolveFlags {
                explain,
                extract,
                expect_unique,
                options: SolveOptions { budget, threads },
                format: common.format,
            };
            ctx.solve(&puzzle, &flags)
        }
        Command::Check {
            puzzle,
            world,
            common,
        } => ctx.check(&puzzle, &world, common.format),
        Command::Tables { common } => ctx.tables(common.format),
        Command::Simulate {
            puzzle,
            world,
            common,
        } => ctx.simulate(&puzzle, &world, common.format),
    }
}

struct SolveFlags {
    explain: bool,
    extract: bool,
    expect_unique: bool,
    options: SolveOptions,
    format: Format,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn fail(&mut self, code: i32, message: &str) -> i32 {
        let _ = writeln!(self.err, "error: {message}");
        code
    }

    fn load_puzzle(&mut self, path: &Path) -> Result<(Vec<u8>, PuzzleSpec), i32> {
        let bytes = std::fs::read(path)
            .map_err(|e| self.fail(EXIT_USAGE, &format!("{}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes)
            .map_err(|e| self.fail(EXIT_USAGE, &format!("{}: not UTF-8: {e}", path.display())))?;
        let puzzle = parse_puzzle_file(text)
            .map_err(|e| self.fail(EXIT_USAGE, &format!("{}: {e}", path.display())))?;
        Ok((bytes, puzzle))
    }

    fn load_world(&mut self, path: &Path, puzzle: &PuzzleSpec) -> Result<World, i32> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| self.fail(EXIT_USAGE, &format!("{}: {e}", path.display())))?;
        parse_world_file(&text, puzzle)
            .map_err(|e| self.fail(EXIT_USAGE, &format!("{}: {e}", path.display())))
    }

    fn emit_json(&mut self, doc: &impl Serialize) {
        let text = serde_json::to_string_pretty(doc).expect("documents serialize");
        let _ = writeln!(self.out, "{text}");
    }

    fn solve(&mut self, path: &Path, flags: &SolveFlags) -> i32 {
        let (bytes, puzzle) = match self.load_puzzle(path) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let result = match solve_all(&puzzle, flags.options) {
            Ok(r) => r,
            Err(e @ SolveError::BudgetExceeded { .. }) => {
                return self.fail(EXIT_BUDGET, &e.to_string())
            }
            Err(e) => return self.fail(EXIT_USAGE, &e.to_string()),
        };
        let _ = writeln!(
            self.err,
            "searched {} nodes in {:.3} s",
            result.stats.nodes,
            result.stats.elapsed.as_secs_f64()
        );

        let mut code = match result.status {
            SolveStatus::None => EXIT_NO_WORLD,
            SolveStatus::Multiple if flags.expect_unique => EXIT_NOT_UNIQUE,
            _ => EXIT_OK,
        };

        let explanation = if flags.explain {
            if result.status == SolveStatus::Unique {
                match explain_solution(&puzzle, &result.worlds[0]) {
                    Ok(e) => Some(e),
                    Err(e) => return self.fail(EXIT_USAGE, &e.to_string()),
                }
            } else {
                let _ = writeln!(self.err, "note: --explain needs a unique solution");
                None
            }
        } else {
            None
        };

        let extraction = if flags.extract {
            match extraction_rows(&puzzle, &result) {
                Ok(rows) => Some(rows),
                Err(e) => {
                    let _ = writeln!(self.err, "error: extraction: {e}");
                    if code == EXIT_OK {
                        code = EXIT_EXTRACTION;
                    }
                    None
                }
            }
        } else {
            None
        };

        match flags.format {
            Format::Structured => {
                let mut doc = SolveDoc::new(output::digest(&bytes), &puzzle, &result);
                doc.explanation = explanation.as_ref().map(|list| {
                    list.iter()
                        .map(|e| ExplanationDoc::new(&puzzle, e))
                        .collect()
                });
                doc.extraction = extraction.as_deref().map(ExtractionDoc::new);
                self.emit_json(&doc);
            }
            Format::Text => {
                let _ = write!(self.out, "{}", solve_text(&puzzle, &result));
                if let Some(list) = &explanation {
                    let _ = writeln!(self.out, "explanation:");
                    for e in list {
                        let doc = ExplanationDoc::new(&puzzle, e);
                        let said = match &doc.answer {
                            Some(a) => format!("answered {a} to `{}`", doc.utterance),
                            None => format!("said `{}`", doc.utterance),
                        };
                        let _ = writeln!(
                            self.out,
                            "  round {} {} ({}): {} => {}",
                            doc.round, doc.person, doc.phases, said, doc.decoded
                        );
                    }
                }
                if let Some(rows) = &extraction {
                    let _ = writeln!(self.out, "extraction:");
                    for r in rows {
                        let _ = writeln!(
                            self.out,
                            "  {:<10}{:<36}{}  {:>2}  {}",
                            r.person,
                            r.values.join(", "),
                            r.digits,
                            r.value,
                            r.letter
                        );
                    }
                    let word: String = rows.iter().map(|r| r.letter).collect();
                    let _ = writeln!(self.out, "{word}");
                }
            }
        }
        code
    }

    fn check(&mut self, puzzle_path: &Path, world_path: &Path, format: Format) -> i32 {
        let (bytes, puzzle) = match self.load_puzzle(puzzle_path) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let world = match self.load_world(world_path, &puzzle) {
            Ok(w) => w,
            Err(code) => return code,
        };
        let report = match check_world(&puzzle, &world) {
            Ok(r) => r,
            Err(e) => return self.fail(EXIT_USAGE, &e.to_string()),
        };
        match format {
            Format::Structured => self.emit_json(&CheckDoc::new(output::digest(&bytes), &report)),
            Format::Text => {
                match &report.violation {
                    None => writeln!(self.out, "consistent"),
                    Some(v) => writeln!(self.out, "violation: {v}"),
                }
                .ok();
            }
        }
        if report.consistent() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }

    fn tables(&mut self, format: Format) -> i32 {
        match format {
            Format::Text => {
                let _ = write!(self.out, "{}", render_tables());
            }
            Format::Structured => self.emit_json(&tables_doc()),
        }
        EXIT_OK
    }

    fn simulate(&mut self, puzzle_path: &Path, world_path: &Path, format: Format) -> i32 {
        let (_, puzzle) = match self.load_puzzle(puzzle_path) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let world = match self.load_world(world_path, &puzzle) {
            Ok(w) => w,
            Err(code) => return code,
        };
        let rounds = match simulate_transcript(&puzzle, &world) {
            Ok(r) => r,
            Err(e) => return self.fail(EXIT_USAGE, &e.to_string()),
        };
        match format {
            Format::Structured => self.emit_json(&output::transcript_doc(&puzzle, &rounds)),
            Format::Text => {
                let name = |p: usize| puzzle.decls.person_name(p);
                let mut answers: Vec<String> = vec![String::new(); puzzle.decls.person_count()];
                for r in &rounds {
                    let _ = match &r.label {
                        Some(l) => writeln!(self.out, "round {} \"{l}\"", r.round),
                        None => writeln!(self.out, "round {}", r.round),
                    };
                    for e in &r.entries {
                        match e {
                            TranscriptEntry::Answer {
                                person,
                                answer,
                                recorded,
                            } => {
                                answers[*person].push(answer.letter());
                                let note = match recorded {
                                    Some(rec) if rec != answer => {
                                        format!("  (recorded {})", rec.word())
                                    }
                                    _ => String::new(),
                                };
                                let _ = writeln!(
                                    self.out,
                                    "  {}: {}{note}",
                                    name(*person),
                                    answer.word()
                                );
                            }
                            TranscriptEntry::Statement {
                                person,
                                statement,
                                consistent,
                            } => {
                                let mark = if *consistent { "ok" } else { "impossible" };
                                let _ = writeln!(
                                    self.out,
                                    "  {}: {statement}  [{mark}]",
                                    name(*person)
                                );
                            }
                        }
                    }
                }
                if answers.iter().any(|a| !a.is_empty()) {
                    let _ = writeln!(self.out, "answers:");
                    for (p, a) in answers.iter().enumerate() {
                        let _ = writeln!(self.out, "  {}: {a}", name(p));
                    }
                }
            }
        }
        EXIT_OK
    }
}

fn extraction_rows(
    puzzle: &PuzzleSpec,
    result: &SolveResult,
) -> Result<Vec<crate::extraction::ExtractedRow>, ExtractionError> {
    let config = puzzle
        .extraction
        .as_ref()
        .ok_or(ExtractionError::NotConfigured)?;
    if result.status != SolveStatus::Unique {
        return Err(ExtractionError::NotUnique(result.worlds.len()));
    }
    extract_rows(puzzle, &result.worlds[0], config)
}

/// Text form of a solve result, without timing so that it is reproducible.
pub fn solve_text(puzzle: &PuzzleSpec, result: &SolveResult) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let count = result.worlds.len();
    let _ = writeln!(
        s,
        "status: {} ({count} world{})",
        result.status.name(),
        if count == 1 { "" } else { "s" }
    );
    let _ = writeln!(s, "labels: {}", output::labels_name(puzzle));
    let width = puzzle
        .decls
        .persons()
        .iter()
        .map(|p| p.name.len())
        .max()
        .unwrap_or(0)
        + 1;
    for (i, world) in result.worlds.iter().enumerate() {
        let _ = writeln!(s, "world {}:", i + 1);
        for p in 0..puzzle.decls.person_count() {
            let name = format!("{}:", puzzle.decls.person_name(p));
            let _ = write!(
                s,
                "  {name:<width$} {:<5}",
                puzzle.display_type(p, world.type_of(p)).label(),
                width = width
            );
            for (f, d) in puzzle.decls.fluents().iter().enumerate() {
                let _ = write!(s, " {}={}", d.name, d.value_name(world.fluent(f, p)));
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
        }
    }
    if let Some(report) = &result.report {
        let _ = writeln!(s, "report:");
        for row in report {
            let _ = writeln!(s, "  {}: {}", row.person, row.values.join(", "));
        }
    }
    let _ = writeln!(s, "nodes: {}", result.stats.nodes);
    s
}

#[derive(Serialize)]
struct TablesDoc {
    non_switching: Vec<(String, String)>,
    all_types: Vec<(String, String)>,
    pairs: Vec<PairRow>,
}

#[derive(Serialize)]
struct PairRow {
    signature: String,
    types: Vec<String>,
    epoch_types: Vec<String>,
}

fn tables_doc() -> TablesDoc {
    let (q, b) = (patient_question(), belief_question());
    let sig = |t: ExtendedType, qs: &[_], off| answer_signature(t, qs, off).unwrap().to_string();
    let non_switching = ["ST", "SL", "DT", "DL"]
        .iter()
        .map(|l| {
            let t = ExtendedType::from_label(l).unwrap();
            (l.to_string(), sig(t, &[q.clone(), b.clone()], 0))
        })
        .collect();
    let qqbb = [q.clone(), q.clone(), b.clone(), b.clone()];
    let all_types = ExtendedType::ALL
        .iter()
        .map(|&t| (t.label().to_string(), sig(t, &qqbb, 0)))
        .collect();
    let pairs = partition_types(&[q.clone(), q, b], 1)
        .unwrap()
        .classes
        .iter()
        .map(|c| PairRow {
            signature: c.signature.to_string(),
            types: c
                .labels_at_offset(1)
                .iter()
                .map(|t| t.label().to_string())
                .collect(),
            epoch_types: c.members.iter().map(|t| t.label().to_string()).collect(),
        })
        .collect();
    TablesDoc {
        non_switching,
        all_types,
        pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["asylum"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["asylum", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["asylum", "solve", "/no/such/file"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["asylum", "solve", "x", "--budget-seconds", "-1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["asylum", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("solve"));
    }

    #[test]
    fn tables_text_and_structured() {
        let (code, out, _) = run_capture(&["asylum", "tables"]);
        assert_eq!(code, 0);
        assert!(out.contains("NYN → SAt, PsL"));
        let (code, out, _) = run_capture(&["asylum", "tables", "--format", "structured"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pairs"].as_array().unwrap().len(), 8);
    }
}
