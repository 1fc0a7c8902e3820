//! Enumeration of every world consistent with a puzzle.
//!
//! The search assigns all types first, then fluents, in canonical order.
//! Each constraint is re-evaluated in three-valued logic whenever one of
//! its variables is assigned and the branch is cut as soon as one becomes
//! false. Before searching, every variable's domain is filtered by the
//! constraints it can falsify on its own, which is where question rounds
//! shrink each person to the types matching their answers.

mod check;
mod compiled;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Duration;

#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
use std::time::Instant;
// std's clock panics in the browser
#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
use web_time::Instant;

use rayon::prelude::*;

pub use check::{
    check_world, explain_solution, filter_types_by_signature, simulate_transcript, CheckReport,
    Explanation, TranscriptEntry, TranscriptRound, Violation,
};
use compiled::{Constraint, Tri, UNASSIGNED};

use crate::agent::{Answer, ExtendedType};
use crate::error::SolveError;
use crate::extraction::{Category, CategorySource};
use crate::puzzle::{PuzzleSpec, Round};
use crate::world::World;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(120),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Worker threads; `None` uses rayon's global pool. The result does not
    /// depend on this.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Unique,
    None,
    Multiple,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Unique => "unique",
            SolveStatus::None => "none",
            SolveStatus::Multiple => "multiple",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub person: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Canonically ordered: by type index person by person, then fluent
    /// values in declaration order.
    pub worlds: Vec<World>,
    pub status: SolveStatus,
    /// Per-person report when the solution is unique, in declaration order.
    pub report: Option<Vec<ReportRow>>,
    pub stats: SolveStats,
}

/// Categories the report lists: the extraction categories when configured,
/// otherwise sanity and truthfulness.
pub fn report_categories(puzzle: &PuzzleSpec) -> Vec<Category> {
    match &puzzle.extraction {
        Some(config) => config.categories.clone(),
        None => vec![
            Category {
                name: "sanity".into(),
                source: CategorySource::Sanity,
                values: crate::extraction::sanity_names().map(String::from).to_vec(),
            },
            Category {
                name: "truthfulness".into(),
                source: CategorySource::Truth,
                values: crate::extraction::truth_names().map(String::from).to_vec(),
            },
        ],
    }
}

pub fn report_for(puzzle: &PuzzleSpec, world: &World) -> Vec<ReportRow> {
    let categories = report_categories(puzzle);
    (0..puzzle.decls.person_count())
        .map(|p| ReportRow {
            person: puzzle.decls.person_name(p).to_string(),
            values: categories
                .iter()
                .map(|c| c.value_of(puzzle, world, p))
                .collect(),
        })
        .collect()
}

/// All constraints of a puzzle, with each speaker's utterance counter
/// threaded through the rounds.
pub(crate) fn compile_constraints(puzzle: &PuzzleSpec) -> Result<Vec<Constraint>, SolveError> {
    let decls = &puzzle.decls;
    let mut out = Vec::new();
    for axiom in &puzzle.axioms {
        out.push(Constraint::axiom(decls, axiom)?);
    }
    let mut counts = vec![0u32; decls.person_count()];
    for round in &puzzle.rounds {
        match round {
            Round::Statements { utterances, .. } => {
                for u in utterances {
                    out.push(Constraint::utterance(
                        decls,
                        u.speaker,
                        counts[u.speaker],
                        &u.statement,
                        true,
                    )?);
                    counts[u.speaker] += 1;
                }
            }
            Round::Question {
                addressed,
                question,
                answers,
                ..
            } => {
                for (i, &p) in addressed.iter().enumerate() {
                    if let Some(answers) = answers {
                        let expected = answers[i] == Answer::Yes;
                        out.push(Constraint::utterance(
                            decls, p, counts[p], question, expected,
                        )?);
                    }
                    counts[p] += 1;
                }
            }
        }
    }
    Ok(out)
}

struct Search<'a> {
    persons: usize,
    var_count: usize,
    constraints: &'a [Constraint],
    watchers: Vec<Vec<usize>>,
    domains: Vec<Vec<u8>>,
    budget: Budget,
    start: Instant,
    shared_nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

struct Task {
    assign: Vec<u8>,
    satisfied: Vec<bool>,
    trail: Vec<usize>,
    env: Vec<usize>,
    nodes: u64,
    unflushed: u64,
    worlds: Vec<Vec<u8>>,
}

#[derive(Debug)]
struct Aborted;

const FLUSH_EVERY: u64 = 1024;

impl Search<'_> {
    fn assign_and_check(&self, task: &mut Task, var: usize, value: u8) -> bool {
        task.assign[var] = value;
        for &c in &self.watchers[var] {
            if task.satisfied[c] {
                continue;
            }
            match self.constraints[c].eval(&task.assign, self.persons, &mut task.env) {
                Tri::False => return false,
                Tri::True => {
                    task.satisfied[c] = true;
                    task.trail.push(c);
                }
                Tri::Unknown => {}
            }
        }
        true
    }

    fn undo(&self, task: &mut Task, mark: usize) {
        while task.trail.len() > mark {
            let c = task.trail.pop().unwrap();
            task.satisfied[c] = false;
        }
    }

    fn tick(&self, task: &mut Task) -> Result<(), Aborted> {
        task.nodes += 1;
        task.unflushed += 1;
        if task.unflushed >= FLUSH_EVERY {
            let total = self
                .shared_nodes
                .fetch_add(task.unflushed, Ordering::Relaxed)
                + task.unflushed;
            task.unflushed = 0;
            if total > self.budget.max_nodes || self.start.elapsed() > self.budget.max_time {
                self.abort.store(true, Ordering::Relaxed);
            }
            if self.abort.load(Ordering::Relaxed) {
                return Err(Aborted);
            }
        }
        Ok(())
    }

    fn dfs(&self, task: &mut Task, var: usize, prefix: &[u8]) -> Result<(), Aborted> {
        if var == self.var_count {
            task.worlds.push(task.assign.clone());
            return Ok(());
        }
        let fixed;
        let values: &[u8] = match prefix.get(var) {
            Some(v) => {
                fixed = [*v];
                &fixed
            }
            None => &self.domains[var],
        };
        for &value in values {
            self.tick(task)?;
            let mark = task.trail.len();
            if self.assign_and_check(task, var, value) {
                self.dfs(task, var + 1, prefix)?;
            }
            self.undo(task, mark);
        }
        task.assign[var] = UNASSIGNED;
        Ok(())
    }

    fn run(&self, prefix: &[u8], initially_satisfied: &[bool]) -> (Result<(), Aborted>, Task) {
        let mut task = Task {
            assign: vec![UNASSIGNED; self.var_count],
            satisfied: initially_satisfied.to_vec(),
            trail: Vec::new(),
            env: Vec::new(),
            nodes: 0,
            unflushed: 0,
            worlds: Vec::new(),
        };
        let outcome = self.dfs(&mut task, 0, prefix);
        self.shared_nodes
            .fetch_add(task.unflushed, Ordering::Relaxed);
        (outcome, task)
    }
}

/// Splits the search into this many subtrees at most. Fixed so that node
/// counts do not depend on the thread count.
const TARGET_TASKS: usize = 64;

pub fn solve_all(puzzle: &PuzzleSpec, options: SolveOptions) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let decls = &puzzle.decls;
    let n = decls.person_count();
    let constraints = compile_constraints(puzzle)?;

    let mut var_count = n;
    let mut domains: Vec<Vec<u8>> = vec![(0..16).collect(); n];
    for f in decls.fluents() {
        for _ in 0..n {
            domains.push((0..f.arity() as u8).collect());
        }
        var_count += n;
    }

    let mut watchers = vec![Vec::new(); var_count];
    for (i, c) in constraints.iter().enumerate() {
        for &v in &c.vars {
            watchers[v].push(i);
        }
    }

    // Constraints decided before any assignment (no variables at all, or
    // vacuous ones such as `atleast 0`).
    let mut env = Vec::new();
    let empty = vec![UNASSIGNED; var_count];
    let mut initially_satisfied = vec![false; constraints.len()];
    let mut stats = SolveStats {
        nodes: 0,
        elapsed: Duration::ZERO,
    };
    for (i, c) in constraints.iter().enumerate() {
        match c.eval(&empty, n, &mut env) {
            Tri::False => {
                stats.elapsed = start.elapsed();
                return Ok(finish(puzzle, Vec::new(), stats));
            }
            Tri::True => initially_satisfied[i] = true,
            Tri::Unknown => {}
        }
    }

    // Node consistency: drop values that falsify a constraint on their own.
    let mut single = empty.clone();
    for (var, domain) in domains.iter_mut().enumerate() {
        domain.retain(|&value| {
            single[var] = value;
            let ok = watchers[var]
                .iter()
                .all(|&c| constraints[c].eval(&single, n, &mut env) != Tri::False);
            single[var] = UNASSIGNED;
            ok
        });
        if domain.is_empty() {
            stats.elapsed = start.elapsed();
            return Ok(finish(puzzle, Vec::new(), stats));
        }
    }

    let mut prefix_len = 0;
    let mut task_count = 1usize;
    while prefix_len < var_count && task_count < TARGET_TASKS {
        task_count *= domains[prefix_len].len();
        prefix_len += 1;
    }
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    for domain in &domains[..prefix_len] {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                domain.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }

    let shared_nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let search = Search {
        persons: n,
        var_count,
        constraints: &constraints,
        watchers,
        domains,
        budget: options.budget,
        start,
        shared_nodes: &shared_nodes,
        abort: &abort,
    };

    let run_all = || -> Vec<(Result<(), Aborted>, Task)> {
        prefixes
            .par_iter()
            .map(|p| search.run(p, &initially_satisfied))
            .collect()
    };
    let outcomes = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool")
            .install(run_all),
        None => run_all(),
    };

    stats.nodes = outcomes.iter().map(|(_, t)| t.nodes).sum();
    stats.elapsed = start.elapsed();
    if outcomes.iter().any(|(r, _)| r.is_err()) {
        return Err(SolveError::BudgetExceeded {
            nodes: shared_nodes.load(Ordering::Relaxed),
            elapsed: stats.elapsed,
        });
    }

    let mut worlds: Vec<World> = outcomes
        .into_iter()
        .flat_map(|(_, t)| t.worlds)
        .map(|assign| world_from_assignment(puzzle, &assign))
        .collect();
    worlds.sort_by_cached_key(World::canonical_key);
    Ok(finish(puzzle, worlds, stats))
}

fn world_from_assignment(puzzle: &PuzzleSpec, assign: &[u8]) -> World {
    let n = puzzle.decls.person_count();
    let types = assign[..n]
        .iter()
        .map(|&t| ExtendedType::from_index(t as usize).expect("type index"))
        .collect();
    let fluents = assign[n..].chunks(n).map(<[u8]>::to_vec).collect();
    World::new(types, fluents)
}

fn finish(puzzle: &PuzzleSpec, worlds: Vec<World>, stats: SolveStats) -> SolveResult {
    let status = match worlds.len() {
        0 => SolveStatus::None,
        1 => SolveStatus::Unique,
        _ => SolveStatus::Multiple,
    };
    let report = (status == SolveStatus::Unique).then(|| report_for(puzzle, &worlds[0]));
    SolveResult {
        worlds,
        status,
        report,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_puzzle_file;

    #[test]
    fn unconstrained_single_person_has_sixteen_worlds() {
        let p = parse_puzzle_file("persons: Solo\n").unwrap();
        let r = solve_all(&p, SolveOptions::default()).unwrap();
        assert_eq!(r.worlds.len(), 16);
        assert_eq!(r.status, SolveStatus::Multiple);
        let labels: Vec<_> = r.worlds.iter().map(|w| w.type_of(0).label()).collect();
        assert_eq!(labels[0], "ST");
        assert_eq!(labels[15], "PsAl");
    }

    #[test]
    fn contradictory_axioms() {
        let p =
            parse_puzzle_file("persons: A\nfluent f : bool\naxiom f(A)\naxiom not f(A)\n").unwrap();
        let r = solve_all(&p, SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::None);
        assert!(r.report.is_none());
    }

    #[test]
    fn unique_with_report() {
        let text = "persons: A\nround question \"q\" to all: patient(me)\nanswers: A=no\n\
                    round question \"q\" to all: patient(me)\nanswers: A=no\n\
                    round question \"b\" to all: believes(patient(me))\nanswers: A=no\n\
                    round question \"b\" to all: believes(patient(me))\nanswers: A=no\n";
        let p = parse_puzzle_file(text).unwrap();
        let r = solve_all(&p, SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Unique);
        assert_eq!(r.worlds[0].type_of(0).label(), "ST");
        assert_eq!(
            r.report.unwrap()[0].values,
            vec!["sane".to_string(), "truth-teller".to_string()]
        );
    }

    #[test]
    fn budget_exceeded_is_an_error() {
        let p = parse_puzzle_file("persons: A, B, C, D\nfluent f : bool\n").unwrap();
        let options = SolveOptions {
            budget: Budget {
                max_nodes: 2000,
                max_time: Duration::from_secs(60),
            },
            threads: Some(1),
        };
        assert!(matches!(
            solve_all(&p, options),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn empty_person_list_is_rejected() {
        assert!(parse_puzzle_file("persons: \n").is_err());
    }
}
