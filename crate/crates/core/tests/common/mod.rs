#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use asylum_core::agent::{answer_yes_no, AgentState};
use asylum_core::lang::{parse_puzzle_file, parse_world_file, Statement, Term};
use asylum_core::solver::check_world;
use asylum_core::{ExtendedType, PuzzleSpec, World};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn asylum() -> PuzzleSpec {
    parse_puzzle_file(&fixture_text("asylum.puzzle")).unwrap()
}

pub fn asylum_world(name: &str) -> World {
    parse_world_file(&fixture_text(name), &asylum()).unwrap()
}

/// Every world of a puzzle's declarations that passes `check_world`, in
/// canonical order.
pub fn brute_force(puzzle: &PuzzleSpec) -> Vec<World> {
    let decls = &puzzle.decls;
    let n = decls.person_count();
    let arities: Vec<u64> = decls.fluents().iter().map(|f| f.arity() as u64).collect();
    let fluent_space: u64 = arities.iter().map(|a| a.pow(n as u32)).product();
    let total = 16u64.pow(n as u32) * fluent_space;
    let mut worlds: Vec<World> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut types = Vec::with_capacity(n);
            for _ in 0..n {
                types.push(ExtendedType::from_index((code % 16) as usize).unwrap());
                code /= 16;
            }
            let mut fluents = Vec::with_capacity(arities.len());
            for &a in &arities {
                let mut row = Vec::with_capacity(n);
                for _ in 0..n {
                    row.push((code % a) as u8);
                    code /= a;
                }
                fluents.push(row);
            }
            let world = World::new(types, fluents);
            check_world(puzzle, &world)
                .unwrap()
                .consistent()
                .then_some(world)
        })
        .collect();
    worlds.sort_by_cached_key(World::canonical_key);
    worlds
}

pub const PERSON_NAMES: [&str; 4] = ["Ann", "Bob", "Cy", "Dee"];
pub const FLUENT_NAMES: [&str; 2] = ["lover", "rich"];
const TYPE_PREDICATES: [&str; 8] = [
    "patient",
    "doctor",
    "sane",
    "delusional",
    "partial",
    "truthteller",
    "liar",
    "alternator",
];

/// Random statements over a fixed vocabulary.
pub struct StatementGen<'a> {
    pub persons: &'a [&'a str],
    pub fluents: &'a [&'a str],
    /// Allow `me` as a subject.
    pub speaker: bool,
}

impl StatementGen<'_> {
    fn subject(&self, rng: &mut impl Rng, vars: &[String]) -> Term {
        let choices = self.persons.len() + vars.len() + usize::from(self.speaker);
        let k = rng.gen_range(0..choices);
        if k < self.persons.len() {
            Term::Person(self.persons[k].to_string())
        } else if k < self.persons.len() + vars.len() {
            Term::Var(vars[k - self.persons.len()].clone())
        } else {
            Term::Me
        }
    }

    fn atom(&self, rng: &mut impl Rng, vars: &[String]) -> Statement {
        let subject = self.subject(rng, vars);
        if !self.fluents.is_empty() && rng.gen_bool(0.5) {
            Statement::atom(*self.fluents.choose(rng).unwrap(), subject)
        } else {
            Statement::atom(*TYPE_PREDICATES.choose(rng).unwrap(), subject)
        }
    }

    pub fn body(&self, rng: &mut impl Rng, depth: u32, vars: &mut Vec<String>) -> Statement {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.atom(rng, vars);
        }
        match rng.gen_range(0..7) {
            0 => Statement::not(self.body(rng, depth - 1, vars)),
            1 | 2 => {
                let k = rng.gen_range(2..=3);
                let items = (0..k).map(|_| self.body(rng, depth - 1, vars)).collect();
                if rng.gen_bool(0.5) {
                    Statement::And(items)
                } else {
                    Statement::Or(items)
                }
            }
            3 => Statement::Implies(
                Box::new(self.body(rng, depth - 1, vars)),
                Box::new(self.body(rng, depth - 1, vars)),
            ),
            _ => {
                let name = ["x", "y", "z"][vars.len().min(2)].to_string();
                vars.push(name.clone());
                let body = Box::new(self.body(rng, depth - 1, vars));
                vars.pop();
                match rng.gen_range(0..3) {
                    0 => Statement::Exists(name, body),
                    1 => Statement::ForAll(name, body),
                    _ => Statement::AtLeast(rng.gen_range(0..=3), name, body),
                }
            }
        }
    }

    pub fn utterance(&self, rng: &mut impl Rng, depth: u32) -> Statement {
        let body = self.body(rng, depth, &mut Vec::new());
        if rng.gen_bool(0.4) {
            Statement::believes(body)
        } else {
            body
        }
    }
}

pub struct RandomPuzzle {
    pub text: String,
    pub puzzle: PuzzleSpec,
}

/// A small random puzzle written out as puzzle-file text and parsed back.
/// Recorded answers usually come from a hidden world so that some worlds
/// survive; sometimes they are random or left unrecorded.
pub fn random_puzzle(
    rng: &mut impl Rng,
    max_persons: usize,
    max_fluents: usize,
    max_rounds: usize,
) -> RandomPuzzle {
    let n = rng.gen_range(1..=max_persons);
    let f = rng.gen_range(0..=max_fluents);
    let persons = &PERSON_NAMES[..n];
    let fluents = &FLUENT_NAMES[..f];

    let mut text = String::new();
    let _ = writeln!(text, "persons: {}", persons.join(", "));
    for name in fluents {
        let _ = writeln!(text, "fluent {name} : bool");
    }
    let axiom_gen = StatementGen {
        persons,
        fluents,
        speaker: false,
    };
    for _ in 0..rng.gen_range(0..=2) {
        let _ = writeln!(text, "axiom {}", axiom_gen.body(rng, 2, &mut Vec::new()));
    }

    // a hidden world to draw consistent answers from
    let hidden_types: Vec<ExtendedType> = (0..n)
        .map(|_| ExtendedType::ALL[rng.gen_range(0..16)])
        .collect();
    let hidden_fluents: Vec<Vec<u8>> = (0..f)
        .map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect())
        .collect();
    let hidden = World::new(hidden_types.clone(), hidden_fluents);
    let mut states: Vec<AgentState> = hidden_types
        .iter()
        .map(|&t| AgentState::at_epoch(t))
        .collect();
    let shell = parse_puzzle_file(&text).unwrap();

    let gen = StatementGen {
        persons,
        fluents,
        speaker: true,
    };
    for r in 0..rng.gen_range(0..=max_rounds) {
        let mut speakers: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        if speakers.is_empty() {
            speakers.push(rng.gen_range(0..n));
        }
        if rng.gen_bool(0.5) {
            let _ = writeln!(text, "round statements \"r{r}\"");
            for &p in &speakers {
                let _ = writeln!(text, "  {}: {}", persons[p], gen.utterance(rng, 2));
                states[p] = states[p].advance();
            }
        } else {
            let question = if rng.gen_bool(0.5) {
                let q = [
                    "patient(me)",
                    "believes(patient(me))",
                    "doctor(me) or liar(me)",
                ];
                asylum_core::lang::parse_statement(q.choose(rng).unwrap()).unwrap()
            } else {
                gen.utterance(rng, 1)
            };
            let addressed: Vec<&str> = speakers.iter().map(|&p| persons[p]).collect();
            let _ = writeln!(
                text,
                "round question \"q{r}\" to {}: {question}",
                addressed.join(", ")
            );
            let mode = rng.gen_range(0..10);
            let mut answers = Vec::new();
            for &p in &speakers {
                let (simulated, next) =
                    answer_yes_no(states[p], &shell.decls, &hidden, p, &question).unwrap();
                states[p] = next;
                let yes = match mode {
                    0..=6 => simulated == asylum_core::Answer::Yes,
                    _ => rng.gen_bool(0.5),
                };
                answers.push(format!("{}={}", persons[p], if yes { "yes" } else { "no" }));
            }
            if mode != 9 {
                let _ = writeln!(text, "  answers: {}", answers.join(" "));
            }
        }
    }
    let puzzle = parse_puzzle_file(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    RandomPuzzle { text, puzzle }
}

/// The fixture cut down to rounds 0-3 with only the `lover` fluent and no
/// scene axioms: what can be known before any talk about the murder.
pub fn lovers_and_questions() -> PuzzleSpec {
    let full = fixture_text("asylum.puzzle");
    let mut text = String::new();
    for line in full.lines() {
        let t = line.trim_start();
        if t.starts_with("round statements \"love lives\"") {
            break;
        }
        if t.starts_with("axiom") || (t.starts_with("fluent") && !t.starts_with("fluent lover")) {
            continue;
        }
        text.push_str(line);
        text.push('\n');
    }
    parse_puzzle_file(&text).unwrap()
}
