mod common;

use std::collections::BTreeSet;

use asylum_core::lang::parse_statement;
use asylum_core::solver::check_world;
use asylum_core::{solve_all, SolveOptions, SolveStatus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force, random_puzzle, StatementGen, FLUENT_NAMES, PERSON_NAMES};

#[test]
fn four_people_without_fluents_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    for i in 0..12 {
        let case = random_puzzle(&mut rng, 4, 0, 4);
        let solved = solve_all(&case.puzzle, SolveOptions::default()).unwrap();
        let oracle = brute_force(&case.puzzle);
        assert_eq!(solved.worlds, oracle, "case {i}\n{}", case.text);
    }
}

#[test]
fn every_solution_passes_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let case = random_puzzle(&mut rng, 3, 2, 4);
        let solved = solve_all(&case.puzzle, SolveOptions::default()).unwrap();
        for w in &solved.worlds {
            assert!(
                check_world(&case.puzzle, w).unwrap().consistent(),
                "{}",
                case.text
            );
        }
        let expected = match solved.worlds.len() {
            0 => SolveStatus::None,
            1 => SolveStatus::Unique,
            _ => SolveStatus::Multiple,
        };
        assert_eq!(solved.status, expected);
        assert_eq!(solved.report.is_some(), expected == SolveStatus::Unique);
    }
}

#[test]
fn adding_an_axiom_never_adds_worlds() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..80 {
        let case = random_puzzle(&mut rng, 3, 2, 3);
        let before = solve_all(&case.puzzle, SolveOptions::default())
            .unwrap()
            .worlds;
        let n = case.puzzle.decls.person_count();
        let f = case.puzzle.decls.fluents().len();
        let gen = StatementGen {
            persons: &PERSON_NAMES[..n],
            fluents: &FLUENT_NAMES[..f],
            speaker: false,
        };
        let mut stronger = case.puzzle.clone();
        stronger.axioms.push(gen.body(&mut rng, 2, &mut Vec::new()));
        let after = solve_all(&stronger, SolveOptions::default())
            .unwrap()
            .worlds;
        assert!(after.len() <= before.len());
        let before: BTreeSet<Vec<u8>> = before.iter().map(|w| w.canonical_key()).collect();
        assert!(
            after.iter().all(|w| before.contains(&w.canonical_key())),
            "{}",
            case.text
        );
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let case = random_puzzle(&mut rng, 3, 2, 4);
        let one = solve_all(
            &case.puzzle,
            SolveOptions {
                threads: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let many = solve_all(
            &case.puzzle,
            SolveOptions {
                threads: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one.worlds, many.worlds);
        assert_eq!(one.stats.nodes, many.stats.nodes);
        assert_eq!(one.report, many.report);
    }
}

#[test]
fn tautological_axiom_changes_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let case = random_puzzle(&mut rng, 2, 1, 3);
    let mut p = case.puzzle.clone();
    let before = solve_all(&p, SolveOptions::default()).unwrap().worlds;
    p.axioms
        .push(parse_statement("forall x . patient(x) or doctor(x)").unwrap());
    assert_eq!(
        solve_all(&p, SolveOptions::default()).unwrap().worlds,
        before
    );
}
