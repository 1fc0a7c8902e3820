mod common;

use asylum_core::agent::Answer;
use asylum_core::lang::{parse_world_file, render_world_file};
use asylum_core::solver::{
    check_world, explain_solution, simulate_transcript, TranscriptEntry, Violation,
};
use asylum_core::{solve_all, ExtendedType, SolveOptions, SolveStatus};

use common::{asylum, asylum_world, lovers_and_questions};

#[test]
fn fixture_has_exactly_the_published_world() {
    let puzzle = asylum();
    let result = solve_all(&puzzle, SolveOptions::default()).unwrap();
    assert_eq!(result.status, SolveStatus::Unique);
    assert_eq!(result.worlds, vec![asylum_world("asylum_solution.world")]);
    assert!(check_world(&puzzle, &result.worlds[0])
        .unwrap()
        .consistent());
}

#[test]
fn solution_world_file_round_trips() {
    let puzzle = asylum();
    let world = asylum_world("asylum_solution.world");
    let text = render_world_file(&puzzle, &world);
    assert_eq!(parse_world_file(&text, &puzzle).unwrap(), world);
}

#[test]
fn ann_as_a_sane_liar_fails_at_round_four() {
    let puzzle = asylum();
    let report = check_world(&puzzle, &asylum_world("asylum_ann_sl.world")).unwrap();
    match report.violation {
        Some(Violation::Statement {
            round, ref speaker, ..
        }) => {
            assert_eq!(round, 4);
            assert_eq!(speaker, "Ann");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn ann_as_a_sane_liar_who_loved_zack_fails_at_round_zero() {
    let puzzle = asylum();
    let mut world = asylum_world("asylum_solution.world");
    let sl = ExtendedType::from_label("SL").unwrap();
    world.set_type(0, puzzle.epoch_type(0, sl, puzzle.label_round));
    let v = check_world(&puzzle, &world).unwrap().violation.unwrap();
    assert_eq!(v.round(), Some(0));
}

#[test]
fn simulated_answers_match_the_transcript() {
    let puzzle = asylum();
    let rounds = simulate_transcript(&puzzle, &asylum_world("asylum_solution.world")).unwrap();
    let mut per_person = vec![String::new(); 9];
    for r in &rounds {
        for e in &r.entries {
            match e {
                TranscriptEntry::Answer {
                    person,
                    answer,
                    recorded,
                } => {
                    assert_eq!(Some(*answer), *recorded);
                    per_person[*person].push(answer.letter());
                }
                TranscriptEntry::Statement { consistent, .. } => assert!(consistent),
            }
        }
    }
    assert_eq!(
        per_person,
        ["YYY", "YYN", "NYN", "YNN", "YNY", "YYN", "YYN", "NYN", "YNN"]
    );
}

#[test]
fn round_zero_certifies_three_lovers() {
    let reduced = lovers_and_questions();
    assert_eq!(reduced.rounds.len(), 4);
    let result = solve_all(&reduced, SolveOptions::default()).unwrap();
    assert!(!result.worlds.is_empty());
    let lover = reduced.decls.fluent_index("lover").unwrap();
    for w in &result.worlds {
        for name in ["Beth", "Fiona", "Grace"] {
            let p = reduced.decls.person_index(name).unwrap();
            assert_eq!(w.fluent(lover, p), 1, "{name}");
        }
    }
    // Ann's claim is only settled by round 4
    let values: std::collections::BTreeSet<u8> =
        result.worlds.iter().map(|w| w.fluent(lover, 0)).collect();
    assert_eq!(values.len(), 2);
}

#[test]
fn explanation_decodes_round_zero() {
    let puzzle = asylum();
    let log = explain_solution(&puzzle, &asylum_world("asylum_solution.world")).unwrap();
    let beth = log.iter().find(|e| e.round == 0 && e.person == 1).unwrap();
    assert_eq!(beth.decoded.to_string(), "lover(Beth)");
    let cedric = log.iter().find(|e| e.round == 1 && e.person == 2).unwrap();
    assert_eq!(cedric.answer, Some(Answer::No));
    assert_eq!(cedric.decoded.to_string(), "not patient(Cedric)");
    assert_eq!(log.len(), 9 * 6);
}

#[test]
fn every_prefix_keeps_the_solution() {
    let puzzle = asylum();
    let world = asylum_world("asylum_solution.world");
    for k in 0..=puzzle.rounds.len() {
        let prefix = puzzle.truncated(k);
        assert!(
            check_world(&prefix, &world).unwrap().consistent(),
            "{k} rounds"
        );
    }
}
