//! Laws of the agent model, checked exhaustively against definitions
//! written out independently of the engine.

use asylum_core::agent::{would_assert, AgentState};
use asylum_core::lang::parse_statement;
use asylum_core::world::FluentDecl;
use asylum_core::{Declarations, ExtendedType, World};

/// (truthful, sane) after `n` utterances, from the label alone.
fn phases_from_label(ty: ExtendedType, n: u32) -> (bool, bool) {
    let label = ty.label();
    let odd = n % 2 == 1;
    let (sanity, truth) = if let Some(rest) = label.strip_prefix("Pi") {
        ("Pi", rest)
    } else if let Some(rest) = label.strip_prefix("Ps") {
        ("Ps", rest)
    } else {
        label.split_at(1)
    };
    let sane = match sanity {
        "S" => true,
        "D" => false,
        "Pi" => odd,
        "Ps" => !odd,
        _ => unreachable!(),
    };
    let truthful = match truth {
        "T" => true,
        "L" => false,
        "At" => !odd,
        "Al" => odd,
        _ => unreachable!(),
    };
    (truthful, sane)
}

fn one_person(ty: ExtendedType, fact: bool) -> (Declarations, World) {
    let decls = Declarations::new(["Solo"], vec![FluentDecl::bool("fact")]);
    let world = World::new(vec![ty], vec![vec![u8::from(fact)]]);
    (decls, world)
}

#[test]
fn belief_collapse_law() {
    let stmt = parse_statement("believes(fact(me))").unwrap();
    let mut cases = 0;
    for ty in ExtendedType::ALL {
        for n in 0..2 {
            for fact in [false, true] {
                let (decls, world) = one_person(ty, fact);
                let (truthful, _) = phases_from_label(ty, n);
                let got = would_assert(AgentState::new(ty, n), &decls, &world, 0, &stmt).unwrap();
                assert_eq!(got, truthful == fact, "{ty} n={n} fact={fact}");
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 64);
}

#[test]
fn bare_statement_law() {
    let stmt = parse_statement("fact(me)").unwrap();
    for ty in ExtendedType::ALL {
        for n in 0..2 {
            for fact in [false, true] {
                let (decls, world) = one_person(ty, fact);
                let (truthful, sane) = phases_from_label(ty, n);
                let believed = if sane { fact } else { !fact };
                let expected = if truthful { believed } else { !believed };
                let got = would_assert(AgentState::new(ty, n), &decls, &world, 0, &stmt).unwrap();
                assert_eq!(got, expected, "{ty} n={n} fact={fact}");
            }
        }
    }
}

#[test]
fn phases_are_periodic() {
    for ty in ExtendedType::ALL {
        for n in 0..12 {
            let p = AgentState::new(ty, n).phases();
            let q = AgentState::new(ty, n + 2).phases();
            assert_eq!(p, q, "{ty} n={n}");
            assert_eq!((p.truthful, p.sane), phases_from_label(ty, n), "{ty} n={n}");
        }
        assert_eq!(ty.relabeled_after(0), ty);
        assert_eq!(ty.relabeled_after(2), ty);
        assert_eq!(ty.relabeled_after(1).relabeled_after(1), ty);
        assert_eq!(ty.relabeled_after(1).sanity(), ty.sanity());
        assert_eq!(ty.relabeled_after(1).truth(), ty.truth());
    }
}

#[test]
fn labels_round_trip() {
    for ty in ExtendedType::ALL {
        assert_eq!(ty.label().parse::<ExtendedType>().unwrap(), ty);
        assert_eq!(ExtendedType::from_index(ty.index()), Some(ty));
    }
    assert!("SX".parse::<ExtendedType>().is_err());
}
