//! Browser bindings for the puzzle engine. Every export takes plain text
//! and returns a JSON string; errors come back as a thrown string.

use std::time::Duration;

use asylum_core::agent::{answer_yes_no, AgentState};
use asylum_core::discrimination::{answer_signature, partition_types};
use asylum_core::extraction::extract_rows;
use asylum_core::lang::{parse_puzzle_file, parse_statement, Statement};
use asylum_core::output::{digest, ExplanationDoc, ExtractionDoc, SolveDoc};
use asylum_core::solver::{explain_solution, Budget};
use asylum_core::{solve_all, Declarations, ExtendedType, SolveOptions, SolveStatus, World};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn questions(text: &str) -> Result<Vec<Statement>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_statement(l).map_err(|e| format!("`{l}`: {e}")))
        .collect()
}

fn to_json(doc: &impl Serialize) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}

#[derive(Serialize)]
struct SignatureRow {
    #[serde(rename = "type")]
    label: String,
    /// The same type as labelled at the first question.
    label_at_offset: String,
    signature: String,
}

#[derive(Serialize)]
struct ClassRow {
    signature: String,
    types: Vec<String>,
}

#[derive(Serialize)]
struct SignatureTable {
    rows: Vec<SignatureRow>,
    classes: Vec<ClassRow>,
    discrete: bool,
}

pub fn signature_table_json(questions_text: &str, offset: u32) -> Result<String, String> {
    let qs = questions(questions_text)?;
    let mut rows = Vec::new();
    for t in ExtendedType::ALL {
        let sig = answer_signature(t, &qs, offset).map_err(|e| e.to_string())?;
        rows.push(SignatureRow {
            label: t.label().into(),
            label_at_offset: t.relabeled_after(offset).label().into(),
            signature: sig.to_string(),
        });
    }
    let partition = partition_types(&qs, offset).map_err(|e| e.to_string())?;
    let classes = partition
        .classes
        .iter()
        .map(|c| ClassRow {
            signature: c.signature.to_string(),
            types: c
                .labels_at_offset(offset)
                .iter()
                .map(|t| t.label().to_string())
                .collect(),
        })
        .collect();
    Ok(to_json(&SignatureTable {
        rows,
        classes,
        discrete: partition.is_discrete(),
    }))
}

pub fn solve_puzzle_json(text: &str) -> Result<String, String> {
    let puzzle = parse_puzzle_file(text).map_err(|e| e.to_string())?;
    let options = SolveOptions {
        budget: Budget {
            max_nodes: 20_000_000,
            max_time: Duration::from_secs(20),
        },
        threads: None,
    };
    let result = solve_all(&puzzle, options).map_err(|e| e.to_string())?;
    let mut doc = SolveDoc::new(digest(text.as_bytes()), &puzzle, &result);
    if result.status == SolveStatus::Unique {
        let world = &result.worlds[0];
        let log = explain_solution(&puzzle, world).map_err(|e| e.to_string())?;
        doc.explanation = Some(
            log.iter()
                .map(|e| ExplanationDoc::new(&puzzle, e))
                .collect(),
        );
        if let Some(config) = &puzzle.extraction {
            // a puzzle whose values fall outside A..Z simply has no word
            doc.extraction = extract_rows(&puzzle, world, config)
                .ok()
                .as_deref()
                .map(ExtractionDoc::new);
        }
    }
    Ok(to_json(&doc))
}

#[derive(Serialize)]
struct Step {
    question: String,
    truthful: bool,
    sane: bool,
    answer: String,
}

pub fn simulate_type_json(
    label: &str,
    questions_text: &str,
    offset: u32,
) -> Result<String, String> {
    let ty =
        ExtendedType::from_label(label.trim()).ok_or_else(|| format!("unknown type `{label}`"))?;
    let qs = questions(questions_text)?;
    // a one-person world; questions about fluents or other people fail
    let decls = Declarations::new(["Speaker"], vec![]);
    let world = World::with_types(&decls, vec![ty]);
    let mut state = AgentState::new(ty, offset);
    let mut steps = Vec::new();
    for q in &qs {
        let phases = state.phases();
        let (answer, next) =
            answer_yes_no(state, &decls, &world, 0, q).map_err(|e| format!("`{q}`: {e}"))?;
        steps.push(Step {
            question: q.to_string(),
            truthful: phases.truthful,
            sane: phases.sane,
            answer: answer.word().into(),
        });
        state = next;
    }
    Ok(to_json(&steps))
}

/// The asylum puzzle, for preloading the page.
#[wasm_bindgen]
pub fn example_puzzle() -> String {
    include_str!("../../core/fixtures/asylum.puzzle").to_string()
}

#[wasm_bindgen]
pub fn signature_table(questions: &str, offset: u32) -> Result<String, JsValue> {
    signature_table_json(questions, offset).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_puzzle(text: &str) -> Result<String, JsValue> {
    solve_puzzle_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate_type(label: &str, questions: &str, offset: u32) -> Result<String, JsValue> {
    simulate_type_json(label, questions, offset).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQBB: &str = "patient(me)\npatient(me)\nbelieves(patient(me))\nbelieves(patient(me))\n";

    #[test]
    fn table_is_discrete_for_four_questions() {
        let v: serde_json::Value =
            serde_json::from_str(&signature_table_json(QQBB, 0).unwrap()).unwrap();
        assert_eq!(v["discrete"], true);
        assert_eq!(v["rows"][14]["type"], "PsAt");
        assert_eq!(v["rows"][14]["signature"], "YYYN");
    }

    #[test]
    fn three_questions_pair_up() {
        let qqb = "patient(me)\npatient(me)\nbelieves(patient(me))";
        let v: serde_json::Value =
            serde_json::from_str(&signature_table_json(qqb, 1).unwrap()).unwrap();
        let classes = v["classes"].as_array().unwrap();
        assert_eq!(classes.len(), 8);
        assert!(classes
            .iter()
            .any(|c| c["signature"] == "NYN" && c["types"] == serde_json::json!(["SAt", "PsL"])));
    }

    #[test]
    fn bad_questions_are_reported() {
        assert!(signature_table_json("lover(me)", 0).is_err());
        assert!(signature_table_json("patient(", 0).is_err());
        assert!(simulate_type_json("XY", QQBB, 0).is_err());
    }

    #[test]
    fn solves_the_fixture() {
        let text = include_str!("../../core/fixtures/asylum.puzzle");
        let v: serde_json::Value = serde_json::from_str(&solve_puzzle_json(text).unwrap()).unwrap();
        assert_eq!(v["status"], "unique");
        assert_eq!(v["extraction"]["word"], "ALTERNATE");
        assert!(solve_puzzle_json("persons: \n").is_err());
    }

    #[test]
    fn simulates_one_type() {
        let v: serde_json::Value =
            serde_json::from_str(&simulate_type_json("ST", QQBB, 0).unwrap()).unwrap();
        let answers: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["answer"].as_str().unwrap())
            .collect();
        assert_eq!(answers, ["no"; 4]);
    }
}
