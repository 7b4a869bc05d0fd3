//! Evaluation harness: runs a question suite through the hybrid
//! pipeline (Method 1) and the ontology-only baseline (Method 2),
//! scores per-question set precision/recall/F, macro-averages them and
//! renders the comparison table.

pub mod method2;

pub use method2::{formulate_baseline, BaselineReading};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulation::Pipeline;
use crate::sparql;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("suite line {line}: {message}")]
    Suite { line: usize, message: String },
    #[error("reports cover different suites")]
    SuiteMismatch,
}

/// A suite entry: question text, expected answer set, optional expected
/// query and tags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldRecord {
    pub question: String,
    pub gold: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "goldQuery")]
    pub gold_query: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl GoldRecord {
    pub fn is_unanswerable(&self) -> bool {
        self.tags.iter().any(|t| t == "unanswerable")
    }
}

pub fn parse_suite(text: &str) -> Result<Vec<GoldRecord>, EvalError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record: GoldRecord = serde_json::from_str(line).map_err(|e| EvalError::Suite {
            line: idx + 1,
            message: e.to_string(),
        })?;
        if record.gold.is_empty() && !record.is_unanswerable() {
            return Err(EvalError::Suite {
                line: idx + 1,
                message: "empty gold set without the `unanswerable` tag".into(),
            });
        }
        out.push(record);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MethodId {
    Hybrid,
    OntologyOnly,
}

impl MethodId {
    pub fn label(&self) -> &'static str {
        match self {
            MethodId::Hybrid => "Method 1: Hybrid approach",
            MethodId::OntologyOnly => "Method 2: Ontology based approach",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuestionResult {
    pub question: String,
    pub returned: Vec<String>,
    pub gold: Vec<String>,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Aggregate {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: MethodId,
    /// Macro average over questions (documented in the report header).
    pub aggregate: Aggregate,
    pub per_question: Vec<QuestionResult>,
}

/// Set precision/recall/F for one question. Precision is 0 when
/// nothing was returned and recall 0 when nothing matched; a question
/// tagged unanswerable scores 1.0 when the system returns nothing.
fn score(returned: &BTreeSet<String>, gold: &BTreeSet<String>) -> (f64, f64, f64) {
    if gold.is_empty() {
        let right = returned.is_empty();
        let v = if right { 1.0 } else { 0.0 };
        return (v, v, v);
    }
    let hit = returned.intersection(gold).count() as f64;
    let precision = if returned.is_empty() {
        0.0
    } else {
        hit / returned.len() as f64
    };
    let recall = hit / gold.len() as f64;
    let f = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    (precision, recall, f)
}

fn aggregate(rows: &[QuestionResult]) -> Aggregate {
    let n = rows.len().max(1) as f64;
    Aggregate {
        precision: rows.iter().map(|r| r.precision).sum::<f64>() / n,
        recall: rows.iter().map(|r| r.recall).sum::<f64>() / n,
        f_measure: rows.iter().map(|r| r.f_measure).sum::<f64>() / n,
    }
}

fn result_row(
    question: &str,
    gold: &[String],
    returned: Result<BTreeSet<String>, String>,
    ambiguous: bool,
) -> QuestionResult {
    let gold_set: BTreeSet<String> = gold.iter().cloned().collect();
    let (returned_set, error) = match returned {
        Ok(set) => (set, None),
        Err(e) => (BTreeSet::new(), Some(e)),
    };
    let (precision, recall, f_measure) = score(&returned_set, &gold_set);
    QuestionResult {
        question: question.to_string(),
        returned: returned_set.into_iter().collect(),
        gold: gold.to_vec(),
        precision,
        recall,
        f_measure,
        error,
        ambiguous,
    }
}

/// Method 1: the full hybrid pipeline. Pipeline errors count as empty
/// answer sets.
pub fn run_method1(suite: &[GoldRecord], pipeline: &Pipeline) -> EvalReport {
    let per_question: Vec<QuestionResult> = suite
        .iter()
        .map(|record| {
            let returned = pipeline
                .answer(&record.question)
                .map(|a| a.solutions.answer_set())
                .map_err(|e| e.to_string());
            result_row(&record.question, &record.gold, returned, false)
        })
        .collect();
    EvalReport {
        method: MethodId::Hybrid,
        aggregate: aggregate(&per_question),
        per_question,
    }
}

/// Method 2: token-matching baseline over the same templates and the
/// same SPARQL engine.
pub fn run_method2(suite: &[GoldRecord], pipeline: &Pipeline) -> EvalReport {
    let per_question: Vec<QuestionResult> = suite
        .iter()
        .map(|record| {
            let outcome = pipeline
                .annotate(&record.question)
                .map_err(|e| e.to_string())
                .and_then(|sentence| {
                    formulate_baseline(&sentence, &pipeline.superlatives, &pipeline.kb)
                        .map_err(|e| e.to_string())
                })
                .and_then(|reading| {
                    sparql::evaluate(&reading.query, &pipeline.kb)
                        .map(|sols| (sols.answer_set(), reading.is_ambiguous()))
                        .map_err(|e| e.to_string())
                });
            match outcome {
                Ok((set, ambiguous)) => result_row(&record.question, &record.gold, Ok(set), ambiguous),
                Err(e) => result_row(&record.question, &record.gold, Err(e), false),
            }
        })
        .collect();
    EvalReport {
        method: MethodId::OntologyOnly,
        aggregate: aggregate(&per_question),
        per_question,
    }
}

/// Renders the comparison table plus a per-question diff of the
/// questions where the methods disagree.
pub fn compare_methods(r1: &EvalReport, r2: &EvalReport) -> Result<String, EvalError> {
    if r1.per_question.len() != r2.per_question.len()
        || r1
            .per_question
            .iter()
            .zip(&r2.per_question)
            .any(|(a, b)| a.question != b.question)
    {
        return Err(EvalError::SuiteMismatch);
    }
    let mut out = String::new();
    out.push_str("Results of comparison (macro-averaged set precision/recall/F per question)\n\n");
    out.push_str(&format!(
        "{:<36}{:>10}{:>10}{:>12}\n",
        "Method", "Precision", "Recall", "F-Measure"
    ));
    for r in [r1, r2] {
        out.push_str(&format!(
            "{:<36}{:>10.2}{:>10.2}{:>12.2}\n",
            r.method.label(),
            r.aggregate.precision,
            r.aggregate.recall,
            r.aggregate.f_measure
        ));
    }
    let disagreements: Vec<(&QuestionResult, &QuestionResult)> = r1
        .per_question
        .iter()
        .zip(&r2.per_question)
        .filter(|(a, b)| a.returned != b.returned)
        .collect();
    if disagreements.is_empty() {
        out.push_str("\nThe methods agree on every question.\n");
    } else {
        out.push_str(&format!(
            "\nQuestions where the methods disagree ({}):\n",
            disagreements.len()
        ));
        for (a, b) in disagreements {
            out.push_str(&format!("  {}\n", a.question));
            out.push_str(&format!(
                "    method 1: {}\n",
                render_set(&a.returned, &a.error)
            ));
            out.push_str(&format!(
                "    method 2: {}{}\n",
                render_set(&b.returned, &b.error),
                if b.ambiguous { "  [ambiguous]" } else { "" }
            ));
        }
    }
    Ok(out)
}

fn render_set(set: &[String], error: &Option<String>) -> String {
    match error {
        Some(e) => format!("error: {e}"),
        None if set.is_empty() => "{}".to_string(),
        None => format!("{{{}}}", set.join(", ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    #[test]
    fn perfect_answer_scores_one() {
        let returned: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let gold = returned.clone();
        assert_eq!(score(&returned, &gold), (1.0, 1.0, 1.0));
    }

    #[test]
    fn errors_score_zero_and_metrics_stay_bounded() {
        let suite = parse_suite(r#"{"question": "Zürafalar kaç yıl yaşar mı ?", "gold": ["x"]}"#)
            .unwrap();
        let pipeline = resources::bundled_pipeline();
        let report = run_method1(&suite, &pipeline);
        let row = &report.per_question[0];
        assert_eq!((row.precision, row.recall, row.f_measure), (0.0, 0.0, 0.0));
        for r in &report.per_question {
            for v in [r.precision, r.recall, r.f_measure] {
                assert!((0.0..=1.0).contains(&v));
            }
            let expect_f = if r.precision + r.recall == 0.0 {
                0.0
            } else {
                2.0 * r.precision * r.recall / (r.precision + r.recall)
            };
            assert!((r.f_measure - expect_f).abs() < 1e-12);
        }
    }

    #[test]
    fn comparison_table_mirrors_the_two_method_rows() {
        let mk = |method, p, r, f| EvalReport {
            method,
            aggregate: Aggregate {
                precision: p,
                recall: r,
                f_measure: f,
            },
            per_question: vec![],
        };
        let r1 = mk(MethodId::Hybrid, 0.77, 0.68, 0.71);
        let r2 = mk(MethodId::OntologyOnly, 0.64, 0.57, 0.60);
        let table = compare_methods(&r1, &r2).unwrap();
        assert!(table.contains("Method 1: Hybrid approach"));
        assert!(table.contains("Method 2: Ontology based approach"));
        assert!(table.contains("0.77"));
        assert!(table.contains("0.60"));
        assert!(table.contains("agree on every question"));
    }

    #[test]
    fn mismatched_suites_are_rejected() {
        let row = QuestionResult {
            question: "a".into(),
            returned: vec![],
            gold: vec![],
            precision: 1.0,
            recall: 1.0,
            f_measure: 1.0,
            error: None,
            ambiguous: false,
        };
        let r1 = EvalReport {
            method: MethodId::Hybrid,
            aggregate: Aggregate {
                precision: 1.0,
                recall: 1.0,
                f_measure: 1.0,
            },
            per_question: vec![row.clone()],
        };
        let mut r2 = r1.clone();
        r2.method = MethodId::OntologyOnly;
        r2.per_question[0].question = "b".into();
        assert!(matches!(
            compare_methods(&r1, &r2),
            Err(EvalError::SuiteMismatch)
        ));
    }

    #[test]
    fn malformed_suite_lines_report_the_line() {
        let err = parse_suite("{\"question\": 3}").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}
