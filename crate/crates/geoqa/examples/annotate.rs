//! Prints the pipeline's view of a question: tokens with lemmas and
//! features, entity spans, the dependency table, the generated query
//! and the answers.
//!
//!     cargo run -p geoqa --example annotate -- "İzmir'de kaç ilçe vardır ?"

use geoqa::nlp::write_conll;
use geoqa::resources;

fn main() {
    let question = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?".into());
    let pipeline = resources::bundled_pipeline();

    match pipeline.answer(&question) {
        Ok(answer) => {
            println!("question: {question}\n");
            for (token, analysis) in answer.sentence.tokens.iter().zip(&answer.sentence.analyses) {
                println!(
                    "  {:<2} {:<16} {}+{}+{}",
                    token.index,
                    token.surface,
                    analysis.lemma,
                    analysis.pos,
                    analysis.feats_string()
                );
            }
            println!();
            for span in &answer.sentence.entity_spans {
                println!(
                    "  entity {:?} -> {}",
                    span.lemmas,
                    span.resolved
                        .as_ref()
                        .map(|i| i.to_string())
                        .unwrap_or_else(|| "unresolved".into())
                );
            }
            println!("\n{}", write_conll(std::slice::from_ref(&answer.sentence.dep_rows)));
            if let Some(frame) = &answer.frame {
                println!("frame: {frame:?}\n");
            }
            println!("{}", answer.query_text);
            for row in &answer.solutions.rows {
                let cells: Vec<String> = row.values().map(|t| t.canonical()).collect();
                println!("  {}", cells.join("\t"));
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
