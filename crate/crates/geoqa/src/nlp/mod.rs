//! Question pre-processing: tokenization, morphological analysis and
//! disambiguation, gazetteer NER with B/I/O labels, rule-based
//! dependency analysis, and CoNLL-X reading/writing.

pub mod conll;
pub mod dep;
pub mod morph;
pub mod ner;

pub use conll::{read_conll, write_conll};
pub use dep::{parse_dependencies, DepRelation, DepRow};
pub use morph::{analyze, disambiguate, MorphAnalysis, MorphLexicon, Pos};
pub use ner::{tag_entities, EntitySpan, NerLabel};

use thiserror::Error;

use crate::kb::{Iri, KnowledgeBase};

#[derive(Debug, Error)]
pub enum NlpError {
    #[error("empty question")]
    EmptyInput,
    #[error("no predicate found in sentence")]
    NoPredicate,
    #[error("CoNLL-X row {line}: {message}")]
    Conll { line: usize, message: String },
}

/// A surface token with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub index: usize,
}

/// Splits on whitespace and detaches terminal punctuation; apostrophe
/// forms like `Bölgesi'nin` stay intact.
pub fn tokenize(question: &str) -> Result<Vec<Token>, NlpError> {
    if question.trim().is_empty() {
        return Err(NlpError::EmptyInput);
    }
    let mut surfaces = Vec::new();
    for word in question.split_whitespace() {
        let mut word = word.to_string();
        let mut trailing = Vec::new();
        while let Some(last) = word.chars().last() {
            if matches!(last, '?' | '.' | ',' | '!') && word.chars().count() > 1 {
                trailing.push(last.to_string());
                word.pop();
            } else {
                break;
            }
        }
        if !word.is_empty() {
            surfaces.push(word);
        }
        surfaces.extend(trailing.into_iter().rev());
    }
    Ok(surfaces
        .into_iter()
        .enumerate()
        .map(|(i, surface)| Token {
            surface,
            index: i + 1,
        })
        .collect())
}

/// Everything the pre-processing layer produces for one question.
#[derive(Debug, Clone)]
pub struct AnnotatedSentence {
    pub tokens: Vec<Token>,
    pub analyses: Vec<MorphAnalysis>,
    pub ner_labels: Vec<NerLabel>,
    pub dep_rows: Vec<DepRow>,
    pub entity_spans: Vec<EntitySpan>,
}

impl AnnotatedSentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Folded lemma of the token at a 1-based index.
    pub fn lemma(&self, index: usize) -> &str {
        self.analyses[index - 1].folded_lemma()
    }

    /// The single resolved entity span, if NER found exactly one.
    pub fn resolved_entity(&self) -> Option<(&EntitySpan, &Iri)> {
        let spans: Vec<&EntitySpan> = self.entity_spans.iter().collect();
        match spans.as_slice() {
            [span] => span.resolved.as_ref().map(|iri| (*span, iri)),
            _ => None,
        }
    }
}

/// Runs the full pre-processing pipeline. `gold_rows` — when a gold
/// CoNLL-X parse is available for this question — replaces the built-in
/// dependency heuristics.
pub fn annotate(
    question: &str,
    lexicon: &MorphLexicon,
    kb: &KnowledgeBase,
    gold_rows: Option<Vec<DepRow>>,
) -> Result<AnnotatedSentence, NlpError> {
    let tokens = tokenize(question)?;
    let all_analyses: Vec<Vec<MorphAnalysis>> = tokens
        .iter()
        .map(|t| analyze(&t.surface, lexicon))
        .collect();
    let analyses = disambiguate(&all_analyses);
    let (ner_labels, entity_spans) = tag_entities(&tokens, &analyses, kb);
    let dep_rows = match gold_rows {
        Some(rows) => rows,
        None => parse_dependencies(&tokens, &analyses)?,
    };
    Ok(AnnotatedSentence {
        tokens,
        analyses,
        ner_labels,
        dep_rows,
        entity_spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_the_neighbour_question_into_eight_tokens() {
        let toks = tokenize("Ankara iline komşu olan illeri gösterir misin ?").unwrap();
        assert_eq!(toks.len(), 8);
        assert_eq!(toks[7].surface, "?");
        assert_eq!(toks[0].index, 1);
    }

    #[test]
    fn keeps_apostrophe_forms_and_detaches_question_marks() {
        let toks = tokenize("Ege Bölgesi'nin yüzölçümü ne kadardır?").unwrap();
        let surfaces: Vec<&str> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(
            surfaces,
            ["Ege", "Bölgesi'nin", "yüzölçümü", "ne", "kadardır", "?"]
        );
    }

    #[test]
    fn lone_question_mark_is_one_token() {
        let toks = tokenize("?").unwrap();
        assert_eq!(toks.len(), 1);
        assert!(tokenize("   ").is_err());
    }
}
