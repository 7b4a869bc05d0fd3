//! Gazetteer-based location tagging. Token lemmas are matched greedily
//! (longest sequence first, left to right) against the knowledge base's
//! gazetteer; matched spans come out in the B-LOCATION / I-LOCATION / O
//! format.

use std::fmt;

use crate::kb::{Iri, KnowledgeBase, LabelLookup};

use super::morph::MorphAnalysis;
use super::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NerLabel {
    BLocation,
    ILocation,
    Outside,
}

impl fmt::Display for NerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NerLabel::BLocation => "B-LOCATION",
            NerLabel::ILocation => "I-LOCATION",
            NerLabel::Outside => "O",
        })
    }
}

/// A maximal B,I* run with its resolution against the gazetteer.
#[derive(Debug, Clone)]
pub struct EntitySpan {
    /// 1-based index of the first token.
    pub start: usize,
    /// 1-based index of the last token (inclusive).
    pub end: usize,
    pub lemmas: Vec<String>,
    /// Surface form of the B token, for filter capitalization.
    pub b_surface: String,
    pub resolved: Option<Iri>,
    /// All candidates when the label is ambiguous.
    pub candidates: Vec<Iri>,
}

impl EntitySpan {
    pub fn is_ambiguous(&self) -> bool {
        self.candidates.len() > 1
    }
}

pub fn tag_entities(
    tokens: &[Token],
    analyses: &[MorphAnalysis],
    kb: &KnowledgeBase,
) -> (Vec<NerLabel>, Vec<EntitySpan>) {
    let lemmas: Vec<String> = analyses
        .iter()
        .map(|a| a.folded_lemma().to_string())
        .collect();
    let mut labels = vec![NerLabel::Outside; tokens.len()];
    let mut spans = Vec::new();

    let mut i = 0;
    while i < lemmas.len() {
        match kb.longest_gazetteer_match(&lemmas[i..]) {
            Some((len, lookup)) => {
                labels[i] = NerLabel::BLocation;
                for label in labels.iter_mut().skip(i + 1).take(len - 1) {
                    *label = NerLabel::ILocation;
                }
                let (resolved, candidates) = match lookup {
                    LabelLookup::Found(iri) => (Some(iri.clone()), vec![iri]),
                    LabelLookup::Ambiguous(c) => (None, c),
                    LabelLookup::NotFound => unreachable!("match implies a key"),
                };
                spans.push(EntitySpan {
                    start: i + 1,
                    end: i + len,
                    lemmas: lemmas[i..i + len].to_vec(),
                    b_surface: tokens[i].surface.clone(),
                    resolved,
                    candidates,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    (labels, spans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlp::{analyze, disambiguate, tokenize};
    use crate::resources;

    fn tag(question: &str) -> (Vec<NerLabel>, Vec<EntitySpan>) {
        let kb = resources::bundled_kb();
        let lex = resources::bundled_lexicon();
        let tokens = tokenize(question).unwrap();
        let all: Vec<_> = tokens.iter().map(|t| analyze(&t.surface, &lex)).collect();
        let analyses = disambiguate(&all);
        tag_entities(&tokens, &analyses, &kb)
    }

    #[test]
    fn ankara_is_a_single_token_location() {
        let (labels, spans) = tag("Ankara iline komşu olan illeri gösterir misin ?");
        let rendered: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["B-LOCATION", "O", "O", "O", "O", "O", "O", "O"]);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].resolved, Some(Iri::ins("Ankara")));
    }

    #[test]
    fn ege_bolgesi_spans_two_tokens() {
        let (labels, spans) = tag("Ege Bölgesi'nin yüzölçümü ne kadardır ?");
        let rendered: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["B-LOCATION", "I-LOCATION", "O", "O", "O", "O"]);
        assert_eq!(spans[0].resolved, Some(Iri::ins("EgeBolgesi")));
        assert_eq!(spans[0].b_surface, "Ege");
    }

    #[test]
    fn no_gazetteer_hit_means_all_outside() {
        let (labels, spans) = tag("Zürafalar kaç yıl yaşar ?");
        assert!(labels.iter().all(|l| matches!(l, NerLabel::Outside)));
        assert!(spans.is_empty());
    }

    #[test]
    fn bio_labels_are_well_formed() {
        for q in [
            "Akdeniz Bölgesi'nde bulunan dağları gösterir misin ?",
            "Van Gölü'nün derinliği ne kadardır ?",
            "İstanbul Boğazı'nın uzunluğu ne kadardır ?",
        ] {
            let (labels, _) = tag(q);
            for (i, l) in labels.iter().enumerate() {
                if matches!(l, NerLabel::ILocation) {
                    assert!(i > 0, "I-LOCATION at sentence start in {q}");
                    assert!(
                        !matches!(labels[i - 1], NerLabel::Outside),
                        "I-LOCATION after O in {q}"
                    );
                }
            }
        }
    }
}
