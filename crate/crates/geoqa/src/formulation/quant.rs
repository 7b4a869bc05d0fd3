//! Question-type detection: does the sentence require quantitative
//! reasoning (QT2) or not (QT1)?

use crate::kb::{AxiomKind, KnowledgeBase};
use crate::nlp::{AnnotatedSentence, DepRelation, Pos};

/// True when the sentence carries a quantitative-reasoning expression:
/// "kaç" / "kaç tane", "toplam", "ne kadar", or "en" followed by an
/// Adjective+Noun, Adverb+Adjective or Adverb+Noun bigram.
///
/// Two copular forms route back to QT1: "ne kadardır" and "kaçtır"
/// asking for the *value* of a data property rather than a count — the
/// subject (or the preceding token) is then a data-property lemma.
pub fn is_quantitative(sentence: &AnnotatedSentence, kb: &KnowledgeBase) -> bool {
    let n = sentence.len();
    let lemma = |i: usize| sentence.lemma(i + 1);
    let is_data_property = |l: &str| {
        matches!(
            kb.check_axiom_type(l),
            Some((AxiomKind::DataProperty, _))
        )
    };
    let subject_is_data_property = sentence.dep_rows.iter().any(|r| {
        r.relation == DepRelation::Subject && is_data_property(&crate::turkish::fold(&r.lemma))
    });

    for i in 0..n {
        let a = &sentence.analyses[i];
        match lemma(i) {
            "kaç" => {
                // "nüfusu kaçtır?" asks for a value, not a count
                let value_question = a.is_copular()
                    && i > 0
                    && is_data_property(lemma(i - 1));
                if !value_question {
                    return true;
                }
            }
            "toplam" => return true,
            "ne" if i + 1 < n && lemma(i + 1) == "kadar" => {
                // "ne kadardır?" over a data-property subject is a
                // QT1 value lookup; bare "ne kadar" quantifies
                let kadar = &sentence.analyses[i + 1];
                if !(kadar.is_copular() && subject_is_data_property) {
                    return true;
                }
            }
            "en" if i + 2 < n => {
                let first = sentence.analyses[i + 1].pos;
                let second = sentence.analyses[i + 2].pos;
                let bigram_matches = matches!(
                    (first, second),
                    (Pos::Adj, Pos::Noun) | (Pos::Adv, Pos::Adj) | (Pos::Adv, Pos::Noun)
                );
                if bigram_matches {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    fn quant(q: &str) -> bool {
        let kb = resources::bundled_kb();
        let lex = resources::bundled_lexicon();
        let s = crate::nlp::annotate(q, &lex, &kb, None).unwrap();
        is_quantitative(&s, &kb)
    }

    #[test]
    fn superlative_bigram_routes_to_qt2() {
        assert!(quant("Türkiye'nin en derin denizi hangisidir ?"));
    }

    #[test]
    fn the_neighbour_question_stays_qt1() {
        assert!(!quant("Ankara iline komşu olan illeri gösterir misin ?"));
    }

    #[test]
    fn plain_sentences_are_not_quantitative() {
        assert!(!quant("Türkiye'deki şehirleri listeler misin ?"));
    }

    #[test]
    fn kadardir_over_a_data_property_subject_is_a_value_question() {
        assert!(!quant("Ege Bölgesi'nin yüzölçümü ne kadardır ?"));
        assert!(!quant("Bozcaada'nın nüfusu kaçtır ?"));
    }

    #[test]
    fn counting_and_totalling_are_quantitative() {
        assert!(quant("Ege Bölgesi'nde kaç şehir vardır ?"));
        assert!(quant("Ege Bölgesi'ndeki şehirlerin toplam nüfusu nedir ?"));
    }
}
