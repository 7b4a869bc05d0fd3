//! Frame classification for quantitative questions. The default
//! classifier is rule based: the superlative/quantifier lexicon gives
//! the aggregate function and data property, the matched bigram's noun
//! gives the target class, NER gives the entity class, and the schema
//! gives the connecting object property in template orientation
//! (target as pattern subject, entity as pattern object).

use crate::kb::{AxiomKind, Iri, KnowledgeBase};
use crate::nlp::AnnotatedSentence;
use crate::turkish;

use super::{FormulationError, FunctionName, QueryFrame, SuperlativeLexicon};

/// A pluggable QT2 classifier; the trained perceptron implements this
/// too.
pub trait Qt2Classifier {
    fn classify(
        &self,
        sentence: &AnnotatedSentence,
        kb: &KnowledgeBase,
    ) -> Result<QueryFrame, FormulationError>;
}

pub struct RuleBasedClassifier {
    pub superlatives: SuperlativeLexicon,
}

impl Qt2Classifier for RuleBasedClassifier {
    fn classify(
        &self,
        sentence: &AnnotatedSentence,
        kb: &KnowledgeBase,
    ) -> Result<QueryFrame, FormulationError> {
        classify_qt2(sentence, &self.superlatives, kb)
    }
}

pub fn classify_qt2(
    sentence: &AnnotatedSentence,
    superlatives: &SuperlativeLexicon,
    kb: &KnowledgeBase,
) -> Result<QueryFrame, FormulationError> {
    let (entity, filter) = entity_of(sentence)?;
    let entity_class = kb.entity_class_of(&entity)?;

    let mut frame = QueryFrame {
        entity_class: Some(entity_class.clone()),
        named_entity_filter: Some(filter),
        ..QueryFrame::default()
    };

    let n = sentence.len();
    let lemma = |i: usize| sentence.lemma(i + 1);
    let class_of = |l: &str| match kb.check_axiom_type(l) {
        Some((AxiomKind::Class, c)) => Some(c),
        _ => None,
    };
    let data_prop_of = |l: &str| match kb.check_axiom_type(l) {
        Some((AxiomKind::DataProperty, p)) => Some(p),
        _ => None,
    };

    // superlative: "en" + bigram
    let en = (0..n).find(|&i| lemma(i) == "en");
    if let Some(i) = en {
        let candidates = [i + 1, i + 2];
        let entry = candidates
            .iter()
            .filter(|&&j| j < n)
            .find_map(|&j| superlatives.lookup(lemma(j)).map(|e| (j, e)));
        let (_, (sup_dp, polarity)) = entry.ok_or_else(|| {
            FormulationError::UnresolvableFrame(
                "superlative expression without a known adjective".into(),
            )
        })?;
        frame.function_name = Some(polarity.function());

        // the bigram noun: a class makes it the target, a data-property
        // lemma supplies the measurement
        let noun = candidates
            .iter()
            .filter(|&&j| j < n)
            .chain([i + 2].iter().filter(|&&j| j < n))
            .find_map(|&j| {
                class_of(lemma(j))
                    .map(|c| (j, Some(c), None))
                    .or_else(|| data_prop_of(lemma(j)).map(|p| (j, None, Some(p))))
            });
        match noun {
            Some((_, Some(class), _)) => {
                frame.target_class = Some(class);
                frame.data_property = sup_dp.clone();
            }
            Some((_, _, Some(dp))) => {
                frame.data_property = Some(dp);
                // "en fazla yağış alan il": the class may follow later
                frame.target_class = (i + 2..n).find_map(|j| class_of(lemma(j)));
            }
            _ => {
                frame.data_property = sup_dp.clone();
            }
        }
        if frame.data_property.is_none() {
            return Err(FormulationError::UnresolvableFrame(
                "superlative question without a measurable data property".into(),
            ));
        }
        if frame.target_class.is_none() {
            // fall back to the data property's first declared domain
            let dp = frame.data_property.as_ref().unwrap();
            frame.target_class = kb
                .schema
                .data_property(dp)
                .and_then(|d| d.domains.first().cloned());
        }
    } else if let Some(i) = (0..n).find(|&i| lemma(i) == "toplam") {
        frame.function_name = Some(FunctionName::Sum);
        frame.data_property = (i + 1..n)
            .chain(0..i)
            .find_map(|j| data_prop_of(lemma(j)));
        // the summed class is the one the quantifier leans on:
        // "şehirlerin toplam nüfusu" sums over cities, not the region
        frame.target_class = (0..n)
            .filter(|&j| class_of(lemma(j)).is_some())
            .min_by_key(|&j| (j as isize - i as isize).unsigned_abs())
            .and_then(|j| class_of(lemma(j)));
        if frame.data_property.is_none() {
            return Err(FormulationError::UnresolvableFrame(
                "nothing to sum over".into(),
            ));
        }
    } else if let Some(i) = (0..n).find(|&i| lemma(i) == "kaç") {
        frame.function_name = Some(FunctionName::Count);
        for j in i + 1..n {
            let l = lemma(j);
            if l == "tane" {
                continue;
            }
            if let Some(c) = class_of(l) {
                frame.target_class = Some(c);
                break;
            }
            if let Some((AxiomKind::ObjectProperty, op)) = kb.check_axiom_type(l) {
                // "kaç komşusu vardır": count over the neighbour property
                frame.object_property = Some(op);
                frame.target_class = Some(entity_class.clone());
                break;
            }
        }
        if frame.target_class.is_none() {
            return Err(FormulationError::UnresolvableFrame(
                "nothing to count".into(),
            ));
        }
    } else if (0..n.saturating_sub(1)).any(|i| lemma(i) == "ne" && lemma(i + 1) == "kadar") {
        frame.function_name = Some(FunctionName::Sum);
        frame.data_property = (0..n).find_map(|j| data_prop_of(lemma(j)));
        frame.target_class = (0..n).find_map(|j| class_of(lemma(j)));
        if frame.data_property.is_none() {
            return Err(FormulationError::UnresolvableFrame(
                "nothing to sum over".into(),
            ));
        }
    } else {
        return Err(FormulationError::UnresolvableFrame(
            "no quantitative expression found".into(),
        ));
    }

    if frame.object_property.is_none() {
        let target = frame.target_class.as_ref().unwrap();
        frame.object_property = kb.connecting_property_oriented(target, &entity_class);
        if frame.object_property.is_none() {
            return Err(FormulationError::UnresolvableFrame(format!(
                "no object property connects {target} and {entity_class}"
            )));
        }
    }
    Ok(frame)
}

/// The single resolved entity span, as (individual, filter literal).
/// The QT2 filter literal is the folded lemma of the span's B token.
fn entity_of(sentence: &AnnotatedSentence) -> Result<(Iri, String), FormulationError> {
    match sentence.entity_spans.as_slice() {
        [] => Err(FormulationError::UnresolvableFrame(
            "no named entity in the sentence".into(),
        )),
        [span] => {
            if span.is_ambiguous() {
                return Err(FormulationError::AmbiguousEntity(span.candidates.clone()));
            }
            let iri = span.resolved.clone().ok_or_else(|| {
                FormulationError::UnresolvableFrame("entity span did not resolve".into())
            })?;
            Ok((iri, turkish::fold(&span.lemmas[0])))
        }
        _ => Err(FormulationError::MultipleEntities),
    }
}
