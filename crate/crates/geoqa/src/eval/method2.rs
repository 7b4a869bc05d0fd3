//! The ontology-only baseline. Every token lemma is looked up in the
//! lexicalization table; the first matched class (token order) becomes
//! the target, the first matched individual the entity, the first
//! matched data property the measurement, and the first declared
//! property connecting the entity's class to the target fills the
//! pattern. No dependency or NER information is consulted, which is
//! exactly what makes possessive questions come out wrong.

use crate::formulation::qt1::{
    shape_entity_value, shape_two_class, shape_two_class_value, Orientation,
};
use crate::formulation::{
    instantiate_template, is_quantitative, FormulationError, FunctionName, QueryFrame,
    SuperlativeLexicon,
};
use crate::kb::{AxiomKind, Iri, KnowledgeBase};
use crate::nlp::AnnotatedSentence;
use crate::sparql::SelectQuery;

/// What the baseline derived from bare token matching.
#[derive(Debug, Clone)]
pub struct BaselineReading {
    pub query: SelectQuery,
    /// Distinct candidate properties across all matched classes; more
    /// than one marks the reading as ambiguous.
    pub eligible_properties: Vec<Iri>,
}

impl BaselineReading {
    pub fn is_ambiguous(&self) -> bool {
        self.eligible_properties.len() > 1
    }
}

struct Matches {
    classes: Vec<Iri>,
    individual: Option<Iri>,
    data_property: Option<Iri>,
    object_property: Option<Iri>,
}

fn token_matches(sentence: &AnnotatedSentence, kb: &KnowledgeBase) -> Matches {
    let mut m = Matches {
        classes: Vec::new(),
        individual: None,
        data_property: None,
        object_property: None,
    };
    for i in 1..=sentence.len() {
        for (kind, target) in kb.check_axiom_all(sentence.lemma(i)) {
            match kind {
                AxiomKind::Class => {
                    if !m.classes.contains(&target) {
                        m.classes.push(target);
                    }
                }
                AxiomKind::Individual => {
                    if m.individual.is_none() {
                        m.individual = Some(target);
                    }
                }
                AxiomKind::DataProperty => {
                    if m.data_property.is_none() {
                        m.data_property = Some(target);
                    }
                }
                AxiomKind::ObjectProperty => {
                    if m.object_property.is_none() {
                        m.object_property = Some(target);
                    }
                }
            }
        }
    }
    m
}

/// All distinct properties connecting the entity's class to any matched
/// class, in schema declaration order, inverse pairs collapsed onto the
/// first-declared side.
fn eligible_properties(kb: &KnowledgeBase, entity_class: &Iri, classes: &[Iri]) -> Vec<Iri> {
    let entity_set = kb.schema.class_and_superclasses(entity_class);
    let mut out: Vec<Iri> = Vec::new();
    for prop in &kb.schema.object_properties {
        let connects = classes.iter().any(|c| {
            let class_set = kb.schema.class_and_superclasses(c);
            prop.pairs.iter().any(|(a, b)| {
                (entity_set.contains(a) && class_set.contains(b))
                    || (class_set.contains(a) && entity_set.contains(b))
            })
        });
        if !connects {
            continue;
        }
        let representative = match &prop.inverse_of {
            Some(inv) => {
                let inv_pos = kb
                    .schema
                    .object_properties
                    .iter()
                    .position(|p| &p.name == inv);
                let own_pos = kb
                    .schema
                    .object_properties
                    .iter()
                    .position(|p| p.name == prop.name);
                match (own_pos, inv_pos) {
                    (Some(o), Some(i)) if i < o => inv.clone(),
                    _ => prop.name.clone(),
                }
            }
            None => prop.name.clone(),
        };
        if !out.contains(&representative) {
            out.push(representative);
        }
    }
    out
}

/// Template-oriented connecting property: first declared pair running
/// target -> entity; failing that, the inverse of an entity -> target
/// pair.
fn template_property(kb: &KnowledgeBase, target: &Iri, entity_class: &Iri) -> Option<Iri> {
    if let Some(p) = kb.connecting_property_oriented(target, entity_class) {
        return Some(p);
    }
    let reverse = kb.connecting_property_oriented(entity_class, target)?;
    kb.schema
        .object_property(&reverse)
        .and_then(|d| d.inverse_of.clone())
}

/// Runs the baseline on an annotated sentence.
pub fn formulate_baseline(
    sentence: &AnnotatedSentence,
    superlatives: &SuperlativeLexicon,
    kb: &KnowledgeBase,
) -> Result<BaselineReading, FormulationError> {
    let m = token_matches(sentence, kb);
    let entity = m.individual.clone().ok_or_else(|| {
        FormulationError::UnresolvableFrame("no token matches an individual".into())
    })?;
    let entity_class = kb.entity_class_of(&entity)?;
    let filter = entity_filter_literal(sentence, kb, &entity);
    let eligible = eligible_properties(kb, &entity_class, &m.classes);

    if is_quantitative(sentence, kb) {
        let frame = baseline_frame(sentence, superlatives, kb, &m, &entity_class, &filter)?;
        let query = instantiate_template(&frame)?;
        return Ok(BaselineReading {
            query,
            eligible_properties: eligible,
        });
    }

    let target = m.classes.first().cloned();
    let entity_reading = target.is_none() || target.as_ref() == Some(&entity_class);
    let query = match (&m.data_property, target) {
        (Some(dp), _) if entity_reading => {
            // the Ege-population misreading: the data property is read
            // off the entity itself
            let decl = kb
                .schema
                .data_property(dp)
                .ok_or_else(|| FormulationError::UnresolvableFrame(format!("unknown {dp}")))?;
            let classes = kb.schema.class_and_superclasses(&entity_class);
            if !decl.domains.iter().any(|d| classes.contains(d)) {
                return Err(FormulationError::UnresolvableFrame(format!(
                    "{dp} does not apply to {entity_class}"
                )));
            }
            shape_entity_value(&entity_class, dp, &filter)
        }
        (Some(dp), Some(target)) => {
            let prop = template_property(kb, &target, &entity_class).ok_or_else(|| {
                FormulationError::UnresolvableFrame(format!(
                    "no property connects {target} and {entity_class}"
                ))
            })?;
            shape_two_class_value(
                &target,
                &entity_class,
                &prop,
                Orientation::EntityAsObject,
                dp,
                &filter,
            )
        }
        (None, Some(target)) => {
            let prop = first_connecting(kb, &target, &entity_class).ok_or_else(|| {
                FormulationError::UnresolvableFrame(format!(
                    "no property connects {target} and {entity_class}"
                ))
            })?;
            shape_two_class(
                &target,
                &entity_class,
                &prop,
                Orientation::EntityAsObject,
                &filter,
            )
        }
        (Some(_), None) | (None, None) => {
            return Err(FormulationError::UnresolvableFrame(
                "no class or data property matched".into(),
            ))
        }
    };
    Ok(BaselineReading {
        query,
        eligible_properties: eligible,
    })
}

/// First declared property with a pair connecting target and entity
/// class in the template orientation (target as subject); symmetric
/// properties qualify from either side.
fn first_connecting(kb: &KnowledgeBase, target: &Iri, entity_class: &Iri) -> Option<Iri> {
    template_property(kb, target, entity_class)
}

fn baseline_frame(
    sentence: &AnnotatedSentence,
    superlatives: &SuperlativeLexicon,
    kb: &KnowledgeBase,
    m: &Matches,
    entity_class: &Iri,
    filter: &str,
) -> Result<QueryFrame, FormulationError> {
    let mut frame = QueryFrame {
        entity_class: Some(entity_class.clone()),
        named_entity_filter: Some(filter.to_string()),
        target_class: m.classes.first().cloned(),
        data_property: None,
        object_property: None,
        function_name: None,
    };
    let lemmas: Vec<&str> = (1..=sentence.len()).map(|i| sentence.lemma(i)).collect();
    if lemmas.contains(&"toplam") {
        frame.function_name = Some(FunctionName::Sum);
        frame.data_property = m.data_property.clone();
    } else if lemmas.contains(&"kaç") {
        frame.function_name = Some(FunctionName::Count);
    } else if let Some((dp, pol)) = lemmas.iter().find_map(|l| superlatives.lookup(l)) {
        frame.function_name = Some(pol.function());
        frame.data_property = dp.clone().or_else(|| m.data_property.clone());
    } else {
        frame.function_name = Some(FunctionName::Sum);
        frame.data_property = m.data_property.clone();
    }
    let target = frame
        .target_class
        .clone()
        .ok_or_else(|| FormulationError::UnresolvableFrame("no class token matched".into()))?;
    frame.object_property = template_property(kb, &target, entity_class);
    if frame.object_property.is_none() {
        return Err(FormulationError::UnresolvableFrame(format!(
            "no property connects {target} and {entity_class}"
        )));
    }
    Ok(frame)
}

/// The baseline's filter literal: the folded lemma of the first token
/// that matched the individual.
fn entity_filter_literal(sentence: &AnnotatedSentence, kb: &KnowledgeBase, entity: &Iri) -> String {
    for i in 1..=sentence.len() {
        let lemma = sentence.lemma(i);
        if kb
            .check_axiom_all(lemma)
            .iter()
            .any(|(k, t)| *k == AxiomKind::Individual && t == entity)
        {
            return lemma.to_string();
        }
    }
    entity.local.clone()
}
