//! The dependency-and-ontology-driven formulation algorithm for
//! informative questions.
//!
//! The answer type comes from the OBJECT relation when present, from
//! the SUBJECT otherwise. Its axiom type then decides the route:
//! a class looks up connecting properties; a data property walks to the
//! related (possessor/modifier) token and re-enters; an object property
//! anchors the pattern and takes its target from the common-connected
//! token; an individual re-enters through its governor. Recursion
//! carries a visited set and gives up after five re-entries.

use std::collections::BTreeSet;

use crate::kb::{AxiomKind, Direction, Iri, KnowledgeBase};
use crate::nlp::{AnnotatedSentence, DepRelation, EntitySpan};
use crate::sparql::{
    GroupItem, PatternNode, Projection, RegexFilter, SelectQuery, TriplePattern, Var,
};
use crate::turkish;

use super::FormulationError;

const MAX_REENTRIES: usize = 5;

/// Which side of the emitted `?y <prop> ?x` pattern the entity takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `?y` is the entity's variable (its class is the declared domain).
    EntityAsSubject,
    /// `?x` is the entity's variable — the generic pattern of the
    /// two-class template, also right for symmetric properties.
    EntityAsObject,
}

fn type_pattern(var: &str, class: &Iri) -> GroupItem {
    GroupItem::Pattern(TriplePattern::new(
        PatternNode::var(var),
        Iri::rdf_type(),
        PatternNode::iri(class.clone()),
    ))
}

fn prop_pattern(prop: &Iri) -> GroupItem {
    GroupItem::Pattern(TriplePattern::new(
        PatternNode::var("y"),
        prop.clone(),
        PatternNode::var("x"),
    ))
}

fn filter_on(var: &str, literal: &str) -> GroupItem {
    GroupItem::Filter(RegexFilter {
        var: Var::new(var),
        pattern: literal.to_string(),
        flags: "i".to_string(),
    })
}

/// Two-class pattern without a data property (the neighbour shape).
pub fn shape_two_class(
    target: &Iri,
    entity_class: &Iri,
    prop: &Iri,
    orientation: Orientation,
    filter_literal: &str,
) -> SelectQuery {
    match orientation {
        Orientation::EntityAsObject => SelectQuery {
            projection: Projection::Vars(vec![Var::new("y")]),
            group: vec![
                type_pattern("x", entity_class),
                type_pattern("y", target),
                prop_pattern(prop),
                filter_on("x", filter_literal),
            ],
        },
        Orientation::EntityAsSubject => SelectQuery {
            projection: Projection::Vars(vec![Var::new("x")]),
            group: vec![
                type_pattern("x", target),
                type_pattern("y", entity_class),
                prop_pattern(prop),
                filter_on("y", filter_literal),
            ],
        },
    }
}

/// Single-class pattern: a data property of the entity itself.
pub fn shape_entity_value(
    entity_class: &Iri,
    data_property: &Iri,
    filter_literal: &str,
) -> SelectQuery {
    SelectQuery {
        projection: Projection::Vars(vec![Var::new("variable")]),
        group: vec![
            type_pattern("x", entity_class),
            GroupItem::Pattern(TriplePattern::new(
                PatternNode::var("x"),
                data_property.clone(),
                PatternNode::var("variable"),
            )),
            filter_on("x", filter_literal),
        ],
    }
}

/// Two-class pattern plus a data property on the target (the
/// populations-of-cities shape).
pub fn shape_two_class_value(
    target: &Iri,
    entity_class: &Iri,
    prop: &Iri,
    orientation: Orientation,
    data_property: &Iri,
    filter_literal: &str,
) -> SelectQuery {
    let (target_var, entity_var) = match orientation {
        Orientation::EntityAsSubject => ("x", "y"),
        Orientation::EntityAsObject => ("y", "x"),
    };
    let mut group = match orientation {
        Orientation::EntityAsSubject => vec![
            type_pattern("x", target),
            type_pattern("y", entity_class),
        ],
        Orientation::EntityAsObject => vec![
            type_pattern("x", entity_class),
            type_pattern("y", target),
        ],
    };
    group.push(prop_pattern(prop));
    group.push(GroupItem::Pattern(TriplePattern::new(
        PatternNode::var(target_var),
        data_property.clone(),
        PatternNode::var("variable"),
    )));
    group.push(filter_on(entity_var, filter_literal));
    SelectQuery {
        projection: Projection::Vars(vec![Var::new("variable")]),
        group,
    }
}

/// Filter literal for a resolved span: the B token's lemma, carrying
/// the surface capitalization ("ankara" -> "Ankara").
pub fn filter_literal(span: &EntitySpan) -> String {
    let lemma = &span.lemmas[0];
    if turkish::starts_uppercase(&span.b_surface) {
        turkish::capitalize_first(lemma)
    } else {
        lemma.clone()
    }
}

/// Orientation for a property connecting the entity's class set to the
/// target class: symmetric properties keep the generic entity-as-object
/// layout, otherwise the declared pair decides.
fn orientation_for(
    kb: &KnowledgeBase,
    prop: &Iri,
    target: &Iri,
    entity_classes: &[Iri],
) -> Orientation {
    let decl = match kb.schema.object_property(prop) {
        Some(d) => d,
        None => return Orientation::EntityAsObject,
    };
    if decl.symmetric {
        return Orientation::EntityAsObject;
    }
    let entity_subject = decl
        .pairs
        .iter()
        .any(|(a, b)| entity_classes.contains(a) && b == target);
    if entity_subject {
        Orientation::EntityAsSubject
    } else {
        Orientation::EntityAsObject
    }
}

struct Resolver<'a> {
    sentence: &'a AnnotatedSentence,
    kb: &'a KnowledgeBase,
    entity: Option<(Iri, String)>,
    visited: BTreeSet<usize>,
    reentries: usize,
}

pub fn generate_sparql_qt1(
    sentence: &AnnotatedSentence,
    kb: &KnowledgeBase,
) -> Result<SelectQuery, FormulationError> {
    let entity = resolve_entity(sentence)?;
    let answer = sentence
        .dep_rows
        .iter()
        .find(|r| r.relation == DepRelation::Object)
        .or_else(|| {
            sentence
                .dep_rows
                .iter()
                .find(|r| r.relation == DepRelation::Subject)
        })
        .ok_or(FormulationError::NoAnswerType)?;

    let mut resolver = Resolver {
        sentence,
        kb,
        entity,
        visited: BTreeSet::new(),
        reentries: 0,
    };
    resolver.resolve(answer.id, None)
}

/// NER picked at most one span; ambiguity and multi-entity questions
/// are rejected here.
fn resolve_entity(
    sentence: &AnnotatedSentence,
) -> Result<Option<(Iri, String)>, FormulationError> {
    match sentence.entity_spans.as_slice() {
        [] => Ok(None),
        [span] => {
            if span.is_ambiguous() {
                return Err(FormulationError::AmbiguousEntity(span.candidates.clone()));
            }
            match &span.resolved {
                Some(iri) => Ok(Some((iri.clone(), filter_literal(span)))),
                None => Ok(None),
            }
        }
        _ => Err(FormulationError::MultipleEntities),
    }
}

impl<'a> Resolver<'a> {
    fn resolve(
        &mut self,
        token_id: usize,
        pending_data: Option<Iri>,
    ) -> Result<SelectQuery, FormulationError> {
        if !self.visited.insert(token_id) || self.reentries > MAX_REENTRIES {
            return Err(FormulationError::RecursionLimit);
        }
        self.reentries += 1;

        let lemma = self.sentence.lemma(token_id).to_string();
        match self.kb.check_axiom_type(&lemma) {
            Some((AxiomKind::Class, class)) => self.formulate_class(token_id, &class, pending_data),
            Some((AxiomKind::DataProperty, dp)) => {
                if pending_data.is_some() {
                    return Err(FormulationError::UnresolvableFrame(format!(
                        "two data properties in one chain at `{lemma}`"
                    )));
                }
                match self.related_token(token_id) {
                    Some(related) => self.resolve(related, Some(dp)),
                    None => self.formulate_entity_value(&dp),
                }
            }
            Some((AxiomKind::ObjectProperty, op)) => {
                self.formulate_object_property(token_id, &op)
            }
            Some((AxiomKind::Individual, ind)) => {
                if self.entity.is_none() {
                    let label = self
                        .kb
                        .label_of(&ind)
                        .map(|l| l.split_whitespace().next().unwrap_or(l).to_string())
                        .unwrap_or_else(|| ind.local.clone());
                    self.entity = Some((ind.clone(), label));
                }
                // a data-property chain that lands on the entity itself
                // asks for that entity's value
                if let Some(dp) = pending_data {
                    return self.formulate_entity_value(&dp);
                }
                let governor = self.sentence.dep_rows[token_id - 1].head;
                if governor == 0 {
                    return Err(FormulationError::UnresolvableFrame(format!(
                        "individual `{lemma}` has no governing token to re-enter through"
                    )));
                }
                self.resolve(governor, None)
            }
            None => Err(FormulationError::UnresolvableFrame(format!(
                "`{lemma}` maps to no ontology axiom"
            ))),
        }
    }

    /// CLASS branch: connect the answer class to the entity and emit a
    /// two-class shape; with a pending data property the entity-value or
    /// target-value shape applies instead.
    fn formulate_class(
        &mut self,
        token_id: usize,
        class: &Iri,
        pending_data: Option<Iri>,
    ) -> Result<SelectQuery, FormulationError> {
        let (entity, literal) = self.require_entity()?;
        let entity_class = self.kb.entity_class_of(&entity)?;

        if let Some(dp) = pending_data {
            if *class == entity_class {
                return self.formulate_entity_value(&dp);
            }
            let matches = self.kb.find_properties(class, &entity)?;
            let m = matches.first().ok_or_else(|| {
                FormulationError::UnresolvableFrame(format!(
                    "no property connects {entity_class} and {class}"
                ))
            })?;
            let entity_classes = self.kb.schema.class_and_superclasses(&entity_class);
            let orientation = match m.direction {
                Direction::Forward => orientation_for(self.kb, &m.property, class, &entity_classes),
                Direction::Reverse => Orientation::EntityAsObject,
            };
            return Ok(shape_two_class_value(
                class,
                &entity_class,
                &m.property,
                orientation,
                &dp,
                &literal,
            ));
        }

        let matches = self.kb.find_properties(class, &entity)?;
        match matches.first() {
            Some(m) => {
                let entity_classes = self.kb.schema.class_and_superclasses(&entity_class);
                let orientation = match m.direction {
                    Direction::Forward => {
                        orientation_for(self.kb, &m.property, class, &entity_classes)
                    }
                    Direction::Reverse => Orientation::EntityAsObject,
                };
                Ok(shape_two_class(
                    class,
                    &entity_class,
                    &m.property,
                    orientation,
                    &literal,
                ))
            }
            None => {
                // re-enter through the common-connected token
                match self.connected_candidates(token_id).into_iter().next() {
                    Some(next) => self.resolve(next, None),
                    None => Err(FormulationError::UnresolvableFrame(format!(
                        "no property connects {entity_class} and {class}, and no \
                         common-connected token remains"
                    ))),
                }
            }
        }
    }

    /// DATA PROPERTY chain ended on the entity itself.
    fn formulate_entity_value(&mut self, dp: &Iri) -> Result<SelectQuery, FormulationError> {
        let (entity, literal) = self.require_entity()?;
        let entity_class = self.kb.entity_class_of(&entity)?;
        let classes = self.kb.schema.class_and_superclasses(&entity_class);
        let decl = self
            .kb
            .schema
            .data_property(dp)
            .ok_or_else(|| FormulationError::UnresolvableFrame(format!("unknown property {dp}")))?;
        if !decl.domains.iter().any(|d| classes.contains(d)) {
            return Err(FormulationError::UnresolvableFrame(format!(
                "property {dp} does not apply to {entity_class}"
            )));
        }
        Ok(shape_entity_value(&entity_class, dp, &literal))
    }

    /// OBJECT PROPERTY branch: the property is fixed; the target class
    /// comes from the common-connected token.
    fn formulate_object_property(
        &mut self,
        token_id: usize,
        op: &Iri,
    ) -> Result<SelectQuery, FormulationError> {
        let (entity, literal) = self.require_entity()?;
        let entity_class = self.kb.entity_class_of(&entity)?;
        let entity_classes = self.kb.schema.class_and_superclasses(&entity_class);

        let mut target = None;
        for candidate in self.connected_candidates(token_id) {
            let lemma = self.sentence.lemma(candidate).to_string();
            if let Some((AxiomKind::Class, class)) = self.kb.check_axiom_type(&lemma) {
                target = Some(class);
                break;
            }
        }
        let target = match target {
            Some(t) => t,
            None => {
                let next = self
                    .connected_candidates(token_id)
                    .into_iter()
                    .next()
                    .ok_or(FormulationError::RecursionLimit)?;
                return self.resolve(next, None);
            }
        };
        let orientation = orientation_for(self.kb, op, &target, &entity_classes);
        Ok(shape_two_class(
            &target,
            &entity_class,
            op,
            orientation,
            &literal,
        ))
    }

    fn require_entity(&self) -> Result<(Iri, String), FormulationError> {
        self.entity.clone().ok_or_else(|| {
            FormulationError::UnresolvableFrame("no named entity in the sentence".into())
        })
    }

    /// Nearest token linked to `token_id` by POSSESSOR or MODIFIER, in
    /// either direction.
    fn related_token(&self, token_id: usize) -> Option<usize> {
        let rows = &self.sentence.dep_rows;
        let mut candidates: Vec<usize> = rows
            .iter()
            .filter(|r| {
                !self.visited.contains(&r.id)
                    && matches!(r.relation, DepRelation::Possessor | DepRelation::Modifier)
                    && (r.head == token_id || rows[token_id - 1].head == r.id)
            })
            .map(|r| r.id)
            .collect();
        candidates.sort_by_key(|&id| {
            (
                (id as isize - token_id as isize).unsigned_abs(),
                id > token_id,
            )
        });
        candidates.into_iter().next()
    }

    /// Tokens sharing a governor with `token_id`, governed by it, or
    /// governing it — nearest first, leftward preferred on ties.
    fn connected_candidates(&self, token_id: usize) -> Vec<usize> {
        let rows = &self.sentence.dep_rows;
        let head = rows[token_id - 1].head;
        let mut candidates: Vec<usize> = rows
            .iter()
            .filter(|r| {
                r.id != token_id
                    && !self.visited.contains(&r.id)
                    && r.relation != DepRelation::Punctuation
                    && (r.head == rows[token_id - 1].head
                        || r.head == token_id
                        || r.id == head)
            })
            .map(|r| r.id)
            .collect();
        candidates.sort_by_key(|&id| {
            (
                (id as isize - token_id as isize).unsigned_abs(),
                id > token_id,
            )
        });
        candidates
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;
    use crate::sparql::serialize_bare;

    fn query_text(q: &str) -> String {
        let kb = resources::bundled_kb();
        let lex = resources::bundled_lexicon();
        let s = crate::nlp::annotate(q, &lex, &kb, None).unwrap();
        let query = generate_sparql_qt1(&s, &kb).unwrap();
        serialize_bare(&query).unwrap()
    }

    #[test]
    fn neighbour_sentence_formulates_the_komsu_query() {
        let text = query_text("Ankara iline komşu olan illeri gösterir misin ?");
        assert!(text.contains("?x rdf:type geo_turkce:Sehir ."));
        assert!(text.contains("?y ins:komsu ?x ."));
        assert!(text.contains("FILTER(regex(str(?x),\"Ankara\",\"i\"))"));
        assert!(text.starts_with("SELECT ?y"));
    }

    #[test]
    fn area_sentence_formulates_the_entity_value_query() {
        let text = query_text("Ege Bölgesi'nin yüzölçümü ne kadardır ?");
        assert!(text.starts_with("SELECT ?variable"));
        assert!(text.contains("?x rdf:type geo_turkce:Bolge ."));
        assert!(text.contains("?x ins:yuzolcumu ?variable ."));
        assert!(text.contains("FILTER(regex(str(?x),\"Ege\",\"i\"))"));
    }

    #[test]
    fn population_sentence_formulates_the_two_class_value_query() {
        let text = query_text("Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?");
        assert!(text.starts_with("SELECT ?variable"));
        assert!(text.contains("?x rdf:type geo_turkce:Sehir ."));
        assert!(text.contains("?y rdf:type geo_turkce:Bolge ."));
        assert!(text.contains("?y ins:konumVar ?x ."));
        assert!(text.contains("?x ins:populasyon ?variable ."));
        assert!(text.contains("FILTER(regex(str(?y),\"Ege\",\"i\"))"));
    }

    #[test]
    fn individual_subject_reenters_through_the_object_property() {
        let text = query_text("Konak hangi şehirde konumlanır ?");
        assert!(text.contains("?y ins:konumlanir ?x ."));
        assert!(text.contains("FILTER(regex(str(?y),\"Konak\",\"i\"))"));
    }
}
