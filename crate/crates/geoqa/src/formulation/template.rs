//! The two SPARQL query patterns. Min/max needs the nested-subquery
//! shape (Type 1); count/sum fits in a single block (Type 2).

use crate::kb::Iri;
use crate::sparql::{
    AggFn, Aggregate, GroupItem, PatternNode, Projection, RegexFilter, SelectQuery,
    TriplePattern, Var,
};

use super::{FormulationError, FunctionName, QueryFrame};

fn slot<'a, T>(v: &'a Option<T>, name: &'static str) -> Result<&'a T, FormulationError> {
    v.as_ref().ok_or(FormulationError::MissingSlot(name))
}

fn tp(subject: &str, predicate: Iri, object: PatternNode) -> GroupItem {
    GroupItem::Pattern(TriplePattern::new(
        PatternNode::var(subject),
        predicate,
        object,
    ))
}

pub fn instantiate_template(frame: &QueryFrame) -> Result<SelectQuery, FormulationError> {
    let function = slot(&frame.function_name, "function_name")?;
    let target = slot(&frame.target_class, "target_class")?;
    let entity_class = slot(&frame.entity_class, "entity_class")?;
    let object_property = slot(&frame.object_property, "object_property")?;
    let filter = slot(&frame.named_entity_filter, "named_entity_filter")?;

    let entity_filter = GroupItem::Filter(RegexFilter {
        var: Var::new("x"),
        pattern: filter.clone(),
        flags: "i".to_string(),
    });

    match function {
        FunctionName::Min | FunctionName::Max => {
            let dp = slot(&frame.data_property, "data_property")?;
            let func = match function {
                FunctionName::Min => AggFn::Min,
                _ => AggFn::Max,
            };
            let inner = SelectQuery {
                projection: Projection::Aggregate(Aggregate {
                    func,
                    input: Var::new("var"),
                    alias: Var::new("m"),
                }),
                group: vec![
                    tp("x", Iri::rdf_type(), PatternNode::iri(entity_class.clone())),
                    tp("y", Iri::rdf_type(), PatternNode::iri(target.clone())),
                    tp("y", object_property.clone(), PatternNode::var("x")),
                    tp("y", dp.clone(), PatternNode::var("var")),
                    entity_filter,
                ],
            };
            Ok(SelectQuery {
                projection: Projection::Vars(vec![Var::new("y"), Var::new("m")]),
                group: vec![
                    tp("y", Iri::rdf_type(), PatternNode::iri(target.clone())),
                    tp("y", dp.clone(), PatternNode::var("m")),
                    GroupItem::SubQuery(inner),
                ],
            })
        }
        FunctionName::Count | FunctionName::Sum => {
            let mut group = vec![
                tp("x", Iri::rdf_type(), PatternNode::iri(entity_class.clone())),
                tp("y", Iri::rdf_type(), PatternNode::iri(target.clone())),
                tp("y", object_property.clone(), PatternNode::var("x")),
            ];
            let input = match (&frame.data_property, function) {
                (Some(dp), FunctionName::Sum) => {
                    group.push(tp("y", dp.clone(), PatternNode::var("var")));
                    Var::new("var")
                }
                _ => Var::new("y"),
            };
            group.push(entity_filter);
            let func = match function {
                FunctionName::Count => AggFn::Count,
                _ => AggFn::Sum,
            };
            Ok(SelectQuery {
                projection: Projection::Aggregate(Aggregate {
                    func,
                    input,
                    alias: Var::new("total"),
                }),
                group,
            })
        }
    }
}
