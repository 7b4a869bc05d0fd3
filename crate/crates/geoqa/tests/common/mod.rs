//! Shared test support: random small knowledge bases, random subset
//! queries, and a naive exhaustive-assignment oracle that stays
//! independent of the index-backed evaluator.
#![allow(dead_code)] // each test target uses a subset of these helpers

use std::collections::BTreeMap;

use geoqa::kb::{schema, Iri, KnowledgeBase, PrefixMap, Term, Triple};
use geoqa::sparql::{
    AggFn, Aggregate, Binding, GroupItem, PatternNode, Projection, RegexFilter, SelectQuery,
    SolutionSet, TriplePattern, Var,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const TEST_SCHEMA: &str = "\
class Alpha
class Beta
class Gamma
subclass Beta Alpha
objprop bagli domain Alpha->Gamma,Beta->Beta inverse tutan
objprop tutan domain Gamma->Alpha,Beta->Beta inverse bagli
objprop es domain Alpha->Alpha,Gamma->Gamma symmetric
dataprop olcu domains Alpha,Gamma range int
";

pub fn random_kb(rng: &mut ChaCha8Rng) -> KnowledgeBase {
    let sch = schema::parse_schema(TEST_SCHEMA).expect("test schema parses");
    let mut kb = KnowledgeBase::new(sch, PrefixMap::standard());
    let classes = ["Alpha", "Beta", "Gamma"];
    let individuals: Vec<Iri> = (0..rng.gen_range(2..8))
        .map(|i| Iri::ins(&format!("n{i}")))
        .collect();
    for ind in &individuals {
        let class = classes[rng.gen_range(0..classes.len())];
        kb.insert(Triple::new(
            ind.clone(),
            Iri::rdf_type(),
            Term::Iri(Iri::class(class)),
        ))
        .unwrap();
    }
    // individuals contribute one type triple each; stay within 30
    let triple_budget = rng.gen_range(0..=(30 - individuals.len()));
    for _ in 0..triple_budget {
        let s = individuals[rng.gen_range(0..individuals.len())].clone();
        match rng.gen_range(0..3) {
            0 => {
                let o = individuals[rng.gen_range(0..individuals.len())].clone();
                let p = if rng.gen_bool(0.5) { "bagli" } else { "es" };
                kb.insert(Triple::new(s, Iri::ins(p), Term::Iri(o))).unwrap();
            }
            1 => {
                let o = individuals[rng.gen_range(0..individuals.len())].clone();
                kb.insert(Triple::new(s, Iri::ins("tutan"), Term::Iri(o)))
                    .unwrap();
            }
            _ => {
                kb.insert(Triple::new(
                    s,
                    Iri::ins("olcu"),
                    Term::Int(rng.gen_range(-5..50)),
                ))
                .unwrap();
            }
        }
    }
    kb
}

/// A random query in the subset: 1–3 patterns over a small variable
/// pool, an optional case-insensitive filter, an optional aggregate.
pub fn random_query(rng: &mut ChaCha8Rng, _kb: &KnowledgeBase) -> SelectQuery {
    let vars = ["a", "b", "c"];
    let preds = [
        Iri::rdf_type(),
        Iri::ins("bagli"),
        Iri::ins("tutan"),
        Iri::ins("es"),
        Iri::ins("olcu"),
    ];
    let n_patterns = rng.gen_range(1..=3usize);
    let mut group: Vec<GroupItem> = Vec::new();
    let mut numeric_vars: Vec<Var> = Vec::new();
    let mut bound_vars: Vec<Var> = Vec::new();

    for _ in 0..n_patterns {
        let predicate = preds[rng.gen_range(0..preds.len())].clone();
        let subject = if rng.gen_bool(0.8) {
            let v = Var::new(vars[rng.gen_range(0..vars.len())]);
            if !bound_vars.contains(&v) {
                bound_vars.push(v.clone());
            }
            PatternNode::Var(v)
        } else {
            PatternNode::iri(Iri::ins(&format!("n{}", rng.gen_range(0..8))))
        };
        let object = if predicate == Iri::rdf_type() {
            let classes = ["Alpha", "Beta", "Gamma"];
            PatternNode::iri(Iri::class(classes[rng.gen_range(0..classes.len())]))
        } else if predicate == Iri::ins("olcu") {
            let v = Var::new(vars[rng.gen_range(0..vars.len())]);
            if !bound_vars.contains(&v) {
                bound_vars.push(v.clone());
            }
            if !numeric_vars.contains(&v) {
                numeric_vars.push(v.clone());
            }
            PatternNode::Var(v)
        } else if rng.gen_bool(0.85) {
            let v = Var::new(vars[rng.gen_range(0..vars.len())]);
            if !bound_vars.contains(&v) {
                bound_vars.push(v.clone());
            }
            PatternNode::Var(v)
        } else {
            PatternNode::iri(Iri::ins(&format!("n{}", rng.gen_range(0..8))))
        };
        group.push(GroupItem::Pattern(TriplePattern::new(
            subject, predicate, object,
        )));
    }

    if bound_vars.is_empty() {
        // guarantee a projectable variable
        let v = Var::new("a");
        group.push(GroupItem::Pattern(TriplePattern::new(
            PatternNode::Var(v.clone()),
            Iri::rdf_type(),
            PatternNode::iri(Iri::class("Alpha")),
        )));
        bound_vars.push(v);
    }

    if rng.gen_bool(0.4) {
        let var = bound_vars[rng.gen_range(0..bound_vars.len())].clone();
        let pattern = format!("n{}", rng.gen_range(0..8));
        let flags = if rng.gen_bool(0.5) { "i" } else { "" };
        group.push(GroupItem::Filter(RegexFilter {
            var,
            pattern,
            flags: flags.to_string(),
        }));
    }

    // numeric aggregates only over the integer-valued variable so the
    // comparison stays on solution multisets rather than typed errors
    let projection = if rng.gen_bool(0.35) {
        let (func, input) = if !numeric_vars.is_empty() && rng.gen_bool(0.7) {
            let funcs = [AggFn::Sum, AggFn::Min, AggFn::Max, AggFn::Count];
            (
                funcs[rng.gen_range(0..funcs.len())],
                numeric_vars[rng.gen_range(0..numeric_vars.len())].clone(),
            )
        } else {
            (
                AggFn::Count,
                bound_vars[rng.gen_range(0..bound_vars.len())].clone(),
            )
        };
        Projection::Aggregate(Aggregate {
            func,
            input,
            alias: Var::new("agg"),
        })
    } else {
        let mut projected = bound_vars.clone();
        projected.shuffle(rng);
        projected.truncate(rng.gen_range(1..=projected.len()));
        Projection::Vars(projected)
    };

    SelectQuery { projection, group }
}

/// Exhaustive-assignment oracle: every variable ranges over every term
/// in the KB; assignments that satisfy all patterns survive, filters
/// prune them, then projection and aggregation mirror the subset
/// semantics.
pub fn oracle_evaluate(q: &SelectQuery, kb: &KnowledgeBase) -> SolutionSet {
    let mut universe: Vec<Term> = Vec::new();
    for t in kb.triples() {
        let subject = Term::Iri(t.subject.clone());
        if !universe.contains(&subject) {
            universe.push(subject);
        }
        if !universe.contains(&t.object) {
            universe.push(t.object.clone());
        }
    }

    let patterns: Vec<&TriplePattern> = q
        .group
        .iter()
        .filter_map(|i| match i {
            GroupItem::Pattern(p) => Some(p),
            _ => None,
        })
        .collect();
    let filters: Vec<&RegexFilter> = q
        .group
        .iter()
        .filter_map(|i| match i {
            GroupItem::Filter(f) => Some(f),
            _ => None,
        })
        .collect();

    let mut group_vars: Vec<Var> = Vec::new();
    for p in &patterns {
        for v in p.vars() {
            if !group_vars.contains(v) {
                group_vars.push(v.clone());
            }
        }
    }

    let mut assignments: Vec<Binding> = vec![Binding::new()];
    for var in &group_vars {
        let mut next = Vec::new();
        for assignment in &assignments {
            for term in &universe {
                let mut a = assignment.clone();
                a.insert(var.clone(), term.clone());
                next.push(a);
            }
        }
        assignments = next;
    }

    let node_term = |n: &PatternNode, a: &Binding| -> Term {
        match n {
            PatternNode::Term(t) => t.clone(),
            PatternNode::Var(v) => a[v].clone(),
        }
    };

    assignments.retain(|a| {
        patterns.iter().all(|p| {
            let s = node_term(&p.subject, a);
            let o = node_term(&p.object, a);
            match s {
                Term::Iri(s) => kb.contains(&Triple::new(s, p.predicate.clone(), o)),
                _ => false,
            }
        })
    });

    assignments.retain(|a| {
        filters.iter().all(|f| {
            let term = match a.get(&f.var) {
                Some(t) => t,
                None => return false,
            };
            let hay = match term {
                Term::Iri(iri) => kb.prefixes.expand(iri).expect("test prefixes expand"),
                other => other.canonical(),
            };
            if f.flags == "i" {
                geoqa::turkish::match_fold(&hay).contains(&geoqa::turkish::match_fold(&f.pattern))
            } else {
                hay.contains(&f.pattern)
            }
        })
    });

    match &q.projection {
        Projection::Vars(vars) => {
            let rows = assignments
                .iter()
                .map(|a| {
                    vars.iter()
                        .map(|v| (v.clone(), a[v].clone()))
                        .collect::<Binding>()
                })
                .collect();
            SolutionSet {
                vars: vars.clone(),
                rows,
            }
        }
        Projection::Aggregate(agg) => {
            let values: Vec<i64> = assignments
                .iter()
                .filter_map(|a| match a.get(&agg.input) {
                    Some(Term::Int(v)) => Some(*v),
                    _ => None,
                })
                .collect();
            let result = match agg.func {
                AggFn::Count => Some(Term::Int(assignments.len() as i64)),
                AggFn::Sum => Some(Term::Int(values.iter().sum())),
                AggFn::Min => values.iter().min().map(|v| Term::Int(*v)),
                AggFn::Max => values.iter().max().map(|v| Term::Int(*v)),
            };
            let rows = match result {
                Some(term) => {
                    let mut b = BTreeMap::new();
                    b.insert(agg.alias.clone(), term);
                    vec![b]
                }
                None => vec![],
            };
            SolutionSet {
                vars: vec![agg.alias.clone()],
                rows,
            }
        }
    }
}
