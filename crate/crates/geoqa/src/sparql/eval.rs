//! Bag-semantics evaluation over a [`KnowledgeBase`]: patterns join
//! left to right through the triple indexes, a nested SELECT is
//! evaluated first and joined on its projected variables, filters apply
//! to the whole group, and aggregates reduce the group to a single row.

use std::cmp::Ordering;

use crate::kb::{Decimal, KnowledgeBase, Term};
use crate::turkish;

use super::ast::*;
use super::SparqlError;

/// Side information about an evaluation run.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalDiagnostics {
    /// The KB had not been closed; entailed triples may be missing.
    pub unclosed_kb: bool,
}

pub fn evaluate(q: &SelectQuery, kb: &KnowledgeBase) -> Result<SolutionSet, SparqlError> {
    evaluate_with_diagnostics(q, kb).map(|(s, _)| s)
}

pub fn evaluate_with_diagnostics(
    q: &SelectQuery,
    kb: &KnowledgeBase,
) -> Result<(SolutionSet, EvalDiagnostics), SparqlError> {
    q.validate()?;
    let diag = EvalDiagnostics {
        unclosed_kb: !kb.is_closed(),
    };
    Ok((eval_select(q, kb)?, diag))
}

fn eval_select(q: &SelectQuery, kb: &KnowledgeBase) -> Result<SolutionSet, SparqlError> {
    let mut rows: Vec<Binding> = vec![Binding::new()];
    let mut filters: Vec<&RegexFilter> = Vec::new();

    for item in &q.group {
        match item {
            GroupItem::Pattern(p) => {
                let mut next = Vec::new();
                for binding in &rows {
                    extend_with_pattern(p, binding, kb, &mut next);
                }
                rows = next;
            }
            GroupItem::SubQuery(sq) => {
                let sols = eval_select(sq, kb)?;
                let mut next = Vec::new();
                for binding in &rows {
                    for sol in &sols.rows {
                        if let Some(merged) = merge(binding, sol) {
                            next.push(merged);
                        }
                    }
                }
                rows = next;
            }
            GroupItem::Filter(f) => filters.push(f),
        }
    }

    for f in filters {
        let mut kept = Vec::new();
        for binding in rows {
            if filter_passes(f, &binding, kb)? {
                kept.push(binding);
            }
        }
        rows = kept;
    }

    project(q, rows, kb)
}

fn extend_with_pattern(
    p: &TriplePattern,
    binding: &Binding,
    kb: &KnowledgeBase,
    out: &mut Vec<Binding>,
) {
    let subject = resolve(&p.subject, binding);
    let object = resolve(&p.object, binding);

    // a subject slot bound to a literal can never match
    let subj_iri = match &subject {
        Some(Term::Iri(iri)) => Some(iri.clone()),
        Some(_) => return,
        None => None,
    };

    for t in kb.matching(subj_iri.as_ref(), Some(&p.predicate), object.as_ref()) {
        let mut b = binding.clone();
        if let PatternNode::Var(v) = &p.subject {
            if !b.contains_key(v) {
                b.insert(v.clone(), Term::Iri(t.subject.clone()));
            }
        }
        if let PatternNode::Var(v) = &p.object {
            // same variable in both positions must bind consistently
            if let Some(existing) = b.get(v) {
                if *existing != t.object {
                    continue;
                }
            } else {
                b.insert(v.clone(), t.object.clone());
            }
        }
        out.push(b);
    }
}

fn resolve(node: &PatternNode, binding: &Binding) -> Option<Term> {
    match node {
        PatternNode::Term(t) => Some(t.clone()),
        PatternNode::Var(v) => binding.get(v).cloned(),
    }
}

fn merge(a: &Binding, b: &Binding) -> Option<Binding> {
    let mut merged = a.clone();
    for (var, term) in b {
        match merged.get(var) {
            Some(existing) if existing != term => return None,
            Some(_) => {}
            None => {
                merged.insert(var.clone(), term.clone());
            }
        }
    }
    Some(merged)
}

/// The string form `str(?x)` sees: the fully expanded IRI for IRIs, the
/// canonical text for literals.
fn term_str(t: &Term, kb: &KnowledgeBase) -> Result<String, SparqlError> {
    match t {
        Term::Iri(iri) => Ok(kb.prefixes.expand(iri)?),
        other => Ok(other.canonical()),
    }
}

fn filter_passes(
    f: &RegexFilter,
    binding: &Binding,
    kb: &KnowledgeBase,
) -> Result<bool, SparqlError> {
    let term = match binding.get(&f.var) {
        Some(t) => t,
        None => return Ok(false),
    };
    let hay = term_str(term, kb)?;
    Ok(if f.flags == "i" {
        turkish::match_fold(&hay).contains(&turkish::match_fold(&f.pattern))
    } else {
        hay.contains(&f.pattern)
    })
}

fn project(
    q: &SelectQuery,
    rows: Vec<Binding>,
    kb: &KnowledgeBase,
) -> Result<SolutionSet, SparqlError> {
    match &q.projection {
        Projection::Vars(vars) => {
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let mut b = Binding::new();
                for v in vars {
                    if let Some(t) = row.get(v) {
                        b.insert(v.clone(), t.clone());
                    }
                }
                out.push(b);
            }
            Ok(SolutionSet {
                vars: vars.clone(),
                rows: out,
            })
        }
        Projection::Aggregate(agg) => {
            let values: Vec<Term> = rows
                .iter()
                .filter_map(|r| r.get(&agg.input).cloned())
                .collect();
            let result = match agg.func {
                AggFn::Count => Some(Term::Int(rows.len() as i64)),
                AggFn::Sum => Some(sum(&values)?),
                AggFn::Min | AggFn::Max => min_max(agg.func, &values, kb)?,
            };
            let rows = match result {
                Some(term) => {
                    let mut b = Binding::new();
                    b.insert(agg.alias.clone(), term);
                    vec![b]
                }
                None => vec![],
            };
            Ok(SolutionSet {
                vars: vec![agg.alias.clone()],
                rows,
            })
        }
    }
}

fn numeric(t: &Term) -> Option<Decimal> {
    match t {
        Term::Int(v) => Some(Decimal::from_int(*v)),
        Term::Dec(d) => Some(*d),
        _ => None,
    }
}

fn sum(values: &[Term]) -> Result<Term, SparqlError> {
    let mut all_int = true;
    let mut acc = Decimal::from_int(0);
    for v in values {
        match v {
            Term::Int(i) => acc = acc.add(&Decimal::from_int(*i)),
            Term::Dec(d) => {
                all_int = false;
                acc = acc.add(d);
            }
            other => {
                return Err(SparqlError::NonNumericAggregate {
                    func: "SUM",
                    term: other.canonical(),
                })
            }
        }
    }
    Ok(if all_int {
        Term::Int(acc.to_string().parse().expect("integral sum"))
    } else {
        Term::Dec(acc)
    })
}

/// MIN/MAX over all-numeric input compares numerically, over strings
/// lexicographically and over IRIs by expanded IRI string. Mixing
/// literals with non-literals, or numbers with strings, is an error.
/// Empty input yields no row.
fn min_max(
    func: AggFn,
    values: &[Term],
    kb: &KnowledgeBase,
) -> Result<Option<Term>, SparqlError> {
    if values.is_empty() {
        return Ok(None);
    }
    let literals = values.iter().filter(|t| t.is_literal()).count();
    if literals != 0 && literals != values.len() {
        return Err(SparqlError::MixedAggregate);
    }
    let all_numeric = values.iter().all(|t| numeric(t).is_some());
    let all_str = values.iter().all(|t| matches!(t, Term::Str(_)));
    let all_iri = literals == 0;
    if !(all_numeric || all_str || all_iri) {
        return Err(SparqlError::NonNumericAggregate {
            func: func.name(),
            term: values
                .iter()
                .find(|t| numeric(t).is_none())
                .map(|t| t.canonical())
                .unwrap_or_default(),
        });
    }
    let mut best = values[0].clone();
    for candidate in &values[1..] {
        let ord = if all_numeric {
            numeric(candidate)
                .unwrap()
                .cmp_numeric(&numeric(&best).unwrap())
        } else if all_iri {
            term_str(candidate, kb)?.cmp(&term_str(&best, kb)?)
        } else {
            candidate.canonical().cmp(&best.canonical())
        };
        let replace = match func {
            AggFn::Min => ord == Ordering::Less,
            AggFn::Max => ord == Ordering::Greater,
            _ => unreachable!(),
        };
        if replace {
            best = candidate.clone();
        }
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::Iri;
    use crate::resources;
    use crate::sparql::parse::parse;

    fn kb() -> KnowledgeBase {
        resources::bundled_kb()
    }

    #[test]
    fn count_of_cities_located_in_ege_matches_a_tsv_scan() {
        // independent oracle: count `konumlanir EgeBolgesi` rows in the
        // bundled TSV whose subject is declared a Sehir individual
        let tsv = resources::INSTANCES;
        let cities: Vec<&str> = tsv
            .lines()
            .filter_map(|l| {
                let cols: Vec<&str> = l.split('\t').collect();
                match cols.as_slice() {
                    ["individual", id, "Sehir", _] => Some(*id),
                    _ => None,
                }
            })
            .collect();
        let expected = tsv
            .lines()
            .filter(|l| {
                let cols: Vec<&str> = l.split('\t').collect();
                matches!(cols.as_slice(),
                    ["assert", s, "konumlanir", "EgeBolgesi"] if cities.contains(s))
            })
            .count() as i64;
        assert!(expected > 0);

        let q = parse(
            r#"SELECT (COUNT(?y) as ?total)
               WHERE { ?x rdf:type geo_turkce:Bolge .
                       ?y rdf:type geo_turkce:Sehir .
                       ?y ins:konumlanir ?x .
                       FILTER(regex(str(?x),"ege","i")) }"#,
        )
        .unwrap();
        let sols = evaluate(&q, &kb()).unwrap();
        assert_eq!(sols.rows.len(), 1);
        assert_eq!(sols.rows[0][&Var::new("total")], Term::Int(expected));
    }

    #[test]
    fn any_query_over_an_empty_kb_is_empty() {
        let sch = crate::kb::schema::parse_schema(resources::SCHEMA).unwrap();
        let empty = KnowledgeBase::new(sch, crate::kb::PrefixMap::standard());
        let q = parse("SELECT ?y WHERE { ?y rdf:type geo_turkce:Sehir . }").unwrap();
        let (sols, diag) = evaluate_with_diagnostics(&q, &empty).unwrap();
        assert!(sols.is_empty());
        assert!(diag.unclosed_kb);
    }

    #[test]
    fn deepest_sea_query_matches_a_hand_scan() {
        // enumerate Deniz individuals' derinlik values straight from the TSV
        let tsv = resources::INSTANCES;
        let seas: Vec<&str> = tsv
            .lines()
            .filter_map(|l| {
                let cols: Vec<&str> = l.split('\t').collect();
                match cols.as_slice() {
                    ["individual", id, "Deniz", _] => Some(*id),
                    _ => None,
                }
            })
            .collect();
        let max_depth = tsv
            .lines()
            .filter_map(|l| {
                let cols: Vec<&str> = l.split('\t').collect();
                match cols.as_slice() {
                    ["assert", s, "derinlik", v] if seas.contains(s) => v.parse::<i64>().ok(),
                    _ => None,
                }
            })
            .max()
            .unwrap();

        let q = parse(
            r#"SELECT ?y ?m
               WHERE {
                 ?y rdf:type geo_turkce:Deniz .
                 ?y ins:derinlik ?m .
                 {
                   SELECT (MAX(?var) as ?m)
                   WHERE {
                     ?x rdf:type geo_turkce:Ulke .
                     ?y rdf:type geo_turkce:Deniz .
                     ?y ins:konumlanir ?x .
                     ?y ins:derinlik ?var
                     FILTER(regex(str(?x),"türkiye","i"))
                   }
                 }
               }"#,
        )
        .unwrap();
        let sols = evaluate(&q, &kb()).unwrap();
        assert_eq!(sols.rows.len(), 1);
        assert_eq!(sols.rows[0][&Var::new("m")], Term::Int(max_depth));
    }

    #[test]
    fn min_and_max_over_a_single_element_group_return_it() {
        let kb = kb();
        for func in ["MIN", "MAX"] {
            let q = parse(&format!(
                r#"SELECT ({func}(?v) as ?m)
                   WHERE {{ ?x rdf:type geo_turkce:Ulke . ?x ins:populasyon ?v . }}"#
            ))
            .unwrap();
            let sols = evaluate(&q, &kb).unwrap();
            assert_eq!(sols.rows.len(), 1);
            assert_eq!(sols.rows[0][&Var::new("m")], Term::Int(83614362));
        }
    }

    #[test]
    fn sum_over_strings_is_a_typed_error() {
        let q = parse(
            r#"SELECT (SUM(?v) as ?m)
               WHERE { ?x rdf:type geo_turkce:Ulke . ?x ins:baskent ?v . }"#,
        )
        .unwrap();
        assert!(matches!(
            evaluate(&q, &kb()),
            Err(SparqlError::NonNumericAggregate { .. })
        ));
    }

    #[test]
    fn min_over_iris_mixed_with_literals_is_an_error() {
        let q = parse(
            r#"SELECT (MIN(?v) as ?m)
               WHERE { ?x ins:konumlanir ?v . ?x ins:derinlik ?v . }"#,
        )
        .unwrap();
        // ?v cannot be both an IRI and a literal within one binding, so
        // construct the mix directly instead.
        drop(q);
        let kb = kb();
        let values = vec![Term::Int(1), Term::Iri(Iri::ins("Ankara"))];
        assert!(matches!(
            min_max(AggFn::Min, &values, &kb),
            Err(SparqlError::MixedAggregate)
        ));
    }
}
