//! AST for the SPARQL subset the two query-pattern types require:
//! SELECT with plain variables or a single aggregate, basic graph
//! patterns, one regex filter per group and at most one nested SELECT.

use std::collections::BTreeMap;
use std::fmt;

use crate::kb::{Iri, Term};

use super::SparqlError;

/// A query variable, stored without the leading `?`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(name.to_string())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

/// Subject or object position: a variable or a concrete term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternNode {
    Var(Var),
    Term(Term),
}

impl PatternNode {
    pub fn var(name: &str) -> Self {
        PatternNode::Var(Var::new(name))
    }

    pub fn iri(iri: Iri) -> Self {
        PatternNode::Term(Term::Iri(iri))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            PatternNode::Var(v) => Some(v),
            PatternNode::Term(_) => None,
        }
    }
}

/// A triple pattern; the predicate is always a concrete IRI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: PatternNode,
    pub predicate: Iri,
    pub object: PatternNode,
}

impl TriplePattern {
    pub fn new(subject: PatternNode, predicate: Iri, object: PatternNode) -> Self {
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    pub fn vars(&self) -> Vec<&Var> {
        [&self.subject, &self.object]
            .into_iter()
            .filter_map(|n| n.as_var())
            .collect()
    }
}

/// `FILTER(regex(str(?var),"pattern","flags"))`. Flags are `""` or `"i"`;
/// the pattern is matched as a plain substring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegexFilter {
    pub var: Var,
    pub pattern: String,
    pub flags: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggFn {
    Count,
    Sum,
    Min,
    Max,
}

impl AggFn {
    pub fn name(&self) -> &'static str {
        match self {
            AggFn::Count => "COUNT",
            AggFn::Sum => "SUM",
            AggFn::Min => "MIN",
            AggFn::Max => "MAX",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "COUNT" => Some(AggFn::Count),
            "SUM" => Some(AggFn::Sum),
            "MIN" => Some(AggFn::Min),
            "MAX" => Some(AggFn::Max),
            _ => None,
        }
    }
}

/// `(fn(?input) as ?alias)` in a SELECT clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub func: AggFn,
    pub input: Var,
    pub alias: Var,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Vars(Vec<Var>),
    Aggregate(Aggregate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupItem {
    Pattern(TriplePattern),
    Filter(RegexFilter),
    SubQuery(SelectQuery),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectQuery {
    pub projection: Projection,
    pub group: Vec<GroupItem>,
}

impl SelectQuery {
    pub fn patterns(&self) -> impl Iterator<Item = &TriplePattern> {
        self.group.iter().filter_map(|i| match i {
            GroupItem::Pattern(p) => Some(p),
            _ => None,
        })
    }

    pub fn subqueries(&self) -> impl Iterator<Item = &SelectQuery> {
        self.group.iter().filter_map(|i| match i {
            GroupItem::SubQuery(q) => Some(q),
            _ => None,
        })
    }

    fn projected_vars(&self) -> Vec<&Var> {
        match &self.projection {
            Projection::Vars(vs) => vs.iter().collect(),
            Projection::Aggregate(a) => vec![&a.alias],
        }
    }

    /// Checks the structural invariants: non-empty group, at most one
    /// subquery and one aggregate, projected variables bound by a
    /// pattern or by the subquery's projection, filter variables bound
    /// by a pattern of the same group, aggregate alias fresh.
    pub fn validate(&self) -> Result<(), SparqlError> {
        if self.group.is_empty() {
            return Err(SparqlError::Invalid("empty group".into()));
        }
        if self.subqueries().count() > 1 {
            return Err(SparqlError::Invalid("more than one subquery".into()));
        }
        let pattern_vars: Vec<&Var> = self.patterns().flat_map(|p| p.vars()).collect();
        let sub_vars: Vec<&Var> = self
            .subqueries()
            .flat_map(|q| q.projected_vars())
            .collect();
        for item in &self.group {
            match item {
                GroupItem::Pattern(p) => {
                    if matches!(&p.subject, PatternNode::Term(t) if t.is_literal()) {
                        return Err(SparqlError::Invalid(
                            "literal in subject position".into(),
                        ));
                    }
                }
                GroupItem::Filter(f) => {
                    if !pattern_vars.contains(&&f.var) {
                        return Err(SparqlError::Invalid(format!(
                            "filter variable {} not bound by any pattern in its group",
                            f.var
                        )));
                    }
                }
                GroupItem::SubQuery(q) => q.validate()?,
            }
        }
        match &self.projection {
            Projection::Vars(vs) => {
                if vs.is_empty() {
                    return Err(SparqlError::Invalid("empty projection".into()));
                }
                for v in vs {
                    if !pattern_vars.contains(&v) && !sub_vars.contains(&v) {
                        return Err(SparqlError::Invalid(format!(
                            "projected variable {v} is unbound"
                        )));
                    }
                }
            }
            Projection::Aggregate(a) => {
                if pattern_vars.contains(&&a.alias) {
                    return Err(SparqlError::Invalid(format!(
                        "aggregate alias {} shadows a pattern variable",
                        a.alias
                    )));
                }
                if !pattern_vars.contains(&&a.input) && !sub_vars.contains(&&a.input) {
                    return Err(SparqlError::Invalid(format!(
                        "aggregate input {} is unbound",
                        a.input
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One solution row: projected variable -> term.
pub type Binding = BTreeMap<Var, Term>;

/// Multiset of bindings over exactly the projected variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionSet {
    pub vars: Vec<Var>,
    pub rows: Vec<Binding>,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Sorted row encodings for order-insensitive multiset comparison.
    pub fn canonical_rows(&self) -> Vec<Vec<(String, String)>> {
        let mut rows: Vec<Vec<(String, String)>> = self
            .rows
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(v, t)| (v.0.clone(), t.canonical()))
                    .collect()
            })
            .collect();
        rows.sort();
        rows
    }

    /// Every bound term across all rows, as a canonical string set.
    /// This is the "answer set" the evaluation harness scores.
    pub fn answer_set(&self) -> std::collections::BTreeSet<String> {
        self.rows
            .iter()
            .flat_map(|b| b.values().map(|t| t.canonical()))
            .collect()
    }
}
