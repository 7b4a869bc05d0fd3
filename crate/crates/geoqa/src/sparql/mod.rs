//! A SPARQL subset: the AST behind the two query-pattern types, a
//! serializer with a stable layout, a parser for round-trips and golden
//! files, and a bag-semantics evaluator over the knowledge base.

pub mod ast;
pub mod eval;
pub mod parse;
pub mod serialize;

pub use ast::{
    AggFn, Aggregate, Binding, GroupItem, PatternNode, Projection, RegexFilter, SelectQuery,
    SolutionSet, TriplePattern, Var,
};
pub use eval::{evaluate, evaluate_with_diagnostics, EvalDiagnostics};
pub use parse::parse;
pub use serialize::{comparison_tokens, serialize, serialize_bare};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SparqlError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported feature: {feature}")]
    Unsupported { feature: String, offset: usize },
    #[error("invalid query: {0}")]
    Invalid(String),
    #[error(transparent)]
    Kb(#[from] crate::kb::KbError),
    #[error("aggregate over non-literal terms mixed with literals")]
    MixedAggregate,
    #[error("{func} over non-numeric term `{term}`")]
    NonNumericAggregate { func: &'static str, term: String },
}
