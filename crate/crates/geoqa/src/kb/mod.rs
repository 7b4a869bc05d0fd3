//! The GEO-TR knowledge base: schema, triple store with three index
//! orderings, entailment closure, lexicalization table and gazetteer.

pub mod schema;
pub mod store;
pub mod term;

pub use schema::{DataPropertyDecl, LiteralKind, ObjectPropertyDecl, OntologySchema};
pub use store::{Direction, KnowledgeBase, LabelLookup, PropertyKind, PropertyMatch};
pub use term::{Decimal, Iri, PrefixMap, Term, Triple};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The ontological role of a lemma, as consulted during query formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomKind {
    Class,
    DataProperty,
    ObjectProperty,
    Individual,
}

impl AxiomKind {
    /// Tie-break priority when one lemma carries several axiom kinds:
    /// Class > DataProperty > ObjectProperty > Individual.
    pub fn priority(&self) -> u8 {
        match self {
            AxiomKind::Class => 0,
            AxiomKind::DataProperty => 1,
            AxiomKind::ObjectProperty => 2,
            AxiomKind::Individual => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum KbError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("no such entity `{0}`")]
    UnknownIndividual(String),
    #[error("duplicate individual `{0}`")]
    DuplicateIndividual(String),
    #[error("line {line}: value `{value}` does not parse as {expected} for property `{property}`")]
    LiteralRange {
        line: usize,
        value: String,
        expected: &'static str,
        property: String,
    },
    #[error("label `{label}` is ambiguous: {candidates:?}")]
    AmbiguousLabel { label: String, candidates: Vec<Iri> },
    #[error("unregistered prefix `{0}`")]
    UnknownPrefix(String),
    #[error("individual `{0}` has no rdf:type")]
    Untyped(String),
}
