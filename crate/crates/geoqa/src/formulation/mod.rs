//! Query formulation: question-type detection, the dependency-and-
//! ontology-driven algorithm for informative questions (QT1), frame
//! classification for quantitative questions (QT2), and the two query
//! templates.

pub mod mlp;
pub mod pipeline;
pub mod qt1;
pub mod qt2;
pub mod quant;
pub mod template;

pub use mlp::{FeatureSpace, LabeledFrame, Qt2Model, TrainReport};
pub use pipeline::{Answer, Formulation, Pipeline, PipelineError, Stage};
pub use qt1::generate_sparql_qt1;
pub use qt2::{classify_qt2, RuleBasedClassifier};
pub use quant::is_quantitative;
pub use template::instantiate_template;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kb::Iri;
use crate::turkish;

/// QT1: informative, handled by the dependency-driven algorithm.
/// QT2: quantitative reasoning, handled by frame classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuestionType {
    Qt1,
    Qt2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctionName {
    Count,
    Min,
    Max,
    Sum,
}

impl FunctionName {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionName::Count => "count",
            FunctionName::Min => "min",
            FunctionName::Max => "max",
            FunctionName::Sum => "sum",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "count" => FunctionName::Count,
            "min" => FunctionName::Min,
            "max" => FunctionName::Max,
            "sum" => FunctionName::Sum,
            _ => return None,
        })
    }
}

/// The five classification slots plus the named-entity filter literal.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QueryFrame {
    pub target_class: Option<Iri>,
    pub entity_class: Option<Iri>,
    pub data_property: Option<Iri>,
    pub object_property: Option<Iri>,
    pub function_name: Option<FunctionName>,
    pub named_entity_filter: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Min,
    Max,
}

impl Polarity {
    pub fn function(&self) -> FunctionName {
        match self {
            Polarity::Min => FunctionName::Min,
            Polarity::Max => FunctionName::Max,
        }
    }
}

/// Superlative and quantifier vocabulary: adjective lemma to the data
/// property it measures (`None` for bare intensity words like "fazla")
/// and the aggregation polarity.
#[derive(Debug, Clone, Default)]
pub struct SuperlativeLexicon {
    entries: Vec<(String, Option<Iri>, Polarity)>,
}

impl SuperlativeLexicon {
    /// Parses the `adjLemma<TAB>dataProperty<TAB>min|max` TSV;
    /// `null` in the middle column means "no bound data property".
    pub fn parse(tsv: &str) -> Result<Self, String> {
        let mut lex = SuperlativeLexicon::default();
        for (idx, raw) in tsv.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [adj, dp, pol] = cols.as_slice() else {
                return Err(format!(
                    "superlative lexicon line {}: expected 3 tab-separated columns",
                    idx + 1
                ));
            };
            let dp = match *dp {
                "null" => None,
                name => Some(Iri::ins(name)),
            };
            let pol = match *pol {
                "min" => Polarity::Min,
                "max" => Polarity::Max,
                other => {
                    return Err(format!(
                        "superlative lexicon line {}: unknown polarity `{other}`",
                        idx + 1
                    ))
                }
            };
            lex.entries.push((turkish::fold(adj), dp, pol));
        }
        Ok(lex)
    }

    pub fn lookup(&self, lemma: &str) -> Option<(&Option<Iri>, Polarity)> {
        let folded = turkish::fold(lemma);
        self.entries
            .iter()
            .find(|(l, _, _)| *l == folded)
            .map(|(_, dp, pol)| (dp, *pol))
    }

    pub fn position(&self, lemma: &str) -> Option<usize> {
        let folded = turkish::fold(lemma);
        self.entries.iter().position(|(l, _, _)| *l == folded)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum FormulationError {
    #[error("cannot locate answer type: sentence has neither OBJECT nor SUBJECT")]
    NoAnswerType,
    #[error("unresolvable question: recursion limit reached")]
    RecursionLimit,
    #[error("unresolvable frame: {0}")]
    UnresolvableFrame(String),
    #[error("ambiguous entity: {0:?}")]
    AmbiguousEntity(Vec<Iri>),
    #[error("multiple named entities are not supported")]
    MultipleEntities,
    #[error("template slot `{0}` is missing")]
    MissingSlot(&'static str),
    #[error("label category `{value}` is not a known {attribute} category")]
    UnknownCategory { attribute: &'static str, value: String },
    #[error(transparent)]
    Kb(#[from] crate::kb::KbError),
    #[error(transparent)]
    Sparql(#[from] crate::sparql::SparqlError),
    #[error(transparent)]
    Nlp(#[from] crate::nlp::NlpError),
    #[error("{0}")]
    Other(String),
}
