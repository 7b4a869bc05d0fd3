//! The bundled GEO-TR resources, embedded so the library works without
//! any file paths. The same files ship under `data/` for the CLI.

use crate::formulation::{Pipeline, SuperlativeLexicon};
use crate::kb::{schema, KnowledgeBase, PrefixMap};
use crate::nlp::MorphLexicon;

pub const SCHEMA: &str = include_str!("../data/geo_turkce.schema");
pub const INSTANCES: &str = include_str!("../data/instances.tsv");
pub const LEXICON: &str = include_str!("../data/lexicon.tsv");
pub const SUPERLATIVES: &str = include_str!("../data/superlatives.tsv");
pub const SUITE: &str = include_str!("../data/suite.jsonl");
pub const QT2_FRAMES: &str = include_str!("../data/qt2_frames.jsonl");
pub const GOLD_CONLL_STANDARD: &str = include_str!("../data/fixtures/gold_standard.conll");
pub const LEGACY_LAYOUT_SAMPLE: &str = include_str!("../data/fixtures/legacy_layout.conll");

/// Loads the bundled knowledge base with the closure applied.
pub fn bundled_kb() -> KnowledgeBase {
    let schema = schema::parse_schema(SCHEMA).expect("bundled schema parses");
    let mut kb = KnowledgeBase::new(schema, PrefixMap::standard());
    kb.load_instances(INSTANCES).expect("bundled instances load");
    kb.apply_closure();
    kb
}

pub fn bundled_lexicon() -> MorphLexicon {
    MorphLexicon::parse(LEXICON).expect("bundled lexicon parses")
}

pub fn bundled_superlatives() -> SuperlativeLexicon {
    SuperlativeLexicon::parse(SUPERLATIVES).expect("bundled superlative lexicon parses")
}

/// The full bundled pipeline with the rule-based QT2 classifier.
pub fn bundled_pipeline() -> Pipeline {
    Pipeline::new(bundled_kb(), bundled_lexicon(), bundled_superlatives())
}
