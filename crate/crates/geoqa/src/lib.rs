//! geoqa answers Turkish geography questions against an embedded
//! knowledge base. A question runs through morphological analysis,
//! gazetteer NER and dependency analysis, is compiled into a SPARQL
//! query — through the dependency-driven algorithm for informative
//! questions or frame classification for quantitative ones — and the
//! query is evaluated over the GEO-TR triples.
//!
//! ```
//! use geoqa::resources;
//!
//! let pipeline = resources::bundled_pipeline();
//! let answer = pipeline.answer("Ege Bölgesi'nin yüzölçümü ne kadardır ?").unwrap();
//! assert!(answer.query_text.contains("ins:yuzolcumu"));
//! assert_eq!(answer.solutions.len(), 1);
//! ```

pub mod eval;
pub mod formulation;
pub mod kb;
pub mod nlp;
pub mod resources;
pub mod sparql;
pub mod turkish;
