//! Every guide chapter is included as rustdoc so `cargo test --doc`
//! runs the book's code blocks against the real library. mdbook itself
//! cannot compile snippets with dependencies; this shim keeps the book
//! and the API from drifting apart.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/knowledge-base.md")]
pub mod knowledge_base {}

#[doc = include_str!("../../../book/src/morphology.md")]
pub mod morphology {}

#[doc = include_str!("../../../book/src/entities-and-dependencies.md")]
pub mod entities_and_dependencies {}

#[doc = include_str!("../../../book/src/query-formulation.md")]
pub mod query_formulation {}

#[doc = include_str!("../../../book/src/sparql-engine.md")]
pub mod sparql_engine {}

#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
