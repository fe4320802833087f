//! Semantic topic extraction from micropost collections.
//!
//! The pipeline links post fragments to knowledge-base entities,
//! relates the entities through a weighted co-occurrence graph, reads
//! maximal cliques of the pruned graph as topics, and emits them as RDF
//! instances of a small topic vocabulary.
//!
//! The stages are usable on their own — see the `examples/` directory
//! for one runnable example per capability — or end to end through
//! [`pipeline::run_pipeline`] and the `microtopics` binary.

pub mod analyze;
pub mod cliques;
pub mod collective;
pub mod config;
pub mod corpus;
pub mod emit;
pub mod error;
pub mod graph;
pub mod linking;
pub mod pipeline;
pub mod semantics;
mod textscan;
pub mod weight;

pub use config::{LinkerMode, PipelineConfig};
pub use error::{Error, Result};
