//! Topic instantiation against the Topico vocabulary and serialization
//! to Turtle and JSON.

mod turtle;
mod vocab;

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use turtle::{serialize_turtle, vocabulary_turtle};
pub use vocab::{TopicoVocab, DBR_NS, DEFAULT_TOPICO_BASE, FOAF_NS, GREG_NS, TIME_NS, XSD_NS};

use crate::cliques::{TopicProvenance, TopicSet};
use crate::corpus::IntervalBatch;
use crate::semantics::ElementKind;

/// A fully instantiated semantic topic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Topic {
    /// Deterministic IRI: `{base}/topic/{batch start}/{ordinal}`.
    pub id: String,
    /// Elements with their kinds, sorted by IRI.
    pub elements: Vec<(String, ElementKind)>,
    /// Earliest post timestamp of the batch.
    pub interval_start: DateTime<Utc>,
    /// Latest post timestamp of the batch.
    pub interval_end: DateTime<Utc>,
    pub created_at: DateTime<Utc>,
    pub maker: String,
    pub provenance: TopicProvenance,
    /// `|P|` of the originating batch, for recomputing frequencies.
    pub batch_size: u64,
}

/// The emission property for an element kind. The mapping is a
/// bijection over the four kinds.
pub fn kind_property(kind: ElementKind, vocab: &TopicoVocab) -> String {
    match kind {
        ElementKind::Person => vocab.has_person(),
        ElementKind::Location => vocab.has_location(),
        ElementKind::TemporalExpression => vocab.has_temporal_expression(),
        ElementKind::Other => vocab.is_about(),
    }
}

/// Creates one [`Topic`] per merged element set.
///
/// The observation interval spans the earliest and latest post of the
/// batch, not the window bounds. Topic IRIs number the topics within
/// their batch in deterministic order.
///
/// # Panics
///
/// Panics when an element has no entry in `kinds`; classification runs
/// over the same element sets, so a gap is a programming bug.
pub fn instantiate_topics(
    topic_set: &TopicSet,
    kinds: &BTreeMap<String, ElementKind>,
    batch: &IntervalBatch,
    base_iri: &str,
    created_at: DateTime<Utc>,
    maker: &str,
) -> Vec<Topic> {
    if topic_set.topics.is_empty() {
        return Vec::new();
    }
    let (start, end) = batch
        .observed_extremes()
        .expect("a batch with topics has posts");
    let stamp = batch.start.format("%Y%m%dT%H%M%SZ");
    topic_set
        .topics
        .iter()
        .zip(&topic_set.provenance)
        .enumerate()
        .map(|(ordinal, (elements, provenance))| {
            let elements: Vec<(String, ElementKind)> = elements
                .iter()
                .map(|iri| {
                    let kind = kinds
                        .get(iri)
                        .unwrap_or_else(|| panic!("element {iri} has no classified kind"));
                    (iri.clone(), *kind)
                })
                .collect();
            Topic {
                id: format!("{base_iri}/topic/{stamp}/{ordinal:04}"),
                elements,
                interval_start: start,
                interval_end: end,
                created_at,
                maker: maker.to_string(),
                provenance: provenance.clone(),
                batch_size: batch.size(),
            }
        })
        .collect()
}

/// Lossless JSON mirror of the topic list, used by the analysis module
/// and external tooling.
pub fn serialize_json(topics: &[Topic]) -> String {
    let mut ordered: Vec<&Topic> = topics.iter().collect();
    ordered.sort_by(|a, b| a.id.cmp(&b.id));
    let mut out = serde_json::to_string_pretty(&ordered).expect("topics serialize");
    out.push('\n');
    out
}

/// Parses a document produced by [`serialize_json`].
pub fn parse_json(doc: &str) -> serde_json::Result<Vec<Topic>> {
    serde_json::from_str(doc)
}
