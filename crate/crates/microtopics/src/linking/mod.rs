//! Entity annotation of post texts via a pluggable linker.
//!
//! Two linkers are provided: [`RemoteLinker`] speaks a TagMe-style HTTP
//! protocol, [`DictionaryLinker`] matches a fixed spot dictionary for
//! hermetic, byte-reproducible runs. Raw annotations pass through the
//! confidence filter before becoming candidate topic elements.

mod cache;
mod dictionary;
mod remote;

use std::collections::BTreeSet;
use std::path::PathBuf;

pub use cache::ResponseCache;
pub use dictionary::{DictionaryEntry, DictionaryLinker};
pub use remote::RemoteLinker;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// A linked spot: a text fragment tied to a knowledge-base entity.
///
/// `span` is a `[start, end)` character-offset range into the
/// preprocessed text. `rho` is the linker's goodness score for the
/// spot/entity pair and `link_prob` the probability that the spot should
/// link at all; both lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub spot: String,
    pub start: usize,
    pub end: usize,
    pub entity_iri: String,
    pub rho: f64,
    pub link_prob: f64,
}

/// Linker thresholds and transport settings.
#[derive(Debug, Clone)]
pub struct LinkerConfig {
    /// Goodness threshold; annotations must satisfy `rho > tau_rho`.
    pub tau_rho: f64,
    /// Link-probability threshold; `link_prob > tau_p`.
    pub tau_p: f64,
    /// Remote linker endpoint, when running in remote mode.
    pub endpoint: Option<String>,
    /// Base IRI prepended to entity titles returned by the remote linker.
    pub resource_base: String,
    pub cache_dir: Option<PathBuf>,
    /// Upper bound on concurrent in-flight remote requests.
    pub max_in_flight: usize,
}

impl Default for LinkerConfig {
    fn default() -> Self {
        LinkerConfig {
            tau_rho: 0.15,
            tau_p: 0.35,
            endpoint: None,
            resource_base: "http://dbpedia.org/resource/".into(),
            cache_dir: None,
            max_in_flight: 8,
        }
    }
}

/// Anything that can annotate a post text with entity links.
pub trait Linker: Send + Sync {
    /// Returns raw annotations for `text`, unfiltered.
    fn annotate(&self, text: &str) -> Result<Vec<Annotation>>;
}

/// Applies the confidence thresholds and resolves overlaps.
///
/// Survivors satisfy `rho > tau_rho && link_prob > tau_p`; spots are
/// lowercased; overlapping spans are resolved in favor of the higher
/// rho; the result is sorted by span start.
pub fn filter_annotations(raw: Vec<Annotation>, tau_rho: f64, tau_p: f64) -> Vec<Annotation> {
    let mut passing: Vec<Annotation> = raw
        .into_iter()
        .filter(|a| a.rho > tau_rho && a.link_prob > tau_p)
        .filter(|a| a.start < a.end)
        .map(|mut a| {
            a.spot = a.spot.to_lowercase();
            a
        })
        .collect();

    // Highest rho claims its span first; ties break deterministically.
    passing.sort_by(|a, b| {
        b.rho
            .partial_cmp(&a.rho)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.start.cmp(&b.start))
            .then_with(|| a.entity_iri.cmp(&b.entity_iri))
    });
    let mut kept: Vec<Annotation> = Vec::new();
    for a in passing {
        if kept.iter().all(|k| a.end <= k.start || k.end <= a.start) {
            kept.push(a);
        }
    }
    kept.sort_by(|a, b| {
        a.start
            .cmp(&b.start)
            .then_with(|| a.entity_iri.cmp(&b.entity_iri))
    });
    kept
}

/// Annotates one preprocessed post text and filters by the configured
/// thresholds.
pub fn annotate_post(
    text: &str,
    linker: &dyn Linker,
    config: &LinkerConfig,
) -> Result<Vec<Annotation>> {
    let raw = linker.annotate(text)?;
    Ok(filter_annotations(raw, config.tau_rho, config.tau_p))
}

/// Spots the linker saw but whose links did not survive filtering.
///
/// These are Algorithm-style unlinked spots: candidates for promotion
/// during batch-level consolidation.
pub fn unlinked_spots(raw: &[Annotation], accepted: &[Annotation]) -> BTreeSet<String> {
    let accepted_spots: BTreeSet<&str> = accepted.iter().map(|a| a.spot.as_str()).collect();
    raw.iter()
        .map(|a| a.spot.to_lowercase())
        .filter(|s| !accepted_spots.contains(s.as_str()))
        .collect()
}
