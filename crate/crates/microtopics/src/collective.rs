//! Batch-level improvement of per-post links: relinking multiply-linked
//! spots to the dominant entity, promoting unlinked spots that match a
//! linked spot, and eliminating the rest.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Where a spot link came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementOrigin {
    /// Entity linker output.
    Linker,
    /// A user-handle expansion.
    Mention,
    /// A temporal lookup rule; exempt from relinking.
    TemporalRule,
    /// An unlinked spot promoted during consolidation.
    Promoted,
}

/// One surviving spot-to-entity link occurrence within a post.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotLink {
    pub spot: String,
    pub entity_iri: String,
    pub origin: ElementOrigin,
}

/// A post together with its candidate elements and unlinked spots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkedPost {
    pub post_id: String,
    /// Preprocessed, mention-expanded text (used by the location test).
    pub text: String,
    /// Link occurrences, with multiplicity.
    pub links: Vec<SpotLink>,
    /// Spots seen but not linked; empty after consolidation.
    pub unlinked_spots: BTreeSet<String>,
}

impl LinkedPost {
    /// Distinct entity IRIs of this post.
    pub fn element_set(&self) -> BTreeSet<&str> {
        self.links.iter().map(|l| l.entity_iri.as_str()).collect()
    }
}

/// Rewrites every spot to its dominant entity within the batch.
///
/// Dominance counts link occurrences per (spot, entity); ties break on
/// the lexicographically smallest IRI. Unlinked spots equal to some
/// linked spot adopt that spot's dominant entity; the rest are dropped.
/// Temporal-rule links are left untouched — they are rule-determined,
/// not statistical. Idempotent.
pub fn consolidate_links(posts: Vec<LinkedPost>) -> Vec<LinkedPost> {
    let mut counts: BTreeMap<&str, BTreeMap<&str, u64>> = BTreeMap::new();
    for post in &posts {
        for link in &post.links {
            if link.origin == ElementOrigin::TemporalRule {
                continue;
            }
            *counts
                .entry(link.spot.as_str())
                .or_default()
                .entry(link.entity_iri.as_str())
                .or_default() += 1;
        }
    }

    let dominant: BTreeMap<String, String> = counts
        .iter()
        .map(|(spot, by_entity)| {
            let best = by_entity
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                .expect("non-empty entity counts");
            (spot.to_string(), best.0.to_string())
        })
        .collect();

    posts
        .into_iter()
        .map(|mut post| {
            for link in &mut post.links {
                if link.origin == ElementOrigin::TemporalRule {
                    continue;
                }
                if let Some(entity) = dominant.get(&link.spot) {
                    link.entity_iri = entity.clone();
                }
            }
            let unlinked = std::mem::take(&mut post.unlinked_spots);
            for spot in unlinked {
                if let Some(entity) = dominant.get(&spot) {
                    post.links.push(SpotLink {
                        spot,
                        entity_iri: entity.clone(),
                        origin: ElementOrigin::Promoted,
                    });
                }
                // spots linked nowhere in the batch are eliminated
            }
            post
        })
        .collect()
}

/// The consolidated spot-to-entity table of a batch, for debug dumps.
pub fn spot_entity_table(posts: &[LinkedPost]) -> BTreeMap<String, String> {
    let mut table = BTreeMap::new();
    for post in posts {
        for link in &post.links {
            table.insert(link.spot.clone(), link.entity_iri.clone());
        }
    }
    table
}
