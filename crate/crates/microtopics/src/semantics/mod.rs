//! Element semantics: mention expansion, temporal rules, the year
//! reference filter, type resolution, and element-kind classification.

mod mentions;
mod temporal;
mod types;

use std::collections::{BTreeMap, BTreeSet};

pub use mentions::{expand_mentions, HandleEntry, HandleMap, MentionSubstitution};
pub use temporal::{match_temporal_rules, TemporalMatch, TemporalRule, TemporalRuleSet};
pub use types::{
    resolve_entity_types, LayeredTypeSource, LocalTypeDb, RemoteTypeService, TypeRecord,
    TypeSource, TYPE_CHUNK_SIZE,
};

use serde::{Deserialize, Serialize};

use crate::collective::{ElementOrigin, LinkedPost};
use crate::linking::Annotation;
use crate::textscan::{token_before, TermScanner};
use crate::weight::ratio_exceeds;

/// The kind assigned to a topic element, decided once per batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Person,
    Location,
    TemporalExpression,
    Other,
}

/// Classification settings: the location/person type lists and the
/// collective-significance threshold for locations.
#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub tau_loc: f64,
    pub person_types: BTreeSet<String>,
    pub location_types: BTreeSet<String>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            tau_loc: 0.01,
            person_types: [
                "http://xmlns.com/foaf/0.1/Person",
                "http://dbpedia.org/ontology/Person",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            location_types: [
                "http://schema.org/Place",
                "http://dbpedia.org/ontology/PopulatedPlace",
                "http://dbpedia.org/ontology/Place",
                "http://dbpedia.org/ontology/Location",
                "http://dbpedia.org/ontology/Settlement",
                "http://www.w3.org/2003/01/geo/wgs84_pos#SpatialThing",
                "http://umbel.org/umbel/rc/PopulatedPlace",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        }
    }
}

/// Digit runs of exactly four characters are read as years.
fn years_in(s: &str) -> Vec<String> {
    let chars: Vec<char> = s.chars().collect();
    let mut years = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i - start == 4 {
                years.push(chars[start..i].iter().collect());
            }
        } else {
            i += 1;
        }
    }
    years
}

/// Year-reference check for an annotation.
///
/// When the entity name carries a 4-digit year, the post text must
/// mention one of those years; otherwise the link is dropped. Entities
/// without a year in their name always pass.
pub fn apply_year_filter(annotation: &Annotation, text: &str) -> bool {
    let local = annotation
        .entity_iri
        .rsplit('/')
        .next()
        .unwrap_or(&annotation.entity_iri);
    let years = years_in(local);
    years.is_empty() || years.iter().any(|y| text.contains(y.as_str()))
}

/// Assigns exactly one [`ElementKind`] to every element of the batch.
///
/// Kinds are decided in precedence order: temporal-rule elements first,
/// then persons by type, then locations by type *and* the preposition
/// test (the share of batch posts where one of the element's spots
/// directly follows "in", "on", or "at" must exceed `tau_loc`), and
/// everything else is Other. Elements with location-indicating types
/// that fail the preposition test are Other.
pub fn classify_elements(
    posts: &[LinkedPost],
    batch_size: u64,
    types: &BTreeMap<String, TypeRecord>,
    config: &ClassifyConfig,
) -> BTreeMap<String, ElementKind> {
    let mut temporal: BTreeSet<&str> = BTreeSet::new();
    let mut spots_of: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for post in posts {
        for link in &post.links {
            if link.origin == ElementOrigin::TemporalRule {
                temporal.insert(link.entity_iri.as_str());
            }
            spots_of
                .entry(link.entity_iri.as_str())
                .or_default()
                .insert(link.spot.as_str());
        }
    }

    let mut kinds = BTreeMap::new();
    for (element, spots) in &spots_of {
        let kind = if temporal.contains(element) {
            ElementKind::TemporalExpression
        } else {
            let type_set = types.get(*element).map(|r| &r.type_iris);
            let has = |list: &BTreeSet<String>| {
                type_set.is_some_and(|ts| ts.iter().any(|t| list.contains(t)))
            };
            if has(&config.person_types) {
                ElementKind::Person
            } else if has(&config.location_types)
                && preposition_test(posts, element, spots, batch_size, config.tau_loc)
            {
                ElementKind::Location
            } else {
                ElementKind::Other
            }
        };
        kinds.insert((*element).to_string(), kind);
    }
    kinds
}

const LOCATION_PREPOSITIONS: [&str; 3] = ["in", "on", "at"];

fn preposition_test(
    posts: &[LinkedPost],
    element: &str,
    spots: &BTreeSet<&str>,
    batch_size: u64,
    tau_loc: f64,
) -> bool {
    let scanner = TermScanner::new(spots.iter().copied());
    let mut qualifying_posts = 0u64;
    for post in posts {
        if !post.links.iter().any(|l| l.entity_iri == element) {
            continue;
        }
        let qualified = scanner.scan(&post.text).iter().any(|hit| {
            token_before(&post.text, hit.start)
                .is_some_and(|tok| LOCATION_PREPOSITIONS.contains(&tok.as_str()))
        });
        if qualified {
            qualifying_posts += 1;
        }
    }
    ratio_exceeds(qualifying_posts, batch_size, tau_loc)
}
