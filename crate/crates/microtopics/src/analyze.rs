//! Local analyses over emitted topic JSON: the person co-occurrence,
//! interval aggregation, and timeline queries, without a SPARQL store.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};

use crate::emit::{parse_json, Topic};
use crate::error::{Error, Result};
use crate::semantics::ElementKind;

/// Loaded topics with an inverted element index.
#[derive(Debug, Default)]
pub struct TopicIndex {
    topics: Vec<Topic>,
    by_element: BTreeMap<String, Vec<usize>>,
}

impl TopicIndex {
    pub fn from_topics(topics: Vec<Topic>) -> Self {
        let mut by_element: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (idx, topic) in topics.iter().enumerate() {
            for (iri, _) in &topic.elements {
                by_element.entry(iri.clone()).or_default().push(idx);
            }
        }
        TopicIndex { topics, by_element }
    }

    /// Loads one or more topic JSON documents.
    ///
    /// A directory is read as one pipeline output: the per-batch
    /// `topics-*.json` files in name order, or the aggregate
    /// `topics.json` when no per-batch files exist. Loading both would
    /// double-count, and sidecars like `report.json` are not topic
    /// documents.
    pub fn load(paths: &[impl AsRef<Path>]) -> Result<Self> {
        let mut topics = Vec::new();
        for path in paths {
            let path = path.as_ref();
            if path.is_dir() {
                let mut files: Vec<_> = fs::read_dir(path)
                    .map_err(|e| Error::io(path, e))?
                    .filter_map(|entry| entry.ok().map(|e| e.path()))
                    .filter(|p| {
                        p.extension().is_some_and(|ext| ext == "json")
                            && p.file_stem()
                                .is_some_and(|s| s.to_string_lossy().starts_with("topics-"))
                    })
                    .collect();
                files.sort();
                if files.is_empty() {
                    let aggregate = path.join("topics.json");
                    if aggregate.is_file() {
                        files.push(aggregate);
                    }
                }
                for file in files {
                    topics.extend(load_one(&file)?);
                }
            } else {
                topics.extend(load_one(path)?);
            }
        }
        Ok(Self::from_topics(topics))
    }

    pub fn topics(&self) -> &[Topic] {
        &self.topics
    }

    fn topics_with(&self, element: &str) -> impl Iterator<Item = &Topic> {
        self.by_element
            .get(element)
            .into_iter()
            .flatten()
            .map(|idx| &self.topics[*idx])
    }
}

fn load_one(path: &Path) -> Result<Vec<Topic>> {
    let doc = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_json(&doc).map_err(|e| Error::Resource {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

fn has_element_with_kind(topic: &Topic, iri: &str, kind: ElementKind) -> bool {
    topic.elements.iter().any(|(e, k)| e == iri && *k == kind)
}

/// Persons co-occurring with `anchor` in at least one topic, ranked by
/// topic count (descending, then IRI). The anchor itself is excluded.
pub fn co_persons(index: &TopicIndex, anchor: &str) -> Vec<(String, u64)> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for topic in index.topics_with(anchor) {
        if !has_element_with_kind(topic, anchor, ElementKind::Person) {
            continue;
        }
        for (iri, kind) in &topic.elements {
            if *kind == ElementKind::Person && iri != anchor {
                *counts.entry(iri).or_default() += 1;
            }
        }
    }
    let mut ranked: Vec<(String, u64)> = counts
        .into_iter()
        .map(|(iri, n)| (iri.to_string(), n))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked
}

/// Distinct observation intervals of topics containing any of the
/// targets, sorted by start.
pub fn intervals_with(
    index: &TopicIndex,
    targets: &BTreeSet<String>,
) -> Vec<(DateTime<Utc>, DateTime<Utc>)> {
    let mut intervals: BTreeSet<(DateTime<Utc>, DateTime<Utc>)> = BTreeSet::new();
    for target in targets {
        for topic in index.topics_with(target) {
            intervals.insert((topic.interval_start, topic.interval_end));
        }
    }
    intervals.into_iter().collect()
}

/// One timeline row: in this interval, this element co-occurred with
/// this subset of the queried persons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimelineRow {
    pub interval_start: DateTime<Utc>,
    pub interval_end: DateTime<Utc>,
    pub element: String,
    /// Sorted subset of the queried persons.
    pub persons: Vec<String>,
}

/// For each interval, which of the top-k discussion elements co-occur
/// with which of the given persons.
///
/// Topics are restricted to those containing any of `persons`; their
/// `isAbout` elements are ranked by topic count and cut at `top_k`.
pub fn element_timeline(
    index: &TopicIndex,
    persons: &BTreeSet<String>,
    top_k: usize,
) -> Vec<TimelineRow> {
    assert!(top_k >= 1, "top_k must be >= 1");
    let relevant: Vec<&Topic> = index
        .topics
        .iter()
        .filter(|t| {
            persons
                .iter()
                .any(|p| has_element_with_kind(t, p, ElementKind::Person))
        })
        .collect();

    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for topic in &relevant {
        for (iri, kind) in &topic.elements {
            if *kind == ElementKind::Other {
                *counts.entry(iri).or_default() += 1;
            }
        }
    }
    let mut ranked: Vec<(&str, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let top: Vec<&str> = ranked.into_iter().take(top_k).map(|(e, _)| e).collect();

    let mut rows = Vec::new();
    let intervals: BTreeSet<(DateTime<Utc>, DateTime<Utc>)> = relevant
        .iter()
        .map(|t| (t.interval_start, t.interval_end))
        .collect();
    for (start, end) in intervals {
        for element in &top {
            let mut present: BTreeSet<&str> = BTreeSet::new();
            for topic in &relevant {
                if topic.interval_start != start || topic.interval_end != end {
                    continue;
                }
                if !topic.elements.iter().any(|(e, _)| e == element) {
                    continue;
                }
                for p in persons {
                    if has_element_with_kind(topic, p, ElementKind::Person) {
                        present.insert(p);
                    }
                }
            }
            if !present.is_empty() {
                rows.push(TimelineRow {
                    interval_start: start,
                    interval_end: end,
                    element: (*element).to_string(),
                    persons: present.into_iter().map(String::from).collect(),
                });
            }
        }
    }
    rows
}

/// CSV rendering of timeline rows: start, end, element, persons
/// (pipe-joined).
pub fn timeline_csv(rows: &[TimelineRow]) -> String {
    let mut out = String::from("interval_start,interval_end,element,persons\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.interval_start
                .to_rfc3339_opts(SecondsFormat::Secs, true),
            row.interval_end.to_rfc3339_opts(SecondsFormat::Secs, true),
            row.element,
            row.persons.join("|")
        )
        .unwrap();
    }
    out
}
