//! Offline dictionary linker.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textscan::TermScanner;

use super::{Annotation, Linker};

/// One dictionary entry: a set of lowercase spot variants all linking to
/// the same entity with fixed confidence scores.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DictionaryEntry {
    pub spots: Vec<String>,
    pub iri: String,
    pub rho: f64,
    pub p: f64,
}

/// Deterministic longest-match linker over a spot dictionary.
///
/// Matching is case-insensitive and bounded at word edges; the longest
/// variant at a position wins and scanning continues after it. The same
/// text and dictionary always produce the identical annotation list,
/// which is what makes whole pipeline runs byte-reproducible.
#[derive(Debug, Clone)]
pub struct DictionaryLinker {
    scanner: TermScanner,
    // parallel to scanner term indices
    targets: Vec<(String, f64, f64)>,
}

impl DictionaryLinker {
    pub fn new(entries: Vec<DictionaryEntry>) -> Result<Self> {
        let mut variants: Vec<String> = Vec::new();
        let mut targets = Vec::new();
        for entry in &entries {
            if entry.spots.is_empty() {
                return Err(Error::Config(format!(
                    "dictionary entry for {} has no spots",
                    entry.iri
                )));
            }
            if !(0.0..=1.0).contains(&entry.rho) || !(0.0..=1.0).contains(&entry.p) {
                return Err(Error::Config(format!(
                    "dictionary entry for {} has scores outside [0, 1]",
                    entry.iri
                )));
            }
            for spot in &entry.spots {
                variants.push(spot.to_lowercase());
                targets.push((entry.iri.clone(), entry.rho, entry.p));
            }
        }
        Ok(DictionaryLinker {
            scanner: TermScanner::new(&variants),
            targets,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let entries: Vec<DictionaryEntry> =
            serde_json::from_slice(&bytes).map_err(|e| Error::Resource {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        Self::new(entries)
    }
}

impl Linker for DictionaryLinker {
    fn annotate(&self, text: &str) -> Result<Vec<Annotation>> {
        Ok(self
            .scanner
            .scan(text)
            .into_iter()
            .map(|hit| {
                let (iri, rho, p) = &self.targets[hit.term_index];
                Annotation {
                    spot: hit.surface,
                    start: hit.start,
                    end: hit.end,
                    entity_iri: iri.clone(),
                    rho: *rho,
                    link_prob: *p,
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linker() -> DictionaryLinker {
        DictionaryLinker::new(vec![
            DictionaryEntry {
                spots: vec!["hillary clinton".into(), "hillary".into(), "clinton".into()],
                iri: "http://dbpedia.org/resource/Hillary_Clinton".into(),
                rho: 0.5,
                p: 0.9,
            },
            DictionaryEntry {
                spots: vec!["stop and frisk".into(), "stopandfrisk".into()],
                iri: "http://dbpedia.org/resource/Terry_stop".into(),
                rho: 0.305,
                p: 0.366,
            },
        ])
        .unwrap()
    }

    #[test]
    fn longest_variant_wins() {
        let anns = linker()
            .annotate("Hillary Clinton on stop and frisk")
            .unwrap();
        assert_eq!(anns.len(), 2);
        assert_eq!(anns[0].spot, "hillary clinton");
        assert_eq!(anns[1].spot, "stop and frisk");
    }

    #[test]
    fn deterministic_across_calls() {
        let l = linker();
        let text = "clinton debates StopAndFrisk with hillary";
        assert_eq!(l.annotate(text).unwrap(), l.annotate(text).unwrap());
    }

    #[test]
    fn rejects_scores_out_of_range() {
        let err = DictionaryLinker::new(vec![DictionaryEntry {
            spots: vec!["x".into()],
            iri: "e".into(),
            rho: 1.5,
            p: 0.5,
        }]);
        assert!(err.is_err());
    }
}
