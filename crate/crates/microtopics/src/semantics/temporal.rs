//! Rule-based temporal expression linking.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textscan::TermScanner;

/// One lookup rule: any of `spots` links to the vocabulary instance
/// `iri` (a Today/Saturday/January/Summer-style individual).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemporalRule {
    pub spots: Vec<String>,
    pub iri: String,
}

/// A validated rule table. Spot variants are lowercase and disjoint
/// across rules.
#[derive(Debug, Clone)]
pub struct TemporalRuleSet {
    rules: Vec<TemporalRule>,
    scanner: TermScanner,
    // term index -> rule index
    rule_of_term: Vec<usize>,
}

impl TemporalRuleSet {
    pub fn new(rules: Vec<TemporalRule>) -> Result<Self> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut variants = Vec::new();
        let mut rule_of_term = Vec::new();
        for (idx, rule) in rules.iter().enumerate() {
            if rule.spots.is_empty() {
                return Err(Error::Config(format!(
                    "temporal rule for {} has no spots",
                    rule.iri
                )));
            }
            for spot in &rule.spots {
                let folded = spot.to_lowercase();
                if !seen.insert(folded.clone()) {
                    return Err(Error::Config(format!(
                        "temporal spot `{folded}` appears in more than one rule"
                    )));
                }
                variants.push(folded);
                rule_of_term.push(idx);
            }
        }
        Ok(TemporalRuleSet {
            rules,
            scanner: TermScanner::new(&variants),
            rule_of_term,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let rules: Vec<TemporalRule> =
            serde_json::from_slice(&bytes).map_err(|e| Error::Resource {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        Self::new(rules)
    }

    /// The rule table shipped with the crate: relative expressions with
    /// their common abbreviations, the seven weekdays, twelve months,
    /// and four seasons — 42 spot-to-instance links in total.
    pub fn builtin() -> Self {
        let rules: Vec<TemporalRule> =
            serde_json::from_str(include_str!("../../data/temporal_rules.json"))
                .expect("bundled temporal rules parse");
        Self::new(rules).expect("bundled temporal rules are valid")
    }

    pub fn rules(&self) -> &[TemporalRule] {
        &self.rules
    }

    /// Number of spot-variant links across all rules.
    pub fn link_count(&self) -> usize {
        self.rules.iter().map(|r| r.spots.len()).sum()
    }
}

/// A temporal spot found in a text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalMatch {
    pub spot: String,
    pub start: usize,
    pub end: usize,
    pub target_iri: String,
}

/// Case-insensitive whole-word matching of the rule table over `text`,
/// one hit per occurrence, in span order.
pub fn match_temporal_rules(text: &str, rules: &TemporalRuleSet) -> Vec<TemporalMatch> {
    rules
        .scanner
        .scan(text)
        .into_iter()
        .map(|hit| TemporalMatch {
            spot: hit.surface,
            start: hit.start,
            end: hit.end,
            target_iri: rules.rules[rules.rule_of_term[hit.term_index]].iri.clone(),
        })
        .collect()
}
