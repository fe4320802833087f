//! User-handle expansion.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maps a platform handle to a known person.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HandleEntry {
    /// Handle including the leading `@`.
    pub handle: String,
    pub display_name: String,
    pub entity_iri: String,
}

/// Lookup table of known handles, case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct HandleMap {
    by_handle: BTreeMap<String, HandleEntry>,
}

impl HandleMap {
    pub fn new(entries: Vec<HandleEntry>) -> Result<Self> {
        let mut by_handle = BTreeMap::new();
        for entry in entries {
            let Some(bare) = entry.handle.strip_prefix('@') else {
                return Err(Error::Config(format!(
                    "handle `{}` must begin with '@'",
                    entry.handle
                )));
            };
            if by_handle
                .insert(bare.to_lowercase(), entry.clone())
                .is_some()
            {
                return Err(Error::Config(format!(
                    "duplicate handle `{}`",
                    entry.handle
                )));
            }
        }
        Ok(HandleMap { by_handle })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let entries: Vec<HandleEntry> =
            serde_json::from_slice(&bytes).map_err(|e| Error::Resource {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        Self::new(entries)
    }

    pub fn get(&self, bare_handle: &str) -> Option<&HandleEntry> {
        self.by_handle.get(&bare_handle.to_lowercase())
    }

    pub fn is_empty(&self) -> bool {
        self.by_handle.is_empty()
    }
}

/// A handle replaced in the text, with its span in the *output* text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MentionSubstitution {
    pub handle: String,
    pub display_name: String,
    pub entity_iri: String,
    /// Char offsets of the display name in the expanded text.
    pub start: usize,
    pub end: usize,
}

fn handle_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"@([A-Za-z0-9_]+)").unwrap())
}

/// Replaces every known `@handle` with its display name.
///
/// Unknown handles stay verbatim; all other characters pass through
/// unchanged. Substitution records carry the entity so the resulting
/// annotations can be tied back to the handle's resource.
pub fn expand_mentions(text: &str, handles: &HandleMap) -> (String, Vec<MentionSubstitution>) {
    let mut out = String::with_capacity(text.len());
    let mut out_chars = 0usize;
    let mut subs = Vec::new();
    let mut last = 0usize;
    for cap in handle_re().captures_iter(text) {
        let whole = cap.get(0).unwrap();
        let bare = cap.get(1).unwrap().as_str();
        let Some(entry) = handles.get(bare) else {
            continue;
        };
        let before = &text[last..whole.start()];
        out.push_str(before);
        out_chars += before.chars().count();
        let name_chars = entry.display_name.chars().count();
        subs.push(MentionSubstitution {
            handle: entry.handle.clone(),
            display_name: entry.display_name.clone(),
            entity_iri: entry.entity_iri.clone(),
            start: out_chars,
            end: out_chars + name_chars,
        });
        out.push_str(&entry.display_name);
        out_chars += name_chars;
        last = whole.end();
    }
    out.push_str(&text[last..]);
    (out, subs)
}
