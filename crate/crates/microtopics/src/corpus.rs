//! Post collections: loading, text normalization, and interval partitioning.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::OnceLock;

use chrono::{DateTime, TimeZone, Utc};
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One micropost.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Post {
    pub id: String,
    pub text: String,
    pub created_at: DateTime<Utc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
}

/// A half-open window `[start, end)` of posts.
///
/// Every post satisfies `start <= created_at < end`; a post exactly at
/// `end` belongs to the next batch.
#[derive(Debug, Clone)]
pub struct IntervalBatch {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
    pub posts: Vec<Post>,
}

impl IntervalBatch {
    /// Number of posts in the batch (`|P|`).
    pub fn size(&self) -> u64 {
        self.posts.len() as u64
    }

    /// Earliest and latest post timestamps, if the batch is non-empty.
    pub fn observed_extremes(&self) -> Option<(DateTime<Utc>, DateTime<Utc>)> {
        let min = self.posts.iter().map(|p| p.created_at).min()?;
        let max = self.posts.iter().map(|p| p.created_at).max()?;
        Some((min, max))
    }
}

/// Loads a JSON-lines corpus, one post object per line, in file order.
///
/// Blank lines are skipped. Malformed lines and duplicate ids are
/// reported with their line number.
pub fn load_posts(path: &Path) -> Result<Vec<Post>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut posts = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let post: Post = serde_json::from_str(&line).map_err(|e| Error::MalformedPost {
            path: path.to_path_buf(),
            line: lineno,
            reason: e.to_string(),
        })?;
        if post.id.is_empty() {
            return Err(Error::MalformedPost {
                path: path.to_path_buf(),
                line: lineno,
                reason: "empty id".into(),
            });
        }
        if !seen.insert(post.id.clone()) {
            return Err(Error::DuplicatePostId {
                id: post.id,
                path: path.to_path_buf(),
                line: lineno,
            });
        }
        posts.push(post);
    }
    Ok(posts)
}

/// Partitions a corpus into aligned half-open windows of
/// `interval_minutes`, starting at the earliest timestamp truncated to
/// the minute. Empty windows inside the span are emitted with size 0.
pub fn partition_intervals(corpus: Vec<Post>, interval_minutes: u32) -> Vec<IntervalBatch> {
    assert!(interval_minutes >= 1, "interval_minutes must be >= 1");
    let Some(min_ts) = corpus.iter().map(|p| p.created_at).min() else {
        return Vec::new();
    };
    let max_ts = corpus.iter().map(|p| p.created_at).max().unwrap();

    let len_secs = i64::from(interval_minutes) * 60;
    let origin = min_ts.timestamp() - min_ts.timestamp().rem_euclid(60);
    let n_batches = ((max_ts.timestamp() - origin) / len_secs + 1) as usize;

    let mut batches: Vec<IntervalBatch> = (0..n_batches)
        .map(|k| IntervalBatch {
            start: Utc
                .timestamp_opt(origin + k as i64 * len_secs, 0)
                .single()
                .expect("window start in range"),
            end: Utc
                .timestamp_opt(origin + (k as i64 + 1) * len_secs, 0)
                .single()
                .expect("window end in range"),
            posts: Vec::new(),
        })
        .collect();

    for post in corpus {
        let k = ((post.created_at.timestamp() - origin) / len_secs) as usize;
        batches[k].posts.push(post);
    }
    batches
}

fn url_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(?:https?://|www\.)\S+").unwrap())
}

fn hashtag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"#+(\w)").unwrap())
}

/// Normalizes raw post text for linking.
///
/// URLs and the leading retweet prefix are removed, hashtag signs are
/// stripped while the tag word is kept, `@` mentions are kept for the
/// mention-expansion stage, and whitespace is collapsed. Idempotent.
pub fn preprocess_text(text: &str) -> String {
    let no_urls = url_re().replace_all(text, "");
    let no_tags = hashtag_re().replace_all(&no_urls, "$1");
    let mut rest = no_tags.trim_start();
    while let Some(stripped) = rest.strip_prefix("RT ") {
        rest = stripped.trim_start();
    }
    rest.split_whitespace().collect::<Vec<_>>().join(" ")
}
