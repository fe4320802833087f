//! Case-insensitive longest-match scanning of term lists over text.
//!
//! Shared by the dictionary linker and the temporal rule matcher. Spans
//! are character offsets into the scanned text; matches start and end at
//! word boundaries and never overlap (the scanner is greedy
//! longest-match, continuing after each hit).

/// A term list prepared for scanning. Terms are folded to lowercase;
/// equal-length candidates are tried in lexicographic order so results
/// are deterministic.
#[derive(Debug, Clone)]
pub(crate) struct TermScanner {
    // (term chars, payload index), longest first
    terms: Vec<(Vec<char>, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TermHit {
    pub term_index: usize,
    /// Char offset range [start, end) in the scanned text.
    pub start: usize,
    pub end: usize,
    /// The matched surface, lowercased.
    pub surface: String,
}

fn fold(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl TermScanner {
    pub fn new<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut terms: Vec<(Vec<char>, usize)> = terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t.as_ref().chars().map(fold).collect::<Vec<char>>(), i))
            .filter(|(cs, _)| !cs.is_empty())
            .collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        TermScanner { terms }
    }

    /// All non-overlapping hits in `text`, in span order.
    pub fn scan(&self, text: &str) -> Vec<TermHit> {
        let chars: Vec<char> = text.chars().collect();
        let folded: Vec<char> = chars.iter().map(|&c| fold(c)).collect();
        let mut hits = Vec::new();
        let mut pos = 0;
        while pos < folded.len() {
            let at_boundary = pos == 0 || !is_word(folded[pos - 1]);
            if at_boundary && is_word(folded[pos]) {
                if let Some((len, idx)) = self.longest_at(&folded, pos) {
                    hits.push(TermHit {
                        term_index: idx,
                        start: pos,
                        end: pos + len,
                        surface: folded[pos..pos + len].iter().collect(),
                    });
                    pos += len;
                    continue;
                }
            }
            pos += 1;
        }
        hits
    }

    fn longest_at(&self, folded: &[char], pos: usize) -> Option<(usize, usize)> {
        for (term, idx) in &self.terms {
            let end = pos + term.len();
            if end > folded.len() || folded[pos..end] != term[..] {
                continue;
            }
            // must end at a word boundary
            if end < folded.len() && is_word(folded[end]) && is_word(term[term.len() - 1]) {
                continue;
            }
            return Some((term.len(), *idx));
        }
        None
    }
}

/// The lowercase token immediately preceding char offset `start`,
/// if any. Tokens are maximal non-whitespace runs.
pub(crate) fn token_before(text: &str, start: usize) -> Option<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = start;
    while i > 0 && chars[i - 1].is_whitespace() {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let end = i;
    while i > 0 && !chars[i - 1].is_whitespace() {
        i -= 1;
    }
    Some(chars[i..end].iter().collect::<String>().to_lowercase())
}
