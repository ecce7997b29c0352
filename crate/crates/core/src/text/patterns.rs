//! TeX-style hyphenation patterns used as a syllabifier.
//!
//! A pattern interleaves letters with digit priorities, e.g. `1na` or
//! `.ab4l`; `.` anchors a word boundary. For every position between two
//! letters of a word the highest digit of any matching pattern wins, and an
//! odd winner marks a break.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct HyphenationPatterns {
    patterns: HashMap<Vec<u8>, Vec<u8>>,
    max_len: usize,
    source: String,
}

impl HyphenationPatterns {
    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::PatternLoad {
            line: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        })?;
        let mut p = Self::parse(&content)?;
        p.source = path.display().to_string();
        Ok(p)
    }

    /// One pattern per line; blank lines and lines starting with `%` are
    /// skipped.
    pub fn parse(content: &str) -> Result<Self> {
        let mut patterns = HashMap::new();
        let mut max_len = 0;
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let (letters, values) =
                parse_pattern(line).map_err(|msg| Error::PatternLoad { line: idx + 1, msg })?;
            max_len = max_len.max(letters.len());
            patterns.insert(letters, values);
        }
        Ok(HyphenationPatterns {
            patterns,
            max_len,
            source: String::from("<inline>"),
        })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Byte offsets inside `word` before which a break is allowed.
    pub fn break_points(&self, word: &str) -> Vec<usize> {
        let mut padded = Vec::with_capacity(word.len() + 2);
        padded.push(b'.');
        padded.extend_from_slice(word.as_bytes());
        padded.push(b'.');

        let mut score = vec![0u8; padded.len() + 1];
        for i in 0..padded.len() {
            let upper = padded.len().min(i + self.max_len);
            for j in i + 1..=upper {
                if let Some(values) = self.patterns.get(&padded[i..j]) {
                    for (k, &v) in values.iter().enumerate() {
                        score[i + k] = score[i + k].max(v);
                    }
                }
            }
        }
        // score[p + 1] sits between word[p - 1] and word[p]
        (1..word.len()).filter(|&p| score[p + 1] % 2 == 1).collect()
    }

    pub fn syllabify(&self, word: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut prev = 0;
        for p in self.break_points(word) {
            out.push(word[prev..p].to_string());
            prev = p;
        }
        out.push(word[prev..].to_string());
        out
    }
}

fn parse_pattern(line: &str) -> std::result::Result<(Vec<u8>, Vec<u8>), String> {
    let mut letters = Vec::new();
    let mut values = vec![0u8];
    let mut saw_digit = false;
    for ch in line.chars() {
        if let Some(d) = ch.to_digit(10) {
            *values.last_mut().unwrap() = d as u8;
            saw_digit = true;
        } else if ch.is_ascii_lowercase() || ch == '.' {
            letters.push(ch as u8);
            values.push(0);
        } else if ch.is_ascii_uppercase() {
            letters.push(ch.to_ascii_lowercase() as u8);
            values.push(0);
        } else {
            return Err(format!("unexpected character {ch:?} in pattern {line:?}"));
        }
    }
    if !saw_digit {
        return Err(format!("pattern {line:?} has no digit"));
    }
    if letters.is_empty() {
        return Err(format!("pattern {line:?} has no letters"));
    }
    Ok((letters, values))
}
