//! Text normalization and tokenization into the supported alphabets.

mod patterns;
mod ssp;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use patterns::HyphenationPatterns;
pub use ssp::{SonorityScale, SspSyllabifier, YPolicy};

/// Lowercase a–z letters of a text plus the spans of its words.
///
/// Every letter belongs to exactly one span; spans are ordered and
/// contiguous, so `word_spans` tiles `letters`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    letters: String,
    word_spans: Vec<(usize, usize)>,
}

impl NormalizedText {
    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn word_spans(&self) -> &[(usize, usize)] {
        &self.word_spans
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn word_count(&self) -> usize {
        self.word_spans.len()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.word_spans.iter().map(|&(s, e)| &self.letters[s..e])
    }

    /// Words joined by single spaces; normalizing this yields `self` again.
    pub fn to_spaced_string(&self) -> String {
        let mut out = String::with_capacity(self.letters.len() + self.word_spans.len());
        for (i, w) in self.words().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(w);
        }
        out
    }

    /// Builds a text from already-normalized words.
    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let mut letters = String::new();
        let mut word_spans = Vec::with_capacity(words.len());
        for w in words {
            let w = w.as_ref();
            if w.is_empty() || !w.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(Error::InvalidArgument(format!(
                    "word {w:?} is not a non-empty a-z string"
                )));
            }
            let start = letters.len();
            letters.push_str(w);
            word_spans.push((start, letters.len()));
        }
        if letters.is_empty() {
            return Err(Error::EmptyText);
        }
        Ok(NormalizedText {
            letters,
            word_spans,
        })
    }
}

/// Lowercases ASCII letters and drops everything else.
///
/// Words are runs of letters. Apostrophes and non-ASCII letters are dropped
/// without ending the current word (`"Don't"` becomes `"dont"`); any other
/// non-letter character (whitespace, digits, punctuation) ends it.
pub fn normalize(raw: &str) -> Result<NormalizedText> {
    let mut letters = String::with_capacity(raw.len());
    let mut word_spans = Vec::new();
    let mut start: Option<usize> = None;
    for ch in raw.chars() {
        if ch.is_ascii_alphabetic() {
            if start.is_none() {
                start = Some(letters.len());
            }
            letters.push(ch.to_ascii_lowercase());
        } else if is_transparent(ch) {
            continue;
        } else if let Some(s) = start.take() {
            word_spans.push((s, letters.len()));
        }
    }
    if let Some(s) = start {
        word_spans.push((s, letters.len()));
    }
    if letters.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(NormalizedText {
        letters,
        word_spans,
    })
}

fn is_transparent(ch: char) -> bool {
    matches!(ch, '\'' | '\u{2019}') || (!ch.is_ascii() && ch.is_alphabetic())
}

/// A syllable splitter usable by the syllable alphabet.
#[derive(Clone)]
pub enum Syllabifier {
    Ssp(SspSyllabifier),
    Patterns(Arc<HyphenationPatterns>),
}

impl Syllabifier {
    /// `ssp` (default scale, `y` is a vowel only in words without a–e–i–o–u),
    /// `ssp-y` (`y` always a vowel), `ssp-noy` (`y` never a vowel), or
    /// `patterns:<path>` to load a hyphenation pattern file.
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "ssp" => Ok(Syllabifier::Ssp(SspSyllabifier::default())),
            "ssp-y" => Ok(Syllabifier::Ssp(SspSyllabifier::with_y_policy(
                YPolicy::Always,
            ))),
            "ssp-noy" => Ok(Syllabifier::Ssp(SspSyllabifier::with_y_policy(
                YPolicy::Never,
            ))),
            _ => match id.strip_prefix("patterns:") {
                Some(path) if !path.is_empty() => Ok(Syllabifier::Patterns(Arc::new(
                    load_hyphenation_patterns(path)?,
                ))),
                _ => Err(Error::Config(format!("unknown syllabifier {id:?}"))),
            },
        }
    }

    pub fn id(&self) -> String {
        match self {
            Syllabifier::Ssp(s) => match s.y_policy() {
                YPolicy::WhenNoOtherVowel => "ssp".into(),
                YPolicy::Always => "ssp-y".into(),
                YPolicy::Never => "ssp-noy".into(),
            },
            Syllabifier::Patterns(p) => format!("patterns:{}", p.source()),
        }
    }

    pub fn syllabify(&self, word: &str) -> Vec<String> {
        match self {
            Syllabifier::Ssp(s) => s.syllabify(word),
            Syllabifier::Patterns(p) => p.syllabify(word),
        }
    }
}

impl Default for Syllabifier {
    fn default() -> Self {
        Syllabifier::Ssp(SspSyllabifier::default())
    }
}

impl fmt::Debug for Syllabifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syllabifier({})", self.id())
    }
}

impl PartialEq for Syllabifier {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

pub fn load_hyphenation_patterns<P: AsRef<Path>>(path: P) -> Result<HyphenationPatterns> {
    HyphenationPatterns::load(path)
}

/// The segmentation a text is compressed under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlphabetKind {
    Letters,
    LetterNgram,
    Syllables,
    Words,
    WordPairs,
}

impl AlphabetKind {
    pub fn code(&self) -> u8 {
        match self {
            AlphabetKind::Letters => 0,
            AlphabetKind::LetterNgram => 1,
            AlphabetKind::Syllables => 2,
            AlphabetKind::Words => 3,
            AlphabetKind::WordPairs => 4,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Some(match code {
            0 => AlphabetKind::Letters,
            1 => AlphabetKind::LetterNgram,
            2 => AlphabetKind::Syllables,
            3 => AlphabetKind::Words,
            4 => AlphabetKind::WordPairs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphabetSpec {
    Letters,
    /// Non-overlapping blocks of `n ≥ 2` letters; the last block may be shorter.
    LetterNgram(usize),
    Syllables(Syllabifier),
    Words,
    /// Non-overlapping consecutive word pairs; an odd last word stands alone.
    WordPairs,
}

impl AlphabetSpec {
    pub fn ngram(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!(
                "letter n-gram size must be at least 2, got {n}"
            )));
        }
        if n > u8::MAX as usize {
            return Err(Error::Config(format!("letter n-gram size {n} exceeds 255")));
        }
        Ok(AlphabetSpec::LetterNgram(n))
    }

    pub fn syllables() -> Self {
        AlphabetSpec::Syllables(Syllabifier::default())
    }

    pub fn kind(&self) -> AlphabetKind {
        match self {
            AlphabetSpec::Letters => AlphabetKind::Letters,
            AlphabetSpec::LetterNgram(_) => AlphabetKind::LetterNgram,
            AlphabetSpec::Syllables(_) => AlphabetKind::Syllables,
            AlphabetSpec::Words => AlphabetKind::Words,
            AlphabetSpec::WordPairs => AlphabetKind::WordPairs,
        }
    }

    pub fn gram_size(&self) -> Option<usize> {
        match self {
            AlphabetSpec::LetterNgram(n) => Some(*n),
            _ => None,
        }
    }

    /// Short label used in reports, e.g. `letters`, `ngram3`, `syllables`.
    pub fn label(&self) -> String {
        match self {
            AlphabetSpec::Letters => "letters".into(),
            AlphabetSpec::LetterNgram(n) => format!("ngram{n}"),
            AlphabetSpec::Syllables(_) => "syllables".into(),
            AlphabetSpec::Words => "words".into(),
            AlphabetSpec::WordPairs => "wordpairs".into(),
        }
    }
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Symbols of one text in reading order, all non-empty a–z strings.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenStream {
    tokens: Vec<String>,
    alphabet: AlphabetSpec,
}

impl TokenStream {
    pub fn new(tokens: Vec<String>, alphabet: AlphabetSpec) -> Self {
        TokenStream { tokens, alphabet }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<String> {
        self.tokens
    }

    pub fn alphabet(&self) -> &AlphabetSpec {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Concatenation of all tokens.
    pub fn joined(&self) -> String {
        self.tokens.concat()
    }
}

pub fn tokenize(text: &NormalizedText, spec: &AlphabetSpec) -> Result<TokenStream> {
    let letters = text.letters();
    let tokens: Vec<String> = match spec {
        AlphabetSpec::Letters => letters.chars().map(String::from).collect(),
        AlphabetSpec::LetterNgram(n) => {
            if *n < 2 {
                return Err(Error::Config(format!(
                    "letter n-gram size must be at least 2, got {n}"
                )));
            }
            // letters is ASCII, so byte chunks are char chunks
            letters
                .as_bytes()
                .chunks(*n)
                .map(|c| String::from_utf8(c.to_vec()).expect("ascii"))
                .collect()
        }
        AlphabetSpec::Words => text.words().map(String::from).collect(),
        AlphabetSpec::WordPairs => {
            let words: Vec<&str> = text.words().collect();
            words.chunks(2).map(|pair| pair.concat()).collect()
        }
        AlphabetSpec::Syllables(syl) => text.words().flat_map(|w| syl.syllabify(w)).collect(),
    };
    Ok(TokenStream::new(tokens, spec.clone()))
}
