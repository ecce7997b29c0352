//! Per-text measurements: code lengths, compressibility, Zipf estimates and
//! the entropy inequality between an alphabet and its concatenation.

use std::collections::HashMap;

use crate::codebook::codebook_length;
use crate::container::{kolmogorov_bound, ContainerConfig};
use crate::error::{Error, Result};
use crate::huffman::{build_canonical_code, count_symbols, entropy};
use crate::text::{normalize, tokenize, NormalizedText, Syllabifier, TokenStream};

/// Lengths and statistics of one text under one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionReport {
    pub text_id: String,
    pub alphabet: String,
    pub repr: String,
    pub format: String,
    /// `N`, tokens in the text.
    pub tokens: u64,
    /// `M`, distinct symbols.
    pub symbols: u64,
    pub entropy_bits: f64,
    pub code_only_bits: u64,
    pub codebook_bits: u64,
    pub total_bits: u64,
    pub letters_count: u64,
    pub words_count: u64,
    pub denominator_l: u32,
    pub eta: f64,
    pub kolmogorov_bound_bits: u64,
}

impl CompressionReport {
    /// `ℓ[enc] / ℓ[r]`.
    pub fn code_to_codebook_ratio(&self) -> f64 {
        self.code_only_bits as f64 / self.codebook_bits as f64
    }

    /// Total bits per word of the text.
    pub fn bits_per_word(&self) -> f64 {
        self.total_bits as f64 / self.words_count as f64
    }

    /// `N·S ≤ ℓ[enc] ≤ N·S + N`, with `tol` slack for rounding.
    pub fn within_entropy_bounds(&self, tol: f64) -> bool {
        let ns = self.tokens as f64 * self.entropy_bits;
        let len = self.code_only_bits as f64;
        ns <= len + tol && len <= ns + self.tokens as f64 + tol
    }
}

/// `(ℓ[enc] + ℓ[r]) / (L · letters)`; below 1 means the text shrank.
pub fn compressibility(report: &CompressionReport, denominator_l: u32) -> f64 {
    compressibility_of(report.total_bits, report.letters_count, denominator_l)
}

pub fn compressibility_of(total_bits: u64, letters: u64, denominator_l: u32) -> f64 {
    total_bits as f64 / (denominator_l as f64 * letters as f64)
}

/// Measures one configuration on an already normalized text.
pub fn measure(
    text_id: &str,
    text: &NormalizedText,
    tokens: &TokenStream,
    cfg: &ContainerConfig,
    denominator_l: u32,
) -> Result<CompressionReport> {
    cfg.validate()?;
    let freqs = count_symbols(tokens.tokens())?;
    let code = build_canonical_code(&freqs);
    let code_only_bits = code.encoded_len(&freqs)?;
    let codebook_bits = codebook_length(&code, cfg.repr, cfg.codebook_format)?;
    let total_bits = code_only_bits + codebook_bits;
    let letters_count = text.letter_count() as u64;
    Ok(CompressionReport {
        text_id: text_id.to_string(),
        alphabet: cfg.alphabet.label(),
        repr: cfg.repr.label().to_string(),
        format: cfg.codebook_format.label().to_string(),
        tokens: freqs.total(),
        symbols: freqs.distinct() as u64,
        entropy_bits: entropy(&freqs),
        code_only_bits,
        codebook_bits,
        total_bits,
        letters_count,
        words_count: text.word_count() as u64,
        denominator_l,
        eta: compressibility_of(total_bits, letters_count, denominator_l),
        kolmogorov_bound_bits: kolmogorov_bound(codebook_bits, code_only_bits)?,
    })
}

/// One row of a multi-configuration analysis.
#[derive(Debug, Clone)]
pub struct AnalysisRow {
    pub config: ContainerConfig,
    pub report: Result<CompressionReport>,
}

/// Reports for every configuration. A failing configuration yields an error
/// row and does not stop the others.
pub fn analyze_text(
    text_id: &str,
    raw: &str,
    configs: &[ContainerConfig],
    denominator_l: u32,
) -> Result<Vec<AnalysisRow>> {
    let text = normalize(raw)?;
    Ok(analyze_normalized(text_id, &text, configs, denominator_l))
}

pub fn analyze_normalized(
    text_id: &str,
    text: &NormalizedText,
    configs: &[ContainerConfig],
    denominator_l: u32,
) -> Vec<AnalysisRow> {
    let mut streams: HashMap<String, Result<TokenStream>> = HashMap::new();
    configs
        .iter()
        .map(|cfg| {
            let key = format!("{:?}", cfg.alphabet);
            let tokens = streams
                .entry(key)
                .or_insert_with(|| tokenize(text, &cfg.alphabet));
            let report = match tokens {
                Ok(t) => measure(text_id, text, t, cfg, denominator_l),
                Err(e) => Err(e.clone()),
            };
            AnalysisRow {
                config: cfg.clone(),
                report,
            }
        })
        .collect()
}

/// Rough code and codebook sizes for a word alphabet whose frequencies
/// follow Zipf's law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfEstimate {
    /// `4.7 · L · M`: average word of 4.7 letters, `L` bits each.
    pub codebook_bits: f64,
    /// `N · log₂(√M · ln M)`.
    pub code_bits: f64,
    /// `code_bits / codebook_bits`.
    pub ratio: f64,
}

pub fn zipf_estimates(
    distinct_words: u64,
    total_words: u64,
    letter_bits: u32,
) -> Result<ZipfEstimate> {
    if distinct_words < 2 || total_words < distinct_words {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= distinct words <= total words, got M={distinct_words}, N={total_words}"
        )));
    }
    let m = distinct_words as f64;
    let codebook_bits = 4.7 * letter_bits as f64 * m;
    let code_bits = total_words as f64 * (m.sqrt() * m.ln()).log2();
    Ok(ZipfEstimate {
        codebook_bits,
        code_bits,
        ratio: code_bits / codebook_bits,
    })
}

/// Binary entropy `h₂(x) = −x log₂ x − (1−x) log₂(1−x)`, with `h₂(0) = h₂(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Both sides of `S_words − z·h₂(z̄/z) ≤ z̄·S_syllab` for one text, plus
/// the multiplied form `N_words·S_words ≤ N_syllab·S_syllab`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcatCheck {
    /// Most syllables in any word.
    pub z: u64,
    /// Mean syllables per word.
    pub z_bar: f64,
    /// Frequency of the padding syllable, `1 − z̄/z`.
    pub g_theta: f64,
    pub s_words: f64,
    pub s_syllab: f64,
    /// `h₂(z̄/z)`.
    pub h2: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub n_words: u64,
    pub n_syllab: u64,
    /// `N_words · S_words`.
    pub words_product: f64,
    /// `N_syllab · S_syllab`.
    pub syllab_product: f64,
    /// Whether `h₂(z/z̄)` is defined, which needs `z/z̄ ≤ 1`, i.e. `z = z̄`.
    pub swapped_form_defined: bool,
}

impl ConcatCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -tol
    }

    pub fn products_hold(&self, tol: f64) -> bool {
        self.words_product <= self.syllab_product + tol
    }
}

/// Runs the check over word tokens split by `syllabifier`.
pub fn concat_inequality_check(
    words: &TokenStream,
    syllabifier: &Syllabifier,
) -> Result<ConcatCheck> {
    let parts: Vec<Vec<String>> = words
        .tokens()
        .iter()
        .map(|w| syllabifier.syllabify(w))
        .collect();
    concat_check_from_parts(&parts)
}

/// Runs the check for an explicit decomposition: each element is one coarse
/// symbol given as its sequence of fine symbols.
pub fn concat_check_from_parts<S: AsRef<str>>(words: &[Vec<S>]) -> Result<ConcatCheck> {
    if words.is_empty() {
        return Err(Error::EmptyStream);
    }
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::InvalidArgument(
            "every word needs at least one part".into(),
        ));
    }
    let joined: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(AsRef::as_ref).collect::<String>())
        .collect();
    let syllables: Vec<&str> = words.iter().flatten().map(AsRef::as_ref).collect();
    let s_words = entropy(&count_symbols(&joined)?);
    let s_syllab = entropy(&count_symbols(&syllables)?);

    let n_words = words.len() as u64;
    let n_syllab = syllables.len() as u64;
    let z = words.iter().map(|w| w.len() as u64).max().unwrap();
    let z_bar = n_syllab as f64 / n_words as f64;
    let ratio = z_bar / z as f64;
    let h2 = binary_entropy(ratio);
    let lhs = s_words - z as f64 * h2;
    let rhs = z_bar * s_syllab;
    Ok(ConcatCheck {
        z,
        z_bar,
        g_theta: 1.0 - ratio,
        s_words,
        s_syllab,
        h2,
        lhs,
        rhs,
        slack: rhs - lhs,
        n_words,
        n_syllab,
        words_product: n_words as f64 * s_words,
        syllab_product: n_syllab as f64 * s_syllab,
        swapped_form_defined: z as f64 <= z_bar,
    })
}
