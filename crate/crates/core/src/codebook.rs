//! Codebook wire formats and the letter codes used inside them.
//!
//! Two layouts are supported:
//!
//! * **blocks**: `γ(B)`, then for each of the `B` codeword lengths present,
//!   in ascending order, `γ(z) γ(k_z)` followed by `γ(α(a))` for the `k_z`
//!   symbols of length `z` in lexicographic order. Only lengths are sent;
//!   the decoder regenerates canonical codewords.
//! * **flat**: for every symbol, each letter as a `1` marker bit plus `L`
//!   letter bits, then `γ(codeword)`. The leading zero of the γ-code doubles
//!   as the end-of-symbol marker. Works for any prefix code, canonical or not.
//!
//! `α(a)` spells a symbol with one of three fixed letter codes: 8-bit ASCII,
//! 5-bit indices, or a fixed variable-length prefix code built from standard
//! English letter frequencies.

use std::fmt;

use crate::bitio::{BitReader, BitString};
use crate::error::{Error, Result};
use crate::gamma::{
    bitlen, gamma_decode, gamma_decode_int, gamma_encode_int_into, gamma_encode_into,
    gamma_int_length, gamma_length,
};
use crate::huffman::CanonicalCode;

/// Per-letter codewords of the variable-length letter code, `a` to `z`.
pub const VARIABLE_LETTER_CODES: [(char, &str); 26] = [
    ('a', "1110"),
    ('b', "110000"),
    ('c', "01001"),
    ('d', "11111"),
    ('e', "100"),
    ('f', "00100"),
    ('g', "111100"),
    ('h', "0110"),
    ('i', "1011"),
    ('j', "001011011"),
    ('k', "0010111"),
    ('l', "11001"),
    ('m', "00110"),
    ('n', "1010"),
    ('o', "1101"),
    ('p', "110001"),
    ('q', "001011000"),
    ('r', "0101"),
    ('s', "0111"),
    ('t', "000"),
    ('u', "01000"),
    ('v', "001010"),
    ('w', "00111"),
    ('x', "001011010"),
    ('y', "111101"),
    ('z', "0010110011"),
];

/// English letter frequencies as printed alongside [`VARIABLE_LETTER_CODES`].
/// Not normalized. The `u` and `z` entries are a factor of ten off from the
/// usual published values; see [`ENGLISH_LETTER_FREQUENCIES`].
pub const PRINTED_LETTER_FREQUENCIES: [(char, f64); 26] = [
    ('a', 0.082),
    ('b', 0.015),
    ('c', 0.028),
    ('d', 0.043),
    ('e', 0.13),
    ('f', 0.022),
    ('g', 0.02),
    ('h', 0.061),
    ('i', 0.07),
    ('j', 0.0015),
    ('k', 0.0077),
    ('l', 0.04),
    ('m', 0.024),
    ('n', 0.067),
    ('o', 0.075),
    ('p', 0.019),
    ('q', 0.00095),
    ('r', 0.06),
    ('s', 0.063),
    ('t', 0.091),
    ('u', 0.0028),
    ('v', 0.0098),
    ('w', 0.024),
    ('x', 0.0015),
    ('y', 0.02),
    ('z', 0.0074),
];

/// The printed table with `u = 0.028` and `z = 0.00074`, the standard English
/// values. These are the frequencies the variable letter code is Huffman
/// optimal for (up to one bit on `z`), and their sum exceeds 1.
pub const ENGLISH_LETTER_FREQUENCIES: [(char, f64); 26] = {
    let mut t = PRINTED_LETTER_FREQUENCIES;
    t[20].1 = 0.028;
    t[25].1 = 0.00074;
    t
};

/// `Σ θ_k ⌈log₂(1/θ_k)⌉` over `freqs` after normalizing them to sum to 1:
/// the expected bits per letter of a Shannon code for that distribution.
pub fn shannon_letter_cost(freqs: &[(char, f64)]) -> f64 {
    let sum: f64 = freqs.iter().map(|f| f.1).sum();
    freqs
        .iter()
        .map(|&(_, f)| {
            let p = f / sum;
            p * (1.0 / p).log2().ceil()
        })
        .sum()
}

/// How each letter of a symbol is spelled inside a codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterRepr {
    /// 8-bit ASCII.
    L8,
    /// 5-bit index, `a` = 0 … `z` = 25; values 26–31 are reserved.
    L5,
    /// The fixed variable-length prefix code of [`VARIABLE_LETTER_CODES`].
    Lvariable,
}

impl LetterRepr {
    pub const ALL: [LetterRepr; 3] = [LetterRepr::L8, LetterRepr::L5, LetterRepr::Lvariable];

    /// Fixed letter width, if any.
    pub fn width(self) -> Option<u32> {
        match self {
            LetterRepr::L8 => Some(8),
            LetterRepr::L5 => Some(5),
            LetterRepr::Lvariable => None,
        }
    }

    pub fn code(self) -> u8 {
        match self {
            LetterRepr::L8 => 0,
            LetterRepr::L5 => 1,
            LetterRepr::Lvariable => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Some(match code {
            0 => LetterRepr::L8,
            1 => LetterRepr::L5,
            2 => LetterRepr::Lvariable,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            LetterRepr::L8 => "l8",
            LetterRepr::L5 => "l5",
            LetterRepr::Lvariable => "lvar",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l8" | "L8" | "8" => Ok(LetterRepr::L8),
            "l5" | "L5" | "5" => Ok(LetterRepr::L5),
            "lvar" | "Lvariable" | "variable" => Ok(LetterRepr::Lvariable),
            _ => Err(Error::Config(format!(
                "unknown letter representation {s:?}"
            ))),
        }
    }

    /// `(codeword value, width)` for one letter.
    pub fn letter_code(self, ch: char) -> Option<(u64, u32)> {
        if !ch.is_ascii_lowercase() {
            return None;
        }
        let idx = ch as u8 - b'a';
        match self {
            LetterRepr::L8 => Some((ch as u64, 8)),
            LetterRepr::L5 => Some((idx as u64, 5)),
            LetterRepr::Lvariable => {
                let (v, w) = VARIABLE_TABLE[idx as usize];
                Some((v, w))
            }
        }
    }

    /// Bits used to spell `symbol`, or `None` if a letter is unmapped.
    pub fn symbol_bits(self, symbol: &str) -> Option<u64> {
        symbol
            .chars()
            .map(|c| self.letter_code(c).map(|(_, w)| w as u64))
            .sum()
    }

    fn read_letter(self, r: &mut BitReader<'_>) -> Result<char> {
        let start = r.position();
        match self {
            LetterRepr::L8 => {
                let v = r.read_bits(8)? as u8;
                if v.is_ascii_lowercase() {
                    Ok(v as char)
                } else {
                    Err(Error::Corrupt(format!(
                        "byte {v:#04x} at offset {start} is not a letter"
                    )))
                }
            }
            LetterRepr::L5 => {
                let v = r.read_bits(5)? as u8;
                if v < 26 {
                    Ok((b'a' + v) as char)
                } else {
                    Err(Error::Corrupt(format!(
                        "reserved 5-bit letter {v} at offset {start}"
                    )))
                }
            }
            LetterRepr::Lvariable => {
                let mut code = 0u64;
                for width in 1..=VARIABLE_MAX_WIDTH {
                    code = (code << 1) | r.read_bit()? as u64;
                    if let Some(i) = VARIABLE_TABLE.iter().position(|&e| e == (code, width)) {
                        return Ok((b'a' + i as u8) as char);
                    }
                }
                Err(Error::Corrupt(format!(
                    "no letter codeword at offset {start}"
                )))
            }
        }
    }
}

impl fmt::Display for LetterRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

const VARIABLE_MAX_WIDTH: u32 = 10;

const VARIABLE_TABLE: [(u64, u32); 26] = {
    let mut out = [(0u64, 0u32); 26];
    let mut i = 0;
    while i < 26 {
        let s = VARIABLE_LETTER_CODES[i].1.as_bytes();
        let mut v = 0u64;
        let mut j = 0;
        while j < s.len() {
            v = (v << 1) | (s[j] - b'0') as u64;
            j += 1;
        }
        out[i] = (v, s.len() as u32);
        i += 1;
    }
    out
};

/// `α(symbol)`: the concatenated letter codes.
pub fn encode_symbol_letters(symbol: &str, repr: LetterRepr) -> Result<BitString> {
    let mut out = BitString::new();
    for ch in symbol.chars() {
        let (v, w) = repr.letter_code(ch).ok_or_else(|| Error::UnmappedLetter {
            ch,
            symbol: symbol.to_string(),
        })?;
        out.push_bits(v, w);
    }
    Ok(out)
}

/// Inverse of [`encode_symbol_letters`]; `bits` must hold whole letters.
pub fn decode_symbol_letters(bits: &BitString, repr: LetterRepr) -> Result<String> {
    let mut r = bits.reader();
    let mut out = String::new();
    while !r.is_at_end() {
        out.push(repr.read_letter(&mut r)?);
    }
    Ok(out)
}

/// Codebook serialization layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodebookFormat {
    Blocks,
    Flat,
}

impl CodebookFormat {
    pub fn code(self) -> u8 {
        match self {
            CodebookFormat::Blocks => 0,
            CodebookFormat::Flat => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(CodebookFormat::Blocks),
            1 => Some(CodebookFormat::Flat),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CodebookFormat::Blocks => "blocks",
            CodebookFormat::Flat => "flat",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "blocks" => Ok(CodebookFormat::Blocks),
            "flat" => Ok(CodebookFormat::Flat),
            _ => Err(Error::Config(format!("unknown codebook format {s:?}"))),
        }
    }

    /// The flat layout needs fixed-width letters for its marker bits.
    pub fn supports(self, repr: LetterRepr) -> bool {
        !(self == CodebookFormat::Flat && repr == LetterRepr::Lvariable)
    }
}

impl fmt::Display for CodebookFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Symbols grouped by codeword length, ascending; lexicographic within.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookBlocks {
    blocks: Vec<(u32, Vec<String>)>,
}

impl CodebookBlocks {
    pub fn from_code(code: &CanonicalCode) -> Self {
        let mut blocks: Vec<(u32, Vec<String>)> = Vec::new();
        for (sym, len) in code.lengths() {
            match blocks.last_mut() {
                Some((z, syms)) if *z == len => syms.push(sym.to_string()),
                _ => blocks.push((len, vec![sym.to_string()])),
            }
        }
        CodebookBlocks { blocks }
    }

    pub fn blocks(&self) -> &[(u32, Vec<String>)] {
        &self.blocks
    }

    /// Shortest codeword length `t`.
    pub fn min_len(&self) -> u32 {
        self.blocks.first().map_or(0, |b| b.0)
    }

    /// Longest codeword length `T`.
    pub fn max_len(&self) -> u32 {
        self.blocks.last().map_or(0, |b| b.0)
    }

    pub fn symbol_count(&self) -> usize {
        self.blocks.iter().map(|b| b.1.len()).sum()
    }
}

pub fn serialize_blocks(code: &CanonicalCode, repr: LetterRepr) -> Result<BitString> {
    let mut out = BitString::new();
    write_blocks(&mut out, code, repr)?;
    Ok(out)
}

pub fn write_blocks(out: &mut BitString, code: &CanonicalCode, repr: LetterRepr) -> Result<()> {
    let blocks = CodebookBlocks::from_code(code);
    gamma_encode_int_into(out, blocks.blocks.len() as u64)?;
    for (z, syms) in &blocks.blocks {
        gamma_encode_int_into(out, *z as u64)?;
        gamma_encode_int_into(out, syms.len() as u64)?;
        for s in syms {
            gamma_encode_into(out, &encode_symbol_letters(s, repr)?)?;
        }
    }
    Ok(())
}

/// Reads a block codebook. Needs nothing but the bits and the letter code.
pub fn deserialize_blocks(r: &mut BitReader<'_>, repr: LetterRepr) -> Result<CanonicalCode> {
    let block_count = gamma_decode_int(r)?;
    let mut pairs: Vec<(String, u32)> = Vec::new();
    let mut prev_z = 0u64;
    for _ in 0..block_count {
        let z = gamma_decode_int(r)?;
        if z <= prev_z {
            return Err(Error::Corrupt(format!(
                "block lengths not ascending: {z} after {prev_z}"
            )));
        }
        if z > crate::huffman::MAX_CODE_LEN as u64 {
            return Err(Error::Corrupt(format!("codeword length {z} too large")));
        }
        prev_z = z;
        let k = gamma_decode_int(r)?;
        let mut prev_sym: Option<String> = None;
        for _ in 0..k {
            let spelled = gamma_decode(r)?;
            let sym = decode_symbol_letters(&spelled, repr)?;
            if prev_sym.as_deref().is_some_and(|p| p >= sym.as_str()) {
                return Err(Error::Corrupt(format!(
                    "symbols of block {z} not in strict lexicographic order at {sym:?}"
                )));
            }
            prev_sym = Some(sym.clone());
            pairs.push((sym, z as u32));
        }
    }
    CanonicalCode::from_lengths(pairs)
}

/// Uncompressed layout: works for any prefix code.
pub fn serialize_flat<'a, I>(entries: I, repr: LetterRepr) -> Result<BitString>
where
    I: IntoIterator<Item = (&'a str, BitString)>,
{
    let mut out = BitString::new();
    write_flat(&mut out, entries, repr)?;
    Ok(out)
}

pub fn serialize_flat_code(code: &CanonicalCode, repr: LetterRepr) -> Result<BitString> {
    serialize_flat(code.codewords(), repr)
}

pub fn write_flat<'a, I>(out: &mut BitString, entries: I, repr: LetterRepr) -> Result<()>
where
    I: IntoIterator<Item = (&'a str, BitString)>,
{
    if repr.width().is_none() {
        return Err(Error::Unsupported(
            "flat codebook requires a fixed-width letter code (l8 or l5)".into(),
        ));
    }
    for (sym, codeword) in entries {
        for ch in sym.chars() {
            let (v, w) = repr.letter_code(ch).ok_or_else(|| Error::UnmappedLetter {
                ch,
                symbol: sym.to_string(),
            })?;
            out.push(true);
            out.push_bits(v, w);
        }
        gamma_encode_into(out, &codeword)?;
    }
    Ok(())
}

/// Reads `count` flat entries in stored order.
pub fn deserialize_flat(
    r: &mut BitReader<'_>,
    repr: LetterRepr,
    count: usize,
) -> Result<Vec<(String, BitString)>> {
    if repr.width().is_none() {
        return Err(Error::Unsupported(
            "flat codebook requires a fixed-width letter code (l8 or l5)".into(),
        ));
    }
    let mut out = Vec::with_capacity(count.min(r.remaining()));
    for _ in 0..count {
        let mut sym = String::new();
        while r.read_bit()? {
            sym.push(repr.read_letter(r)?);
        }
        if sym.is_empty() {
            return Err(Error::Corrupt(format!(
                "flat codebook entry without letters before offset {}",
                r.position()
            )));
        }
        // the 0 marker just read is the first zero of the γ header
        let codeword = read_gamma_after_first_zero(r)?;
        out.push((sym, codeword));
    }
    Ok(out)
}

fn read_gamma_after_first_zero(r: &mut BitReader<'_>) -> Result<BitString> {
    let mut zeros = 1u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 64 {
            return Err(Error::Corrupt("gamma zero run longer than 64 bits".into()));
        }
    }
    let len = (1u64 << (zeros - 1)) | r.read_bits(zeros - 1)?;
    r.read_bitstring(len as usize)
}

/// Rebuilds a canonical code from flat entries, rejecting codebooks whose
/// codewords are not the canonical assignment for their lengths.
pub fn canonical_from_flat(entries: &[(String, BitString)]) -> Result<CanonicalCode> {
    let code =
        CanonicalCode::from_lengths(entries.iter().map(|(s, c)| (s.clone(), c.len() as u32)))?;
    for (s, c) in entries {
        if code.codeword(s).as_ref() != Some(c) {
            return Err(Error::Integrity(format!(
                "codeword of {s:?} is not canonical for its length"
            )));
        }
    }
    Ok(code)
}

pub fn serialize_codebook(
    code: &CanonicalCode,
    repr: LetterRepr,
    format: CodebookFormat,
) -> Result<BitString> {
    match format {
        CodebookFormat::Blocks => serialize_blocks(code, repr),
        CodebookFormat::Flat => serialize_flat_code(code, repr),
    }
}

/// Serialized codebook length in bits, computed without building it.
pub fn codebook_length(
    code: &CanonicalCode,
    repr: LetterRepr,
    format: CodebookFormat,
) -> Result<u64> {
    let spelled = |s: &str| {
        repr.symbol_bits(s).ok_or_else(|| Error::UnmappedLetter {
            ch: s
                .chars()
                .find(|&c| repr.letter_code(c).is_none())
                .unwrap_or('?'),
            symbol: s.to_string(),
        })
    };
    match format {
        CodebookFormat::Blocks => {
            let blocks = CodebookBlocks::from_code(code);
            let mut total = gamma_int_length(blocks.blocks.len() as u64)?;
            for (z, syms) in &blocks.blocks {
                total += gamma_int_length(*z as u64)? + gamma_int_length(syms.len() as u64)?;
                for s in syms {
                    total += gamma_length(spelled(s)?)?;
                }
            }
            Ok(total)
        }
        CodebookFormat::Flat => {
            let width = repr.width().ok_or_else(|| {
                Error::Unsupported("flat codebook requires a fixed-width letter code".into())
            })? as u64;
            let mut total = 0;
            for (s, len) in code.lengths() {
                spelled(s)?;
                total += (width + 1) * s.len() as u64 + gamma_length(len as u64)?;
            }
            Ok(total)
        }
    }
}

/// Closed form of the flat codebook length:
/// `(L+1)·letters(A) + Σ len + 2·Σ bitlen(len)`.
pub fn flat_length_formula(code: &CanonicalCode, width: u32) -> u64 {
    let letters: u64 = code.symbols().map(|s| s.len() as u64).sum();
    let lens: u64 = code.lengths().map(|(_, l)| l as u64).sum();
    let logs: u64 = code.lengths().map(|(_, l)| bitlen(l as u64) as u64).sum();
    (width as u64 + 1) * letters + lens + 2 * logs
}
