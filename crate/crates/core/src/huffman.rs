//! Symbol counting, entropy and canonical Huffman codes.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::bitio::{BitReader, BitString};
use crate::error::{Error, Result};
use crate::text::{AlphabetSpec, TokenStream};

/// Longest codeword this implementation will represent.
pub const MAX_CODE_LEN: u32 = 64;

/// Occurrence counts of the distinct symbols of a token stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl FrequencyTable {
    /// Builds a table from explicit counts. Every count must be positive.
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (s, c) in counts {
            if c == 0 {
                return Err(Error::InvalidArgument(
                    "symbol counts must be positive".into(),
                ));
            }
            *map.entry(s.into()).or_insert(0) += c;
        }
        if map.is_empty() {
            return Err(Error::EmptyStream);
        }
        let total = map.values().sum();
        Ok(FrequencyTable { counts: map, total })
    }

    /// Distinct symbols in lexicographic order with their counts.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.counts.iter().map(|(s, &c)| (s.as_str(), c))
    }

    pub fn count(&self, symbol: &str) -> Option<u64> {
        self.counts.get(symbol).copied()
    }

    /// `N`, the number of tokens counted.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `M`, the number of distinct symbols.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn frequency(&self, symbol: &str) -> Option<f64> {
        self.count(symbol).map(|c| c as f64 / self.total as f64)
    }

    /// Total letters over the distinct symbols.
    pub fn symbol_letters(&self) -> u64 {
        self.counts.keys().map(|s| s.len() as u64).sum()
    }
}

pub fn count_frequencies(tokens: &TokenStream) -> Result<FrequencyTable> {
    count_symbols(tokens.tokens())
}

pub fn count_symbols<S: AsRef<str>>(tokens: &[S]) -> Result<FrequencyTable> {
    if tokens.is_empty() {
        return Err(Error::EmptyStream);
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in tokens {
        *counts.entry(t.as_ref()).or_insert(0) += 1;
    }
    FrequencyTable::from_counts(counts.into_iter().map(|(s, c)| (s.to_string(), c)))
}

/// Shannon entropy of the symbol frequencies, in bits per symbol.
pub fn entropy(freqs: &FrequencyTable) -> f64 {
    let n = freqs.total() as f64;
    freqs
        .iter()
        .map(|(_, c)| {
            let f = c as f64 / n;
            -f * f.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Whether every frequency is a power of two (`m_k / N = 2^-j`).
pub fn is_dyadic(freqs: &FrequencyTable) -> bool {
    let n = freqs.total();
    freqs
        .iter()
        .all(|(_, c)| n.is_multiple_of(c) && (n / c).is_power_of_two())
}

/// A prefix-free code determined by codeword lengths and symbol order.
///
/// Symbols are ordered by ascending codeword length, ties broken by
/// lexicographic symbol string. Codewords within a length are consecutive
/// binary integers; moving to a longer length shifts the running code left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCode {
    /// `(symbol, length, codeword value)` in canonical order.
    entries: Vec<(String, u32, u64)>,
    index: HashMap<String, usize>,
    /// Per length: (first code, index of first entry, count).
    table: Vec<(u64, usize, usize)>,
    min_len: u32,
}

impl CanonicalCode {
    /// Assigns canonical codewords to `(symbol, length)` pairs.
    ///
    /// Lengths must satisfy Kraft's inequality with equality when there are
    /// two or more symbols; a single symbol must have length 1.
    pub fn from_lengths<I, S>(lengths: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, u32)> =
            lengths.into_iter().map(|(s, l)| (s.into(), l)).collect();
        if pairs.is_empty() {
            return Err(Error::Integrity("code has no symbols".into()));
        }
        pairs.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Integrity(format!("duplicate symbol {:?}", w[0].0)));
            }
        }
        let max_len = pairs.last().unwrap().1;
        let min_len = pairs[0].1;
        if min_len == 0 || max_len > MAX_CODE_LEN {
            return Err(Error::Integrity(format!(
                "codeword lengths must lie in 1..={MAX_CODE_LEN}, got {min_len}..={max_len}"
            )));
        }
        check_kraft(pairs.iter().map(|p| p.1))?;

        let mut entries = Vec::with_capacity(pairs.len());
        let mut table = vec![(0u64, 0usize, 0usize); max_len as usize + 1];
        let mut code: u64 = 0;
        let mut prev_len = min_len;
        for (i, (sym, len)) in pairs.into_iter().enumerate() {
            if len != prev_len {
                code <<= len - prev_len;
                prev_len = len;
            }
            let slot = &mut table[len as usize];
            if slot.2 == 0 {
                *slot = (code, i, 0);
            }
            slot.2 += 1;
            entries.push((sym, len, code));
            // wrapping only happens past the very last codeword of a full code
            code = code.wrapping_add(1);
        }
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.0.clone(), i))
            .collect();
        Ok(CanonicalCode {
            entries,
            index,
            table,
            min_len,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Symbols in canonical order.
    pub fn symbols(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.iter().map(|e| e.0.as_str())
    }

    /// `(symbol, length)` in canonical order.
    pub fn lengths(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.entries.iter().map(|e| (e.0.as_str(), e.1))
    }

    pub fn length_of(&self, symbol: &str) -> Option<u32> {
        self.index.get(symbol).map(|&i| self.entries[i].1)
    }

    pub fn codeword(&self, symbol: &str) -> Option<BitString> {
        self.index
            .get(symbol)
            .map(|&i| BitString::from_value(self.entries[i].2, self.entries[i].1))
    }

    /// `(symbol, codeword)` in canonical order.
    pub fn codewords(&self) -> impl Iterator<Item = (&str, BitString)> + '_ {
        self.entries
            .iter()
            .map(|e| (e.0.as_str(), BitString::from_value(e.2, e.1)))
    }

    pub fn max_len(&self) -> u32 {
        self.entries.last().map_or(0, |e| e.1)
    }

    pub fn min_len(&self) -> u32 {
        self.min_len
    }

    /// `Σ 2^-len` over all codewords.
    pub fn kraft_sum(&self) -> f64 {
        self.entries.iter().map(|e| (-(e.1 as f64)).exp2()).sum()
    }

    /// `Σ m_k · len_k`, the encoded length of a stream with these counts.
    pub fn encoded_len(&self, freqs: &FrequencyTable) -> Result<u64> {
        freqs
            .iter()
            .map(|(s, c)| {
                self.length_of(s)
                    .map(|l| c * l as u64)
                    .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            })
            .sum()
    }

    /// Reads one codeword and returns the index of its entry.
    fn decode_one(&self, r: &mut BitReader<'_>) -> Result<usize> {
        let start = r.position();
        let mut code: u64 = 0;
        for len in 1..=self.max_len() {
            code = (code << 1) | r.read_bit()? as u64;
            if len < self.min_len {
                continue;
            }
            let (first, base, count) = self.table[len as usize];
            if count > 0 && code >= first && code - first < count as u64 {
                return Ok(base + (code - first) as usize);
            }
        }
        Err(Error::Corrupt(format!(
            "no codeword matches the bits at offset {start}"
        )))
    }
}

fn check_kraft<I: Iterator<Item = u32> + Clone>(lengths: I) -> Result<()> {
    let count = lengths.clone().count();
    let max = lengths.clone().max().unwrap_or(0);
    // Σ 2^(max - len) against 2^max, exactly
    let sum: u128 = lengths.map(|l| 1u128 << (max - l)).sum();
    let full = 1u128 << max;
    let ok = if count == 1 { max == 1 } else { sum == full };
    if ok {
        Ok(())
    } else {
        Err(Error::Integrity(format!(
            "Kraft sum {sum}/2^{max} is not 1 for {count} symbols"
        )))
    }
}

/// Optimal (Huffman) codeword lengths with canonical codeword assignment.
///
/// Equal weights are merged smaller-minimum-symbol first, which fixes which
/// of several equally optimal length assignments is produced. A lone symbol
/// gets a 1-bit codeword so that a stream of it is still countable.
pub fn build_canonical_code(freqs: &FrequencyTable) -> CanonicalCode {
    let lengths = huffman_lengths(freqs);
    CanonicalCode::from_lengths(
        freqs
            .iter()
            .zip(lengths)
            .map(|((s, _), l)| (s.to_string(), l)),
    )
    .expect("Huffman lengths form a complete prefix code")
}

/// Huffman codeword lengths, in the table's (lexicographic) symbol order.
pub fn huffman_lengths(freqs: &FrequencyTable) -> Vec<u32> {
    let m = freqs.distinct();
    if m == 1 {
        return vec![1];
    }
    // nodes 0..m are leaves (lexicographic symbol index), later ones internal
    let mut parent: Vec<usize> = vec![usize::MAX; m];
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = freqs
        .iter()
        .enumerate()
        .map(|(i, (_, c))| Reverse((c, i, i)))
        .collect();
    while heap.len() > 1 {
        let Reverse((w1, min1, a)) = heap.pop().unwrap();
        let Reverse((w2, min2, b)) = heap.pop().unwrap();
        let node = parent.len();
        parent.push(usize::MAX);
        parent[a] = node;
        parent[b] = node;
        heap.push(Reverse((w1 + w2, min1.min(min2), node)));
    }
    // parents always have larger ids, so depths resolve from the root down
    let mut depth = vec![0u32; parent.len()];
    for node in (0..parent.len()).rev() {
        if parent[node] != usize::MAX {
            depth[node] = depth[parent[node]] + 1;
        }
    }
    depth.truncate(m);
    depth
}

/// Concatenates the codewords of `tokens`.
pub fn encode_stream(tokens: &TokenStream, code: &CanonicalCode) -> Result<BitString> {
    encode_symbols(tokens.tokens(), code)
}

pub fn encode_symbols<S: AsRef<str>>(tokens: &[S], code: &CanonicalCode) -> Result<BitString> {
    let total: u64 = tokens
        .iter()
        .map(|t| code.length_of(t.as_ref()).unwrap_or(0) as u64)
        .sum();
    let mut out = BitString::with_capacity(total as usize);
    for t in tokens {
        let t = t.as_ref();
        let &i = code
            .index
            .get(t)
            .ok_or_else(|| Error::UnknownSymbol(t.to_string()))?;
        let (_, len, value) = &code.entries[i];
        out.push_bits(*value, *len);
    }
    Ok(out)
}

/// Decodes exactly `count` codewords.
pub fn decode_stream(
    bits: &mut BitReader<'_>,
    code: &CanonicalCode,
    count: usize,
    alphabet: AlphabetSpec,
) -> Result<TokenStream> {
    Ok(TokenStream::new(
        decode_symbols(bits, code, count)?,
        alphabet,
    ))
}

pub fn decode_symbols(
    bits: &mut BitReader<'_>,
    code: &CanonicalCode,
    count: usize,
) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(count.min(bits.remaining()));
    for _ in 0..count {
        let i = code.decode_one(bits)?;
        out.push(code.entries[i].0.clone());
    }
    Ok(out)
}
