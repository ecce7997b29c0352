//! Compressed file format.
//!
//! ```text
//! "ALPHC" | version u8 | alphabet u8 | n u8 | repr u8 | format u8 |
//! γ(N) [γ(M) for flat codebooks] | codebook r | γ(enc(T)) | zero pad
//! ```
//!
//! Everything after the six fixed header fields is one MSB-first bit
//! stream padded to a byte boundary only at the very end. Reported lengths
//! follow the `r γ(enc)` accounting and leave out the header and `γ(N)`.

use crate::bitio::BitString;
use crate::codebook::{
    canonical_from_flat, deserialize_blocks, deserialize_flat, write_blocks, write_flat,
    CodebookFormat, LetterRepr,
};
use crate::error::{Error, Result};
use crate::gamma::{
    bitlen, gamma_decode, gamma_decode_int, gamma_encode_int_into, gamma_encode_into,
    gamma_int_length, gamma_length,
};
use crate::huffman::{build_canonical_code, count_frequencies, decode_symbols, encode_stream};
use crate::text::{normalize, tokenize, AlphabetKind, AlphabetSpec, NormalizedText};

pub const MAGIC: &[u8; 5] = b"ALPHC";
pub const VERSION: u8 = 1;
/// Bytes of fixed header before the bit stream.
pub const FIXED_HEADER_BYTES: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ContainerConfig {
    pub alphabet: AlphabetSpec,
    pub repr: LetterRepr,
    pub codebook_format: CodebookFormat,
}

impl ContainerConfig {
    pub fn new(
        alphabet: AlphabetSpec,
        repr: LetterRepr,
        codebook_format: CodebookFormat,
    ) -> Result<Self> {
        let cfg = ContainerConfig {
            alphabet,
            repr,
            codebook_format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.codebook_format.supports(self.repr) {
            return Err(Error::Unsupported(format!(
                "{} codebook with {} letters",
                self.codebook_format, self.repr
            )));
        }
        if let AlphabetSpec::LetterNgram(n) = self.alphabet {
            if !(2..=u8::MAX as usize).contains(&n) {
                return Err(Error::Config(format!(
                    "letter n-gram size {n} out of range 2..=255"
                )));
            }
        }
        Ok(())
    }

    /// e.g. `words/l8/blocks`.
    pub fn label(&self) -> String {
        format!("{}/{}/{}", self.alphabet, self.repr, self.codebook_format)
    }
}

/// A compressed text: configuration, token count, codebook and payload.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedContainer {
    pub alphabet_kind: AlphabetKind,
    pub gram_size: u8,
    pub repr: LetterRepr,
    pub codebook_format: CodebookFormat,
    /// `N`, the number of codewords in the payload.
    pub token_count: u64,
    /// `M`, the number of codebook entries.
    pub symbol_count: u64,
    /// Serialized codebook `r`.
    pub codebook: BitString,
    /// `enc(T)`, stored γ-wrapped.
    pub payload: BitString,
}

impl CompressedContainer {
    /// `ℓ[r]`.
    pub fn codebook_bits(&self) -> u64 {
        self.codebook.len() as u64
    }

    /// `ℓ[enc(T)]`.
    pub fn code_only_bits(&self) -> u64 {
        self.payload.len() as u64
    }

    /// Bits before the codebook: fixed header, `γ(N)` and, for flat
    /// codebooks, `γ(M)`.
    pub fn header_bits(&self) -> u64 {
        let mut bits = FIXED_HEADER_BYTES as u64 * 8 + gamma_int_length(self.token_count).unwrap();
        if self.codebook_format == CodebookFormat::Flat {
            bits += gamma_int_length(self.symbol_count).unwrap();
        }
        bits
    }

    /// `ℓ[r γ(enc)]`, the self-delimiting program length.
    pub fn program_bits(&self) -> u64 {
        self.codebook_bits() + gamma_length(self.code_only_bits()).unwrap()
    }

    /// Unpadded length of the whole container in bits.
    pub fn total_bits(&self) -> u64 {
        self.header_bits() + self.program_bits()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out =
            Vec::with_capacity(FIXED_HEADER_BYTES + self.total_bits().div_ceil(8) as usize);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&[
            VERSION,
            self.alphabet_kind.code(),
            self.gram_size,
            self.repr.code(),
            self.codebook_format.code(),
        ]);
        let mut bits = BitString::with_capacity((self.total_bits() - 80) as usize);
        gamma_encode_int_into(&mut bits, self.token_count).expect("token count is positive");
        if self.codebook_format == CodebookFormat::Flat {
            gamma_encode_int_into(&mut bits, self.symbol_count).expect("symbol count is positive");
        }
        bits.extend_from(&self.codebook);
        gamma_encode_into(&mut bits, &self.payload).expect("payload is non-empty");
        out.extend_from_slice(bits.as_bytes());
        out
    }

    /// Parses and validates container bytes. The codebook is decoded to
    /// find where it ends, so a structurally corrupt codebook fails here.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < FIXED_HEADER_BYTES {
            return Err(Error::Corrupt(format!(
                "container is {} bytes, shorter than its header",
                bytes.len()
            )));
        }
        if &bytes[..5] != MAGIC {
            return Err(Error::Corrupt("bad magic, not an ALPHC container".into()));
        }
        if bytes[5] != VERSION {
            return Err(Error::Corrupt(format!(
                "unsupported container version {}",
                bytes[5]
            )));
        }
        let alphabet_kind = AlphabetKind::from_code(bytes[6])
            .ok_or_else(|| Error::Corrupt(format!("unknown alphabet code {}", bytes[6])))?;
        let gram_size = bytes[7];
        match (alphabet_kind == AlphabetKind::LetterNgram, gram_size) {
            (true, n) if n < 2 => {
                return Err(Error::Corrupt(format!("invalid n-gram size {n}")));
            }
            (false, n) if n != 0 => {
                return Err(Error::Corrupt(format!(
                    "n-gram size {n} set for a non n-gram alphabet"
                )));
            }
            _ => {}
        }
        let repr = LetterRepr::from_code(bytes[8])
            .ok_or_else(|| Error::Corrupt(format!("unknown letter representation {}", bytes[8])))?;
        let codebook_format = CodebookFormat::from_code(bytes[9])
            .ok_or_else(|| Error::Corrupt(format!("unknown codebook format {}", bytes[9])))?;
        if !codebook_format.supports(repr) {
            return Err(Error::Corrupt(format!(
                "{codebook_format} codebook with {repr} letters"
            )));
        }

        let body = &bytes[FIXED_HEADER_BYTES..];
        let stream = BitString::from_bytes(body, body.len() * 8)?;
        let mut r = stream.reader();
        let token_count = gamma_decode_int(&mut r)?;

        let cb_start;
        let symbol_count = match codebook_format {
            CodebookFormat::Blocks => {
                cb_start = r.position();
                deserialize_blocks(&mut r, repr)?.len() as u64
            }
            CodebookFormat::Flat => {
                let m = gamma_decode_int(&mut r)?;
                cb_start = r.position();
                let count = usize::try_from(m)
                    .map_err(|_| Error::Corrupt(format!("symbol count {m} too large")))?;
                deserialize_flat(&mut r, repr, count)?;
                m
            }
        };
        let cb_end = r.position();
        let payload = gamma_decode(&mut r)?;

        let rest = r.remaining();
        if rest >= 8 || (0..rest).any(|_| r.read_bit().unwrap_or(true)) {
            return Err(Error::Corrupt("unexpected data after payload".into()));
        }

        let mut codebook_reader = stream.reader();
        codebook_reader.read_bitstring(cb_start)?;
        let codebook = codebook_reader.read_bitstring(cb_end - cb_start)?;
        Ok(CompressedContainer {
            alphabet_kind,
            gram_size,
            repr,
            codebook_format,
            token_count,
            symbol_count,
            codebook,
            payload,
        })
    }
}

/// Result of decompression: the letter sequence and the decoded tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decompressed {
    pub letters: String,
    pub tokens: Vec<String>,
}

pub fn compress(raw: &str, cfg: &ContainerConfig) -> Result<CompressedContainer> {
    compress_normalized(&normalize(raw)?, cfg)
}

pub fn compress_normalized(
    text: &NormalizedText,
    cfg: &ContainerConfig,
) -> Result<CompressedContainer> {
    cfg.validate()?;
    let tokens = tokenize(text, &cfg.alphabet)?;
    let freqs = count_frequencies(&tokens)?;
    let code = build_canonical_code(&freqs);

    let mut codebook = BitString::new();
    match cfg.codebook_format {
        CodebookFormat::Blocks => write_blocks(&mut codebook, &code, cfg.repr)?,
        CodebookFormat::Flat => write_flat(&mut codebook, code.codewords(), cfg.repr)?,
    }
    let payload = encode_stream(&tokens, &code)?;
    Ok(CompressedContainer {
        alphabet_kind: cfg.alphabet.kind(),
        gram_size: cfg.alphabet.gram_size().unwrap_or(0) as u8,
        repr: cfg.repr,
        codebook_format: cfg.codebook_format,
        token_count: tokens.len() as u64,
        symbol_count: code.len() as u64,
        codebook,
        payload,
    })
}

pub fn decompress(c: &CompressedContainer) -> Result<Decompressed> {
    let mut r = c.codebook.reader();
    let code = match c.codebook_format {
        CodebookFormat::Blocks => deserialize_blocks(&mut r, c.repr)?,
        CodebookFormat::Flat => {
            let count = usize::try_from(c.symbol_count)
                .map_err(|_| Error::Corrupt("symbol count too large".into()))?;
            canonical_from_flat(&deserialize_flat(&mut r, c.repr, count)?)?
        }
    };
    if !r.is_at_end() {
        return Err(Error::Corrupt("trailing bits after codebook".into()));
    }
    let count = usize::try_from(c.token_count)
        .map_err(|_| Error::Corrupt("token count too large".into()))?;
    let mut pr = c.payload.reader();
    let tokens = decode_symbols(&mut pr, &code, count)?;
    if !pr.is_at_end() {
        return Err(Error::Corrupt(format!(
            "{} payload bits left after {count} codewords",
            pr.remaining()
        )));
    }
    let letters = tokens.concat();
    Ok(Decompressed { letters, tokens })
}

pub fn decompress_bytes(bytes: &[u8]) -> Result<Decompressed> {
    decompress(&CompressedContainer::from_bytes(bytes)?)
}

/// `ℓ[r] + ℓ[enc] + 2⌈log₂ ℓ[enc]⌉`, an upper bound on the Kolmogorov
/// complexity of the text up to a machine constant.
pub fn kolmogorov_bound(len_codebook: u64, len_payload: u64) -> Result<u64> {
    if len_payload == 0 {
        return Err(Error::InvalidArgument(
            "payload length must be positive".into(),
        ));
    }
    Ok(len_codebook + len_payload + 2 * ceil_log2(len_payload))
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u64 {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        bitlen(n - 1) as u64
    }
}
