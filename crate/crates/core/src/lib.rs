//! Canonical Huffman compression of English text over interchangeable
//! alphabets (letters, letter n-grams, syllables, words, word pairs), with
//! a self-describing codebook shipped alongside the payload.
//!
//! The pipeline is `normalize → tokenize → build_canonical_code →
//! serialize codebook + encode`. [`metrics`] measures the pieces without
//! materializing a container, and [`harness`] aggregates those measurements
//! over a corpus.

pub mod bitio;
pub mod codebook;
pub mod container;
pub mod error;
pub mod gamma;
pub mod harness;
pub mod huffman;
pub mod metrics;
pub mod text;

pub use bitio::{BitReader, BitString};
pub use codebook::{CodebookFormat, LetterRepr};
pub use container::{compress, decompress, decompress_bytes, CompressedContainer, ContainerConfig};
pub use error::{Error, Result};
pub use huffman::{build_canonical_code, CanonicalCode, FrequencyTable};
pub use metrics::{analyze_text, CompressionReport};
pub use text::{normalize, tokenize, AlphabetSpec, NormalizedText, Syllabifier, TokenStream};
