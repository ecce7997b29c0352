//! Bit strings and an MSB-first reader over them.
//!
//! Bits are stored packed, most significant bit first, so that the byte
//! form of a [`BitString`] is exactly its on-disk representation with zero
//! padding in the last byte.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered, growable sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// The `width` low bits of `value`, most significant first.
    pub fn from_value(value: u64, width: u32) -> Self {
        let mut b = Self::with_capacity(width as usize);
        b.push_bits(value, width);
        b
    }

    /// Rebuilds a bit string from packed bytes. Bits past `len` are ignored.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::Truncated {
                offset: bytes.len() * 8,
                needed: len - bytes.len() * 8,
            });
        }
        let mut out = BitString {
            bytes: bytes[..len.div_ceil(8)].to_vec(),
            len,
        };
        out.clear_tail();
        Ok(out)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let shift = 7 - (self.len % 8);
        if shift == 7 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 1 << shift;
        }
        self.len += 1;
    }

    /// Appends the `width` low bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    pub fn push_zeros(&mut self, count: usize) {
        for _ in 0..count {
            self.push(false);
        }
    }

    pub fn extend_from(&mut self, other: &BitString) {
        if self.len.is_multiple_of(8) {
            self.bytes.extend_from_slice(&other.bytes);
            self.len += other.len;
            return;
        }
        for bit in other.iter() {
            self.push(bit);
        }
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<bool> {
        if index >= self.len {
            return None;
        }
        Some(self.bytes[index / 8] >> (7 - index % 8) & 1 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] >> (7 - i % 8) & 1 == 1)
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.len <= self.len && prefix.iter().zip(self.iter()).all(|(a, b)| a == b)
    }

    /// Value of the whole string read as an unsigned binary number.
    /// Only meaningful for strings of at most 64 bits.
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.iter().fold(0, |acc, b| (acc << 1) | b as u64)
    }

    /// Packed MSB-first bytes; the final byte is zero padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader::new(self)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 8;
        if rem != 0 {
            if let Some(last) = self.bytes.last_mut() {
                *last &= 0xffu8 << (8 - rem);
            }
        }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut b = BitString::new();
        for bit in iter {
            b.push(bit);
        }
        b
    }
}

/// Parses strings such as `"000 111 1001101"`; whitespace is ignored.
impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "invalid bit character {other:?}"
                ))),
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}; \"{}\")", self.len, self)
    }
}

/// Sequential reader over a [`BitString`]. The cursor only moves forward.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    source: &'a BitString,
    cursor: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(source: &'a BitString) -> Self {
        BitReader { source, cursor: 0 }
    }

    #[inline]
    pub fn position(&self) -> usize {
        self.cursor
    }

    #[inline]
    pub fn remaining(&self) -> usize {
        self.source.len() - self.cursor
    }

    #[inline]
    pub fn is_at_end(&self) -> bool {
        self.cursor == self.source.len()
    }

    #[inline]
    pub fn read_bit(&mut self) -> Result<bool> {
        match self.source.get(self.cursor) {
            Some(bit) => {
                self.cursor += 1;
                Ok(bit)
            }
            None => Err(self.truncated(1)),
        }
    }

    /// Reads `width` bits (at most 64) as an unsigned integer.
    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        debug_assert!(width <= 64);
        self.ensure(width as usize)?;
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }

    pub fn read_bitstring(&mut self, len: usize) -> Result<BitString> {
        self.ensure(len)?;
        let mut out = BitString::with_capacity(len);
        for _ in 0..len {
            out.push(self.read_bit()?);
        }
        Ok(out)
    }

    pub fn ensure(&self, len: usize) -> Result<()> {
        if self.remaining() < len {
            Err(self.truncated(len - self.remaining()))
        } else {
            Ok(())
        }
    }

    fn truncated(&self, needed: usize) -> Error {
        Error::Truncated {
            offset: self.cursor,
            needed,
        }
    }
}
