//! Self-delimiting γ-code for bit strings and positive integers.
//!
//! `γ(b)` is a run of zeros whose length is the number of binary digits of
//! `len(b)`, followed by `len(b)` in binary, followed by `b` itself. Because
//! the binary length field always starts with a 1, the zero run terminates
//! unambiguously and the codeword set is prefix-free.

use crate::bitio::{BitReader, BitString};
use crate::error::{Error, Result};

/// Number of binary digits of `n` (no leading zeros). `bitlen(0) == 0`.
#[inline]
pub fn bitlen(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Encoded length of `γ(b)` for any payload of `payload_len` bits.
///
/// This is the exact count, `payload_len + 2·bitlen(payload_len)`; the
/// `2⌈log₂ n⌉` form differs at powers of two and is only asymptotic.
pub fn gamma_length(payload_len: u64) -> Result<u64> {
    if payload_len == 0 {
        return Err(Error::EmptyGammaPayload);
    }
    Ok(payload_len + 2 * bitlen(payload_len) as u64)
}

/// Length of `γ(n)` for a positive integer.
pub fn gamma_int_length(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::GammaZero);
    }
    gamma_length(bitlen(n) as u64)
}

pub fn gamma_encode(b: &BitString) -> Result<BitString> {
    let mut out = BitString::with_capacity(b.len() + 2 * 64);
    gamma_encode_into(&mut out, b)?;
    Ok(out)
}

/// Appends `γ(b)` to `out`.
pub fn gamma_encode_into(out: &mut BitString, b: &BitString) -> Result<()> {
    if b.is_empty() {
        return Err(Error::EmptyGammaPayload);
    }
    write_header(out, b.len() as u64);
    out.extend_from(b);
    Ok(())
}

pub fn gamma_encode_int(n: u64) -> Result<BitString> {
    let mut out = BitString::new();
    gamma_encode_int_into(&mut out, n)?;
    Ok(out)
}

/// Appends `γ(n₂)`, where `n₂` is `n` in binary without leading zeros.
pub fn gamma_encode_int_into(out: &mut BitString, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::GammaZero);
    }
    let width = bitlen(n);
    write_header(out, width as u64);
    out.push_bits(n, width);
    Ok(())
}

fn write_header(out: &mut BitString, len: u64) {
    let width = bitlen(len);
    out.push_zeros(width as usize);
    out.push_bits(len, width);
}

/// Reads the length field of a γ-codeword and returns the payload length.
fn read_header(r: &mut BitReader<'_>) -> Result<usize> {
    let start = r.position();
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 64 {
            return Err(Error::Corrupt(format!(
                "gamma zero run longer than 64 bits at offset {start}"
            )));
        }
    }
    if zeros == 0 {
        // the length field would be the empty string, i.e. zero
        return Err(Error::MalformedGamma(start));
    }
    // the 1 just consumed is the leading digit of the length field
    let rest = r.read_bits(zeros - 1)?;
    let len = (1u64 << (zeros - 1)) | rest;
    usize::try_from(len).map_err(|_| Error::Corrupt(format!("gamma length {len} too large")))
}

/// Decodes one γ-codeword, leaving the cursor just past it.
pub fn gamma_decode(r: &mut BitReader<'_>) -> Result<BitString> {
    let len = read_header(r)?;
    r.read_bitstring(len)
}

/// Decodes `γ(n₂)` back into `n`.
pub fn gamma_decode_int(r: &mut BitReader<'_>) -> Result<u64> {
    let start = r.position();
    let len = read_header(r)?;
    if len > 64 {
        return Err(Error::Corrupt(format!(
            "gamma integer at offset {start} has {len} digits"
        )));
    }
    let n = r.read_bits(len as u32)?;
    if n >> (len - 1) != 1 {
        return Err(Error::Corrupt(format!(
            "gamma integer at offset {start} has a leading zero"
        )));
    }
    Ok(n)
}
