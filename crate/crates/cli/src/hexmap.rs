//! Hex-encoded membership bitmaps.
//!
//! Bytes appear in order, lowest first; within a byte bit `j` of byte `b` is
//! membership of `8b + j`. So `"01"` is `{0}`, `"02"` is `{1}` and `"0900"`
//! is `{0, 3}`. An optional `0x` prefix is accepted.

use std::fmt::Write;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HexError {
    #[error("hex bitmap has odd length {0}")]
    OddLength(usize),
    #[error("invalid hex digit {0:?}")]
    BadDigit(char),
    #[error("bitmap sets bit {bit}, beyond the {len} bits of the initial segment")]
    Overflow { bit: usize, len: usize },
    #[error("bitmap holds {have} bits, initial segment needs {need}")]
    TooShort { have: usize, need: usize },
}

/// Decodes into exactly `len` membership bits.
pub fn decode(hex: &str, len: usize) -> Result<Vec<bool>, HexError> {
    let hex = hex.strip_prefix("0x").unwrap_or(hex);
    if !hex.len().is_multiple_of(2) {
        return Err(HexError::OddLength(hex.len()));
    }
    let mut bits = Vec::with_capacity(hex.len() * 4);
    let chars: Vec<char> = hex.chars().collect();
    for pair in chars.chunks(2) {
        let hi = pair[0].to_digit(16).ok_or(HexError::BadDigit(pair[0]))?;
        let lo = pair[1].to_digit(16).ok_or(HexError::BadDigit(pair[1]))?;
        let byte = (hi << 4) | lo;
        bits.extend((0..8).map(|j| (byte >> j) & 1 == 1));
    }
    if let Some(bit) = bits.iter().skip(len).position(|&b| b) {
        return Err(HexError::Overflow { bit: bit + len, len });
    }
    if bits.len() < len {
        return Err(HexError::TooShort {
            have: bits.len(),
            need: len,
        });
    }
    bits.truncate(len);
    Ok(bits)
}

pub fn encode(bits: &[bool]) -> String {
    let mut out = String::with_capacity(bits.len().div_ceil(8) * 2);
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (j, &b)| acc | (u8::from(b) << j));
        write!(out, "{byte:02x}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(decode("01", 2), Ok(vec![true, false]));
        assert_eq!(decode("02", 2), Ok(vec![false, true]));
        assert_eq!(decode("0x09", 4), Ok(vec![true, false, false, true]));
        assert_eq!(decode("0900", 4), Ok(vec![true, false, false, true]));
        assert_eq!(decode("2A", 6), Ok(vec![false, true, false, true, false, true]));
        assert_eq!(encode(&[true, false, false, true]), "09");
        assert_eq!(encode(&[false; 9]), "0000");
    }

    #[test]
    fn errors() {
        assert_eq!(decode("1", 2), Err(HexError::OddLength(1)));
        assert_eq!(decode("zz", 2), Err(HexError::BadDigit('z')));
        assert_eq!(decode("04", 2), Err(HexError::Overflow { bit: 2, len: 2 }));
        assert_eq!(decode("01", 10), Err(HexError::TooShort { have: 8, need: 10 }));
    }

    #[test]
    fn round_trip() {
        for mask in 0u32..1 << 12 {
            let bits: Vec<bool> = (0..12).map(|j| (mask >> j) & 1 == 1).collect();
            assert_eq!(decode(&encode(&bits), 12).unwrap(), bits);
        }
    }
}
