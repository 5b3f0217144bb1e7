//! Binary-vector primitives: fixed-length words, Hamming weight and distance,
//! and the systematic message/parity concatenation.
//!
//! Words are stored as unsigned integers with an explicit bit length. Bit 0 is
//! the leftmost (most significant) position, so a word prints exactly as it is
//! written: `MessageWord::parse("011")` has value `0b011`. Message space is
//! capped at 20 bits so that full `2^k` tables always fit in memory.

// `len` is a bit width and is never zero; an `is_empty` would be meaningless.
#![allow(clippy::len_without_is_empty)]

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Maximum supported message length in bits.
pub const MAX_MESSAGE_LEN: u8 = 20;
/// Maximum supported parity length in bits.
pub const MAX_PARITY_LEN: u8 = 8;

/// Fixed-length binary word backed by a `u32`.
pub trait BinaryWord: Copy {
    /// Number of bits in the word.
    fn bit_len(&self) -> u8;
    /// The bits read as a big-endian integer.
    fn value(&self) -> u32;

    /// Bit at position `i`, counted from the left (position 0 is the most
    /// significant bit).
    fn bit(&self, i: u8) -> u8 {
        debug_assert!(i < self.bit_len());
        ((self.value() >> (self.bit_len() - 1 - i)) & 1) as u8
    }

    /// Number of ones in the word.
    fn weight(&self) -> u32 {
        self.value().count_ones()
    }

    /// Hamming distance to another word of the same length.
    fn distance(&self, other: &Self) -> Result<u32, Error> {
        if self.bit_len() != other.bit_len() {
            return Err(Error::LengthMismatch {
                left: self.bit_len(),
                right: other.bit_len(),
            });
        }
        Ok((self.value() ^ other.value()).count_ones())
    }
}

/// Hamming weight of a binary word.
pub fn hamming_weight<W: BinaryWord>(word: &W) -> u32 {
    word.weight()
}

/// Hamming distance between two equal-length binary words.
pub fn hamming_distance<W: BinaryWord>(a: &W, b: &W) -> Result<u32, Error> {
    a.distance(b)
}

fn check_word(value: u32, len: u8, min: u8, max: u8) -> Result<(), Error> {
    if !(min..=max).contains(&len) {
        return Err(Error::WordLengthOutOfRange { len, min, max });
    }
    if len < 32 && value >> len != 0 {
        return Err(Error::ValueTooWide { value, len });
    }
    Ok(())
}

fn parse_bits(s: &str, min: u8, max: u8) -> Result<(u32, u8), Error> {
    let err = || Error::ParseWord { input: s.to_owned() };
    if s.is_empty() || s.len() > max as usize || s.len() < min as usize {
        return Err(err());
    }
    let mut value = 0u32;
    for c in s.chars() {
        value = (value << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(err()),
            };
    }
    Ok((value, s.len() as u8))
}

fn fmt_bits(value: u32, len: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in (0..len).rev() {
        f.write_str(if (value >> i) & 1 == 1 { "1" } else { "0" })?;
    }
    Ok(())
}

/// A `k`-bit message vector, the systematic part of a codeword.
///
/// Messages of the same length order lexicographically, i.e. by their
/// big-endian integer value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MessageWord {
    value: u32,
    len: u8,
}

impl MessageWord {
    pub fn new(value: u32, k: u8) -> Result<Self, Error> {
        check_word(value, k, 1, MAX_MESSAGE_LEN)?;
        Ok(Self { value, len: k })
    }

    /// The all-zero message of length `k`.
    pub fn zero(k: u8) -> Result<Self, Error> {
        Self::new(0, k)
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let (value, len) = parse_bits(s, 1, MAX_MESSAGE_LEN)?;
        Ok(Self { value, len })
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// 1-based position in the lexicographic listing of `F_2^k`
    /// (the all-zero message has rank 1).
    pub fn lex_rank(&self) -> u64 {
        self.value as u64 + 1
    }

    /// Bitwise XOR with another message of the same length.
    pub fn xor(&self, other: &Self) -> Result<Self, Error> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        Ok(Self { value: self.value ^ other.value, len: self.len })
    }

    /// All messages of length `k` in lexicographic order.
    pub fn all(k: u8) -> impl Iterator<Item = MessageWord> {
        debug_assert!((1..=MAX_MESSAGE_LEN).contains(&k));
        (0u32..1 << k).map(move |value| MessageWord { value, len: k })
    }
}

impl BinaryWord for MessageWord {
    fn bit_len(&self) -> u8 {
        self.len
    }
    fn value(&self) -> u32 {
        self.value
    }
}

impl fmt::Display for MessageWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bits(self.value, self.len, f)
    }
}

impl fmt::Debug for MessageWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MessageWord({self})")
    }
}

impl FromStr for MessageWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(s)
    }
}

/// An `r`-bit parity vector appended to a message by the systematic encoder.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityWord {
    value: u32,
    len: u8,
}

impl ParityWord {
    pub fn new(value: u32, r: u8) -> Result<Self, Error> {
        check_word(value, r, 1, MAX_PARITY_LEN)?;
        Ok(Self { value, len: r })
    }

    pub fn zero(r: u8) -> Result<Self, Error> {
        Self::new(0, r)
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let (value, len) = parse_bits(s, 1, MAX_PARITY_LEN)?;
        Ok(Self { value, len })
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self { value: self.value ^ ((1 << self.len) - 1), len: self.len }
    }

    /// XOR with a raw mask of the same width.
    pub fn xor_mask(&self, mask: u32) -> Self {
        debug_assert!(self.len == 32 || mask >> self.len == 0);
        Self { value: self.value ^ mask, len: self.len }
    }
}

impl BinaryWord for ParityWord {
    fn bit_len(&self) -> u8 {
        self.len
    }
    fn value(&self) -> u32 {
        self.value
    }
}

impl fmt::Display for ParityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bits(self.value, self.len, f)
    }
}

impl fmt::Debug for ParityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityWord({self})")
    }
}

impl FromStr for ParityWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(s)
    }
}

/// A systematic codeword: the message followed by its parity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    message: MessageWord,
    parity: ParityWord,
}

impl Codeword {
    pub fn new(message: MessageWord, parity: ParityWord) -> Self {
        Self { message, parity }
    }

    /// Splits a `(k + r)`-bit codeword string into its message and parity.
    pub fn parse(s: &str, k: u8) -> Result<Self, Error> {
        if s.len() <= k as usize {
            return Err(Error::ParseWord { input: s.to_owned() });
        }
        Ok(Self {
            message: MessageWord::parse(&s[..k as usize])?,
            parity: ParityWord::parse(&s[k as usize..])?,
        })
    }

    pub fn message(&self) -> MessageWord {
        self.message
    }

    pub fn parity(&self) -> ParityWord {
        self.parity
    }

    pub fn len(&self) -> u8 {
        self.message.len + self.parity.len
    }
}

impl BinaryWord for Codeword {
    fn bit_len(&self) -> u8 {
        self.len()
    }
    fn value(&self) -> u32 {
        (self.message.value << self.parity.len) | self.parity.value
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.message, self.parity)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_of_extreme_words() {
        assert_eq!(hamming_weight(&MessageWord::parse("000").unwrap()), 0);
        assert_eq!(hamming_weight(&MessageWord::parse("111").unwrap()), 3);
    }

    #[test]
    fn weight_of_systematic_codeword() {
        let cw = Codeword::parse("0111", 2).unwrap();
        assert_eq!(hamming_weight(&cw), 3);
    }

    #[test]
    fn distance_examples() {
        let a = Codeword::parse("0000", 2).unwrap();
        let b = Codeword::parse("0111", 2).unwrap();
        let c = Codeword::parse("1111", 2).unwrap();
        assert_eq!(hamming_distance(&a, &a).unwrap(), 0);
        assert_eq!(hamming_distance(&a, &b).unwrap(), 3);
        assert_eq!(hamming_distance(&b, &c).unwrap(), 1);
    }

    #[test]
    fn distance_rejects_length_mismatch() {
        let a = MessageWord::parse("00").unwrap();
        let b = MessageWord::parse("000").unwrap();
        assert!(matches!(
            hamming_distance(&a, &b),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn lex_rank_matches_big_endian_value() {
        assert_eq!(MessageWord::parse("000").unwrap().lex_rank(), 1);
        assert_eq!(MessageWord::parse("001").unwrap().lex_rank(), 2);
        assert_eq!(MessageWord::parse("111").unwrap().lex_rank(), 8);
        let all: Vec<_> = MessageWord::all(3).collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "10110", "00000000000000000001"] {
            assert_eq!(MessageWord::parse(s).unwrap().to_string(), s);
        }
        assert!(MessageWord::parse("").is_err());
        assert!(MessageWord::parse("012").is_err());
        assert!(MessageWord::parse(&"0".repeat(21)).is_err());
        assert!(MessageWord::new(4, 2).is_err());
    }

    #[test]
    fn bit_positions_are_left_to_right() {
        let w = MessageWord::parse("100").unwrap();
        assert_eq!(w.bit(0), 1);
        assert_eq!(w.bit(1), 0);
        assert_eq!(w.bit(2), 0);
    }

    #[test]
    fn parity_complement_and_mask() {
        let p = ParityWord::parse("01").unwrap();
        assert_eq!(p.complement().to_string(), "10");
        assert_eq!(p.xor_mask(0b11).to_string(), "10");
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn codeword_packing() {
        let cw = Codeword::parse("1110", 2).unwrap();
        assert_eq!(cw.value(), 0b1110);
        assert_eq!(cw.len(), 4);
        assert_eq!(cw.message().to_string(), "11");
        assert_eq!(cw.parity().to_string(), "10");
    }
}
