//! Boolean functions on `F_2^k`, the maximally-unbalanced specialization and
//! the multi-input OR constructor.
//!
//! A function is *maximally unbalanced* when one of its two preimages is a
//! singleton set. Every structural result in this crate reduces such a
//! function, via an involutive relabeling, to the canonical form where the
//! singleton preimage is `f^{-1}(0) = {0_k}`, the form the OR function
//! already has.

use crate::bits::{BinaryWord, MessageWord, MAX_MESSAGE_LEN};
use crate::error::Error;

/// A total Boolean function given by its truth table, indexed by message value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunctionSpec {
    k: u8,
    table: Vec<bool>,
}

impl BooleanFunctionSpec {
    pub fn new(k: u8, table: Vec<bool>) -> Result<Self, Error> {
        if !(1..=MAX_MESSAGE_LEN).contains(&k) {
            return Err(Error::WordLengthOutOfRange { len: k, min: 1, max: MAX_MESSAGE_LEN });
        }
        let expected = 1usize << k;
        if table.len() != expected {
            return Err(Error::TruthTableSize { expected, got: table.len() });
        }
        Ok(Self { k, table })
    }

    pub fn from_fn(k: u8, f: impl Fn(MessageWord) -> bool) -> Result<Self, Error> {
        if !(1..=MAX_MESSAGE_LEN).contains(&k) {
            return Err(Error::WordLengthOutOfRange { len: k, min: 1, max: MAX_MESSAGE_LEN });
        }
        Ok(Self { k, table: MessageWord::all(k).map(f).collect() })
    }

    /// The k-input OR as a dense truth table.
    pub fn or(k: u8) -> Result<Self, Error> {
        Self::from_fn(k, |u| !u.is_zero())
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn evaluate(&self, u: MessageWord) -> Result<bool, Error> {
        if u.len() != self.k {
            return Err(Error::LengthMismatch { left: u.len(), right: self.k });
        }
        Ok(self.table[u.value() as usize])
    }

    /// Sizes of `f^{-1}(0)` and `f^{-1}(1)`.
    pub fn preimage_sizes(&self) -> (usize, usize) {
        let ones = self.table.iter().filter(|&&b| b).count();
        (self.table.len() - ones, ones)
    }
}

/// A maximally-unbalanced Boolean function, stored as its singleton preimage.
///
/// `evaluate` returns `singleton_value` exactly at `singleton_point` and the
/// opposite bit everywhere else, so the full truth table never needs to be
/// materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MubfSpec {
    k: u8,
    singleton_value: bool,
    singleton_point: MessageWord,
}

impl MubfSpec {
    pub fn new(k: u8, singleton_value: bool, singleton_point: MessageWord) -> Result<Self, Error> {
        if singleton_point.len() != k {
            return Err(Error::LengthMismatch { left: singleton_point.len(), right: k });
        }
        Ok(Self { k, singleton_value, singleton_point })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// The output bit attained only once.
    pub fn singleton_value(&self) -> bool {
        self.singleton_value
    }

    /// The unique message mapped to `singleton_value`.
    pub fn singleton_point(&self) -> MessageWord {
        self.singleton_point
    }

    pub fn evaluate(&self, u: MessageWord) -> Result<bool, Error> {
        if u.len() != self.k {
            return Err(Error::LengthMismatch { left: u.len(), right: self.k });
        }
        Ok(if u == self.singleton_point { self.singleton_value } else { !self.singleton_value })
    }

    /// Expands to a dense truth table.
    pub fn truth_table(&self) -> BooleanFunctionSpec {
        BooleanFunctionSpec::from_fn(self.k, |u| u == self.singleton_point)
            .map(|spec| {
                if self.singleton_value {
                    spec
                } else {
                    BooleanFunctionSpec {
                        k: self.k,
                        table: spec.table.into_iter().map(|b| !b).collect(),
                    }
                }
            })
            .expect("singleton point length was validated at construction")
    }

    /// Whether this is already the canonical form `f^{-1}(0) = {0_k}`.
    pub fn is_normalized(&self) -> bool {
        !self.singleton_value && self.singleton_point.is_zero()
    }

    /// The distance-preserving relabeling onto the canonical form, together
    /// with the normalized function.
    ///
    /// The message part is an XOR translation by the singleton point (an
    /// involution on `F_2^k` that preserves every pairwise Hamming distance);
    /// the output part complements the function value when the singleton
    /// output bit is 1. The normalized function always has `f^{-1}(0) = {0_k}`.
    pub fn normalize(&self) -> (MubfTransform, MubfSpec) {
        let transform = MubfTransform {
            translation: self.singleton_point,
            complement_output: self.singleton_value,
        };
        let normalized = MubfSpec {
            k: self.k,
            singleton_value: false,
            singleton_point: MessageWord::zero(self.k).expect("k validated at construction"),
        };
        (transform, normalized)
    }
}

/// The multi-input OR function: the canonical maximally-unbalanced function
/// with `f^{-1}(0) = {0_k}`.
pub fn or_function(k: u8) -> Result<MubfSpec, Error> {
    MubfSpec::new(k, false, MessageWord::zero(k)?)
}

/// Scans a truth table for a singleton preimage.
///
/// Returns `None` when the function is not maximally unbalanced. For `k = 1`
/// both preimages of a non-constant function are singletons; the 0-preimage is
/// reported in that case so that `classify_mubf(OR_1) == or_function(1)`.
pub fn classify_mubf(f: &BooleanFunctionSpec) -> Option<MubfSpec> {
    let (zeros, ones) = f.preimage_sizes();
    let singleton_value = if zeros == 1 {
        false
    } else if ones == 1 {
        true
    } else {
        return None;
    };
    let point = MessageWord::all(f.k)
        .find(|&u| f.table[u.value() as usize] == singleton_value)
        .expect("a singleton preimage is non-empty");
    Some(MubfSpec { k: f.k, singleton_value, singleton_point: point })
}

/// Relabeling produced by [`MubfSpec::normalize`]: an XOR translation of the
/// message space plus an optional complement of the function output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MubfTransform {
    translation: MessageWord,
    complement_output: bool,
}

impl MubfTransform {
    pub fn translation(&self) -> MessageWord {
        self.translation
    }

    pub fn complements_output(&self) -> bool {
        self.complement_output
    }

    /// Maps a message into the normalized coordinates. Involutive.
    pub fn apply_message(&self, u: MessageWord) -> Result<MessageWord, Error> {
        u.xor(&self.translation)
    }

    /// Maps a function value into the normalized labeling. Involutive.
    pub fn apply_output(&self, value: bool) -> bool {
        value ^ self.complement_output
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && !self.complement_output
    }
}
