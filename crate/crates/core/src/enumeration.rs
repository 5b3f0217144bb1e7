//! Exhaustive enumeration of optimal single-error-correcting codes for a
//! maximally-unbalanced function, plus the closed-form counts.
//!
//! With redundancy `r = 2t = 2` the parity assignment decomposes around the
//! singleton point `u0`: messages at distance 1 from `u0` are forced to the
//! complement of `p(u0)`, messages at distance 2 may take any of the three
//! parities other than `p(u0)`, and everything farther away is free. The
//! enumerator walks this product space with a mixed-radix odometer, so every
//! valid code appears exactly once and the stream can be restarted from (or
//! partitioned by) a plain counter index.

use num_bigint::BigUint;

use crate::bits::{BinaryWord, MessageWord, ParityWord};
use crate::boolfn::MubfSpec;
use crate::code::FunctionCorrectingCode;
use crate::error::Error;

const PARITY_LEN: u8 = 2;
const COMPLEMENT_MASK: u32 = 0b11;

/// Closed-form code counts for message length `k`.
///
/// `total` counts all optimal single-error-correcting codes,
/// `3^C(k,2) * 4^(2^k - C(k,2) - k)`; `fixed_zero_parity` is the quarter of
/// them with `p(u0) = 00`. The product over the free-choice structure,
/// `4 * 3^C(k,2) * 4^(2^k - 1 - C(k,2) - k)`, is the same quantity with the
/// singleton factor written out separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountFormula {
    pub total: BigUint,
    pub fixed_zero_parity: BigUint,
}

/// Evaluates the closed-form counts for `k >= 1`.
pub fn count_formula(k: u8) -> Result<CountFormula, Error> {
    if !(1..=crate::bits::MAX_MESSAGE_LEN).contains(&k) {
        return Err(Error::WordLengthOutOfRange { len: k, min: 1, max: crate::bits::MAX_MESSAGE_LEN });
    }
    let k = k as u32;
    let pairs = k * (k - 1) / 2;
    let free = (1u32 << k) - pairs - k;
    let total = BigUint::from(3u32).pow(pairs) * BigUint::from(4u32).pow(free);
    let fixed_zero_parity = &total / 4u32;
    Ok(CountFormula { total, fixed_zero_parity })
}

/// Summary of a completed enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub k: u8,
    pub t: u32,
    pub fixed_zero_parity: bool,
    pub total_count: u64,
    pub formula_count: BigUint,
}

impl EnumerationReport {
    pub fn counts_agree(&self) -> bool {
        BigUint::from(self.total_count) == self.formula_count
    }
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    msg_value: u32,
    radix: u8,
    is_singleton: bool,
}

/// Streaming enumerator over all optimal single-error-correcting codes for a
/// maximally-unbalanced function.
///
/// Yields `(id, code)` pairs where `id` is the 1-based counter index. The
/// order is lexicographic over the vector of parity choices taken in
/// lexicographic message order, with choice values ascending. Consumers may
/// partition the counter range with [`SefccEnumerator::range`].
#[derive(Clone, Debug)]
pub struct SefccEnumerator {
    function: MubfSpec,
    fix_zero_parity: bool,
    slots: Vec<Slot>,
    digits: Vec<u8>,
    cursor: u64,
    end: u64,
    total: u64,
}

impl SefccEnumerator {
    /// Enumerator over the full counter range.
    pub fn new(function: MubfSpec, t: u32, fix_zero_parity: bool) -> Result<Self, Error> {
        if t != 1 {
            return Err(Error::UnsupportedT { t });
        }
        let u0 = function.singleton_point();
        let mut slots = Vec::new();
        let mut total: u64 = 1;
        for u in MessageWord::all(function.k()) {
            let d = u.distance(&u0).expect("uniform length");
            let slot = if u == u0 {
                if fix_zero_parity {
                    continue;
                }
                Slot { msg_value: u.value(), radix: 4, is_singleton: true }
            } else if d == 1 {
                continue; // forced to the complement of p(u0)
            } else if d == 2 {
                Slot { msg_value: u.value(), radix: 3, is_singleton: false }
            } else {
                Slot { msg_value: u.value(), radix: 4, is_singleton: false }
            };
            total = total
                .checked_mul(slot.radix as u64)
                .ok_or(Error::EnumerationTooLarge)?;
            slots.push(slot);
        }
        let digits = vec![0u8; slots.len()];
        Ok(Self { function, fix_zero_parity, slots, digits, cursor: 0, end: total, total })
    }

    /// Enumerator restricted to counter indices `start..end`.
    pub fn range(
        function: MubfSpec,
        t: u32,
        fix_zero_parity: bool,
        start: u64,
        end: u64,
    ) -> Result<Self, Error> {
        let mut e = Self::new(function, t, fix_zero_parity)?;
        if start > end || end > e.total {
            return Err(Error::CounterRangeOutOfBounds { start, end, total: e.total });
        }
        // Decompose `start` into mixed-radix digits, least significant last.
        let mut rem = start;
        for i in (0..e.slots.len()).rev() {
            let radix = e.slots[i].radix as u64;
            e.digits[i] = (rem % radix) as u8;
            rem /= radix;
        }
        e.cursor = start;
        e.end = end;
        Ok(e)
    }

    /// Size of the full counter range.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn fix_zero_parity(&self) -> bool {
        self.fix_zero_parity
    }

    fn singleton_parity(&self) -> u32 {
        if self.fix_zero_parity {
            return 0;
        }
        self.slots
            .iter()
            .zip(&self.digits)
            .find(|(s, _)| s.is_singleton)
            .map(|(_, &d)| d as u32)
            .expect("singleton slot present when parity is not fixed")
    }

    fn build(&self) -> FunctionCorrectingCode {
        let k = self.function.k();
        let u0 = self.function.singleton_point();
        let p0 = self.singleton_parity();
        let forced = p0 ^ COMPLEMENT_MASK;
        let mut parities = vec![p0; 1 << k];

        for u in MessageWord::all(k) {
            if u == u0 {
                continue;
            }
            if u.distance(&u0).expect("uniform length") == 1 {
                parities[u.value() as usize] = forced;
            }
        }
        for (slot, &digit) in self.slots.iter().zip(&self.digits) {
            if slot.is_singleton {
                continue;
            }
            let value = match slot.radix {
                // the three parities other than p(u0), in ascending order
                3 => {
                    let c = digit as u32;
                    if c < p0 {
                        c
                    } else {
                        c + 1
                    }
                }
                _ => digit as u32,
            };
            parities[slot.msg_value as usize] = value;
        }

        let parities = parities
            .into_iter()
            .map(|v| ParityWord::new(v, PARITY_LEN).expect("two-bit parity values"))
            .collect();
        FunctionCorrectingCode::new(self.function, 1, parities)
            .expect("enumerator always emits a total two-bit parity map")
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.slots[i].radix {
                return;
            }
            self.digits[i] = 0;
        }
    }
}

impl Iterator for SefccEnumerator {
    /// 1-based counter index paired with the code it decodes to.
    type Item = (u64, FunctionCorrectingCode);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cursor >= self.end {
            return None;
        }
        let item = (self.cursor + 1, self.build());
        self.cursor += 1;
        if self.cursor < self.end {
            self.advance();
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.cursor) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SefccEnumerator {}

/// Convenience wrapper: enumerator plus the report comparing the streamed
/// count against the closed form.
pub fn enumerate_sefcc(
    function: MubfSpec,
    fix_zero_parity: bool,
) -> Result<SefccEnumerator, Error> {
    SefccEnumerator::new(function, 1, fix_zero_parity)
}

/// Streams the full enumeration and reports the count against the closed
/// form.
pub fn enumeration_report(
    function: MubfSpec,
    fix_zero_parity: bool,
) -> Result<EnumerationReport, Error> {
    let e = SefccEnumerator::new(function, 1, fix_zero_parity)?;
    let formula = count_formula(function.k())?;
    let formula_count =
        if fix_zero_parity { formula.fixed_zero_parity } else { formula.total };
    let total_count = e.count() as u64;
    Ok(EnumerationReport {
        k: function.k(),
        t: 1,
        fixed_zero_parity: fix_zero_parity,
        total_count,
        formula_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{classify_mubf, or_function, BooleanFunctionSpec};

    #[test]
    fn formula_values() {
        let f = |k| count_formula(k).unwrap();
        assert_eq!(f(1).total, BigUint::from(4u32));
        assert_eq!(f(1).fixed_zero_parity, BigUint::from(1u32));
        assert_eq!(f(2).total, BigUint::from(12u32));
        assert_eq!(f(2).fixed_zero_parity, BigUint::from(3u32));
        assert_eq!(f(3).total, BigUint::from(432u32));
        assert_eq!(f(3).fixed_zero_parity, BigUint::from(108u32));
        assert_eq!(f(4).total, BigUint::from(2_985_984u32));
        assert_eq!(f(4).fixed_zero_parity, BigUint::from(746_496u32));
        assert!(count_formula(0).is_err());
    }

    #[test]
    fn formula_matches_expanded_product_form() {
        // 3^C(k,2) * 4^(2^k - C(k,2) - k) == 4 * 3^C(k,2) * 4^(2^k - 1 - C(k,2) - k)
        for k in 1u32..=10 {
            let pairs = k * (k - 1) / 2;
            let lhs = count_formula(k as u8).unwrap().total;
            let rhs = BigUint::from(4u32)
                * BigUint::from(3u32).pow(pairs)
                * BigUint::from(4u32).pow((1u32 << k) - 1 - pairs - k);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn enumerated_counts_match_formula() {
        for k in 1..=3u8 {
            let f = or_function(k).unwrap();
            for fix in [false, true] {
                let report = enumeration_report(f, fix).unwrap();
                assert!(report.counts_agree(), "k={k} fix={fix}: {report:?}");
            }
        }
    }

    #[test]
    fn every_enumerated_code_is_valid() {
        for k in 1..=3u8 {
            let f = or_function(k).unwrap();
            for (_, code) in SefccEnumerator::new(f, 1, false).unwrap() {
                assert!(code.verify_validity().is_valid());
            }
        }
    }

    #[test]
    fn fixed_parity_weight_structure() {
        // With p(0_k) = 00: weight-1 messages carry 11, weight-2 messages
        // carry a nonzero parity, the rest are unconstrained.
        for k in 2..=3u8 {
            let f = or_function(k).unwrap();
            for (_, code) in SefccEnumerator::new(f, 1, true).unwrap() {
                for u in MessageWord::all(k) {
                    let p = code.parity(u).unwrap();
                    match u.weight() {
                        0 => assert_eq!(p.to_string(), "00"),
                        1 => assert_eq!(p.to_string(), "11"),
                        2 => assert_ne!(p.to_string(), "00"),
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn k1_enumeration() {
        // p(0) free, p(1) forced to its complement.
        let codes: Vec<_> = SefccEnumerator::new(or_function(1).unwrap(), 1, false)
            .unwrap()
            .collect();
        assert_eq!(codes.len(), 4);
        for (_, code) in &codes {
            let p0 = code.parity(MessageWord::parse("0").unwrap()).unwrap();
            let p1 = code.parity(MessageWord::parse("1").unwrap()).unwrap();
            assert_eq!(p1, p0.complement());
        }
    }

    #[test]
    fn rejects_unsupported_t() {
        let err = SefccEnumerator::new(or_function(2).unwrap(), 2, false).unwrap_err();
        assert!(matches!(err, Error::UnsupportedT { t: 2 }));
    }

    #[test]
    fn ids_are_one_based_and_contiguous() {
        let ids: Vec<u64> = SefccEnumerator::new(or_function(2).unwrap(), 1, false)
            .unwrap()
            .map(|(id, _)| id)
            .collect();
        assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn range_partition_reconstructs_full_stream() {
        let f = or_function(3).unwrap();
        let full: Vec<_> = SefccEnumerator::new(f, 1, false).unwrap().collect();
        let total = full.len() as u64;
        for split in [0, 1, total / 3, total / 2, total] {
            let mut joined: Vec<_> =
                SefccEnumerator::range(f, 1, false, 0, split).unwrap().collect();
            joined.extend(SefccEnumerator::range(f, 1, false, split, total).unwrap());
            assert_eq!(joined, full);
        }
        assert!(SefccEnumerator::range(f, 1, false, 5, 3).is_err());
        assert!(SefccEnumerator::range(f, 1, false, 0, total + 1).is_err());
    }

    #[test]
    fn enumeration_for_translated_singleton_mirrors_or() {
        // AND_3 has singleton point 111; the product structure is isomorphic.
        let and3 = classify_mubf(
            &BooleanFunctionSpec::from_fn(3, |u| u.value() == 0b111).unwrap(),
        )
        .unwrap();
        let codes: Vec<_> = SefccEnumerator::new(and3, 1, false).unwrap().collect();
        assert_eq!(codes.len(), 432);
        for (_, code) in &codes {
            assert!(code.verify_validity().is_valid());
            // forced complement sits at distance 1 from 111 now
            let p0 = code.parity(MessageWord::parse("111").unwrap()).unwrap();
            for m in ["011", "101", "110"] {
                let p = code.parity(MessageWord::parse(m).unwrap()).unwrap();
                assert_eq!(p, p0.complement());
            }
        }
    }
}
