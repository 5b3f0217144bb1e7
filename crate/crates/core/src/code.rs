//! Function-correcting codes: a total parity assignment over `F_2^k` together
//! with the function it protects, plus the validity check against the pairwise
//! distance requirement.

use std::collections::BTreeSet;

use crate::bits::{BinaryWord, Codeword, MessageWord, ParityWord};
use crate::boolfn::MubfSpec;
use crate::error::Error;

/// A systematic function-correcting code for a maximally-unbalanced function.
///
/// The parity table is dense: entry `i` is the parity of the message with
/// value `i`. Construction enforces totality and uniform parity length, so a
/// value of this type is always structurally consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionCorrectingCode {
    k: u8,
    r: u8,
    t: u32,
    function: MubfSpec,
    parities: Vec<ParityWord>,
}

impl FunctionCorrectingCode {
    pub fn new(function: MubfSpec, t: u32, parities: Vec<ParityWord>) -> Result<Self, Error> {
        let k = function.k();
        let expected = 1usize << k;
        if parities.len() != expected {
            return Err(Error::IncompleteParityMap { expected, got: parities.len() });
        }
        let r = parities[0].len();
        for p in &parities {
            if p.len() != r {
                return Err(Error::ParityLengthMismatch { expected: r, got: p.len() });
            }
        }
        Ok(Self { k, r, t, function, parities })
    }

    /// Builds a code from its codeword strings (message prefix, parity suffix).
    pub fn from_codeword_strings<S: AsRef<str>>(
        function: MubfSpec,
        t: u32,
        words: &[S],
    ) -> Result<Self, Error> {
        let k = function.k();
        let expected = 1usize << k;
        let mut parities: Vec<Option<ParityWord>> = vec![None; expected];
        for w in words {
            let cw = Codeword::parse(w.as_ref(), k)?;
            parities[cw.message().value() as usize] = Some(cw.parity());
        }
        let got = parities.iter().filter(|p| p.is_some()).count();
        if got != expected {
            return Err(Error::IncompleteParityMap { expected, got });
        }
        Self::new(function, t, parities.into_iter().map(|p| p.unwrap()).collect())
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn function(&self) -> &MubfSpec {
        &self.function
    }

    pub fn parities(&self) -> &[ParityWord] {
        &self.parities
    }

    pub fn parity(&self, u: MessageWord) -> Result<ParityWord, Error> {
        if u.len() != self.k {
            return Err(Error::UnknownMessage { message: u.to_string(), k: self.k });
        }
        Ok(self.parities[u.value() as usize])
    }

    /// Systematic encoding: the message followed by its assigned parity.
    pub fn encode(&self, u: MessageWord) -> Result<Codeword, Error> {
        Ok(Codeword::new(u, self.parity(u)?))
    }

    /// All codewords in lexicographic message order.
    pub fn codewords(&self) -> Vec<Codeword> {
        MessageWord::all(self.k)
            .map(|u| Codeword::new(u, self.parities[u.value() as usize]))
            .collect()
    }

    /// The code's identity for golden comparisons: its codewords as a sorted
    /// set of bit strings.
    pub fn codeword_set(&self) -> BTreeSet<String> {
        self.codewords().iter().map(|c| c.to_string()).collect()
    }

    /// Checks the defining distance requirement: every pair of messages with
    /// differing function values must be encoded at Hamming distance at least
    /// `2t + 1`. Returns the first violating pair in lexicographic scan order.
    pub fn verify_validity(&self) -> Validity {
        let u0 = self.function.singleton_point();
        let p0 = self.parities[u0.value() as usize];
        let required = 2 * self.t + 1;
        // For a maximally-unbalanced function the cross-preimage pairs are
        // exactly (singleton point, everything else).
        for u in MessageWord::all(self.k) {
            if u == u0 {
                continue;
            }
            let p = self.parities[u.value() as usize];
            let distance = u0.distance(&u).expect("equal lengths by construction")
                + p0.distance(&p).expect("uniform parity length by construction");
            if distance < required {
                let (first, second) = if u0 <= u { (u0, u) } else { (u, u0) };
                return Validity::Invalid(ViolationWitness { first, second, distance, required });
            }
        }
        Validity::Valid
    }

    /// The code with every parity XOR-ed by the same mask.
    pub fn with_parity_mask(&self, mask: u32) -> Self {
        Self {
            parities: self.parities.iter().map(|p| p.xor_mask(mask)).collect(),
            ..self.clone()
        }
    }

    /// The code with every weight-1 parity replaced by its complement.
    pub fn with_weight_one_parities_complemented(&self) -> Self {
        Self {
            parities: self
                .parities
                .iter()
                .map(|p| if p.weight() == 1 { p.complement() } else { *p })
                .collect(),
            ..self.clone()
        }
    }
}

/// Result of [`FunctionCorrectingCode::verify_validity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(ViolationWitness),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// First message pair found to violate the distance requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ViolationWitness {
    pub first: MessageWord,
    pub second: MessageWord,
    pub distance: u32,
    pub required: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::hamming_distance;
    use crate::boolfn::or_function;

    fn code_from_parities(k: u8, parities: &[&str]) -> FunctionCorrectingCode {
        let parities = parities.iter().map(|p| ParityWord::parse(p).unwrap()).collect();
        FunctionCorrectingCode::new(or_function(k).unwrap(), 1, parities).unwrap()
    }

    /// First block of the k=2 reference listing: all parities 11 except p(00).
    fn fcc1() -> FunctionCorrectingCode {
        code_from_parities(2, &["00", "11", "11", "11"])
    }

    fn fcc5() -> FunctionCorrectingCode {
        code_from_parities(2, &["01", "10", "10", "10"])
    }

    #[test]
    fn encode_examples() {
        assert_eq!(fcc1().encode(MessageWord::parse("01").unwrap()).unwrap().to_string(), "0111");
        assert_eq!(fcc1().encode(MessageWord::parse("00").unwrap()).unwrap().to_string(), "0000");
        assert_eq!(fcc5().encode(MessageWord::parse("11").unwrap()).unwrap().to_string(), "1110");
    }

    #[test]
    fn encode_rejects_foreign_message() {
        let err = fcc1().encode(MessageWord::parse("011").unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnknownMessage { k: 2, .. }));
    }

    #[test]
    fn constructor_rejects_malformed_maps() {
        let or2 = or_function(2).unwrap();
        let short = vec![ParityWord::parse("00").unwrap(); 3];
        assert!(matches!(
            FunctionCorrectingCode::new(or2, 1, short),
            Err(Error::IncompleteParityMap { expected: 4, got: 3 })
        ));
        let ragged = vec![
            ParityWord::parse("00").unwrap(),
            ParityWord::parse("111").unwrap(),
            ParityWord::parse("11").unwrap(),
            ParityWord::parse("11").unwrap(),
        ];
        assert!(matches!(
            FunctionCorrectingCode::new(or2, 1, ragged),
            Err(Error::ParityLengthMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn validity_of_reference_code() {
        assert!(fcc1().verify_validity().is_valid());
        assert!(fcc5().verify_validity().is_valid());
    }

    #[test]
    fn validity_witness_on_forced_violation() {
        let bad = code_from_parities(2, &["00", "00", "11", "11"]);
        match bad.verify_validity() {
            Validity::Invalid(w) => {
                assert_eq!(w.first.to_string(), "00");
                assert_eq!(w.second.to_string(), "01");
                assert_eq!(w.distance, 1);
                assert_eq!(w.required, 3);
            }
            Validity::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn validity_of_k3_reference_codeword_set() {
        let words = ["00000", "00111", "01011", "01101", "10011", "10110", "11010", "11100"];
        let code =
            FunctionCorrectingCode::from_codeword_strings(or_function(3).unwrap(), 1, &words)
                .unwrap();
        assert!(code.verify_validity().is_valid());
        let set = code.codeword_set();
        assert_eq!(set.len(), 8);
        assert!(words.iter().all(|w| set.contains(*w)));
    }

    #[test]
    fn from_codeword_strings_requires_totality() {
        let words = ["00000", "00111"];
        assert!(matches!(
            FunctionCorrectingCode::from_codeword_strings(or_function(3).unwrap(), 1, &words),
            Err(Error::IncompleteParityMap { expected: 8, got: 2 })
        ));
    }

    #[test]
    fn systematic_distance_splits_into_message_and_parity_parts() {
        let code = fcc5();
        for u in MessageWord::all(2) {
            for v in MessageWord::all(2) {
                let cu = code.encode(u).unwrap();
                let cv = code.encode(v).unwrap();
                let lhs = hamming_distance(&cu, &cv).unwrap();
                let rhs = hamming_distance(&u, &v).unwrap()
                    + hamming_distance(&code.parity(u).unwrap(), &code.parity(v).unwrap())
                        .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parity_transforms() {
        let flipped = fcc5().with_parity_mask(0b10);
        let expected: Vec<String> =
            ["11", "00", "00", "00"].iter().map(|s| s.to_string()).collect();
        let got: Vec<String> = flipped.parities().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, expected);

        // Complementing the weight-1 parities of FCC 5 gives FCC 8.
        let partner = fcc5().with_weight_one_parities_complemented();
        let fcc8 = code_from_parities(2, &["10", "01", "01", "01"]);
        assert_eq!(partner, fcc8);
    }
}
