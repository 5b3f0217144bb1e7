//! Serializable document types for the on-disk artifacts: code listings,
//! distance matrices, grouping reports and function specs.
//!
//! Binary vectors travel as ASCII 0/1 strings in every JSON artifact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::{BinaryWord, MessageWord, ParityWord};
use crate::boolfn::{classify_mubf, BooleanFunctionSpec, MubfSpec};
use crate::code::FunctionCorrectingCode;
use crate::dm_analysis::{ChainReport, DmGroup};
use crate::drm::DistanceMatrix;
use crate::error::Error;

/// Role tag for serialized distance matrices.
pub const ROLE_DRM: &str = "drm";
/// Role tag for serialized codeword distance matrices.
pub const ROLE_CODEWORD_DM: &str = "codeword_dm";

/// One enumerated code: its counter index and the full parity map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub id: u64,
    /// Message string to parity string; keys iterate in message order.
    pub parities: BTreeMap<String, String>,
}

impl CodeRecord {
    pub fn from_code(id: u64, code: &FunctionCorrectingCode) -> Self {
        let parities = MessageWord::all(code.k())
            .map(|u| {
                (u.to_string(), code.parity(u).expect("dense parity table").to_string())
            })
            .collect();
        Self { id, parities }
    }

    /// Message length implied by the parity-map keys.
    pub fn k(&self) -> Result<u8, Error> {
        let key = self
            .parities
            .keys()
            .next()
            .ok_or(Error::IncompleteParityMap { expected: 1, got: 0 })?;
        Ok(key.len() as u8)
    }

    /// Error-correction capability implied by the parity width (`r = 2t`).
    pub fn t(&self) -> Result<u32, Error> {
        let parity = self
            .parities
            .values()
            .next()
            .ok_or(Error::IncompleteParityMap { expected: 1, got: 0 })?;
        Ok((parity.len() as u32 / 2).max(1))
    }

    pub fn to_code(&self, function: MubfSpec, t: u32) -> Result<FunctionCorrectingCode, Error> {
        let k = function.k();
        let expected = 1usize << k;
        let mut parities: Vec<Option<ParityWord>> = vec![None; expected];
        for (msg, parity) in &self.parities {
            let u = MessageWord::parse(msg)?;
            if u.len() != k {
                return Err(Error::UnknownMessage { message: msg.clone(), k });
            }
            parities[u.value() as usize] = Some(ParityWord::parse(parity)?);
        }
        let got = parities.iter().filter(|p| p.is_some()).count();
        if got != expected {
            return Err(Error::IncompleteParityMap { expected, got });
        }
        FunctionCorrectingCode::new(function, t, parities.into_iter().flatten().collect())
    }
}

/// A distance matrix with its role tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmDocument {
    pub order: usize,
    pub role: String,
    pub entries: Vec<Vec<u32>>,
}

impl DmDocument {
    pub fn from_matrix(role: &str, dm: &DistanceMatrix) -> Self {
        Self { order: dm.order(), role: role.to_owned(), entries: dm.rows() }
    }

    pub fn to_matrix(&self) -> Result<DistanceMatrix, Error> {
        let dm = DistanceMatrix::from_rows(&self.entries)?;
        if dm.order() != self.order {
            return Err(Error::OrderMismatch { left: self.order, right: dm.order() });
        }
        Ok(dm)
    }
}

/// One distance-matrix group in `groups.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub dm: Vec<Vec<u32>>,
    pub members: Vec<u64>,
    /// Codeword strings of the lowest-index member.
    pub representative: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_row_sum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_diag_sum: Option<u64>,
}

impl GroupRecord {
    pub fn from_group(group: &DmGroup, with_metrics: bool) -> Self {
        Self {
            dm: group.dm.rows(),
            members: group.member_ids.clone(),
            representative: group
                .representative
                .codewords()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            first_row_sum: with_metrics.then_some(group.metrics.first_row_sum),
            upper_diag_sum: with_metrics.then_some(group.metrics.upper_diagonal_sum),
        }
    }
}

/// Chain structure over the groups of a `groups.json`, by group index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub leaders: Vec<usize>,
    pub chains: Vec<Vec<usize>>,
    pub incomparable_pairs: u64,
}

impl ChainRecord {
    pub fn from_report(report: &ChainReport) -> Self {
        Self {
            leaders: report.leaders.clone(),
            chains: report.chains.clone(),
            incomparable_pairs: report.incomparable_pairs,
        }
    }
}

/// Top-level document written by the grouping analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupsDocument {
    pub k: u8,
    pub groups: Vec<GroupRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_report: Option<ChainRecord>,
}

/// JSON description of a Boolean function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpecFile {
    pub k: u8,
    pub kind: FunctionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Or,
    TruthTable,
}

impl FunctionSpecFile {
    pub fn or(k: u8) -> Self {
        Self { k, kind: FunctionKind::Or, table: None }
    }

    pub fn to_spec(&self) -> Result<BooleanFunctionSpec, Error> {
        match self.kind {
            FunctionKind::Or => BooleanFunctionSpec::or(self.k),
            FunctionKind::TruthTable => {
                let table = self.table.as_ref().ok_or_else(|| {
                    Error::TruthTableSize { expected: 1usize << self.k, got: 0 }
                })?;
                let bits: Result<Vec<bool>, Error> = table
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::ParseWord { input: table.clone() }),
                    })
                    .collect();
                BooleanFunctionSpec::new(self.k, bits?)
            }
        }
    }

    /// Parses and classifies; errors when the function is not maximally
    /// unbalanced.
    pub fn to_mubf(&self) -> Result<MubfSpec, Error> {
        let spec = self.to_spec()?;
        classify_mubf(&spec).ok_or_else(|| {
            let (zeros, ones) = spec.preimage_sizes();
            Error::NotMubf { zeros, ones }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::or_function;
    use crate::enumeration::SefccEnumerator;

    #[test]
    fn code_record_round_trip() {
        let f = or_function(2).unwrap();
        for (id, code) in SefccEnumerator::new(f, 1, false).unwrap() {
            let record = CodeRecord::from_code(id, &code);
            assert_eq!(record.k().unwrap(), 2);
            let back = record.to_code(f, 1).unwrap();
            assert_eq!(back, code);
        }
    }

    #[test]
    fn code_record_json_shape() {
        let f = or_function(2).unwrap();
        let (id, code) = SefccEnumerator::new(f, 1, true).unwrap().next().unwrap();
        let record = CodeRecord::from_code(id, &code);
        let json = serde_json::to_string(&record).unwrap();
        assert!(json.contains("\"id\":1"));
        assert!(json.contains("\"00\":\"00\""));
        let back: CodeRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn dm_document_round_trip() {
        let dm = DistanceMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        let doc = DmDocument::from_matrix(ROLE_DRM, &dm);
        let json = serde_json::to_string(&doc).unwrap();
        let back: DmDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), dm);
        assert_eq!(back.role, "drm");

        let bad = DmDocument { order: 3, role: ROLE_DRM.into(), entries: dm.rows() };
        assert!(bad.to_matrix().is_err());
    }

    #[test]
    fn function_spec_parsing() {
        let or = FunctionSpecFile::or(3);
        assert_eq!(or.to_mubf().unwrap(), or_function(3).unwrap());

        let and3 = FunctionSpecFile {
            k: 3,
            kind: FunctionKind::TruthTable,
            table: Some("00000001".into()),
        };
        let m = and3.to_mubf().unwrap();
        assert!(m.singleton_value());
        assert_eq!(m.singleton_point().to_string(), "111");

        let balanced = FunctionSpecFile {
            k: 2,
            kind: FunctionKind::TruthTable,
            table: Some("0011".into()),
        };
        assert!(matches!(balanced.to_mubf(), Err(Error::NotMubf { zeros: 2, ones: 2 })));

        let missing = FunctionSpecFile { k: 2, kind: FunctionKind::TruthTable, table: None };
        assert!(missing.to_spec().is_err());

        let json = r#"{"k": 2, "kind": "or"}"#;
        let parsed: FunctionSpecFile = serde_json::from_str(json).unwrap();
        assert_eq!(parsed, FunctionSpecFile::or(2));
    }
}
