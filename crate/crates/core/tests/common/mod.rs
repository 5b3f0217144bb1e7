//! Shared helpers for the integration tests: fixture loading and statistics.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeSet;

use serde::Deserialize;

use fcc_core::artifacts::DmDocument;
use fcc_core::{or_function, DistanceMatrix, FunctionCorrectingCode};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

#[derive(Deserialize)]
pub struct ReferenceCodes {
    pub k: u8,
    pub codes: Vec<ReferenceCode>,
}

#[derive(Deserialize)]
pub struct ReferenceCode {
    pub id: u64,
    pub parities: std::collections::BTreeMap<String, String>,
}

impl ReferenceCode {
    pub fn codeword_set(&self) -> BTreeSet<String> {
        self.parities.iter().map(|(m, p)| format!("{m}{p}")).collect()
    }

    pub fn to_code(&self, k: u8) -> FunctionCorrectingCode {
        let words: Vec<String> =
            self.parities.iter().map(|(m, p)| format!("{m}{p}")).collect();
        FunctionCorrectingCode::from_codeword_strings(or_function(k).unwrap(), 1, &words)
            .unwrap()
    }
}

pub fn k2_reference_codes() -> ReferenceCodes {
    serde_json::from_str(&fixture("k2_codes.json")).unwrap()
}

#[derive(Deserialize)]
pub struct ReferenceGroups {
    pub k: u8,
    pub groups: Vec<ReferenceGroup>,
}

#[derive(Deserialize)]
pub struct ReferenceGroup {
    pub members: Vec<u64>,
    pub dm: Vec<Vec<u32>>,
    pub first_row_sum: u64,
    pub upper_diag_sum: u64,
}

pub fn k2_reference_groups() -> ReferenceGroups {
    serde_json::from_str(&fixture("k2_dm_groups.json")).unwrap()
}

#[derive(Deserialize)]
pub struct ReferenceRepresentatives {
    pub k: u8,
    pub representatives: Vec<Vec<String>>,
}

pub fn k3_representatives() -> ReferenceRepresentatives {
    serde_json::from_str(&fixture("k3_representatives.json")).unwrap()
}

pub fn dm_fixture(name: &str) -> (DistanceMatrix, DmDocument) {
    let doc: DmDocument = serde_json::from_str(&fixture(name)).unwrap();
    (doc.to_matrix().unwrap(), doc)
}

/// Standard error of the difference of two independent binomial proportions.
pub fn diff_standard_error(p1: f64, n1: u64, p2: f64, n2: u64) -> f64 {
    (p1 * (1.0 - p1) / n1 as f64 + p2 * (1.0 - p2) / n2 as f64).sqrt()
}
