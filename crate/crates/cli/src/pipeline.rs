//! The `pipeline` subcommand: one config file in, reproducible artifacts out
//! (codes.json, groups.json, results.csv, manifest.json).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use fcc_core::artifacts::{
    ChainRecord, CodeRecord, FunctionSpecFile, GroupRecord, GroupsDocument,
};
use fcc_core::sim::{write_csv_header, write_csv_rows, SNR_CONVENTION};
use fcc_core::{
    chain_decomposition, group_by_dm, run_monte_carlo, DecoderMode, DistanceMatrix,
    FunctionCorrectingCode, SamplingMode, SefccEnumerator, SimulationConfig,
};

use crate::util::{parse_snr_grid, usage, write_json};

pub const SCHEMA_VERSION: u32 = 1;

/// Chain analysis is skipped (with a manifest note) above this many groups.
const CHAIN_ANALYSIS_GROUP_LIMIT: usize = 2048;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub enumeration: EnumerationSection,
    pub selection: Vec<Selection>,
    pub simulation: SimulationSection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerationSection {
    pub k: u8,
    pub function: FunctionSpecFile,
    #[serde(default)]
    pub fix_zero_parity: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Selection {
    pub label: String,
    /// Codeword strings identifying one enumerated code as a set.
    pub codewords: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulationSection {
    /// `VALUE` or `START:STEP:END`, inclusive.
    pub snr_db: String,
    pub trials_per_point: u64,
    /// `soft`, `hard` or `both`.
    pub decoder: String,
    pub seed: u64,
    /// `uniform` or `stratified`.
    #[serde(default = "default_sampling")]
    pub sampling: String,
}

fn default_sampling() -> String {
    "uniform".to_owned()
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    started_unix_ms: u128,
    finished_unix_ms: u128,
    elapsed_secs: f64,
    snr_convention: &'static str,
    config: &'a PipelineConfig,
    /// Selection label to enumerated counter id.
    selected_ids: BTreeMap<String, u64>,
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
}

pub fn parse_decoder(s: &str) -> Result<DecoderMode> {
    match s {
        "soft" => Ok(DecoderMode::Soft),
        "hard" => Ok(DecoderMode::Hard),
        "both" => Ok(DecoderMode::Both),
        other => usage(format!("unknown decoder {other:?}; expected soft, hard or both")),
    }
}

pub fn parse_sampling(s: &str) -> Result<SamplingMode> {
    match s {
        "uniform" => Ok(SamplingMode::UniformMessage),
        "stratified" => Ok(SamplingMode::StratifiedByFunctionValue),
        other => usage(format!("unknown sampling {other:?}; expected uniform or stratified")),
    }
}

fn unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

pub fn run_pipeline(config_path: &Path, out_dir: &Path) -> Result<()> {
    let started = Instant::now();
    let started_ms = unix_ms();
    let config: PipelineConfig = crate::util::read_json(config_path)?;
    if config.schema_version != SCHEMA_VERSION {
        return usage(format!(
            "unsupported schema_version {} in {}; this build understands {}",
            config.schema_version,
            config_path.display(),
            SCHEMA_VERSION
        ));
    }
    if config.enumeration.function.k != config.enumeration.k {
        return usage(format!(
            "enumeration.k = {} disagrees with enumeration.function.k = {}",
            config.enumeration.k, config.enumeration.function.k
        ));
    }
    let function = config.enumeration.function.to_mubf().map_err(|e| {
        anyhow::anyhow!(crate::util::UsageError(format!("enumeration.function: {e}")))
    })?;
    let snr_grid = parse_snr_grid(&config.simulation.snr_db)?;
    let decoder = parse_decoder(&config.simulation.decoder)?;
    let sampling = parse_sampling(&config.simulation.sampling)?;

    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;

    // 1. enumerate
    let codes: Vec<(u64, FunctionCorrectingCode)> =
        SefccEnumerator::new(function, 1, config.enumeration.fix_zero_parity)?.collect();
    let records: Vec<CodeRecord> =
        codes.iter().map(|(id, code)| CodeRecord::from_code(*id, code)).collect();
    let codes_path = out_dir.join("codes.json");
    write_json(&codes_path, &records)?;

    // 2. group, metrics, chains
    let groups = group_by_dm(codes.iter().cloned());
    let mut notes = None;
    let chain_report = if groups.len() <= CHAIN_ANALYSIS_GROUP_LIMIT {
        let dms: Vec<DistanceMatrix> = groups.iter().map(|g| g.dm.clone()).collect();
        Some(ChainRecord::from_report(&chain_decomposition(&dms)?))
    } else {
        notes = Some(format!(
            "chain analysis skipped: {} groups exceed the {CHAIN_ANALYSIS_GROUP_LIMIT}-group limit",
            groups.len()
        ));
        None
    };
    let groups_doc = GroupsDocument {
        k: config.enumeration.k,
        groups: groups.iter().map(|g| GroupRecord::from_group(g, true)).collect(),
        chain_report,
    };
    let groups_path = out_dir.join("groups.json");
    write_json(&groups_path, &groups_doc)?;

    // 3. resolve selections against the enumeration
    let by_set: BTreeMap<std::collections::BTreeSet<String>, u64> =
        codes.iter().map(|(id, code)| (code.codeword_set(), *id)).collect();
    let mut selected: Vec<(String, u64, FunctionCorrectingCode)> = Vec::new();
    for sel in &config.selection {
        let set: std::collections::BTreeSet<String> = sel.codewords.iter().cloned().collect();
        let id = match by_set.get(&set) {
            Some(&id) => id,
            None => {
                return usage(format!(
                    "selection {:?} does not match any enumerated code",
                    sel.label
                ))
            }
        };
        let code = codes[(id - 1) as usize].1.clone();
        selected.push((sel.label.clone(), id, code));
    }

    // 4. simulate each selection into one CSV; all runs share the master seed,
    //    so curves of different codes see the same noise stream per trial.
    let results_path = out_dir.join("results.csv");
    let mut csv = Vec::new();
    write_csv_header(&mut csv)?;
    for (_, id, code) in &selected {
        let cfg = SimulationConfig {
            code: code.clone(),
            snr_grid_db: snr_grid.clone(),
            trials_per_point: config.simulation.trials_per_point,
            decoder,
            master_seed: config.simulation.seed,
            sampling,
        };
        let result = run_monte_carlo::<f64>(cfg.clone())
            .map_err(|e| anyhow::anyhow!(crate::util::UsageError(format!("simulation: {e}"))))?;
        write_csv_rows(&mut csv, *id, &cfg, &result)?;
    }
    std::fs::write(&results_path, &csv)
        .with_context(|| format!("writing {}", results_path.display()))?;

    // 5. manifest
    let manifest = Manifest {
        tool: "fcc",
        version: env!("CARGO_PKG_VERSION"),
        started_unix_ms: started_ms,
        finished_unix_ms: unix_ms(),
        elapsed_secs: started.elapsed().as_secs_f64(),
        snr_convention: SNR_CONVENTION,
        config: &config,
        selected_ids: selected.iter().map(|(l, id, _)| (l.clone(), *id)).collect(),
        outputs: ["codes.json", "groups.json", "results.csv", "manifest.json"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        notes,
    };
    write_json(&out_dir.join("manifest.json"), &manifest)?;

    eprintln!(
        "pipeline: {} codes, {} groups, {} selections simulated over {} SNR points -> {}",
        codes.len(),
        groups.len(),
        selected.len(),
        snr_grid.len(),
        out_dir.display()
    );
    Ok(())
}

/// Resolves a `PathBuf` for the pipeline output directory.
pub fn resolve_out_dir(out: Option<PathBuf>) -> PathBuf {
    out.unwrap_or_else(|| PathBuf::from("."))
}
