//! `fcc`: enumeration, analysis, verification and AWGN simulation of optimal
//! single-error-correcting function-correcting codes.
//!
//! Exit status: 0 on success, 1 when `verify` finds a MISMATCH, 2 on usage or
//! input errors.

mod pipeline;
mod util;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use fcc_core::artifacts::{
    ChainRecord, CodeRecord, DmDocument, FunctionSpecFile, GroupRecord, GroupsDocument,
    ROLE_DRM,
};
use fcc_core::sim::{write_csv_header, write_csv_rows};
use fcc_core::{
    chain_decomposition, distance_requirement_matrix, group_by_dm, run_monte_carlo,
    BooleanFunctionSpec, DistanceMatrix, MubfSpec, SefccEnumerator, SimulationConfig,
};

use pipeline::{parse_decoder, parse_sampling};
use util::{parse_snr_grid, read_json, usage, write_json, UsageError};

#[derive(Parser)]
#[command(name = "fcc", version, about = "Function-correcting code toolkit")]
struct Cli {
    /// Worker threads; affects speed only, never results.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Master seed for simulation commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path (a file; a directory for `pipeline`). Most commands print
    /// to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FunctionArgs {
    /// Built-in function family.
    #[arg(long, value_parser = ["or"], default_value = "or")]
    function: String,

    /// JSON function spec; overrides --function.
    #[arg(long)]
    function_file: Option<PathBuf>,
}

impl FunctionArgs {
    fn spec_file(&self, k: u8) -> Result<FunctionSpecFile> {
        match &self.function_file {
            Some(path) => {
                let spec: FunctionSpecFile = read_json(path)?;
                if spec.k != k {
                    return usage(format!(
                        "--k {k} disagrees with k = {} in {}",
                        spec.k,
                        path.display()
                    ));
                }
                Ok(spec)
            }
            None => Ok(FunctionSpecFile::or(k)),
        }
    }

    fn boolean_function(&self, k: u8) -> Result<BooleanFunctionSpec> {
        Ok(self.spec_file(k)?.to_spec().map_err(|e| UsageError(e.to_string()))?)
    }

    fn mubf(&self, k: u8) -> Result<MubfSpec> {
        Ok(self.spec_file(k)?.to_mubf().map_err(|e| UsageError(e.to_string()))?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every optimal single-error-correcting code for the function.
    Enumerate {
        /// Message length in bits.
        #[arg(long)]
        k: u8,

        #[command(flatten)]
        function: FunctionArgs,

        /// Restrict to codes assigning the all-zero parity to the singleton
        /// point (one representative per parity-flip family).
        #[arg(long)]
        fix_zero_parity: bool,
    },

    /// Distance requirement matrix of a function.
    Drm {
        #[arg(long)]
        k: u8,

        /// Error-correction capability.
        #[arg(long, default_value_t = 1)]
        t: u32,

        #[command(flatten)]
        function: FunctionArgs,
    },

    /// Group codes by codeword distance matrix; optionally chain structure
    /// and row-sum metrics.
    Analyze {
        /// codes.json produced by `enumerate`.
        #[arg(long = "in")]
        input: PathBuf,

        /// Emit the distance-matrix groups.
        #[arg(long)]
        group: bool,

        /// Emit the chain report over the groups.
        #[arg(long)]
        chains: bool,

        /// Fill in first-row and upper-triangle sums.
        #[arg(long)]
        metrics: bool,

        #[command(flatten)]
        function: FunctionArgs,
    },

    /// Cross-check enumeration, grouping and invariances against the closed
    /// forms; exit 1 on any MISMATCH.
    Verify {
        /// Message length in bits (1..=4).
        #[arg(long)]
        k: u8,

        /// Additionally brute-force all 4^(2^k) parity maps (k <= 2).
        #[arg(long)]
        deep: bool,
    },

    /// Monte Carlo error rates over a BPSK/AWGN channel.
    Simulate {
        /// codes.json produced by `enumerate`.
        #[arg(long)]
        codes: PathBuf,

        /// Counter id of a code to simulate; repeatable.
        #[arg(long = "id", required = true)]
        ids: Vec<u64>,

        #[command(flatten)]
        function: FunctionArgs,

        /// SNR grid: VALUE or START:STEP:END in dB.
        #[arg(long)]
        snr: String,

        /// Trials per SNR point.
        #[arg(long)]
        trials: u64,

        /// Decoding rule.
        #[arg(long, value_parser = ["soft", "hard", "both"])]
        decoder: String,

        /// Message sampling mode.
        #[arg(long, value_parser = ["uniform", "stratified"], default_value = "uniform")]
        sampling: String,
    },

    /// Enumerate, analyze and simulate according to a JSON config, writing a
    /// reproducible artifact directory.
    Pipeline {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let run_all = move || -> Result<ExitCode> {
        match threads {
            Some(n) => {
                if n == 0 {
                    return usage("--threads must be at least 1");
                }
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .context("building the thread pool")?;
                pool.install(|| dispatch(cli))
            }
            None => dispatch(cli),
        }
    };
    match run_all() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate { k, function, fix_zero_parity } => {
            let mubf = function.mubf(k)?;
            let records: Vec<CodeRecord> = SefccEnumerator::new(mubf, 1, fix_zero_parity)
                .map_err(|e| UsageError(e.to_string()))?
                .map(|(id, code)| CodeRecord::from_code(id, &code))
                .collect();
            let mut text = serde_json::to_string_pretty(&records)?;
            text.push('\n');
            write_or_print(&cli.out, &text)?;
            eprintln!(
                "enumerated {} codes (k={k}, fix_zero_parity={fix_zero_parity})",
                records.len()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Drm { k, t, function } => {
            if t < 1 {
                return usage("--t must be at least 1");
            }
            let f = function.boolean_function(k)?;
            let drm = distance_requirement_matrix(&f, t);
            let doc = DmDocument::from_matrix(ROLE_DRM, &drm);
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            write_or_print(&cli.out, &text)?;
            let m = drm.metrics();
            eprintln!(
                "drm k={k} t={t}: first_row_sum={} upper_diagonal_sum={}",
                m.first_row_sum, m.upper_diagonal_sum
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Analyze { input, group, chains, metrics, function } => {
            let records: Vec<CodeRecord> = read_json(&input)?;
            if records.is_empty() {
                return usage(format!("{} contains no codes", input.display()));
            }
            let k = records[0].k().map_err(|e| UsageError(e.to_string()))?;
            let t = records[0].t().map_err(|e| UsageError(e.to_string()))?;
            let mubf = function.mubf(k)?;
            let codes: Result<Vec<_>, _> = records
                .iter()
                .map(|r| r.to_code(mubf, t).map(|code| (r.id, code)))
                .collect();
            let codes = codes.map_err(|e| UsageError(format!("{}: {e}", input.display())))?;

            let groups = group_by_dm(codes);
            let chain_report = if chains {
                let dms: Vec<DistanceMatrix> = groups.iter().map(|g| g.dm.clone()).collect();
                Some(ChainRecord::from_report(&chain_decomposition(&dms)?))
            } else {
                None
            };
            let doc = GroupsDocument {
                k,
                groups: if group || chains {
                    groups.iter().map(|g| GroupRecord::from_group(g, metrics)).collect()
                } else {
                    Vec::new()
                },
                chain_report,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            write_or_print(&cli.out, &text)?;
            eprintln!("analyzed {} groups (k={k})", groups.len());
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { k, deep } => {
            let report = verify::run_verify(k, deep)?;
            print!("{}", report.render());
            if let Some(path) = &cli.out {
                write_json(path, &report)?;
            }
            if report.has_mismatch() {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }

        Command::Simulate { codes, ids, function, snr, trials, decoder, sampling } => {
            let records: Vec<CodeRecord> = read_json(&codes)?;
            if records.is_empty() {
                return usage(format!("{} contains no codes", codes.display()));
            }
            let k = records[0].k().map_err(|e| UsageError(e.to_string()))?;
            let t = records[0].t().map_err(|e| UsageError(e.to_string()))?;
            let mubf = function.mubf(k)?;
            let snr_grid = parse_snr_grid(&snr)?;
            let decoder = parse_decoder(&decoder)?;
            let sampling = parse_sampling(&sampling)?;
            let master_seed = cli.seed.unwrap_or(0);

            let mut csv = Vec::new();
            write_csv_header(&mut csv)?;
            for id in &ids {
                let record = records.iter().find(|r| r.id == *id).ok_or_else(|| {
                    UsageError(format!("no code with id {id} in {}", codes.display()))
                })?;
                let code = record
                    .to_code(mubf, t)
                    .map_err(|e| UsageError(format!("code {id}: {e}")))?;
                let cfg = SimulationConfig {
                    code,
                    snr_grid_db: snr_grid.clone(),
                    trials_per_point: trials,
                    decoder,
                    master_seed,
                    sampling,
                };
                let result =
                    run_monte_carlo::<f64>(cfg.clone()).map_err(|e| UsageError(e.to_string()))?;
                write_csv_rows(&mut csv, *id, &cfg, &result)?;
            }
            let text = String::from_utf8(csv).expect("CSV is ASCII");
            write_or_print(&cli.out, &text)?;
            eprintln!(
                "simulated {} code(s) over {} SNR points, {} trials each (seed {master_seed})",
                ids.len(),
                snr_grid.len(),
                trials
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Pipeline { config } => {
            let out_dir = pipeline::resolve_out_dir(cli.out);
            pipeline::run_pipeline(&config, &out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
