//! BPSK/AWGN Monte Carlo engine with soft- and hard-decision
//! nearest-codeword decoding.
//!
//! Channel arithmetic is generic over the float scalar via [`SimScalar`]
//! (`f32` or `f64`); error tallies are exact integers, so results merge
//! associatively and a run is bit-identical for any degree of parallelism.
//!
//! Reproducibility contract: trials are processed in blocks of
//! [`TRIAL_BLOCK_SIZE`]; the RNG stream of a block is seeded from
//! `(master_seed, snr_index, block_index)` through [`block_seed`], and never
//! depends on the decoder selection or the thread schedule.

use std::io::{self, Write};

use num_traits::{Float, FromPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bits::{BinaryWord, Codeword};
use crate::code::FunctionCorrectingCode;
use crate::error::Error;

/// Number of trials per RNG block.
pub const TRIAL_BLOCK_SIZE: u64 = 4096;

/// Noise variances below this are treated as a noiseless channel.
pub const NOISELESS_VARIANCE_FLOOR: f64 = 1e-12;

/// SNR convention recorded in every CSV row: the grid is symbol energy to
/// noise density in dB, with unit-energy BPSK symbols.
pub const SNR_CONVENTION: &str = "EsN0_dB;sigma2=10^(-snr_db/10)/2";

/// Float scalar usable for channel simulation.
pub trait SimScalar: Float + FromPrimitive + Send + Sync + 'static {
    /// One standard normal draw from `rng`.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl SimScalar for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl SimScalar for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

/// Which decoders a simulation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderMode {
    Soft,
    Hard,
    Both,
}

/// Decoder tag attached to each result row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoder {
    Soft,
    Hard,
}

impl std::fmt::Display for Decoder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decoder::Soft => "soft",
            Decoder::Hard => "hard",
        })
    }
}

/// How messages are drawn per trial.
///
/// Under a uniform prior the singleton preimage of a maximally-unbalanced
/// function appears with probability `2^-k`, which starves one of the two
/// conditional error rates. Stratified sampling alternates trials between the
/// singleton point (even trial indices) and a uniform draw over the remaining
/// messages (odd indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    UniformMessage,
    StratifiedByFunctionValue,
}

/// Full description of one simulation run.
#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub code: FunctionCorrectingCode,
    /// Strictly increasing SNR grid in dB.
    pub snr_grid_db: Vec<f64>,
    pub trials_per_point: u64,
    pub decoder: DecoderMode,
    pub master_seed: u64,
    pub sampling: SamplingMode,
}

/// Exact tallies for one (SNR point, decoder) pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnrPointStats {
    pub decoder: Decoder,
    pub snr_db: f64,
    pub trials: u64,
    /// `k * trials`: systematic bits observed.
    pub data_bits: u64,
    pub data_bit_errors: u64,
    pub func_errors: u64,
    pub errors_0_to_1: u64,
    pub errors_1_to_0: u64,
    pub trials_true_f0: u64,
    pub trials_true_f1: u64,
}

impl SnrPointStats {
    /// Fraction of systematic bits decoded incorrectly.
    pub fn data_ber(&self) -> f64 {
        self.data_bit_errors as f64 / self.data_bits as f64
    }

    /// Fraction of trials whose decoded function value is wrong.
    pub fn func_ber(&self) -> f64 {
        self.func_errors as f64 / self.trials as f64
    }

    /// Function error rate conditioned on a true function value of 0.
    /// Zero when no such trials occurred (see `trials_true_f0`).
    pub fn p_0_to_1(&self) -> f64 {
        if self.trials_true_f0 == 0 {
            0.0
        } else {
            self.errors_0_to_1 as f64 / self.trials_true_f0 as f64
        }
    }

    /// Function error rate conditioned on a true function value of 1.
    pub fn p_1_to_0(&self) -> f64 {
        if self.trials_true_f1 == 0 {
            0.0
        } else {
            self.errors_1_to_0 as f64 / self.trials_true_f1 as f64
        }
    }
}

/// Per-SNR, per-decoder statistics of a completed run, in grid order with the
/// soft row preceding the hard row when both decoders run.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationResult {
    pub points: Vec<SnrPointStats>,
}

impl SimulationResult {
    pub fn rows_for(&self, decoder: Decoder) -> impl Iterator<Item = &SnrPointStats> {
        self.points.iter().filter(move |p| p.decoder == decoder)
    }
}

/// Noise variance per sample for unit-energy BPSK at the given Es/N0.
pub fn noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0) / 2.0
}

/// Maps bits to antipodal symbols: 0 to +1, 1 to -1.
pub fn bpsk_modulate<F: SimScalar>(cw: &Codeword) -> Vec<F> {
    (0..cw.len())
        .map(|i| if cw.bit(i) == 0 { F::one() } else { -F::one() })
        .collect()
}

/// Adds i.i.d. zero-mean Gaussian noise of variance [`noise_variance`] to the
/// signal. Variances below [`NOISELESS_VARIANCE_FLOOR`] return the signal
/// unchanged without consuming randomness.
pub fn awgn_sample<F: SimScalar, R: Rng + ?Sized>(
    signal: &[F],
    snr_db: f64,
    rng: &mut R,
) -> Vec<F> {
    let variance = noise_variance(snr_db);
    if variance < NOISELESS_VARIANCE_FLOOR {
        return signal.to_vec();
    }
    let sigma = F::from_f64(variance.sqrt()).expect("finite variance");
    signal.iter().map(|&s| s + sigma * F::standard_normal(rng)).collect()
}

fn check_received_len(received_len: usize, codeword_len: u8) -> Result<(), Error> {
    if received_len != codeword_len as usize {
        return Err(Error::LengthMismatch {
            left: received_len.min(u8::MAX as usize) as u8,
            right: codeword_len,
        });
    }
    Ok(())
}

/// Index of the codeword whose BPSK image is nearest to `received` in squared
/// Euclidean distance; ties go to the lowest index.
pub fn decode_soft<F: SimScalar>(received: &[F], codebook: &[Codeword]) -> Result<usize, Error> {
    if codebook.is_empty() {
        return Err(Error::EmptyCodebook);
    }
    check_received_len(received.len(), codebook[0].len())?;
    let images: Vec<Vec<F>> = codebook.iter().map(bpsk_modulate).collect();
    Ok(nearest_euclidean(received, &images))
}

/// Quantizes `received` by thresholding at zero (non-negative samples decode
/// to bit 0) and returns the index of the codeword at minimum Hamming
/// distance; ties go to the lowest index.
pub fn decode_hard<F: SimScalar>(received: &[F], codebook: &[Codeword]) -> Result<usize, Error> {
    if codebook.is_empty() {
        return Err(Error::EmptyCodebook);
    }
    check_received_len(received.len(), codebook[0].len())?;
    let packed: Vec<u32> = codebook.iter().map(|c| c.value()).collect();
    Ok(nearest_hamming(quantize(received), &packed))
}

fn squared_distance<F: SimScalar>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (&x, &y) in a.iter().zip(b) {
        let d = x - y;
        acc = acc + d * d;
    }
    acc
}

fn nearest_euclidean<F: SimScalar>(received: &[F], images: &[Vec<F>]) -> usize {
    let mut best = 0;
    let mut best_d = squared_distance(received, &images[0]);
    for (j, image) in images.iter().enumerate().skip(1) {
        let d = squared_distance(received, image);
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    best
}

/// Packs sign decisions big-endian, matching [`BinaryWord::value`].
fn quantize<F: SimScalar>(received: &[F]) -> u32 {
    let mut bits = 0u32;
    for &sample in received {
        bits = (bits << 1) | u32::from(sample < F::zero());
    }
    bits
}

fn nearest_hamming(quantized: u32, packed: &[u32]) -> usize {
    let mut best = 0;
    let mut best_d = (quantized ^ packed[0]).count_ones();
    for (j, &cw) in packed.iter().enumerate().skip(1) {
        let d = (quantized ^ cw).count_ones();
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    best
}

/// Per-block RNG seed: a splitmix64 chain over the master seed, the SNR grid
/// index and the block index.
pub fn block_seed(master_seed: u64, snr_index: u64, block_index: u64) -> u64 {
    fn splitmix64(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut s = splitmix64(master_seed);
    s = splitmix64(s ^ snr_index);
    splitmix64(s ^ block_index)
}

#[derive(Clone, Copy, Default)]
struct Tally {
    data_bit_errors: u64,
    errors_0_to_1: u64,
    errors_1_to_0: u64,
    trials_true_f0: u64,
    trials_true_f1: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.data_bit_errors += other.data_bit_errors;
        self.errors_0_to_1 += other.errors_0_to_1;
        self.errors_1_to_0 += other.errors_1_to_0;
        self.trials_true_f0 += other.trials_true_f0;
        self.trials_true_f1 += other.trials_true_f1;
        self
    }

    fn record(&mut self, true_msg: usize, decoded_msg: usize, func_vals: &[bool]) {
        self.data_bit_errors += u64::from(((true_msg ^ decoded_msg) as u32).count_ones());
        let f_true = func_vals[true_msg];
        let f_dec = func_vals[decoded_msg];
        if f_true {
            self.trials_true_f1 += 1;
            if !f_dec {
                self.errors_1_to_0 += 1;
            }
        } else {
            self.trials_true_f0 += 1;
            if f_dec {
                self.errors_0_to_1 += 1;
            }
        }
    }
}

/// Prepared Monte Carlo engine; build once with [`MonteCarlo::new`], then
/// [`MonteCarlo::run`].
#[derive(Clone, Debug)]
pub struct MonteCarlo<F: SimScalar> {
    cfg: SimulationConfig,
    images: Vec<Vec<F>>,
    packed: Vec<u32>,
    func_vals: Vec<bool>,
    singleton_idx: usize,
    run_soft: bool,
    run_hard: bool,
}

impl<F: SimScalar> MonteCarlo<F> {
    pub fn new(cfg: SimulationConfig) -> Result<Self, Error> {
        if cfg.trials_per_point == 0 {
            return Err(Error::InvalidConfig("trials_per_point must be at least 1".into()));
        }
        if cfg.snr_grid_db.is_empty() {
            return Err(Error::InvalidConfig("SNR grid is empty".into()));
        }
        if cfg.snr_grid_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("SNR grid must be strictly increasing".into()));
        }
        if cfg.snr_grid_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidConfig("SNR grid must be finite".into()));
        }
        let codebook = cfg.code.codewords();
        let images = codebook.iter().map(bpsk_modulate).collect();
        let packed = codebook.iter().map(|c| c.value()).collect();
        let function = cfg.code.function();
        let func_vals = crate::bits::MessageWord::all(cfg.code.k())
            .map(|u| function.evaluate(u).expect("message drawn from the code's domain"))
            .collect();
        let singleton_idx = function.singleton_point().value() as usize;
        let (run_soft, run_hard) = match cfg.decoder {
            DecoderMode::Soft => (true, false),
            DecoderMode::Hard => (false, true),
            DecoderMode::Both => (true, true),
        };
        Ok(Self { cfg, images, packed, func_vals, singleton_idx, run_soft, run_hard })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.cfg
    }

    /// Runs the full grid. Deterministic for a fixed config regardless of the
    /// rayon thread count.
    pub fn run(&self) -> SimulationResult {
        let trials = self.cfg.trials_per_point;
        let block_count = trials.div_ceil(TRIAL_BLOCK_SIZE);
        let mut points = Vec::new();
        for (snr_index, &snr_db) in self.cfg.snr_grid_db.iter().enumerate() {
            let variance = noise_variance(snr_db);
            let sigma = if variance < NOISELESS_VARIANCE_FLOOR {
                None
            } else {
                Some(F::from_f64(variance.sqrt()).expect("finite noise variance"))
            };
            let tallies: Vec<(Tally, Tally)> = (0..block_count)
                .into_par_iter()
                .map(|block_index| {
                    let base = block_index * TRIAL_BLOCK_SIZE;
                    let len = TRIAL_BLOCK_SIZE.min(trials - base);
                    self.run_block(snr_index as u64, block_index, base, len, sigma)
                })
                .collect();
            let (soft, hard) = tallies
                .into_iter()
                .fold((Tally::default(), Tally::default()), |(s, h), (bs, bh)| {
                    (s.merge(bs), h.merge(bh))
                });
            if self.run_soft {
                points.push(self.stats(Decoder::Soft, snr_db, soft));
            }
            if self.run_hard {
                points.push(self.stats(Decoder::Hard, snr_db, hard));
            }
        }
        SimulationResult { points }
    }

    fn stats(&self, decoder: Decoder, snr_db: f64, tally: Tally) -> SnrPointStats {
        let trials = self.cfg.trials_per_point;
        SnrPointStats {
            decoder,
            snr_db,
            trials,
            data_bits: trials * self.cfg.code.k() as u64,
            data_bit_errors: tally.data_bit_errors,
            func_errors: tally.errors_0_to_1 + tally.errors_1_to_0,
            errors_0_to_1: tally.errors_0_to_1,
            errors_1_to_0: tally.errors_1_to_0,
            trials_true_f0: tally.trials_true_f0,
            trials_true_f1: tally.trials_true_f1,
        }
    }

    fn run_block(
        &self,
        snr_index: u64,
        block_index: u64,
        base_trial: u64,
        block_trials: u64,
        sigma: Option<F>,
    ) -> (Tally, Tally) {
        let mut rng =
            ChaCha8Rng::seed_from_u64(block_seed(self.cfg.master_seed, snr_index, block_index));
        let m = self.images.len() as u32;
        let n = self.images[0].len();
        let mut rx = vec![F::zero(); n];
        let mut soft = Tally::default();
        let mut hard = Tally::default();
        for i in 0..block_trials {
            let msg = match self.cfg.sampling {
                SamplingMode::UniformMessage => rng.gen_range(0..m) as usize,
                SamplingMode::StratifiedByFunctionValue => {
                    if (base_trial + i).is_multiple_of(2) {
                        self.singleton_idx
                    } else {
                        let v = rng.gen_range(0..m - 1) as usize;
                        if v >= self.singleton_idx {
                            v + 1
                        } else {
                            v
                        }
                    }
                }
            };
            let tx = &self.images[msg];
            match sigma {
                Some(sigma) => {
                    for d in 0..n {
                        rx[d] = tx[d] + sigma * F::standard_normal(&mut rng);
                    }
                }
                None => rx.copy_from_slice(tx),
            }
            if self.run_soft {
                soft.record(msg, nearest_euclidean(&rx, &self.images), &self.func_vals);
            }
            if self.run_hard {
                hard.record(msg, nearest_hamming(quantize(&rx), &self.packed), &self.func_vals);
            }
        }
        (soft, hard)
    }
}

/// One-shot convenience around [`MonteCarlo`].
pub fn run_monte_carlo<F: SimScalar>(cfg: SimulationConfig) -> Result<SimulationResult, Error> {
    Ok(MonteCarlo::<F>::new(cfg)?.run())
}

/// Writes the CSV header row.
pub fn write_csv_header<W: Write>(w: &mut W) -> io::Result<()> {
    writeln!(
        w,
        "fcc_id,k,t,decoder,snr_db,trials,data_ber,func_ber,p_0_to_1,p_1_to_0,\
         n_true_f0,n_true_f1,seed,snr_convention"
    )
}

/// Writes one CSV row per result point.
pub fn write_csv_rows<W: Write>(
    w: &mut W,
    fcc_id: u64,
    cfg: &SimulationConfig,
    result: &SimulationResult,
) -> io::Result<()> {
    for p in &result.points {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fcc_id,
            cfg.code.k(),
            cfg.code.t(),
            p.decoder,
            p.snr_db,
            p.trials,
            p.data_ber(),
            p.func_ber(),
            p.p_0_to_1(),
            p.p_1_to_0(),
            p.trials_true_f0,
            p.trials_true_f1,
            cfg.master_seed,
            SNR_CONVENTION,
        )?;
    }
    Ok(())
}
