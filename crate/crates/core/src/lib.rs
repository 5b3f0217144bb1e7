//! Toolkit for optimal single-error-correcting function-correcting codes over
//! maximally-unbalanced Boolean functions: exhaustive enumeration with
//! closed-form counts, distance-matrix analysis, and Monte Carlo error-rate
//! simulation over a BPSK/AWGN channel.
//!
//! Modules follow the pipeline:
//!
//! * [`bits`]: binary words, Hamming weight/distance, systematic codewords;
//! * [`boolfn`]: Boolean functions, the maximally-unbalanced specialization
//!   and its normal form;
//! * [`drm`]: symmetric distance matrices and the distance-requirement
//!   construction;
//! * [`code`]: function-correcting codes and the validity check;
//! * [`enumeration`]: streaming enumeration of all optimal codes, with
//!   closed-form counts;
//! * [`dm_analysis`]: codeword distance matrices, grouping, entrywise order
//!   and chain structure;
//! * [`sim`]: the BPSK/AWGN Monte Carlo engine (generic over the float
//!   scalar);
//! * [`artifacts`]: serializable JSON document types.

pub mod artifacts;
pub mod bits;
pub mod boolfn;
pub mod code;
pub mod dm_analysis;
pub mod drm;
pub mod enumeration;
pub mod error;
pub mod sim;

pub use bits::{hamming_distance, hamming_weight, BinaryWord, Codeword, MessageWord, ParityWord};
pub use boolfn::{classify_mubf, or_function, BooleanFunctionSpec, MubfSpec, MubfTransform};
pub use code::{FunctionCorrectingCode, Validity, ViolationWitness};
pub use dm_analysis::{
    chain_decomposition, chain_leader_count_formula, codeword_distance_matrix, compare_dm,
    distinct_dm_count, distinct_dm_count_formula, dm_invariance_checks, group_by_dm, ChainReport,
    DmGroup,
};
pub use drm::{distance_requirement_matrix, DistanceMatrix, DmMetrics, DmOrdering};
pub use enumeration::{
    count_formula, enumerate_sefcc, enumeration_report, CountFormula, EnumerationReport,
    SefccEnumerator,
};
pub use error::Error;
pub use sim::{
    bpsk_modulate, decode_hard, decode_soft, run_monte_carlo, Decoder, DecoderMode, MonteCarlo,
    SamplingMode, SimScalar, SimulationConfig, SimulationResult, SnrPointStats,
};

/// Monte Carlo engine in the default `f64` channel arithmetic.
pub type Simulator = sim::MonteCarlo<f64>;
/// Monte Carlo engine in `f32` channel arithmetic.
pub type SimulatorF32 = sim::MonteCarlo<f32>;
