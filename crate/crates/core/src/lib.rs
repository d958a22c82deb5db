//! Quantum Otto engine: an ideal Otto cycle whose exhaust stage drives a
//! three-level maser/laser "afterburner".
//!
//! The models are generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`). Natural units are used throughout (`k_B = ħ = 1`).
//! The `*F64` aliases below fix the scalar for the common case.

// `!(x > 0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod afterburner;
pub mod cavity;
pub mod error;
pub mod internal;
pub mod otto;
pub mod scalar;

pub use afterburner::{
    afterburner, cavity_populations, enhancement_condition, entropy_balance, iterate_passes,
    laser_work, maser_heat, quantum_efficiency, quantum_efficiency_from_gain, second_law_audit,
    single_pass, AfterburnerReport, Enhancement, EntropyBalance, EntropyLedger, PassLedger,
};
pub use cavity::{
    field_metrics, laser_distribution, thermal_distribution, thermal_photon_mean, FieldMetrics,
    LaserGainParams, PhotonDistribution, DEFAULT_N_MAX,
};
pub use error::{DomainError, Result};
pub use internal::{
    boltzmann_populations, internal_energy, internal_entropy, LevelSystem, Populations,
};
pub use otto::{
    classical_cycle, compression_ratio, ts_diagram, ClassicalCycleReport, Compression, GasSpec,
    InternalEntropyTrace, Stage, TsPoint,
};
pub use scalar::Real;

pub type LevelSystemF64 = LevelSystem<f64>;
pub type PopulationsF64 = Populations<f64>;
pub type GasSpecF64 = GasSpec<f64>;
pub type ClassicalCycleReportF64 = ClassicalCycleReport<f64>;
pub type AfterburnerReportF64 = AfterburnerReport<f64>;
pub type EntropyLedgerF64 = EntropyLedger<f64>;
pub type PassLedgerF64 = PassLedger<f64>;
pub type PhotonDistributionF64 = PhotonDistribution<f64>;
pub type LaserGainParamsF64 = LaserGainParams<f64>;

pub type LevelSystemF32 = LevelSystem<f32>;
pub type PopulationsF32 = Populations<f32>;
pub type GasSpecF32 = GasSpec<f32>;
