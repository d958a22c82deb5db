//! Single-scenario evaluation.

use quantum_otto::{
    afterburner, classical_cycle, field_metrics, laser_distribution, second_law_audit,
    thermal_distribution, thermal_photon_mean, AfterburnerReport, ClassicalCycleReport,
    EntropyLedger, FieldMetrics, GasSpec, LaserGainParams, LevelSystem, PhotonDistribution,
};
use serde::Serialize;

use crate::config::{CavityConfig, ScenarioConfig};
use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeFlags {
    pub net_work_positive: bool,
    pub inversion: bool,
    pub enhanced: bool,
    /// `ΔS_universe >= -1e-9`.
    pub second_law_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CavityReport {
    pub maser_n_bar: f64,
    pub maser: FieldMetrics<f64>,
    pub laser_n_bar: f64,
    pub laser: FieldMetrics<f64>,
    pub laser_cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub classical: ClassicalCycleReport<f64>,
    pub afterburner: AfterburnerReport<f64>,
    pub audit: EntropyLedger<f64>,
    pub cavity: Option<CavityReport>,
    pub flags: RegimeFlags,
}

impl CycleReport {
    /// Efficiency gain `eta_qo - eta0`.
    pub fn gain(&self) -> f64 {
        self.afterburner.eta_qo - self.classical.eta0
    }
}

pub(crate) const SECOND_LAW_SLACK: f64 = 1e-9;

pub fn scenario_models(
    cfg: &ScenarioConfig,
) -> Result<(GasSpec<f64>, LevelSystem<f64>), HarnessError> {
    let spec = cfg.gas.spec().map_err(HarnessError::domain("gas"))?;
    let levels = cfg
        .levels
        .levels()
        .map_err(HarnessError::domain("levels"))?;
    Ok((spec, levels))
}

/// Photon statistics of both cavities.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityFields {
    pub maser_n_bar: f64,
    pub laser_n_bar: f64,
    pub maser: PhotonDistribution<f64>,
    pub laser: PhotonDistribution<f64>,
}

/// Maser field on the b-c gap and laser field on the a-b gap, both at the cavity temperature.
pub fn cavity_fields(
    cavity: &CavityConfig,
    levels: &LevelSystem<f64>,
) -> Result<CavityFields, HarnessError> {
    let maser_n_bar = thermal_photon_mean(levels.gap_bc(), cavity.temperature)
        .map_err(HarnessError::domain("cavity.temperature"))?;
    let laser_n_bar = match cavity.n_bar_l {
        Some(nb) => nb,
        None => thermal_photon_mean(levels.gap_ab(), cavity.temperature)
            .map_err(HarnessError::domain("cavity.temperature"))?,
    };
    let params = LaserGainParams::new(cavity.gain, cavity.saturation, cavity.loss, laser_n_bar)
        .map_err(HarnessError::domain("cavity"))?;
    Ok(CavityFields {
        maser_n_bar,
        laser_n_bar,
        maser: thermal_distribution(maser_n_bar, cavity.n_max)
            .map_err(HarnessError::domain("cavity"))?,
        laser: laser_distribution(&params, cavity.n_max).map_err(HarnessError::domain("cavity"))?,
    })
}

fn cavity_report(
    cavity: &CavityConfig,
    levels: &LevelSystem<f64>,
) -> Result<CavityReport, HarnessError> {
    let f = cavity_fields(cavity, levels)?;
    Ok(CavityReport {
        maser_n_bar: f.maser_n_bar,
        maser: field_metrics(&f.maser),
        laser_n_bar: f.laser_n_bar,
        laser: field_metrics(&f.laser),
        laser_cutoff: f.laser.cutoff(),
    })
}

/// Evaluates the base point of a scenario; sweep axes are ignored.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<CycleReport, HarnessError> {
    let (spec, levels) = scenario_models(cfg)?;
    let classical = classical_cycle(&spec);
    let ab =
        afterburner(&levels, &spec, &classical).map_err(HarnessError::domain("afterburner"))?;
    let audit =
        second_law_audit(&spec, &levels, &classical, &ab).map_err(HarnessError::domain("audit"))?;
    let cavity = cfg
        .cavity
        .as_ref()
        .map(|c| cavity_report(c, &levels))
        .transpose()?;
    Ok(CycleReport {
        flags: RegimeFlags {
            net_work_positive: classical.net_work_positive,
            inversion: ab.inversion,
            enhanced: ab.enhanced,
            second_law_ok: audit.universe >= -SECOND_LAW_SLACK,
        },
        classical,
        afterburner: ab,
        audit,
        cavity,
    })
}

/// Column names of the flat (CSV) report rendering.
pub const REPORT_COLUMNS: [&str; 24] = [
    "T2",
    "T4",
    "Wg",
    "Ww",
    "Q_in",
    "Q_out",
    "eta0",
    "p_a1",
    "p_b1",
    "p_b3",
    "w_l",
    "q_m",
    "q_in",
    "eta_qo",
    "gain",
    "enhanced",
    "enhancement_lhs",
    "enhancement_rhs",
    "dS_extract",
    "dS_reheat",
    "dS_universe",
    "net_work_positive",
    "inversion",
    "second_law_ok",
];

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Values matching [`REPORT_COLUMNS`].
pub fn report_values(r: &CycleReport) -> Vec<String> {
    let c = &r.classical;
    let a = &r.afterburner;
    vec![
        c.t2.to_string(),
        c.t4.to_string(),
        c.wg.to_string(),
        c.ww.to_string(),
        c.q_in.to_string(),
        c.q_out.to_string(),
        c.eta0.to_string(),
        a.p_a1.to_string(),
        a.p_b1.to_string(),
        a.p_b3.to_string(),
        a.w_l.to_string(),
        a.q_m.to_string(),
        a.q_in.to_string(),
        a.eta_qo.to_string(),
        r.gain().to_string(),
        a.enhanced.to_string(),
        opt(a.enhancement_lhs),
        opt(a.enhancement_rhs),
        a.ds_extract.to_string(),
        a.ds_reheat.to_string(),
        r.audit.universe.to_string(),
        r.flags.net_work_positive.to_string(),
        r.flags.inversion.to_string(),
        r.flags.second_law_ok.to_string(),
    ]
}
