//! Figure data: the T-S cycle diagram, the pass-by-pass population trace and
//! the cavity photon distributions, all as CSV.

use std::fs;
use std::path::{Path, PathBuf};

use quantum_otto::{
    boltzmann_populations, internal_entropy, iterate_passes, ts_diagram, InternalEntropyTrace,
    PassLedger, PhotonDistribution, Populations, TsPoint,
};

use crate::config::ScenarioConfig;
use crate::error::HarnessError;
use crate::scenario::{cavity_fields, scenario_models, CavityFields};

pub const FIG2_FILE: &str = "fig2_ts.csv";
pub const FIG3_FILE: &str = "fig3_populations.csv";
pub const PASS_LEDGER_FILE: &str = "pass_ledger.csv";
pub const MASER_FILE: &str = "photon_maser.csv";
pub const LASER_FILE: &str = "photon_laser.csv";

pub struct FigureData {
    pub ts: Vec<TsPoint<f64>>,
    pub ledger: PassLedger<f64>,
    pub cavity: Option<CavityFields>,
}

pub fn figure_data(cfg: &ScenarioConfig) -> Result<FigureData, HarnessError> {
    let (spec, levels) = scenario_models(cfg)?;
    let n = spec.n_atoms();
    let hot = boltzmann_populations(&levels, spec.t1()).map_err(HarnessError::domain("T1"))?;
    let p_b3 = boltzmann_populations(&levels, spec.t3())
        .map_err(HarnessError::domain("T3"))?
        .b();
    let cold = Populations::pinned_fixed_point(p_b3).map_err(HarnessError::domain("T3"))?;
    let trace = InternalEntropyTrace {
        hot: internal_entropy(&hot, n),
        cold: internal_entropy(&cold, n),
    };
    let ts = ts_diagram(&spec, Some(trace), cfg.output.points_per_segment)
        .map_err(HarnessError::domain("output.points_per_segment"))?;
    let ledger = iterate_passes(&hot, p_b3, cfg.solver.tol, cfg.solver.max_passes)
        .map_err(|e| HarnessError::domain("solver")(e.into()))?;
    let cavity = cfg
        .cavity
        .as_ref()
        .map(|c| cavity_fields(c, &levels))
        .transpose()?;
    Ok(FigureData { ts, ledger, cavity })
}

fn writer(path: &Path) -> Result<csv::Writer<fs::File>, HarnessError> {
    let file = fs::File::create(path).map_err(HarnessError::io(path))?;
    Ok(csv::Writer::from_writer(file))
}

fn finish<W: std::io::Write>(w: csv::Writer<W>, path: &Path) -> Result<(), HarnessError> {
    w.into_inner()
        .map_err(|e| HarnessError::io(path)(e.into_error()))?
        .flush()
        .map_err(HarnessError::io(path))
}

fn record<W: std::io::Write>(
    w: &mut csv::Writer<W>,
    fields: &[String],
    path: &Path,
) -> Result<(), HarnessError> {
    w.write_record(fields)
        .map_err(|e| HarnessError::io(path)(e.into()))
}

/// Columns: `stage_label, S_total, T`.
pub fn write_ts_csv(points: &[TsPoint<f64>], path: &Path) -> Result<(), HarnessError> {
    let mut w = writer(path)?;
    record(
        &mut w,
        &["stage_label".into(), "S_total".into(), "T".into()],
        path,
    )?;
    for p in points {
        record(
            &mut w,
            &[
                p.stage.label().into(),
                p.s_total.to_string(),
                p.t.to_string(),
            ],
            path,
        )?;
    }
    finish(w, path)
}

/// Columns: `pass, p_a, p_b, p_c`; row 0 is the initial state.
pub fn write_populations_csv(ledger: &PassLedger<f64>, path: &Path) -> Result<(), HarnessError> {
    let mut w = writer(path)?;
    record(
        &mut w,
        &["pass".into(), "p_a".into(), "p_b".into(), "p_c".into()],
        path,
    )?;
    let states = std::iter::once(ledger.initial).chain(ledger.passes.iter().map(|r| r.populations));
    for (i, p) in states.enumerate() {
        record(
            &mut w,
            &[
                i.to_string(),
                p.a().to_string(),
                p.b().to_string(),
                p.c().to_string(),
            ],
            path,
        )?;
    }
    finish(w, path)
}

/// Columns: `pass, p_a, p_b, p_c, laser_cum, maser_cum` (cumulative population transfers).
pub fn write_pass_ledger_csv(ledger: &PassLedger<f64>, path: &Path) -> Result<(), HarnessError> {
    let mut w = writer(path)?;
    let header = ["pass", "p_a", "p_b", "p_c", "laser_cum", "maser_cum"].map(String::from);
    record(&mut w, &header, path)?;
    let p0 = ledger.initial;
    record(
        &mut w,
        &[
            "0".into(),
            p0.a().to_string(),
            p0.b().to_string(),
            p0.c().to_string(),
            0f64.to_string(),
            0f64.to_string(),
        ],
        path,
    )?;
    for (i, r) in ledger.passes.iter().enumerate() {
        let p = r.populations;
        record(
            &mut w,
            &[
                (i + 1).to_string(),
                p.a().to_string(),
                p.b().to_string(),
                p.c().to_string(),
                r.laser_cumulative.to_string(),
                r.maser_cumulative.to_string(),
            ],
            path,
        )?;
    }
    finish(w, path)
}

/// Columns: `n, probability`.
pub fn write_photon_csv(dist: &PhotonDistribution<f64>, path: &Path) -> Result<(), HarnessError> {
    let mut w = writer(path)?;
    record(&mut w, &["n".into(), "probability".into()], path)?;
    for (n, p) in dist.probs().iter().enumerate() {
        record(&mut w, &[n.to_string(), p.to_string()], path)?;
    }
    finish(w, path)
}

/// Writes every figure file for `cfg` into `dir`, returning the paths written.
pub fn emit_figures(cfg: &ScenarioConfig, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let data = figure_data(cfg)?;
    fs::create_dir_all(dir).map_err(HarnessError::io(dir))?;
    let mut written = Vec::new();

    let path = dir.join(FIG2_FILE);
    write_ts_csv(&data.ts, &path)?;
    written.push(path);

    let path = dir.join(FIG3_FILE);
    write_populations_csv(&data.ledger, &path)?;
    written.push(path);

    let path = dir.join(PASS_LEDGER_FILE);
    write_pass_ledger_csv(&data.ledger, &path)?;
    written.push(path);

    if let Some(cav) = &data.cavity {
        let path = dir.join(MASER_FILE);
        write_photon_csv(&cav.maser, &path)?;
        written.push(path);
        let path = dir.join(LASER_FILE);
        write_photon_csv(&cav.laser, &path)?;
        written.push(path);
    }
    Ok(written)
}
