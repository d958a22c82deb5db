//! One- and two-axis parameter sweeps.
//!
//! Grid points are evaluated in parallel and merged back in row-major order,
//! so the output never depends on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ScenarioConfig, SweepParam};
use crate::error::HarnessError;
use crate::scenario::{run_scenario, CycleReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    /// Axis values in axis order.
    pub params: Vec<f64>,
    pub report: Option<CycleReport>,
    /// Domain error for grid points that could not be evaluated.
    pub error: Option<String>,
}

/// Grid point maximizing `eta_qo - eta0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Argmax {
    pub index: usize,
    pub params: Vec<f64>,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub axes: Vec<SweepParam>,
    pub rows: Vec<SweepRow>,
    pub argmax: Option<Argmax>,
}

/// Row-major grid of `(point index, axis values)`.
pub fn sweep_grid(cfg: &ScenarioConfig) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = cfg.sweep.iter().map(|a| a.values()).collect();
    axes.iter().fold(vec![Vec::new()], |acc, values| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

/// The scenario evaluated at one grid point.
pub fn point_config(cfg: &ScenarioConfig, params: &[f64]) -> ScenarioConfig {
    let mut point = cfg
        .sweep
        .iter()
        .zip(params)
        .fold(cfg.clone(), |c, (axis, &v)| c.with_param(axis.param, v));
    point.sweep.clear();
    point
}

pub fn run_sweep(cfg: &ScenarioConfig) -> Result<SweepTable, HarnessError> {
    match cfg.sweep.len() {
        1 | 2 => {}
        0 => {
            return Err(HarnessError::Unsupported(
                "sweep needs at least one axis".into(),
            ))
        }
        n => {
            return Err(HarnessError::Unsupported(format!(
                "sweeps over {n} axes (at most 2 are supported)"
            )))
        }
    }
    let grid = sweep_grid(cfg);
    let rows: Vec<SweepRow> = grid
        .into_par_iter()
        .enumerate()
        .map(|(index, params)| {
            let point = point_config(cfg, &params);
            match run_scenario(&point) {
                Ok(report) => SweepRow {
                    index,
                    params,
                    report: Some(report),
                    error: None,
                },
                Err(e) => SweepRow {
                    index,
                    params,
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let argmax = rows
        .iter()
        .filter_map(|r| r.report.as_ref().map(|rep| (r, rep.gain())))
        .fold(None::<(&SweepRow, f64)>, |best, (row, gain)| match best {
            Some((_, g)) if gain <= g => best,
            _ => Some((row, gain)),
        })
        .map(|(row, gain)| Argmax {
            index: row.index,
            params: row.params.clone(),
            gain,
        });

    Ok(SweepTable {
        axes: cfg.sweep.iter().map(|a| a.param).collect(),
        rows,
        argmax,
    })
}
