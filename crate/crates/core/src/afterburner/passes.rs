//! Maser-then-laser pass map on the internal populations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{positive, DomainError, Result};
use crate::internal::{check_pin, LevelSystem, Populations};
use crate::scalar::Real;

/// Outcome of one pass through the cavity pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassStep<T> {
    pub populations: Populations<T>,
    /// Population moved a -> b by the laser (energy in units of `eps_ab`).
    pub laser: T,
    /// Population moved b -> c by the maser (energy in units of `eps_bc`); negative when c feeds b.
    pub maser: T,
}

/// One pass: the maser pins `p_b` to `p_b3`, moving the difference into c,
/// then the laser equalizes a and b.
pub fn single_pass<T: Real>(pop: &Populations<T>, p_b3: T) -> Result<PassStep<T>> {
    check_pin(p_b3)?;
    let maser = pop.b() - p_b3;
    let c = pop.c() + maser;
    if c < -T::normalization_tol() {
        return Err(DomainError::MaserUnderflow {
            p_c: pop.c().as_f64(),
            required: (-maser).as_f64(),
        });
    }
    let ab = (pop.a() + p_b3) / T::lit(2.0);
    let laser = pop.a() - ab;
    Ok(PassStep {
        populations: Populations::new(ab, ab, c)?,
        laser,
        maser,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassRecord<T> {
    pub populations: Populations<T>,
    pub laser: T,
    pub maser: T,
    pub laser_cumulative: T,
    pub maser_cumulative: T,
}

/// History of repeated passes, starting from `initial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassLedger<T> {
    pub initial: Populations<T>,
    pub p_b3: T,
    pub passes: Vec<PassRecord<T>>,
}

impl<T: Real> PassLedger<T> {
    pub fn pass_count(&self) -> usize {
        self.passes.len()
    }

    pub fn final_populations(&self) -> Populations<T> {
        self.passes.last().map_or(self.initial, |r| r.populations)
    }

    /// Cumulative population moved a -> b.
    pub fn laser_total(&self) -> T {
        self.passes.last().map_or(T::zero(), |r| r.laser_cumulative)
    }

    /// Cumulative population moved into c.
    pub fn maser_total(&self) -> T {
        self.passes.last().map_or(T::zero(), |r| r.maser_cumulative)
    }

    /// Cumulative laser and maser energies for `n_atoms` atoms.
    pub fn energies(&self, levels: &LevelSystem<T>, n_atoms: T) -> (T, T) {
        (
            levels.gap_ab() * n_atoms * self.laser_total(),
            levels.gap_bc() * n_atoms * self.maser_total(),
        )
    }
}

/// Iteration stopped before the population change fell below tolerance.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("pass map did not converge in {} passes", ledger.passes.len())]
pub struct ConvergenceFailure<T: Real> {
    pub ledger: PassLedger<T>,
    pub residual: T,
}

impl<T: Real> From<ConvergenceFailure<T>> for DomainError {
    fn from(e: ConvergenceFailure<T>) -> Self {
        DomainError::NotConverged {
            passes: e.ledger.passes.len(),
            residual: e.residual.as_f64(),
        }
    }
}

/// Repeats [`single_pass`] until the max-norm population change drops below `tol`.
pub fn iterate_passes<T: Real>(
    pop0: &Populations<T>,
    p_b3: T,
    tol: T,
    max_passes: usize,
) -> std::result::Result<PassLedger<T>, IterateError<T>> {
    positive("tol", tol.as_f64())?;
    if max_passes < 1 {
        return Err(DomainError::TooSmall {
            name: "max_passes",
            value: max_passes,
            min: 1,
        }
        .into());
    }
    check_pin(p_b3)?;

    let mut ledger = PassLedger {
        initial: *pop0,
        p_b3,
        passes: Vec::new(),
    };
    let mut current = *pop0;
    let (mut laser_cum, mut maser_cum) = (T::zero(), T::zero());
    let mut residual = T::infinity();
    for _ in 0..max_passes {
        let step = single_pass(&current, p_b3)?;
        laser_cum = laser_cum + step.laser;
        maser_cum = maser_cum + step.maser;
        residual = step.populations.max_abs_diff(&current);
        ledger.passes.push(PassRecord {
            populations: step.populations,
            laser: step.laser,
            maser: step.maser,
            laser_cumulative: laser_cum,
            maser_cumulative: maser_cum,
        });
        current = step.populations;
        if residual < tol {
            return Ok(ledger);
        }
    }
    Err(ConvergenceFailure { ledger, residual }.into())
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IterateError<T: Real> {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    NotConverged(#[from] ConvergenceFailure<T>),
}

impl<T: Real> From<IterateError<T>> for DomainError {
    fn from(e: IterateError<T>) -> Self {
        match e {
            IterateError::Domain(d) => d,
            IterateError::NotConverged(c) => c.into(),
        }
    }
}
