//! The maser-laser afterburner.
//!
//! After the exhaust stroke the gas is cycled through a maser cavity on the
//! b-c transition and a laser cavity on the a-b transition, both held at T3.
//! The maser pins `p_b` to its T3 Boltzmann weight; with `p_a` still set by
//! T1 this leaves an inversion that the laser turns into coherent work.
//! Repeated passes drive the atoms to `(p_b3, p_b3, 1 - 2 p_b3)`.
//!
//! Energies come from the closed forms
//! `w_l = eps_ab N (p_a1 - p_b3)` and `q_m = eps_bc N (p_a1 + p_b1 - 2 p_b3)`;
//! the iterated [`PassLedger`] reproduces them and serves as a cross-check.

mod entropy;
mod passes;

pub use entropy::{
    entropy_balance, entropy_between, second_law_audit, EntropyBalance, EntropyLedger,
};
pub use passes::{
    iterate_passes, single_pass, ConvergenceFailure, IterateError, PassLedger, PassRecord, PassStep,
};

use serde::{Deserialize, Serialize};

use crate::error::{positive, DomainError, Result};
use crate::internal::{boltzmann_populations, LevelSystem, Populations};
use crate::otto::{ClassicalCycleReport, GasSpec};
use crate::scalar::Real;

fn check_temperatures<T: Real>(t1: T, t3: T) -> Result<()> {
    positive("T1", t1.as_f64())?;
    positive("T3", t3.as_f64())?;
    if t1 < t3 {
        return Err(DomainError::TemperatureOrdering {
            t1: t1.as_f64(),
            t3: t3.as_f64(),
            relation: "T1 >= T3 > 0",
        });
    }
    Ok(())
}

/// Thermal populations at the hot and cold reservoir temperatures.
pub fn cavity_populations<T: Real>(
    levels: &LevelSystem<T>,
    t1: T,
    t3: T,
) -> Result<(Populations<T>, Populations<T>)> {
    check_temperatures(t1, t3)?;
    Ok((
        boltzmann_populations(levels, t1)?,
        boltzmann_populations(levels, t3)?,
    ))
}

/// Coherent laser work per cycle. Non-positive means there is no inversion.
pub fn laser_work<T: Real>(levels: &LevelSystem<T>, t1: T, t3: T, n_atoms: T) -> Result<T> {
    let (hot, cold) = cavity_populations(levels, t1, t3)?;
    Ok(levels.gap_ab() * n_atoms * (hot.a() - cold.b()))
}

/// Incoherent heat dumped into the maser field per cycle.
pub fn maser_heat<T: Real>(levels: &LevelSystem<T>, t1: T, t3: T, n_atoms: T) -> Result<T> {
    let (hot, cold) = cavity_populations(levels, t1, t3)?;
    Ok(levels.gap_bc() * n_atoms * ((hot.a() - cold.b()) + (hot.b() - cold.b())))
}

/// `(Wg - Ww + w_l) / (Q_in + w_l + q_m)`.
pub fn quantum_efficiency<T: Real>(
    classical: &ClassicalCycleReport<T>,
    w_l: T,
    q_m: T,
) -> Result<T> {
    let denom = classical.q_in + w_l + q_m;
    if !(denom > T::zero()) {
        return Err(DomainError::NonPositiveDenominator(denom.as_f64()));
    }
    Ok((classical.wg - classical.ww + w_l) / denom)
}

/// The same efficiency written as `eta0` plus the afterburner gain
/// `[w_l (1 - eta0) - eta0 q_m] / (Q_in + w_l + q_m)`.
pub fn quantum_efficiency_from_gain<T: Real>(
    classical: &ClassicalCycleReport<T>,
    w_l: T,
    q_m: T,
) -> Result<T> {
    let denom = classical.q_in + w_l + q_m;
    if !(denom > T::zero()) {
        return Err(DomainError::NonPositiveDenominator(denom.as_f64()));
    }
    let eta0 = classical.eta0;
    Ok(eta0 + (w_l * (T::one() - eta0) - eta0 * q_m) / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enhancement<T> {
    /// `(1 - eta0) w_l > eta0 q_m`, decided in cross-multiplied form.
    pub enhanced: bool,
    /// `(1/eta0 - 1)(eps_ac/eps_bc - 1)`; absent when `eta0 = 0`.
    pub lhs: Option<T>,
    /// `1 + (p_b1 - p_b3)/(p_a1 - p_b3)`; absent without inversion.
    pub rhs: Option<T>,
}

impl<T> Enhancement<T> {
    pub fn well_defined(&self) -> bool {
        self.lhs.is_some() && self.rhs.is_some()
    }
}

/// Whether the afterburner raises the efficiency above `eta0`.
pub fn enhancement_condition<T: Real>(
    levels: &LevelSystem<T>,
    eta0: T,
    t1: T,
    t3: T,
) -> Result<Enhancement<T>> {
    if !(eta0 >= T::zero() && eta0 < T::one()) {
        return Err(DomainError::EfficiencyRange(eta0.as_f64()));
    }
    let (hot, cold) = cavity_populations(levels, t1, t3)?;
    let laser_pop = hot.a() - cold.b();
    let maser_pop = laser_pop + (hot.b() - cold.b());
    let enhanced =
        (T::one() - eta0) * levels.gap_ab() * laser_pop > eta0 * levels.gap_bc() * maser_pop;
    let lhs = (eta0 > T::zero())
        .then(|| (T::one() / eta0 - T::one()) * (levels.gap_ac() / levels.gap_bc() - T::one()));
    let rhs = (laser_pop > T::zero()).then(|| T::one() + (hot.b() - cold.b()) / laser_pop);
    Ok(Enhancement { enhanced, lhs, rhs })
}

/// Per-cycle afterburner energetics, efficiency and internal entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AfterburnerReport<T> {
    pub p_a1: T,
    pub p_b1: T,
    pub p_b3: T,
    pub w_l: T,
    pub q_m: T,
    /// `w_l + q_m`, the internal reheat drawn at T1.
    pub q_in: T,
    pub eta_qo: T,
    pub enhanced: bool,
    pub enhancement_lhs: Option<T>,
    pub enhancement_rhs: Option<T>,
    pub ds_extract: T,
    pub ds_reheat: T,
    /// `p_a1 > p_b3`; without it the laser yields no useful work.
    pub inversion: bool,
}

pub fn afterburner<T: Real>(
    levels: &LevelSystem<T>,
    spec: &GasSpec<T>,
    classical: &ClassicalCycleReport<T>,
) -> Result<AfterburnerReport<T>> {
    let (t1, t3, n) = (spec.t1(), spec.t3(), spec.n_atoms());
    let (hot, cold) = cavity_populations(levels, t1, t3)?;
    let w_l = laser_work(levels, t1, t3, n)?;
    let q_m = maser_heat(levels, t1, t3, n)?;
    let eta_qo = quantum_efficiency(classical, w_l, q_m)?;
    let enh = enhancement_condition(levels, classical.eta0, t1, t3)?;
    let bal = entropy_between(&hot, cold.b(), n)?;
    Ok(AfterburnerReport {
        p_a1: hot.a(),
        p_b1: hot.b(),
        p_b3: cold.b(),
        w_l,
        q_m,
        q_in: w_l + q_m,
        eta_qo,
        enhanced: enh.enhanced,
        enhancement_lhs: enh.lhs,
        enhancement_rhs: enh.rhs,
        ds_extract: bal.extract,
        ds_reheat: bal.reheat,
        inversion: hot.a() > cold.b(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::internal::{internal_energy, temperature_for_b_population};
    use crate::otto::{classical_cycle, Compression};
    use approx::assert_abs_diff_eq;

    fn levels() -> LevelSystem<f64> {
        LevelSystem::new(11.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn no_gap_no_lasing() {
        let l = levels();
        let w = laser_work(&l, 2.0, 2.0, 1.0).unwrap();
        assert!(w < 0.0);
        assert!(laser_work(&l, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn uniform_hot_populations_closed_forms() {
        // T1 so high the hot state is uniform to 1e-9; T3 pinned at p_b = 0.1
        let l = levels();
        let t3 = temperature_for_b_population(&l, 0.1).unwrap();
        let t1 = 1e10;
        let w = laser_work(&l, t1, t3, 1.0).unwrap();
        let q = maser_heat(&l, t1, t3, 1.0).unwrap();
        assert_abs_diff_eq!(w, 10.0 * (1.0 / 3.0 - 0.1), epsilon = 1e-8);
        assert_abs_diff_eq!(q, 0.466667, epsilon = 1e-6);
    }

    #[test]
    fn laser_work_at_inversion_threshold_is_zero() {
        // a level system and temperatures with p_a1 == p_b3 exactly: degenerate
        // limit where both reservoirs see the same Boltzmann weights is not
        // reachable with strict ordering, so exercise the product directly
        let l = levels();
        let (hot, cold) = cavity_populations(&l, 50.0, 50.0).unwrap();
        assert!(hot.a() < cold.b());
        let w = laser_work(&l, 50.0, 50.0, 3.0).unwrap();
        assert_abs_diff_eq!(w, l.gap_ab() * 3.0 * (hot.a() - cold.b()), epsilon = 1e-15);
    }

    fn quarter_report() -> ClassicalCycleReport<f64> {
        let spec = GasSpec::new(550.0, 300.0, Compression::Ratio(4.0 / 3.0), 1.0, 1.0).unwrap();
        classical_cycle(&spec)
    }

    #[test]
    fn efficiency_examples() {
        let c = quarter_report();
        assert_abs_diff_eq!(c.q_in, 150.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            quantum_efficiency(&c, 0.0, 0.0).unwrap(),
            c.eta0,
            epsilon = 1e-15
        );

        let eta = quantum_efficiency(&c, 2.333, 0.4667).unwrap();
        assert_abs_diff_eq!(eta, 0.260694, epsilon = 1e-5);
        assert_abs_diff_eq!(
            eta,
            quantum_efficiency_from_gain(&c, 2.333, 0.4667).unwrap(),
            epsilon = 1e-12
        );
        assert!(eta > 0.25);

        assert!(quantum_efficiency(&c, 1.0, 0.0).unwrap() > c.eta0);
        assert!(matches!(
            quantum_efficiency(&c, -200.0, 0.0),
            Err(DomainError::NonPositiveDenominator(_))
        ));
    }

    #[test]
    fn criterion_worked_example() {
        let l = levels();
        let t3 = temperature_for_b_population(&l, 0.1).unwrap();
        let e = enhancement_condition(&l, 0.25, 1e9, t3).unwrap();
        assert_abs_diff_eq!(e.lhs.unwrap(), 30.0, epsilon = 1e-9);
        assert_abs_diff_eq!(e.rhs.unwrap(), 2.0, epsilon = 1e-5);
        assert!(e.enhanced && e.well_defined());
        assert!(enhancement_condition(&l, 1.0, 1e9, t3).is_err());
    }

    #[test]
    fn criterion_without_inversion() {
        let l = levels();
        let e = enhancement_condition(&l, 0.25, 2.0, 2.0).unwrap();
        assert!(e.rhs.is_none());
        assert!(!e.well_defined());
        assert!(!e.enhanced);
    }

    #[test]
    fn report_identities() {
        let l = levels();
        let spec = GasSpec::new(40.0, 0.8, Compression::Ratio(1.8), 2.0, 3.0).unwrap();
        let c = classical_cycle(&spec);
        let r = afterburner(&l, &spec, &c).unwrap();
        assert_eq!(r.q_in, r.w_l + r.q_m);
        assert_eq!(r.ds_extract + r.ds_reheat, 0.0);
        assert_eq!(r.enhanced, r.eta_qo > c.eta0);
        assert!(r.inversion);

        // internal-energy route to q_in
        let hot = boltzmann_populations(&l, 40.0).unwrap();
        let fp = Populations::pinned_fixed_point(r.p_b3).unwrap();
        let q_in = internal_energy(&l, &hot, 3.0) - internal_energy(&l, &fp, 3.0);
        assert_abs_diff_eq!(q_in, r.q_in, epsilon = 1e-12);
    }

    #[test]
    fn iterated_ledger_matches_closed_forms() {
        let l = levels();
        let (t1, t3, n) = (40.0, 0.8, 2.5);
        let (hot, cold) = cavity_populations(&l, t1, t3).unwrap();
        let ledger = iterate_passes(&hot, cold.b(), 1e-12, 10_000).unwrap();
        let (wl, qm) = ledger.energies(&l, n);
        assert_abs_diff_eq!(wl, laser_work(&l, t1, t3, n).unwrap(), epsilon = 1e-9);
        assert_abs_diff_eq!(qm, maser_heat(&l, t1, t3, n).unwrap(), epsilon = 1e-9);
    }
}
