//! Internal entropy exchange and the whole-cycle entropy audit.

use serde::{Deserialize, Serialize};

use crate::afterburner::{cavity_populations, AfterburnerReport};
use crate::error::{DomainError, Result};
use crate::internal::{internal_entropy, LevelSystem, Populations};
use crate::otto::{classical_cycle, ClassicalCycleReport, GasSpec};
use crate::scalar::Real;

/// Internal entropy changes over the two cavity stages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyBalance<T> {
    /// Cavity extraction (3 -> 4): thermal-T1 state to the pinned fixed point.
    pub extract: T,
    /// Internal reheat (6 -> 1): pinned fixed point back to the thermal-T1 state.
    pub reheat: T,
}

/// Entropy exchange between a hot thermal state and the fixed point pinned at `p_b3`.
pub fn entropy_between<T: Real>(
    hot: &Populations<T>,
    p_b3: T,
    n_atoms: T,
) -> Result<EntropyBalance<T>> {
    let cold = Populations::pinned_fixed_point(p_b3)?;
    let reheat = internal_entropy(hot, n_atoms) - internal_entropy(&cold, n_atoms);
    Ok(EntropyBalance {
        extract: -reheat,
        reheat,
    })
}

pub fn entropy_balance<T: Real>(
    levels: &LevelSystem<T>,
    t1: T,
    t3: T,
    n_atoms: T,
) -> Result<EntropyBalance<T>> {
    let (hot, cold) = cavity_populations(levels, t1, t3)?;
    entropy_between(&hot, cold.b(), n_atoms)
}

/// Entropy changes over one closed cycle.
///
/// Reservoir terms are heat over contact temperature; strokes contribute nothing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyLedger<T> {
    /// T1 reservoir, isochoric reheat: `-Q_in / T1`.
    pub hot_external: T,
    /// T1 cavities, internal reheat: `-q_in / T1`.
    pub hot_internal: T,
    /// T3 exchanger, exhaust: `Q_out / T3`.
    pub cold_external: T,
    /// T3 maser cavity: `q_m / T3`.
    pub cold_maser: T,
    /// Translational entropy change around the loop.
    pub fluid_external: T,
    /// Internal entropy change around the loop.
    pub fluid_internal: T,
    pub working_fluid: T,
    pub reservoirs: T,
    pub universe: T,
}

/// Entropy bookkeeping for the whole engine, cross-checking that the inputs
/// describe one scenario.
pub fn second_law_audit<T: Real>(
    spec: &GasSpec<T>,
    levels: &LevelSystem<T>,
    classical: &ClassicalCycleReport<T>,
    ab: &AfterburnerReport<T>,
) -> Result<EntropyLedger<T>> {
    let expected = classical_cycle(spec);
    if &expected != classical {
        return Err(DomainError::Inconsistent(
            "classical report does not match the gas spec".into(),
        ));
    }
    let recomputed = crate::afterburner::afterburner(levels, spec, classical)?;
    if recomputed.w_l != ab.w_l || recomputed.q_m != ab.q_m || recomputed.ds_reheat != ab.ds_reheat
    {
        return Err(DomainError::Inconsistent(
            "afterburner report does not match levels and gas spec".into(),
        ));
    }

    let (t1, t3, cv) = (spec.t1(), spec.t3(), spec.cv());
    let hot_external = -classical.q_in / t1;
    let hot_internal = -ab.q_in / t1;
    let cold_external = classical.q_out / t3;
    let cold_maser = ab.q_m / t3;

    // isochores only: exhaust T2 -> T3, reheat R T3 -> T1
    let fluid_external = cv * (t3 / classical.t2).ln() + cv * (t1 / classical.t4).ln();
    let fluid_internal = ab.ds_extract + ab.ds_reheat;
    let working_fluid = fluid_external + fluid_internal;
    let reservoirs = hot_external + hot_internal + cold_external + cold_maser;
    Ok(EntropyLedger {
        hot_external,
        hot_internal,
        cold_external,
        cold_maser,
        fluid_external,
        fluid_internal,
        working_fluid,
        reservoirs,
        universe: working_fluid + reservoirs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afterburner::afterburner;
    use crate::otto::Compression;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_hot_state_against_pin() {
        let bal = entropy_between(&Populations::uniform(), 0.1, 1.0).unwrap();
        assert_abs_diff_eq!(bal.reheat, 0.459580, epsilon = 1e-5);
        assert_eq!(bal.extract + bal.reheat, 0.0);
    }

    #[test]
    fn ln3_limit() {
        let l = LevelSystem::new(2.0, 1.0, 0.0).unwrap();
        let bal = entropy_balance(&l, 1e9, 1e-3, 5.0).unwrap();
        assert_abs_diff_eq!(bal.reheat, 5.0 * 3f64.ln(), epsilon = 1e-6);
    }

    #[test]
    fn degenerate_levels_exchange_nothing() {
        // thermal state of degenerate levels is uniform and the pin is 1/3
        let hot = crate::internal::boltzmann_weights([0.0, 0.0, 0.0], 1.0).unwrap();
        let pin = crate::internal::boltzmann_weights([0.0, 0.0, 0.0], 1.0)
            .unwrap()
            .b();
        let bal = entropy_between(&hot, pin, 1.0).unwrap();
        assert_abs_diff_eq!(bal.reheat, 0.0, epsilon = 1e-15);
    }

    fn scenario(t1: f64, t3: f64, r: f64) -> (GasSpec<f64>, LevelSystem<f64>) {
        (
            GasSpec::new(t1, t3, Compression::Ratio(r), 1.0, 1.0).unwrap(),
            LevelSystem::new(11.0, 1.0, 0.0).unwrap(),
        )
    }

    #[test]
    fn afterburner_off_classical_ledger() {
        let (spec, levels) = scenario(600.0, 300.0, 1.5);
        let classical = classical_cycle(&spec);
        let mut ab = afterburner(&levels, &spec, &classical).unwrap();
        let audit = second_law_audit(&spec, &levels, &classical, &ab).unwrap();
        // hand ledger of the classical part: 100/300 - 150/600
        assert_abs_diff_eq!(
            audit.cold_external + audit.hot_external,
            1.0 / 12.0,
            epsilon = 1e-12
        );
        assert!(audit.universe > 0.0);
        assert_abs_diff_eq!(audit.working_fluid, 0.0, epsilon = 1e-9);

        ab.w_l += 1.0;
        assert!(matches!(
            second_law_audit(&spec, &levels, &classical, &ab),
            Err(DomainError::Inconsistent(_))
        ));
        let (other, _) = scenario(700.0, 300.0, 1.5);
        let ab = afterburner(&levels, &spec, &classical).unwrap();
        assert!(second_law_audit(&other, &levels, &classical, &ab).is_err());
    }

    #[test]
    fn near_reversible_boundary() {
        let (spec, _) = scenario(300.0 * (1.0 + 1e-9), 300.0, 1.0);
        // level gaps far below the temperature keep the cavity exchange reversible too
        let levels = LevelSystem::new(3e-4, 1e-4, 0.0).unwrap();
        let classical = classical_cycle(&spec);
        let ab = afterburner(&levels, &spec, &classical).unwrap();
        let audit = second_law_audit(&spec, &levels, &classical, &ab).unwrap();
        assert!(audit.universe.abs() < 1e-9);
    }
}
