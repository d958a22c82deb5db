//! Ideal Otto cycle for the translational degrees of freedom.
//!
//! State chain: 1 `(T1, hot isochore)` -> 2 `(T1/R, cold isochore)` ->
//! 3 `(T3, cold isochore)` -> 4 `(T3, after the cavities)` -> 5 `(R T3, hot isochore)`
//! -> 6 `(T1, hot isochore)` -> 1 after the internal reheat.

use serde::{Deserialize, Serialize};

use crate::error::{positive, DomainError, Result};
use crate::scalar::Real;

/// `(V1 / V2)^(gamma - 1)`.
pub fn compression_ratio<T: Real>(v1: T, v2: T, gamma: T) -> Result<T> {
    let ok = v1.is_finite() && v2.is_finite() && gamma.is_finite();
    if !(ok && v2 > T::zero() && v1 >= v2 && gamma > T::one()) {
        return Err(DomainError::Compression {
            v1: v1.as_f64(),
            v2: v2.as_f64(),
            gamma: gamma.as_f64(),
        });
    }
    Ok((v1 / v2).powf(gamma - T::one()))
}

/// How the compression is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compression<T> {
    Volumes { v1: T, v2: T, gamma: T },
    Ratio(T),
}

impl<T: Real> Compression<T> {
    pub fn ratio(&self) -> Result<T> {
        match *self {
            Compression::Volumes { v1, v2, gamma } => compression_ratio(v1, v2, gamma),
            Compression::Ratio(r) => {
                if !(r.is_finite() && r >= T::one()) {
                    return Err(DomainError::RatioBelowOne(r.as_f64()));
                }
                Ok(r)
            }
        }
    }
}

/// Working-gas parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasSpec<T> {
    t1: T,
    t3: T,
    ratio: T,
    cv: T,
    n_atoms: T,
}

impl<T: Real> GasSpec<T> {
    /// `R = 1` is accepted as the degenerate boundary cycle.
    pub fn new(t1: T, t3: T, compression: Compression<T>, cv: T, n_atoms: T) -> Result<Self> {
        positive("T3", t3.as_f64())?;
        positive("T1", t1.as_f64())?;
        if !(t1 > t3) {
            return Err(DomainError::TemperatureOrdering {
                t1: t1.as_f64(),
                t3: t3.as_f64(),
                relation: "T1 > T3 > 0",
            });
        }
        let ratio = compression.ratio()?;
        positive("Cv", cv.as_f64())?;
        positive("N", n_atoms.as_f64())?;
        Ok(Self {
            t1,
            t3,
            ratio,
            cv,
            n_atoms,
        })
    }

    pub fn t1(&self) -> T {
        self.t1
    }

    pub fn t3(&self) -> T {
        self.t3
    }

    /// Compression factor `R`.
    pub fn ratio(&self) -> T {
        self.ratio
    }

    pub fn cv(&self) -> T {
        self.cv
    }

    pub fn n_atoms(&self) -> T {
        self.n_atoms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCycleReport<T> {
    /// Temperature after the expansion stroke, `T1 / R`.
    pub t2: T,
    /// Temperature after the compression stroke, `R T3`.
    pub t4: T,
    /// Expansion work `Cv (T1 - T2)`.
    pub wg: T,
    /// Compression work `Cv (R - 1) T3`.
    pub ww: T,
    /// Isochoric reheat `Cv (T1 - R T3)`.
    pub q_in: T,
    /// Isochoric exhaust `Cv (T2 - T3)`.
    pub q_out: T,
    /// `1 - 1/R`.
    pub eta0: T,
    /// False when `T1 <= R T3`.
    pub net_work_positive: bool,
}

pub fn classical_cycle<T: Real>(spec: &GasSpec<T>) -> ClassicalCycleReport<T> {
    let GasSpec {
        t1, t3, ratio, cv, ..
    } = *spec;
    let t2 = t1 / ratio;
    let t4 = ratio * t3;
    ClassicalCycleReport {
        t2,
        t4,
        wg: cv * (t1 - t2),
        ww: cv * (ratio - T::one()) * t3,
        q_in: cv * (t1 - t4),
        q_out: cv * (t2 - t3),
        eta0: T::one() - T::one() / ratio,
        net_work_positive: t1 > t4,
    }
}

/// The two isochores of the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isochore {
    /// Expanded volume: states 2, 3, 4.
    Cold,
    /// Compressed volume: states 5, 6, 1.
    Hot,
}

/// Translational entropy at temperature `t` on an isochore, with the
/// reference `S_ext(T3, cold isochore) = 0`.
pub fn external_entropy<T: Real>(spec: &GasSpec<T>, isochore: Isochore, t: T) -> T {
    match isochore {
        Isochore::Cold => spec.cv * (t / spec.t3).ln(),
        Isochore::Hot => spec.cv * (t / (spec.ratio * spec.t3)).ln(),
    }
}

/// Cycle strokes in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Expansion,
    Exhaust,
    CavityExtraction,
    Compression,
    Reheat,
    InternalReheat,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Expansion,
        Stage::Exhaust,
        Stage::CavityExtraction,
        Stage::Compression,
        Stage::Reheat,
        Stage::InternalReheat,
    ];

    /// State-chain label such as `"1-2"`.
    pub fn label(self) -> &'static str {
        match self {
            Stage::Expansion => "1-2",
            Stage::Exhaust => "2-3",
            Stage::CavityExtraction => "3-4",
            Stage::Compression => "4-5",
            Stage::Reheat => "5-6",
            Stage::InternalReheat => "6-1",
        }
    }
}

/// Absolute internal entropies of the two internal states visited by the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InternalEntropyTrace<T> {
    /// Thermal state at T1, held through states 1, 2, 3.
    pub hot: T,
    /// Post-cavity state, held through states 4, 5, 6.
    pub cold: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsPoint<T> {
    pub stage: Stage,
    pub s_total: T,
    pub t: T,
}

/// Temperature-entropy polyline of the full cycle.
///
/// Each stage contributes `points_per_segment - 1` points (its end point is the
/// next stage's start); a final copy of state 1 closes the loop.
pub fn ts_diagram<T: Real>(
    spec: &GasSpec<T>,
    internal: Option<InternalEntropyTrace<T>>,
    points_per_segment: usize,
) -> Result<Vec<TsPoint<T>>> {
    if points_per_segment < 2 {
        return Err(DomainError::TooSmall {
            name: "points_per_segment",
            value: points_per_segment,
            min: 2,
        });
    }
    let (s_hot_int, s_cold_int) = internal.map_or((T::zero(), T::zero()), |tr| (tr.hot, tr.cold));
    let report = classical_cycle(spec);
    let (t1, t2, t3, t5) = (spec.t1, report.t2, spec.t3, report.t4);
    let s_top = external_entropy(spec, Isochore::Hot, t1);
    let s_bottom = T::zero();

    let steps = points_per_segment - 1;
    let denom = T::from_usize(steps).expect("count representable");
    let lerp = |a: T, b: T, k: usize| {
        let f = T::from_usize(k).expect("count representable") / denom;
        a + (b - a) * f
    };

    let mut out = Vec::with_capacity(6 * steps + 1);
    for stage in Stage::ALL {
        for k in 0..steps {
            let (s, t) = match stage {
                Stage::Expansion => (s_top + s_hot_int, lerp(t1, t2, k)),
                Stage::Exhaust => {
                    let t = lerp(t2, t3, k);
                    (external_entropy(spec, Isochore::Cold, t) + s_hot_int, t)
                }
                Stage::CavityExtraction => (s_bottom + lerp(s_hot_int, s_cold_int, k), t3),
                Stage::Compression => (s_bottom + s_cold_int, lerp(t3, t5, k)),
                Stage::Reheat => {
                    let t = lerp(t5, t1, k);
                    (external_entropy(spec, Isochore::Hot, t) + s_cold_int, t)
                }
                Stage::InternalReheat => (s_top + lerp(s_cold_int, s_hot_int, k), t1),
            };
            out.push(TsPoint {
                stage,
                s_total: s,
                t,
            });
        }
    }
    let first = out[0];
    out.push(TsPoint {
        stage: Stage::InternalReheat,
        ..first
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn spec(t1: f64, t3: f64, r: f64, cv: f64) -> GasSpec<f64> {
        GasSpec::new(t1, t3, Compression::Ratio(r), cv, 1.0).unwrap()
    }

    #[test]
    fn compression_ratio_examples() {
        assert_eq!(compression_ratio(2.0, 2.0, 1.4).unwrap(), 1.0);
        assert_abs_diff_eq!(
            compression_ratio(8.0, 1.0, 5.0 / 3.0).unwrap(),
            4.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            compression_ratio(8.0, 1.0, 1.0 + 1e-12).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        assert!(compression_ratio(1.0, 2.0, 1.4).is_err());
        assert!(compression_ratio(2.0, 0.0, 1.4).is_err());
        assert!(compression_ratio(2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn gas_spec_validation() {
        assert!(GasSpec::new(300.0, 600.0, Compression::Ratio(1.5), 1.0, 1.0).is_err());
        assert!(GasSpec::new(600.0, 0.0, Compression::Ratio(1.5), 1.0, 1.0).is_err());
        assert!(GasSpec::new(600.0, 300.0, Compression::Ratio(0.9), 1.0, 1.0).is_err());
        assert!(GasSpec::new(600.0, 300.0, Compression::Ratio(1.5), 0.0, 1.0).is_err());
        assert!(GasSpec::new(600.0, 300.0, Compression::Ratio(1.5), 1.0, -1.0).is_err());
        let g = GasSpec::new(
            600.0,
            300.0,
            Compression::Volumes {
                v1: 8.0,
                v2: 1.0,
                gamma: 5.0 / 3.0,
            },
            1.0,
            1.0,
        )
        .unwrap();
        assert_abs_diff_eq!(g.ratio(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn hand_evaluated_cycle() {
        let r = classical_cycle(&spec(600.0, 300.0, 1.5, 1.0));
        assert_abs_diff_eq!(r.t2, 400.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.t4, 450.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.wg, 200.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.ww, 150.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.q_in, 150.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.q_out, 100.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.eta0, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!((r.wg - r.ww) / r.q_in, 1.0 - 1.0 / 1.5, epsilon = 1e-12);
        assert!(r.net_work_positive);
    }

    #[test]
    fn quarter_efficiency_and_boundary() {
        assert_abs_diff_eq!(
            classical_cycle(&spec(600.0, 300.0, 4.0 / 3.0, 1.0)).eta0,
            0.25,
            epsilon = 1e-15
        );
        let r = classical_cycle(&spec(600.0, 300.0, 1.0, 1.0));
        assert_eq!(r.wg, 0.0);
        assert_eq!(r.ww, 0.0);
        assert_eq!(r.eta0, 0.0);
    }

    #[test]
    fn net_work_flag() {
        let r = classical_cycle(&spec(400.0, 300.0, 1.5, 1.0));
        assert!(!r.net_work_positive);
        assert!(r.q_in < 0.0);
    }

    #[test]
    fn ts_topology_without_internal_entropy() {
        let s = spec(600.0, 300.0, 1.5, 1.0);
        let pts = ts_diagram(&s, None, 2).unwrap();
        assert_eq!(pts.len(), 7);
        let mut distinct: Vec<f64> = pts.iter().map(|p| p.s_total).collect();
        distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distinct.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(distinct.len(), 2);

        let first = pts.first().unwrap();
        let last = pts.last().unwrap();
        assert_abs_diff_eq!(first.s_total, last.s_total, epsilon = 1e-9);
        assert_abs_diff_eq!(first.t, last.t, epsilon = 1e-9);
    }

    #[test]
    fn isochore_gap_is_cv_ln_r() {
        let s = spec(600.0, 300.0, 1.5, 1.0);
        for t in [300.0, 450.0, 600.0] {
            let gap =
                external_entropy(&s, Isochore::Cold, t) - external_entropy(&s, Isochore::Hot, t);
            assert_abs_diff_eq!(gap, 0.405465, epsilon = 1e-6);
        }
        // isentropes join the right states
        let r = classical_cycle(&s);
        assert_abs_diff_eq!(
            external_entropy(&s, Isochore::Hot, 600.0),
            external_entropy(&s, Isochore::Cold, r.t2),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            external_entropy(&s, Isochore::Hot, r.t4),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_cycle_has_zero_area() {
        let s = spec(600.0, 300.0, 1.0, 1.0);
        let pts = ts_diagram(&s, None, 16).unwrap();
        // shoelace area
        let area: f64 = pts
            .windows(2)
            .map(|w| w[0].s_total * w[1].t - w[1].s_total * w[0].t)
            .sum::<f64>()
            / 2.0;
        assert_abs_diff_eq!(area, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn internal_jumps_are_horizontal() {
        let s = spec(600.0, 300.0, 1.5, 2.0);
        let tr = InternalEntropyTrace {
            hot: 3f64.ln(),
            cold: 0.2,
        };
        let pts = ts_diagram(&s, Some(tr), 5).unwrap();
        for p in pts.iter().filter(|p| p.stage == Stage::CavityExtraction) {
            assert_eq!(p.t, 300.0);
        }
        for p in pts.iter().filter(|p| p.stage == Stage::InternalReheat) {
            assert_eq!(p.t, 600.0);
        }
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        assert_abs_diff_eq!(first.s_total, last.s_total, epsilon = 1e-9);
        assert!(ts_diagram(&s, Some(tr), 1).is_err());
    }

    proptest! {
        #[test]
        fn efficiency_identities(t3 in 1e-2..1e3f64, gap in 1e-3..1e3f64, r in 1.0..10.0f64, cv in 1e-2..1e2f64) {
            let s = spec(t3 + gap, t3, r, cv);
            let c = classical_cycle(&s);
            prop_assert!((c.eta0 - (1.0 - c.t2 / s.t1())).abs() < 1e-12);
            if c.q_in.abs() > 1e-6 * cv * s.t1() {
                prop_assert!(((c.wg - c.ww) / c.q_in - c.eta0).abs() < 1e-9);
            }
            let scale = cv * s.t1().max(c.t4);
            prop_assert!(((c.wg - c.ww) - (c.q_in - c.q_out)).abs() < 1e-12 * scale.max(1.0));
        }

        #[test]
        fn eta0_increases_with_r(r in 1.0..10.0f64, dr in 1e-6..1.0f64) {
            let a = classical_cycle(&spec(600.0, 300.0, r, 1.0)).eta0;
            let b = classical_cycle(&spec(600.0, 300.0, r + dr, 1.0)).eta0;
            prop_assert!(b > a);
        }
    }
}
