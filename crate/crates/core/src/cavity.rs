//! Photon-number statistics of the maser and laser cavity fields.
//!
//! The maser field is thermal (geometric distribution). The laser field uses
//! the gain/saturation/loss product form, evaluated literally: factors are
//! `f(l) = A(l+1) / (1 + (A/B)(l+1)) - C(l+1) + n_l / (n_l + 1)`, and the
//! support ends at the first `l` with `f(l) <= 0`.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, DomainError, Result};
use crate::scalar::Real;

/// Default photon-number truncation.
pub const DEFAULT_N_MAX: usize = 1024;

/// Truncated distribution over photon number `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonDistribution<T> {
    probs: Vec<T>,
    tail_mass: T,
    cutoff: Option<usize>,
}

impl<T: Real> PhotonDistribution<T> {
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    /// Probability mass beyond `n_max` (analytic for thermal fields, zero for laser fields).
    pub fn tail_mass(&self) -> T {
        self.tail_mass
    }

    /// For laser fields: the first factor index `l <= n_max` with `f(l) <= 0`.
    /// Every `probs[n]` with `n >= cutoff` is zero.
    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    pub fn total_mass(&self) -> T {
        self.probs.iter().fold(T::zero(), |acc, &p| acc + p) + self.tail_mass
    }
}

/// Gain, saturation and loss parameters of the laser cavity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserGainParams<T> {
    gain: T,
    saturation: T,
    loss: T,
    thermal_mean: T,
}

impl<T: Real> LaserGainParams<T> {
    /// `gain` is A, `saturation` is B, `loss` is C and `thermal_mean` is the
    /// empty-cavity thermal photon number.
    pub fn new(gain: T, saturation: T, loss: T, thermal_mean: T) -> Result<Self> {
        positive("A", gain.as_f64())?;
        positive("B", saturation.as_f64())?;
        positive("C", loss.as_f64())?;
        non_negative("n_bar_l", thermal_mean.as_f64())?;
        Ok(Self {
            gain,
            saturation,
            loss,
            thermal_mean,
        })
    }

    pub fn gain(&self) -> T {
        self.gain
    }

    pub fn saturation(&self) -> T {
        self.saturation
    }

    pub fn loss(&self) -> T {
        self.loss
    }

    pub fn thermal_mean(&self) -> T {
        self.thermal_mean
    }

    /// The `l`-th factor of the product form.
    pub fn factor(&self, l: usize) -> T {
        let x = T::from_usize(l + 1).expect("index representable");
        let nb = self.thermal_mean;
        self.gain * x / (T::one() + (self.gain / self.saturation) * x) - self.loss * x
            + nb / (nb + T::one())
    }
}

/// Mean thermal photon number `1 / (exp(nu / T) - 1)`.
pub fn thermal_photon_mean<T: Real>(nu: T, temperature: T) -> Result<T> {
    positive("nu", nu.as_f64())?;
    positive("temperature", temperature.as_f64())?;
    Ok(T::one() / (nu / temperature).exp_m1())
}

/// Thermal (geometric) distribution `n̄^n / (n̄ + 1)^(n+1)` with its analytic tail.
pub fn thermal_distribution<T: Real>(n_bar: T, n_max: usize) -> Result<PhotonDistribution<T>> {
    non_negative("n_bar", n_bar.as_f64())?;
    let ratio = n_bar / (n_bar + T::one());
    let mut probs = Vec::with_capacity(n_max + 1);
    let mut p = T::one() / (n_bar + T::one());
    for _ in 0..=n_max {
        probs.push(p);
        p = p * ratio;
    }
    let tail_mass = ratio.powi(i32::try_from(n_max + 1).unwrap_or(i32::MAX));
    Ok(PhotonDistribution {
        probs,
        tail_mass,
        cutoff: None,
    })
}

/// Laser distribution `r_n ∝ ∏_{l=1}^{n} f(l)`, renormalized over its retained support.
pub fn laser_distribution<T: Real>(
    params: &LaserGainParams<T>,
    n_max: usize,
) -> Result<PhotonDistribution<T>> {
    if n_max < 1 {
        return Err(DomainError::TooSmall {
            name: "n_max",
            value: n_max,
            min: 1,
        });
    }
    let first = params.factor(1);
    if !(first > T::zero()) {
        return Err(DomainError::BelowThreshold(first.as_f64()));
    }

    // accumulate in log space; products of up to n_max factors overflow easily
    let mut log_r = Vec::with_capacity(n_max + 1);
    log_r.push(T::zero());
    let mut cutoff = None;
    let mut acc = T::zero();
    for l in 1..=n_max {
        let f = params.factor(l);
        if !(f > T::zero()) {
            cutoff = Some(l);
            break;
        }
        acc = acc + f.ln();
        log_r.push(acc);
    }

    let peak = log_r.iter().copied().fold(T::neg_infinity(), T::max);
    let mut probs: Vec<T> = log_r.iter().map(|&lr| (lr - peak).exp()).collect();
    let norm = probs.iter().fold(T::zero(), |acc, &p| acc + p);
    for p in &mut probs {
        *p = *p / norm;
    }
    probs.resize(n_max + 1, T::zero());

    Ok(PhotonDistribution {
        probs,
        tail_mass: T::zero(),
        cutoff,
    })
}

/// First two moments and the Mandel Q parameter of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldMetrics<T> {
    pub mean: T,
    pub variance: T,
    /// `(variance - mean) / mean`; `None` when the mean vanishes.
    pub mandel_q: Option<T>,
}

pub fn field_metrics<T: Real>(dist: &PhotonDistribution<T>) -> FieldMetrics<T> {
    let (mut m1, mut m2) = (T::zero(), T::zero());
    for (n, &p) in dist.probs.iter().enumerate() {
        let n = T::from_usize(n).expect("index representable");
        m1 = m1 + n * p;
        m2 = m2 + n * n * p;
    }
    let variance = m2 - m1 * m1;
    let mandel_q = (m1 > T::zero()).then(|| (variance - m1) / m1);
    FieldMetrics {
        mean: m1,
        variance,
        mandel_q,
    }
}

#[cfg(test)]
impl<T: Real> PhotonDistribution<T> {
    pub(crate) fn from_probs(probs: Vec<T>) -> Self {
        Self {
            probs,
            tail_mass: T::zero(),
            cutoff: None,
        }
    }
}
