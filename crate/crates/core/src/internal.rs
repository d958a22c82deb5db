//! Thermal statistics of the three-level atom.
//!
//! Natural units throughout: `k_B = 1`, `ħ = 1`, and energies share their unit
//! with temperatures. Internal states are always diagonal in the level basis,
//! so a state is fully described by its [`Populations`].

use serde::{Deserialize, Serialize};

use crate::error::{positive, DomainError, Result};
use crate::scalar::{x_ln_x, Real};

/// The three internal energy levels `eps_a > eps_b > eps_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSystem<T> {
    eps_a: T,
    eps_b: T,
    eps_c: T,
}

impl<T: Real> LevelSystem<T> {
    pub fn new(eps_a: T, eps_b: T, eps_c: T) -> Result<Self> {
        for (name, v) in [("eps_a", eps_a), ("eps_b", eps_b), ("eps_c", eps_c)] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: v.as_f64(),
                });
            }
        }
        if !(eps_a > eps_b && eps_b > eps_c) {
            return Err(DomainError::LevelOrdering {
                eps_a: eps_a.as_f64(),
                eps_b: eps_b.as_f64(),
                eps_c: eps_c.as_f64(),
            });
        }
        Ok(Self {
            eps_a,
            eps_b,
            eps_c,
        })
    }

    pub fn eps_a(&self) -> T {
        self.eps_a
    }

    pub fn eps_b(&self) -> T {
        self.eps_b
    }

    pub fn eps_c(&self) -> T {
        self.eps_c
    }

    /// Laser transition gap `eps_a - eps_b`.
    pub fn gap_ab(&self) -> T {
        self.eps_a - self.eps_b
    }

    /// Maser transition gap `eps_b - eps_c`.
    pub fn gap_bc(&self) -> T {
        self.eps_b - self.eps_c
    }

    /// Total gap, built as `gap_ab + gap_bc` so the sum identity holds bit for bit.
    pub fn gap_ac(&self) -> T {
        self.gap_ab() + self.gap_bc()
    }

    pub fn energies(&self) -> [T; 3] {
        [self.eps_a, self.eps_b, self.eps_c]
    }
}

/// Diagonal occupation `(p_a, p_b, p_c)` of the internal levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Populations<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Real> Populations<T> {
    /// Validates that each entry lies in `[0, 1]` and the entries sum to one,
    /// both up to [`Real::normalization_tol`].
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let tol = T::normalization_tol();
        let err = |reason| DomainError::InvalidPopulations {
            a: a.as_f64(),
            b: b.as_f64(),
            c: c.as_f64(),
            reason,
        };
        for p in [a, b, c] {
            if !p.is_finite() {
                return Err(err("non-finite entry"));
            }
            if p < -tol || p > T::one() + tol {
                return Err(err("entry outside [0, 1]"));
            }
        }
        if ((a + b + c) - T::one()).abs() > tol {
            return Err(err("entries do not sum to 1"));
        }
        Ok(Self { a, b, c })
    }

    pub fn uniform() -> Self {
        let third = T::one() / T::lit(3.0);
        Self {
            a: third,
            b: third,
            c: third,
        }
    }

    /// All population in the lowest level.
    pub fn ground() -> Self {
        Self {
            a: T::zero(),
            b: T::zero(),
            c: T::one(),
        }
    }

    /// The many-pass mixed state `(p, p, 1 - 2p)` for a pinned b population `p`.
    pub fn pinned_fixed_point(p_b3: T) -> Result<Self> {
        check_pin(p_b3)?;
        Ok(Self {
            a: p_b3,
            b: p_b3,
            c: T::one() - (p_b3 + p_b3),
        })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.a, self.b, self.c]
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
    }
}

pub(crate) fn check_pin<T: Real>(p_b3: T) -> Result<()> {
    if !(p_b3 >= T::zero() && p_b3 < T::lit(0.5)) {
        return Err(DomainError::PinOutOfRange(p_b3.as_f64()));
    }
    Ok(())
}

/// Boltzmann occupation of three arbitrary energies at `temperature`.
///
/// Unlike [`boltzmann_populations`] this accepts degenerate energies.
pub fn boltzmann_weights<T: Real>(energies: [T; 3], temperature: T) -> Result<Populations<T>> {
    positive("temperature", temperature.as_f64())?;
    // shift by the minimum so the largest weight is exactly 1
    let floor = energies[0].min(energies[1]).min(energies[2]);
    let w = energies.map(|e| (-(e - floor) / temperature).exp());
    let z = w[0] + w[1] + w[2];
    Ok(Populations {
        a: w[0] / z,
        b: w[1] / z,
        c: w[2] / z,
    })
}

/// Thermal populations `p_α = exp(-eps_α / T) / Z`.
pub fn boltzmann_populations<T: Real>(
    levels: &LevelSystem<T>,
    temperature: T,
) -> Result<Populations<T>> {
    boltzmann_weights(levels.energies(), temperature)
}

/// Von Neumann entropy of `n_atoms` atoms in the diagonal state `pop`, in units of `k_B`.
pub fn internal_entropy<T: Real>(pop: &Populations<T>, n_atoms: T) -> T {
    -n_atoms * (x_ln_x(pop.a) + x_ln_x(pop.b) + x_ln_x(pop.c))
}

/// Mean internal energy `N Σ p_α eps_α`.
pub fn internal_energy<T: Real>(levels: &LevelSystem<T>, pop: &Populations<T>, n_atoms: T) -> T {
    n_atoms * (pop.a * levels.eps_a + pop.b * levels.eps_b + pop.c * levels.eps_c)
}

/// Lowest temperature at which the thermal b population equals `target`.
///
/// `p_b(T)` rises from zero at `T -> 0+`; it peaks at finite temperature when
/// `eps_ac / eps_bc > 2` and is monotone otherwise. The search stays on the
/// rising branch.
pub fn temperature_for_b_population<T: Real>(levels: &LevelSystem<T>, target: T) -> Result<T> {
    check_pin(target)?;
    if target <= T::zero() {
        return Err(DomainError::NonPositive {
            name: "target p_b",
            value: target.as_f64(),
        });
    }
    let bc = levels.gap_bc();
    let k = levels.gap_ac() / bc;
    let two = T::lit(2.0);
    // x = exp(-eps_bc / T); p_b = x / (1 + x + x^k) peaks at x^k = 1 / (k - 1)
    let x_peak = if k > two {
        (T::one() / (k - T::one())).powf(T::one() / k)
    } else {
        T::one()
    };
    let pb_of_x = |x: T| x / (T::one() + x + x.powf(k));
    let pb_peak = pb_of_x(x_peak);
    if target > pb_peak {
        return Err(DomainError::UnreachablePopulation {
            target: target.as_f64(),
            max: pb_peak.as_f64(),
        });
    }
    let (mut lo, mut hi) = (T::zero(), x_peak);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if pb_of_x(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = (lo + hi) / two;
    Ok(-bc / x.ln())
}
