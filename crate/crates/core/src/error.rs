use thiserror::Error;

/// Physical-domain violations raised by the models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("level ordering requires eps_a > eps_b > eps_c, got ({eps_a}, {eps_b}, {eps_c})")]
    LevelOrdering { eps_a: f64, eps_b: f64, eps_c: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("invalid populations ({a}, {b}, {c}): {reason}")]
    InvalidPopulations {
        a: f64,
        b: f64,
        c: f64,
        reason: &'static str,
    },

    #[error("pinned b population must lie in [0, 1/2), got {0}")]
    PinOutOfRange(f64),

    #[error("maser stage would drain level c below zero (p_c = {p_c}, required {required})")]
    MaserUnderflow { p_c: f64, required: f64 },

    #[error("compression requires V1 >= V2 > 0 and gamma > 1, got V1 = {v1}, V2 = {v2}, gamma = {gamma}")]
    Compression { v1: f64, v2: f64, gamma: f64 },

    #[error("compression ratio R must be >= 1, got {0}")]
    RatioBelowOne(f64),

    #[error("temperatures must satisfy {relation}, got T1 = {t1}, T3 = {t3}")]
    TemperatureOrdering {
        t1: f64,
        t3: f64,
        relation: &'static str,
    },

    #[error("efficiency eta0 must lie in [0, 1), got {0}")]
    EfficiencyRange(f64),

    #[error("laser gain factor at l = 1 is {0}, below threshold")]
    BelowThreshold(f64),

    #[error("efficiency denominator Q_in + w_l + q_m must be positive, got {0}")]
    NonPositiveDenominator(f64),

    #[error("{name} must be at least {min}, got {value}")]
    TooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },

    #[error("pass map did not converge in {passes} passes (last change {residual})")]
    NotConverged { passes: usize, residual: f64 },

    #[error("target b population {target} is unreachable (maximum {max})")]
    UnreachablePopulation { target: f64, max: f64 },

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = DomainError> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        Err(DomainError::NonFinite { name, value })
    } else if value <= 0.0 {
        Err(DomainError::NonPositive { name, value })
    } else {
        Ok(())
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        Err(DomainError::NonFinite { name, value })
    } else if value < 0.0 {
        Err(DomainError::Negative { name, value })
    } else {
        Ok(())
    }
}
