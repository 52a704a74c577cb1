use thiserror::Error;

/// Errors produced by the heat-current routines.
///
/// Numeric payloads are widened to `f64` so the error type does not depend on
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeatError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate inductance matrix: M < L required (M = {m}, L = {l})")]
    DegenerateInductance { m: f64, l: f64 },

    #[error("invalid temperature {name} = {value}: temperatures must be finite and > 0")]
    InvalidTemperature { name: &'static str, value: f64 },

    #[error("digamma pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("division by zero: {0}")]
    DivideByZero(&'static str),

    #[error("singular response at s = {re} + {im}i: {what}")]
    Singular {
        what: &'static str,
        re: f64,
        im: f64,
    },

    #[error("integrand not finite at omega = {omega}")]
    NonFiniteIntegrand { omega: f64 },

    #[error(
        "quadrature tolerance not met: value {value}, error estimate {achieved} > requested {requested}"
    )]
    ToleranceNotMet {
        value: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("invalid quadrature configuration: {0}")]
    InvalidQuadrature(&'static str),
}

impl HeatError {
    /// True for errors caused by bad inputs rather than numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            HeatError::InvalidParameter { .. }
                | HeatError::DegenerateInductance { .. }
                | HeatError::InvalidTemperature { .. }
                | HeatError::InvalidQuadrature(_)
        )
    }
}

pub type Result<T, E = HeatError> = std::result::Result<T, E>;
