use std::fmt;

use crate::closed_form::{
    heat_classical, heat_high_temp_total, heat_low_temp, heat_quantum, heat_total, log_term,
};
use crate::error::{HeatError, Result};
use crate::exact::{classical_integral, heat_exact};
use crate::model::{
    classify_regime, derive_scales, BathPair, CircuitParams, RegimeLabel, RegimeTag,
    DEFAULT_SAFETY_FACTOR,
};
use crate::quadrature::QuadratureConfig;
use crate::response::TransferMode;
use crate::scalar::Real;

/// How a [`HeatReport`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    LowTempAsymptotic,
    HighTempAsymptotic,
    ExactQuadrature,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ExactQuadrature,
        Method::ClosedForm,
        Method::LowTempAsymptotic,
        Method::HighTempAsymptotic,
    ];

    /// Short identifier used on the command line and in CSV headers.
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::LowTempAsymptotic => "low",
            Method::HighTempAsymptotic => "high",
            Method::ExactQuadrature => "exact",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s.trim().to_ascii_lowercase().as_str() {
            "closed" | "closed_form" | "closedform" => Some(Method::ClosedForm),
            "low" | "low_temp" | "lowtempasymptotic" => Some(Method::LowTempAsymptotic),
            "high" | "high_temp" | "hightempasymptotic" => Some(Method::HighTempAsymptotic),
            "exact" | "quadrature" | "exactquadrature" => Some(Method::ExactQuadrature),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs for [`assemble_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions<T> {
    pub safety_factor: T,
    pub quadrature: QuadratureConfig<T>,
    /// Form of `u±` used by `ExactQuadrature`.
    pub exact_mode: TransferMode,
}

impl<T: Real> Default for ReportOptions<T> {
    fn default() -> Self {
        ReportOptions {
            safety_factor: T::lit(DEFAULT_SAFETY_FACTOR),
            quadrature: QuadratureConfig::default(),
            exact_mode: TransferMode::ExactCubic,
        }
    }
}

/// Heat current entering the system from bath 1, split into its classical
/// and quantum parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatReport<T> {
    pub q_classical: T,
    pub q_quantum: T,
    pub q_total: T,
    pub method: Method,
    pub regime: RegimeLabel,
    pub validity_warnings: Vec<String>,
    /// Absolute error estimate, for quadrature results only.
    pub error_estimate: Option<T>,
}

/// Evaluates the heat current with `method` and attaches the regime label
/// and any validity warnings.
///
/// For `ClosedForm` the total comes from [`heat_total`], which avoids the
/// low-temperature cancellation between the two parts.
/// For `LowTempAsymptotic` and `HighTempAsymptotic` the classical part is the
/// closed form and the quantum part is whatever the asymptotic total leaves.
/// For `ExactQuadrature` a missed tolerance is reported as a warning with the
/// best available value instead of an error.
pub fn assemble_report<T: Real>(
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    method: Method,
    opts: &ReportOptions<T>,
) -> Result<HeatReport<T>> {
    let s = derive_scales(p);
    let regime = classify_regime(p, &s, b, opts.safety_factor);
    let mut warnings = Vec::new();
    match regime.tag {
        RegimeTag::OutsideOverdamped => {
            let failed: Vec<&str> = regime
                .conditions
                .iter()
                .filter(|c| c.name.starts_with("omega_th <<") && !c.satisfied)
                .map(|c| c.name)
                .collect();
            warnings.push(format!(
                "outside overdamped validity: {} (safety factor {})",
                failed.join(", "),
                opts.safety_factor
            ));
        }
        RegimeTag::HighT => warnings.push(
            "high-temperature row (gamma << omega_th): linearized u± is not accurate here"
                .to_string(),
        ),
        _ => {}
    }

    let omega_th = b.omega_th(p);
    let slowest = s.lambda_plus.abs();
    let fastest = s.lambda_minus.abs();
    let mut error_estimate = None;

    let (q_classical, q_quantum, q_total) = match method {
        Method::ClosedForm => {
            let cl = heat_classical(p, &s, b);
            (cl, heat_quantum(p, &s, b)?, heat_total(p, &s, b)?)
        }
        Method::LowTempAsymptotic => {
            if slowest / omega_th <= T::one() {
                warnings.push(format!(
                    "low-temperature law used with |lambda+|/omega_th = {} <= 1",
                    slowest / omega_th
                ));
            }
            let cl = heat_classical(p, &s, b);
            let total = heat_low_temp(p, b);
            (cl, total - cl, total)
        }
        Method::HighTempAsymptotic => {
            if fastest / omega_th >= T::one() {
                warnings.push(format!(
                    "high-temperature expansion used with |lambda-|/omega_th = {} >= 1",
                    fastest / omega_th
                ));
            }
            let cl = heat_classical(p, &s, b);
            (cl, log_term(p, &s, b), heat_high_temp_total(p, &s, b))
        }
        Method::ExactQuadrature => {
            let q = &opts.quadrature;
            let mode = opts.exact_mode;
            let (total, total_err) =
                recover(heat_exact(p, b, mode, q), q.rel_tol, &mut warnings, "total")?;
            let (integral, integral_err) = recover(
                classical_integral(p, mode, q),
                q.rel_tol,
                &mut warnings,
                "classical",
            )?;
            let cl = p.kb() * (b.t1 - b.t2) * integral;
            let cl_err = (p.kb() * (b.t1 - b.t2)).abs() * integral_err;
            error_estimate = Some(total_err + cl_err);
            (cl, total - cl, total)
        }
    };

    Ok(HeatReport {
        q_classical,
        q_quantum,
        q_total,
        method,
        regime,
        validity_warnings: warnings,
        error_estimate,
    })
}

/// Turns a missed quadrature tolerance into a warning and keeps the value.
fn recover<T: Real>(
    r: Result<crate::quadrature::Estimate<T>>,
    rel_tol: T,
    warnings: &mut Vec<String>,
    what: &str,
) -> Result<(T, T)> {
    match r {
        Ok(est) => Ok((est.value, est.abs_error)),
        Err(HeatError::ToleranceNotMet {
            value,
            achieved,
            requested,
        }) => {
            warnings.push(format!(
                "{what} quadrature error estimate {achieved:e} exceeds requested {requested:e} (rel_tol {rel_tol})"
            ));
            Ok((T::lit(value), T::lit(achieved)))
        }
        Err(e) => Err(e),
    }
}
