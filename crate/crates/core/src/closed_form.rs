//! Analytic heat currents in the overdamped regime, where `u±` is replaced by
//! its linear part with single root `λ±`.

use crate::error::Result;
use crate::model::{BathPair, CircuitParams, DerivedScales};
use crate::scalar::Real;
use crate::special::digamma_real;

/// Temperature ratio above which `log(T₂/T₁)` is taken as a difference of
/// logarithms.
const LOG_RATIO_SPLIT: f64 = 1e6;

/// `log(T₂/T₁)`, exactly odd under the exchange of its arguments.
fn log_ratio<T: Real>(t2: T, t1: T) -> T {
    if t2 < t1 {
        return -log_ratio(t1, t2);
    }
    let ratio = t2 / t1;
    if ratio > T::lit(LOG_RATIO_SPLIT) || !ratio.is_normal() {
        t2.ln() - t1.ln()
    } else {
        ratio.ln()
    }
}

/// Smallest `ħ|λ|/(2πk_bT)` for which [`heat_total`] sums the large-argument
/// series instead of adding the classical and quantum parts.
pub const SERIES_MIN_ARGUMENT: f64 = 10.0;

/// `−B₂ₖ/(2k)` for `k = 2..=13`.
const SERIES_COEFFS: [f64; 12] = [
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
    691.0 / 32760.0,
    -1.0 / 12.0,
    3617.0 / 8160.0,
    -43867.0 / 14364.0,
    174611.0 / 6600.0,
    -854513.0 / 3036.0,
    236364091.0 / 65520.0,
    -8553103.0 / 156.0,
];

/// `ω_c/(ω_c + ω_d)`, the finite-cutoff reduction factor.
fn cutoff_weight<T: Real>(p: &CircuitParams<T>, s: &DerivedScales<T>) -> T {
    p.omega_c() / (p.omega_c() + s.omega_d)
}

/// Classical part, proportional to `T₁ − T₂`:
/// `(k_b/2)(T₁−T₂)(M/L)²·ω_c/(ω_c+ω_d)·λ₊λ₋/ω_d`.
pub fn heat_classical<T: Real>(p: &CircuitParams<T>, s: &DerivedScales<T>, b: &BathPair<T>) -> T {
    let ratio = p.coupling();
    T::lit(0.5)
        * p.kb()
        * (b.t1 - b.t2)
        * ratio
        * ratio
        * cutoff_weight(p, s)
        * (s.lambda_plus * s.lambda_minus / s.omega_d)
}

/// The temperature-logarithm term `(ħ/π)(M/L)²(λ₊λ₋/ω_d)²·log(T₂/T₁)`.
///
/// It survives in the quantum contribution even when both temperatures are
/// high compared with `|λ±|`.
pub fn log_term<T: Real>(p: &CircuitParams<T>, s: &DerivedScales<T>, b: &BathPair<T>) -> T {
    let ratio = p.coupling();
    let rate = s.lambda_plus * s.lambda_minus / s.omega_d;
    p.hbar() / T::PI() * ratio * ratio * rate * rate * log_ratio(b.t2, b.t1)
}

/// Quantum part: the logarithm term plus
/// `(ħ/4π)·ω_c/(ω_c+ω_d)·(M/L)·{λ₊²[ψ(1−β₁ħλ₊/2π) − ψ(1−β₂ħλ₊/2π)] − (same for λ₋)}`.
///
/// Every digamma argument is real and greater than 1 because `λ± < 0`.
pub fn heat_quantum<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    b: &BathPair<T>,
) -> Result<T> {
    let hbar = p.hbar();
    let two_pi = T::lit(2.0) * T::PI();
    let digamma_gap = |lambda: T| -> Result<T> {
        let x1 = T::one() - b.beta1 * hbar * lambda / two_pi;
        let x2 = T::one() - b.beta2 * hbar * lambda / two_pi;
        Ok(digamma_real(x1)? - digamma_real(x2)?)
    };
    let lp = s.lambda_plus;
    let lm = s.lambda_minus;
    let braces = lp * lp * digamma_gap(lp)? - lm * lm * digamma_gap(lm)?;
    let prefactor = hbar / (T::lit(4.0) * T::PI()) * cutoff_weight(p, s) * p.coupling();
    Ok(log_term(p, s, b) + prefactor * braces)
}

/// Closed-form total, `heat_classical + heat_quantum`.
///
/// When every `y = ħ|λ±|/(2πk_bT)` is at least [`SERIES_MIN_ARGUMENT`] the two
/// parts cancel to many digits. The logarithmic, `1/y` and `1/y²` terms of
/// `ψ(1+y)` then cancel analytically, and the total is summed from the rest
/// of the asymptotic series,
/// `(ħ/4π)·ω_c/(ω_c+ω_d)·(M/L)·Σ_{k≥2} −B₂ₖ/(2k)·[λ₊²(y₁₊^{−2k} − y₂₊^{−2k}) − (same for λ₋)]`,
/// whose first term is [`heat_low_temp`].
pub fn heat_total<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    b: &BathPair<T>,
) -> Result<T> {
    let hbar = p.hbar();
    let two_pi = T::lit(2.0) * T::PI();
    let y = |beta: T, lambda: T| beta * hbar * lambda.abs() / two_pi;
    let y_min = y(
        b.beta1.min(b.beta2),
        s.lambda_plus.abs().min(s.lambda_minus.abs()),
    );
    if y_min.is_nan() || y_min < T::lit(SERIES_MIN_ARGUMENT) {
        return Ok(heat_classical(p, s, b) + heat_quantum(p, s, b)?);
    }
    let branch = |lambda: T, k: i32| {
        let y1 = y(b.beta1, lambda);
        let y2 = y(b.beta2, lambda);
        lambda * lambda * (y1.powi(-2 * k) - y2.powi(-2 * k))
    };
    let mut sum = T::zero();
    // Smallest terms first.
    for (i, &c) in SERIES_COEFFS.iter().enumerate().rev() {
        let k = i as i32 + 2;
        sum = sum + T::lit(c) * (branch(s.lambda_plus, k) - branch(s.lambda_minus, k));
    }
    let prefactor = hbar / (T::lit(4.0) * T::PI()) * cutoff_weight(p, s) * p.coupling();
    Ok(prefactor * sum)
}

/// Low-temperature law `(2/15)(π/ħ)³(M/L)²(k_b⁴/ω_d²)(T₁⁴ − T₂⁴)`,
/// independent of the cutoff. Accurate when `ω_th ≪ |λ±|`.
pub fn heat_low_temp<T: Real>(p: &CircuitParams<T>, b: &BathPair<T>) -> T {
    let ratio = p.coupling();
    let omega_d = p.omega_d();
    let pi_over_hbar = T::PI() / p.hbar();
    let kb2 = p.kb() * p.kb();
    let t1 = b.t1 * b.t1;
    let t2 = b.t2 * b.t2;
    T::lit(2.0 / 15.0) * pi_over_hbar.powi(3) * ratio * ratio * kb2 * kb2 / (omega_d * omega_d)
        * (t1 * t1 - t2 * t2)
}

/// Quantum part expanded for `|λ±| ≪ ω_th`: the logarithm term plus
/// `(ħ²/48k_b)·ω_c/(ω_c+ω_d)·(M/L)(λ₊³ − λ₋³)(1/T₂ − 1/T₁)`.
pub fn heat_quantum_high_temp<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    b: &BathPair<T>,
) -> T {
    let hbar = p.hbar();
    let cubes = s.lambda_plus.powi(3) - s.lambda_minus.powi(3);
    let correction = hbar * hbar / (T::lit(48.0) * p.kb())
        * cutoff_weight(p, s)
        * p.coupling()
        * cubes
        * (b.t2.recip() - b.t1.recip());
    log_term(p, s, b) + correction
}

/// Leading high-temperature total: classical part plus the logarithm term.
pub fn heat_high_temp_total<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    b: &BathPair<T>,
) -> T {
    heat_classical(p, s, b) + log_term(p, s, b)
}
