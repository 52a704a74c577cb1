//! Heat currents by direct quadrature of the frequency integrals.
//!
//! These are the reference values the closed forms are checked against:
//!
//! * total: `Q̇₁ = (ħ/2)∫₀^∞ ω f₁₂(ω)[coth(β₁ħω/2) − coth(β₂ħω/2)] dω`
//! * classical: `∫₀^∞ f₁₂(ω) dω`, so that `Q̇₁ᶜˡ = k_b(T₁ − T₂)·∫f₁₂`
//! * quantum: `(iħ/2π)∫_{−∞}^{∞} ω f₁₂(ω)[ψ(1 − ia₁ω) − ψ(1 − ia₂ω)] dω`
//!   with `a_α = β_αħ/2π`
//!
//! and `total = classical + quantum` holds identically.

use num_complex::Complex;

use crate::error::{HeatError, Result};
use crate::model::{derive_scales, BathPair, CircuitParams, DerivedScales};
use crate::quadrature::{
    graded_breakpoints, integrate, integrate_half_line, Estimate, QuadratureConfig,
};
use crate::response::{transfer_f12, TransferMode};
use crate::scalar::Real;
use crate::special::digamma;

/// `coth(β₁ħω/2) − coth(β₂ħω/2)`, written as `2n(β₁ħω) − 2n(β₂ħω)` with the
/// Bose factor `n(x) = 1/(eˣ − 1)` so that the large-`ω` tail is not lost to
/// cancellation against 1.
pub fn coth_difference<T: Real>(omega: T, b: &BathPair<T>, hbar: T) -> T {
    let two = T::lit(2.0);
    let bose = |beta: T| two / (beta * hbar * omega).exp_m1();
    bose(b.beta1) - bose(b.beta2)
}

/// Integrand of the total heat current. The `ω → 0` limit is zero
/// (`f₁₂ ~ ω²` against a `1/ω` coth difference).
pub fn heat_integrand<T: Real>(
    omega: T,
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    mode: TransferMode,
) -> T {
    if omega == T::zero() {
        return T::zero();
    }
    let f = transfer_f12(omega, p, mode);
    if f == T::zero() {
        return T::zero();
    }
    T::lit(0.5) * p.hbar() * omega * f * coth_difference(omega, b, p.hbar())
}

/// Frequencies where `f₁₂` has structure in the given mode.
fn response_scales<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    mode: TransferMode,
) -> Vec<T> {
    let mut scales = vec![
        s.lambda_plus.abs(),
        s.lambda_minus.abs(),
        s.omega_plus,
        s.omega_minus,
        p.omega_c(),
    ];
    if mode == TransferMode::ExactCubic {
        let g = s.gamma;
        scales.extend([
            g,
            (g * s.omega_plus).sqrt(),
            (g * s.omega_minus).sqrt(),
            (g * (s.omega_plus + p.omega_c())).sqrt(),
            (g * (s.omega_minus + p.omega_c())).sqrt(),
        ]);
    }
    scales
}

/// Bound on `∫_cut^∞` of the total-current integrand. `sup ω f₁₂` beyond the
/// cut is estimated on a geometric grid and doubled; the coth difference is
/// bounded by the hotter bath's Bose factor.
fn tail_bound<T: Real>(
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    mode: TransferMode,
    cut: T,
    far: T,
) -> T {
    let hbar = p.hbar();
    let mut sup = T::zero();
    let mut w = cut;
    let step = T::lit(10f64.powf(0.125));
    while w <= far {
        sup = sup.max(w * transfer_f12(w, p, mode));
        w = w * step;
    }
    let rate = b.beta1.min(b.beta2) * hbar;
    let x = rate * cut;
    let decay = (-x).exp() / (-(-x).exp_m1());
    T::lit(2.0) * T::lit(0.5) * hbar * sup * T::lit(2.0) * decay / rate
}

fn check_tolerance<T: Real>(
    est: Estimate<T>,
    extra_error: T,
    q: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    let total_error = est.abs_error + extra_error;
    let target = q.target(est.value);
    if total_error > target {
        return Err(HeatError::ToleranceNotMet {
            value: est.value.to_f64_lossy(),
            achieved: total_error.to_f64_lossy(),
            requested: target.to_f64_lossy(),
        });
    }
    Ok(Estimate {
        abs_error: total_error,
        ..est
    })
}

/// Total steady-state heat current entering the system from bath 1.
///
/// The integral is truncated at `tail_cut_multiplier · max(ω_th, |λ₋|)`; the
/// bound on the discarded tail is added to the error estimate.
pub fn heat_exact<T: Real>(
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    mode: TransferMode,
    q: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    q.validate()?;
    let s = derive_scales(p);
    let omega_th = b.omega_th(p);
    let cut = q.tail_cut_multiplier * omega_th.max(s.lambda_minus.abs());

    let mut scales = response_scales(p, &s, mode);
    scales.extend([p.kb() * b.t1 / p.hbar(), p.kb() * b.t2 / p.hbar()]);
    scales.retain(|&w| w < cut);
    let points = graded_breakpoints(&scales, cut);

    let est = integrate(
        |w| heat_integrand(w, p, b, mode),
        &points,
        q.rel_tol,
        q.abs_tol,
        q.max_subdivisions,
    )?;
    let far = response_scales(p, &s, mode)
        .into_iter()
        .fold(cut * T::lit(1e3), |acc, w| acc.max(T::lit(10.0) * w));
    let tail = tail_bound(p, b, mode, cut, far);
    check_tolerance(est, tail, q)
}

/// `∫₀^∞ f₁₂(ω) dω`; the classical current is `k_b(T₁ − T₂)` times this.
pub fn classical_integral<T: Real>(
    p: &CircuitParams<T>,
    mode: TransferMode,
    q: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    q.validate()?;
    let s = derive_scales(p);
    let scales = response_scales(p, &s, mode);
    let split = T::lit(10.0) * scales.iter().copied().fold(T::zero(), T::max);
    let est = integrate_half_line(
        |w| transfer_f12(w, p, mode),
        &scales,
        split,
        q.rel_tol,
        q.abs_tol,
        q.max_subdivisions,
    )?;
    check_tolerance(est, T::zero(), q)
}

/// Integrand of the quantum contribution on the real axis,
/// `(iħ/2π)·ω f₁₂(ω)[ψ(1 − ia₁ω) − ψ(1 − ia₂ω)]`.
///
/// Satisfies `h(−ω) = conj(h(ω))`, so the full-line integral is
/// `2·Re ∫₀^∞ h`.
pub fn quantum_integrand<T: Real>(
    omega: T,
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    mode: TransferMode,
) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    if omega == T::zero() {
        return Ok(zero);
    }
    let f = transfer_f12(omega, p, mode);
    if f == T::zero() || b.beta1 == b.beta2 {
        return Ok(zero);
    }
    let hbar = p.hbar();
    let two_pi = T::lit(2.0) * T::PI();
    let a1 = b.beta1 * hbar / two_pi;
    let a2 = b.beta2 * hbar / two_pi;
    let psi1 = digamma(Complex::new(T::one(), -a1 * omega))?;
    let psi2 = digamma(Complex::new(T::one(), -a2 * omega))?;
    let prefactor = Complex::new(T::zero(), hbar / two_pi * omega * f);
    Ok(prefactor * (psi1 - psi2))
}

/// Quantum contribution by quadrature of [`quantum_integrand`].
pub fn quantum_integral<T: Real>(
    p: &CircuitParams<T>,
    b: &BathPair<T>,
    mode: TransferMode,
    q: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    q.validate()?;
    let s = derive_scales(p);
    let mut scales = response_scales(p, &s, mode);
    let two_pi = T::lit(2.0) * T::PI();
    for t in [b.t1, b.t2] {
        let w = p.kb() * t / p.hbar();
        scales.extend([w, two_pi * w]);
    }
    let split = T::lit(10.0) * scales.iter().copied().fold(T::zero(), T::max);
    let two = T::lit(2.0);
    let est = integrate_half_line(
        |w| match quantum_integrand(w, p, b, mode) {
            Ok(h) => two * h.re,
            Err(_) => T::nan(),
        },
        &scales,
        split,
        q.rel_tol,
        q.abs_tol,
        q.max_subdivisions,
    )?;
    check_tolerance(est, T::zero(), q)
}
