//! Complex digamma function and the digamma form of `π·coth`.
//!
//! `ψ` is evaluated by shifting `z` upward with `ψ(z+1) = ψ(z) + 1/z` until
//! `|z| ≥ 10`, then summing the Stirling-type asymptotic series
//! `ψ(z) ~ ln z − 1/(2z) − Σ B₂ₖ/(2k z²ᵏ)` with seven Bernoulli terms.
//! Points with `Re z < 0` go through the reflection formula
//! `ψ(z) = ψ(1 − z) − π cot(πz)`.

use num_complex::Complex;

use crate::error::{HeatError, Result};
use crate::scalar::Real;

/// Euler–Mascheroni constant.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Distance from a nonpositive integer below which `ψ` reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const SHIFT_THRESHOLD: f64 = 10.0;

/// `B₂ₖ/(2k)` for k = 1..7.
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma function `ψ(z) = Γ'(z)/Γ(z)` on the complex plane.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(HeatError::InvalidParameter {
            name: "z",
            value: f64::NAN,
            reason: "digamma argument must be finite",
        });
    }
    let tol = T::lit(POLE_TOLERANCE);
    if z.re <= tol && z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol {
        return Err(HeatError::Pole {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        });
    }
    if z.re < T::zero() {
        let pi = T::PI();
        let reflected = digamma_right(Complex::new(T::one(), T::zero()) - z);
        return Ok(reflected - cot(z * pi) * pi);
    }
    Ok(digamma_right(z))
}

/// Real digamma through the complex implementation.
pub fn digamma_real<T: Real>(x: T) -> Result<T> {
    digamma(Complex::new(x, T::zero())).map(|v| v.re)
}

/// `ψ` for `Re z ≥ 0`, away from the origin.
fn digamma_right<T: Real>(mut z: Complex<T>) -> Complex<T> {
    let one = T::one();
    let threshold = T::lit(SHIFT_THRESHOLD);
    let mut acc = Complex::new(T::zero(), T::zero());
    while z.norm() < threshold {
        acc = acc - z.inv();
        z.re = z.re + one;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    // Horner in 1/z² from the highest Bernoulli term down.
    let mut series = Complex::new(T::zero(), T::zero());
    for &c in ASYMPTOTIC.iter().rev() {
        series = (series + T::lit(c)) * inv2;
    }
    acc + z.ln() - inv * T::lit(0.5) - series
}

/// `cot(w)` without overflow for large `|Im w|`.
fn cot<T: Real>(w: Complex<T>) -> Complex<T> {
    let two = T::lit(2.0);
    let y = w.im;
    // Beyond this the hyperbolic ratio equals ±1 to machine precision.
    if y.abs() > T::lit(40.0) {
        return Complex::new(T::zero(), -y.signum());
    }
    let (s2x, c2x) = (two * w.re).sin_cos();
    let denom = (two * y).cosh() - c2x;
    Complex::new(s2x / denom, -(two * y).sinh() / denom)
}

/// `π·coth(x)` assembled from digamma values:
/// `π coth(x) = π/x + iψ(1 − ix/π) − iψ(1 + ix/π)`.
///
/// Only used to cross-check the digamma implementation against a direct
/// hyperbolic evaluation.
pub fn coth_via_digamma<T: Real>(x: T) -> Result<T> {
    if x == T::zero() {
        return Err(HeatError::DivideByZero("coth_via_digamma at x = 0"));
    }
    let pi = T::PI();
    let y = x / pi;
    let lower = digamma(Complex::new(T::one(), -y))?;
    let upper = digamma(Complex::new(T::one(), y))?;
    let i = Complex::new(T::zero(), T::one());
    let sum = i * (lower - upper);
    Ok(pi / x + sum.re)
}
