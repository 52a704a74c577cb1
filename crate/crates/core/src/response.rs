//! Frequency response of the coupled circuit.
//!
//! The heat-transfer function `f₁₂(ω)` is computed two ways: from the
//! factored normal-mode polynomials `u±` ([`transfer_f12`]) and from the trace
//! `(π/2)·Tr[I₁ g I₂ g†]` over the explicit 2×2 Green's function
//! ([`trace_f12`]). The second route is kept as an independent check of the
//! first.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{HeatError, Result};
use crate::model::{Branch, CircuitParams};
use crate::scalar::Real;

/// Which form of the normal-mode polynomial `u±(s)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TransferMode {
    /// Full cubic `(s³ + ω_c s²)RC + (ω± + ω_c)s + ω±ω_c`.
    #[default]
    ExactCubic,
    /// Linearized `(ω± + ω_c)s + ω±ω_c`, valid when the charge relaxes much
    /// faster than the flux.
    OverdampedLinear,
}

/// Which bath a spectral density or projector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bath {
    One,
    Two,
}

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2<T> {
    pub a11: Complex<T>,
    pub a12: Complex<T>,
    pub a21: Complex<T>,
    pub a22: Complex<T>,
}

impl<T: Real> Matrix2<T> {
    pub fn new(a11: Complex<T>, a12: Complex<T>, a21: Complex<T>, a22: Complex<T>) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    pub fn diag(d1: Complex<T>, d2: Complex<T>) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Matrix2::new(d1, z, z, d2)
    }

    pub fn zeros() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Matrix2::new(z, z, z, z)
    }

    /// Projector onto bath `alpha`'s node.
    pub fn projector(alpha: Bath) -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        match alpha {
            Bath::One => Matrix2::diag(one, zero),
            Bath::Two => Matrix2::diag(zero, one),
        }
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Matrix2::new(self.a11 * k, self.a12 * k, self.a21 * k, self.a22 * k)
    }

    pub fn trace(&self) -> Complex<T> {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex<T> {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix2::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    /// Closed-form inverse; `None` when the determinant vanishes or is not
    /// finite.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        let n = det.norm();
        if n == T::zero() || !n.is_finite() {
            return None;
        }
        let inv = det.inv();
        Some(Matrix2::new(
            self.a22 * inv,
            -self.a12 * inv,
            -self.a21 * inv,
            self.a11 * inv,
        ))
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real> Add for Matrix2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Matrix2::new(
            self.a11 + o.a11,
            self.a12 + o.a12,
            self.a21 + o.a21,
            self.a22 + o.a22,
        )
    }
}

impl<T: Real> Sub for Matrix2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Matrix2::new(
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        )
    }
}

impl<T: Real> Mul for Matrix2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Matrix2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Normal-mode polynomial `u±(s)`.
pub fn u_pm<T: Real>(
    s: Complex<T>,
    branch: Branch,
    p: &CircuitParams<T>,
    mode: TransferMode,
) -> Complex<T> {
    let wc = p.omega_c();
    let wb = p.omega_branch(branch);
    let linear = s * (wb + wc) + wb * wc;
    match mode {
        TransferMode::OverdampedLinear => linear,
        TransferMode::ExactCubic => s * s * (s + wc) * (p.r() * p.c()) + linear,
    }
}

/// Laplace transform of the (scalar, per-bath) dissipation kernel for
/// Lorentz–Drude baths: `γ(s) = (1/R)·ω_c/(s + ω_c)`.
pub fn dissipation_kernel<T: Real>(s: Complex<T>, p: &CircuitParams<T>) -> Complex<T> {
    let wc = p.omega_c();
    (s + wc).inv() * (wc / p.r())
}

/// Lorentz–Drude spectral density of one bath (the scalar in front of its
/// projector): `(2/π)(1/R)·ω ω_c²/(ω² + ω_c²)`.
pub fn spectral_density<T: Real>(omega: T, p: &CircuitParams<T>) -> T {
    let wc = p.omega_c();
    T::lit(2.0) / T::PI() / p.r() * omega * wc * wc / (omega * omega + wc * wc)
}

/// `g(s)⁻¹ = C s² + γ(s) s + L₀⁻¹` for the symmetric circuit.
pub fn green_inverse<T: Real>(s: Complex<T>, p: &CircuitParams<T>) -> Matrix2<T> {
    let a = p.a();
    let diag = s * s * p.c() + dissipation_kernel(s, p) * s + p.l() / a;
    let off = real(-p.m() / a);
    Matrix2::new(diag, off, off, diag)
}

/// Laplace-domain Green's function `g(s)` by explicit 2×2 inversion.
pub fn green_matrix<T: Real>(s: Complex<T>, p: &CircuitParams<T>) -> Result<Matrix2<T>> {
    green_inverse(s, p)
        .inverse()
        .filter(Matrix2::is_finite)
        .ok_or(HeatError::Singular {
            what: "g(s)^-1 is not invertible",
            re: s.re.to_f64_lossy(),
            im: s.im.to_f64_lossy(),
        })
}

/// Off-diagonal Green's function element
/// `g₁₂(s) = (M/A)·[(Cs² + L/A + (1/R)·sω_c/(s+ω_c))² − (M/A)²]⁻¹`.
pub fn g12<T: Real>(s: Complex<T>, p: &CircuitParams<T>) -> Result<Complex<T>> {
    let a = p.a();
    let ma = p.m() / a;
    let d = s * s * p.c() + p.l() / a + (s * p.omega_c() / (s + p.omega_c())) / p.r();
    let denom = d * d - ma * ma;
    let n = denom.norm();
    if n == T::zero() || !n.is_finite() {
        return Err(HeatError::Singular {
            what: "u+(s) u-(s) vanishes",
            re: s.re.to_f64_lossy(),
            im: s.im.to_f64_lossy(),
        });
    }
    Ok(denom.inv() * ma)
}

/// Heat-transfer function
/// `f₁₂(ω) = (2/π)·ω²ω_c⁴(RM/A)²/|u₊(iω)u₋(iω)|²`, evaluated as the square of
/// a ratio so that large `ω` does not overflow.
pub fn transfer_f12<T: Real>(omega: T, p: &CircuitParams<T>, mode: TransferMode) -> T {
    if omega == T::zero() || p.m() == T::zero() {
        return T::zero();
    }
    let s = Complex::new(T::zero(), omega);
    let up = u_pm(s, Branch::Plus, p, mode).norm();
    let um = u_pm(s, Branch::Minus, p, mode).norm();
    let wc = p.omega_c();
    let coupling = p.r() * p.m() / p.a();
    let ratio = (omega.abs() * wc / up) * (wc / um) * coupling;
    T::lit(2.0) / T::PI() * ratio * ratio
}

/// `f_{αα'}(ω) = (π/2)·Tr[I_α g(iω) I_α' g(iω)†]` from the explicit Green's
/// function.
pub fn trace_transfer<T: Real>(omega: T, p: &CircuitParams<T>, from: Bath, to: Bath) -> Result<T> {
    if !omega.is_finite() {
        return Err(HeatError::InvalidParameter {
            name: "omega",
            value: omega.to_f64_lossy(),
            reason: "must be finite",
        });
    }
    if omega == T::zero() {
        return Ok(T::zero());
    }
    let s = Complex::new(T::zero(), omega);
    let g = green_matrix(s, p)?;
    let j = real(spectral_density(omega, p));
    let i_from = Matrix2::projector(from).scale(j);
    let i_to = Matrix2::projector(to).scale(j);
    let tr = (i_from * g * i_to * g.adjoint()).trace();
    Ok(T::FRAC_PI_2() * tr.re)
}

/// Trace-formula route to `f₁₂`; see [`trace_transfer`].
pub fn trace_f12<T: Real>(omega: T, p: &CircuitParams<T>) -> Result<T> {
    trace_transfer(omega, p, Bath::One, Bath::Two)
}
