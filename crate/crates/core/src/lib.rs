//! Steady-state heat current between two magnetically coupled RLC circuits,
//! each damped by its own Lorentz–Drude (Caldeira–Leggett) bath.
//!
//! Three routes to the same current:
//!
//! - [`exact`]: adaptive quadrature of the frequency integrals, with either
//!   the full cubic or the overdamped linear response ([`TransferMode`]);
//! - [`closed_form`]: analytic classical and quantum parts in the overdamped
//!   regime, built on the complex [`special::digamma`];
//! - the low- and high-temperature asymptotics, also in [`closed_form`].
//!
//! All numerics are generic over the scalar ([`Real`], implemented for `f32`
//! and `f64`). The `*64` aliases below fix the scalar to `f64`, which is what
//! the accuracy targets assume.
//!
//! ```
//! use overdamped_heat::{assemble_report, BathPair64, CircuitParams64, Method, ReportOptions};
//!
//! // M/L = 1/2, ω_c = 5ω_d, γ = 10⁴ω_d
//! let p = CircuitParams64::from_rates(1.0, 1e4, 2.0, 1.0, 5.0).unwrap();
//! let b = BathPair64::for_circuit(2.0, 1.0, &p).unwrap();
//! let r = assemble_report(&p, &b, Method::ClosedForm, &ReportOptions::default()).unwrap();
//! assert!(r.q_total > 0.0);
//! assert!(r.q_quantum < 0.0);
//! ```

pub mod closed_form;
pub mod error;
pub mod exact;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod response;
pub mod scalar;
pub mod special;

pub use closed_form::{
    heat_classical, heat_high_temp_total, heat_low_temp, heat_quantum, heat_quantum_high_temp,
    heat_total, log_term,
};
pub use error::HeatError;
pub use exact::{classical_integral, heat_exact, quantum_integral};
pub use model::{
    classify_regime, derive_scales, Branch, Condition, RegimeLabel, RegimeTag,
    DEFAULT_SAFETY_FACTOR,
};
pub use num_complex::Complex;
pub use quadrature::Estimate;
pub use report::{assemble_report, HeatReport, Method};
pub use response::{g12, trace_f12, transfer_f12, u_pm, Bath, TransferMode};
pub use scalar::Real;
pub use special::{coth_via_digamma, digamma, digamma_real, EULER_MASCHERONI};

pub type CircuitParams64 = model::CircuitParams<f64>;
pub type DerivedScales64 = model::DerivedScales<f64>;
pub type BathPair64 = model::BathPair<f64>;
pub type HeatReport64 = report::HeatReport<f64>;
pub type QuadratureConfig64 = quadrature::QuadratureConfig<f64>;
pub type ReportOptions64 = report::ReportOptions<f64>;
pub type Complex64 = num_complex::Complex<f64>;

pub type CircuitParams32 = model::CircuitParams<f32>;
pub type DerivedScales32 = model::DerivedScales<f32>;
pub type BathPair32 = model::BathPair<f32>;
pub type HeatReport32 = report::HeatReport<f32>;

pub use model::{BathPair, CircuitParams, DerivedScales};
pub use quadrature::QuadratureConfig;
pub use report::ReportOptions;
