//! Circuit parameters, derived frequency scales, bath temperatures and the
//! overdamped regime classification.
//!
//! Units are reduced (`ħ = k_b = 1`) unless [`CircuitParams::with_constants`]
//! overrides them. Only the symmetric circuit (`R₁ = R₂`, `L₁ = L₂`,
//! `C₁ = C₂`) is modelled.

use std::fmt;

use crate::error::{HeatError, Result};
use crate::scalar::Real;

/// Default factor that turns `a ≪ b` into the predicate `a · factor ≤ b`.
pub const DEFAULT_SAFETY_FACTOR: f64 = 10.0;

fn require_positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(HeatError::InvalidParameter {
            name,
            value: value.to_f64_lossy(),
            reason: "must be finite and > 0",
        })
    }
}

/// Physical parameters of the symmetric coupled circuit plus the bath cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams<T> {
    r: T,
    l: T,
    c: T,
    m: T,
    omega_c: T,
    hbar: T,
    kb: T,
}

impl<T: Real> CircuitParams<T> {
    /// Builds a parameter set in reduced units (`ħ = k_b = 1`).
    pub fn new(r: T, l: T, c: T, m: T, omega_c: T) -> Result<Self> {
        let p = CircuitParams {
            r,
            l,
            c,
            m,
            omega_c,
            hbar: T::one(),
            kb: T::one(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds the circuit from its rates: `R = ω_d·L` and `C = 1/(R·γ)` with
    /// `γ = gamma_over_omega_d · ω_d`.
    pub fn from_rates(omega_d: T, gamma_over_omega_d: T, l: T, m: T, omega_c: T) -> Result<Self> {
        require_positive("omega_d", omega_d)?;
        require_positive("gamma_over_omega_d", gamma_over_omega_d)?;
        require_positive("L", l)?;
        let r = omega_d * l;
        let c = T::one() / (r * gamma_over_omega_d * omega_d);
        Self::new(r, l, c, m, omega_c)
    }

    /// Overrides `ħ` and `k_b`, e.g. for SI units.
    pub fn with_constants(mut self, hbar: T, kb: T) -> Result<Self> {
        self.hbar = hbar;
        self.kb = kb;
        self.validate()?;
        Ok(self)
    }

    /// Replaces the capacitance, keeping every other field.
    pub fn with_capacitance(mut self, c: T) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    /// Replaces the mutual inductance, keeping every other field.
    pub fn with_mutual_inductance(mut self, m: T) -> Result<Self> {
        self.m = m;
        self.validate()?;
        Ok(self)
    }

    /// Replaces the bath cutoff frequency, keeping every other field.
    pub fn with_cutoff(mut self, omega_c: T) -> Result<Self> {
        self.omega_c = omega_c;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        require_positive("R", self.r)?;
        require_positive("L", self.l)?;
        require_positive("C", self.c)?;
        require_positive("omega_c", self.omega_c)?;
        require_positive("hbar", self.hbar)?;
        require_positive("kb", self.kb)?;
        if !self.m.is_finite() || self.m < T::zero() {
            return Err(HeatError::InvalidParameter {
                name: "M",
                value: self.m.to_f64_lossy(),
                reason: "must be finite and >= 0",
            });
        }
        if self.m >= self.l {
            return Err(HeatError::DegenerateInductance {
                m: self.m.to_f64_lossy(),
                l: self.l.to_f64_lossy(),
            });
        }
        Ok(())
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn l(&self) -> T {
        self.l
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn omega_c(&self) -> T {
        self.omega_c
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn kb(&self) -> T {
        self.kb
    }

    /// `A = L² − M²`, the determinant of the inductance matrix.
    pub fn a(&self) -> T {
        self.l * self.l - self.m * self.m
    }

    /// Coupling ratio `M/L`.
    pub fn coupling(&self) -> T {
        self.m / self.l
    }

    /// Flux damping rate `ω_d = R/L`.
    pub fn omega_d(&self) -> T {
        self.r / self.l
    }

    /// Charge damping rate `γ = 1/(RC)`.
    pub fn gamma(&self) -> T {
        T::one() / (self.r * self.c)
    }

    /// Normal-mode damping rate `R/(L ± M)`; `Plus` pairs with `L + M`.
    pub fn omega_branch(&self, branch: Branch) -> T {
        match branch {
            Branch::Plus => self.r / (self.l + self.m),
            Branch::Minus => self.r / (self.l - self.m),
        }
    }
}

/// Selects one of the two normal modes `u₊` (inductance `L + M`) and `u₋`
/// (inductance `L − M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// Frequency scales derived from a [`CircuitParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales<T> {
    pub gamma: T,
    pub omega_0: T,
    pub omega_d: T,
    pub omega_plus: T,
    pub omega_minus: T,
    /// Single root of the linearized `u₊`.
    pub lambda_plus: T,
    /// Single root of the linearized `u₋`.
    pub lambda_minus: T,
}

impl<T: Real> DerivedScales<T> {
    pub fn omega(&self, branch: Branch) -> T {
        match branch {
            Branch::Plus => self.omega_plus,
            Branch::Minus => self.omega_minus,
        }
    }

    pub fn lambda(&self, branch: Branch) -> T {
        match branch {
            Branch::Plus => self.lambda_plus,
            Branch::Minus => self.lambda_minus,
        }
    }
}

/// Root of `(ω± + ω_c)s + ω±ω_c`.
pub fn overdamped_root<T: Real>(omega_branch: T, omega_c: T) -> T {
    -(omega_c * omega_branch) / (omega_c + omega_branch)
}

/// Computes every derived rate of the circuit. Parameter validity is enforced
/// when the [`CircuitParams`] is built, so this cannot fail.
pub fn derive_scales<T: Real>(p: &CircuitParams<T>) -> DerivedScales<T> {
    let omega_d = p.omega_d();
    let ratio = p.coupling();
    let omega_plus = omega_d / (T::one() + ratio);
    let omega_minus = omega_d / (T::one() - ratio);
    DerivedScales {
        gamma: p.gamma(),
        omega_0: T::one() / (p.l() * p.c()).sqrt(),
        omega_d,
        omega_plus,
        omega_minus,
        lambda_plus: overdamped_root(omega_plus, p.omega_c()),
        lambda_minus: overdamped_root(omega_minus, p.omega_c()),
    }
}

/// Temperatures of the two baths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathPair<T> {
    pub t1: T,
    pub t2: T,
    pub beta1: T,
    pub beta2: T,
}

impl<T: Real> BathPair<T> {
    /// Both temperatures must be finite and strictly positive.
    pub fn new(t1: T, t2: T, kb: T) -> Result<Self> {
        for (name, t) in [("T1", t1), ("T2", t2)] {
            if !(t.is_finite() && t > T::zero()) {
                return Err(HeatError::InvalidTemperature {
                    name,
                    value: t.to_f64_lossy(),
                });
            }
        }
        require_positive("kb", kb)?;
        Ok(BathPair {
            t1,
            t2,
            beta1: T::one() / (kb * t1),
            beta2: T::one() / (kb * t2),
        })
    }

    /// Uses the Boltzmann constant of `p`.
    pub fn for_circuit(t1: T, t2: T, p: &CircuitParams<T>) -> Result<Self> {
        Self::new(t1, t2, p.kb())
    }

    /// Same baths with the labels exchanged.
    pub fn swapped(&self) -> Self {
        BathPair {
            t1: self.t2,
            t2: self.t1,
            beta1: self.beta2,
            beta2: self.beta1,
        }
    }

    pub fn t_max(&self) -> T {
        self.t1.max(self.t2)
    }

    /// Thermal frequency `ω_th = k_b·max(T₁, T₂)/ħ`.
    pub fn omega_th(&self, p: &CircuitParams<T>) -> T {
        p.kb() * self.t_max() / p.hbar()
    }
}

/// Temperature range of a working point, following the overdamped regime
/// table: (a) `ω± ≪ γ ≪ ω_th`, (b) `ω± < ω_th ≪ γ`, (c) `ω_th < ω± ≪ γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    HighT,
    IntermediateT,
    LowT,
    Mixed,
    OutsideOverdamped,
}

impl RegimeTag {
    pub const ALL: [RegimeTag; 5] = [
        RegimeTag::HighT,
        RegimeTag::IntermediateT,
        RegimeTag::LowT,
        RegimeTag::Mixed,
        RegimeTag::OutsideOverdamped,
    ];

    /// Inverse of [`RegimeTag::as_str`].
    pub fn parse(s: &str) -> Option<RegimeTag> {
        Self::ALL.into_iter().find(|t| t.as_str() == s)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeTag::HighT => "high_t",
            RegimeTag::IntermediateT => "intermediate_t",
            RegimeTag::LowT => "low_t",
            RegimeTag::Mixed => "mixed",
            RegimeTag::OutsideOverdamped => "outside_overdamped",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One asymptotic inequality `a ≪ b`, with `margin = b/a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    pub satisfied: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeLabel {
    pub tag: RegimeTag,
    pub conditions: Vec<Condition>,
}

impl RegimeLabel {
    /// True when every inequality that keeps the cubic terms of `u±`
    /// negligible holds.
    pub fn overdamped_valid(&self) -> bool {
        self.conditions
            .iter()
            .filter(|c| c.name.starts_with("omega_th <<"))
            .all(|c| c.satisfied)
    }
}

fn much_less<T: Real>(name: &'static str, small: T, large: T, factor: T) -> Condition {
    Condition {
        name,
        satisfied: small * factor <= large,
        margin: (large / small).to_f64_lossy(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Row {
    High,
    Intermediate,
    Low,
}

fn row_of<T: Real>(omega: T, s: &DerivedScales<T>, factor: T) -> Option<Row> {
    let fast = s.gamma;
    if s.omega_minus * factor <= fast && fast * factor <= omega {
        Some(Row::High)
    } else if s.omega_minus < omega && omega * factor <= fast {
        Some(Row::Intermediate)
    } else if omega < s.omega_plus && s.omega_minus * factor <= fast {
        Some(Row::Low)
    } else {
        None
    }
}

/// Labels the working point with its temperature range.
///
/// `safety_factor` (≥ 1) operationalizes `≪`. The overdamped inequalities are
/// evaluated at the hotter bath. When both temperatures satisfy row (a) the
/// tag is `HighT`; otherwise any failed overdamped inequality gives
/// `OutsideOverdamped`. Temperatures falling in different rows, or between
/// rows, give `Mixed`.
pub fn classify_regime<T: Real>(
    p: &CircuitParams<T>,
    s: &DerivedScales<T>,
    b: &BathPair<T>,
    safety_factor: T,
) -> RegimeLabel {
    let factor = safety_factor.max(T::one());
    let omega_th = b.omega_th(p);
    let gamma = s.gamma;
    let cbrt = |x: T| x.cbrt();
    let conditions = vec![
        much_less("omega_th << gamma", omega_th, gamma, factor),
        much_less(
            "omega_th << (gamma*omega_plus)^(1/2)",
            omega_th,
            (gamma * s.omega_plus).sqrt(),
            factor,
        ),
        much_less(
            "omega_th << (gamma*omega_minus)^(1/2)",
            omega_th,
            (gamma * s.omega_minus).sqrt(),
            factor,
        ),
        much_less(
            "omega_th << (gamma*omega_plus*omega_c)^(1/3)",
            omega_th,
            cbrt(gamma * s.omega_plus * p.omega_c()),
            factor,
        ),
        much_less(
            "omega_th << (gamma*omega_minus*omega_c)^(1/3)",
            omega_th,
            cbrt(gamma * s.omega_minus * p.omega_c()),
            factor,
        ),
        much_less("omega_minus << gamma", s.omega_minus, gamma, factor),
        much_less("gamma << omega_th", gamma, omega_th, factor),
    ];

    let to_omega = |t: T| p.kb() * t / p.hbar();
    let row1 = row_of(to_omega(b.t1), s, factor);
    let row2 = row_of(to_omega(b.t2), s, factor);

    let mut label = RegimeLabel {
        tag: RegimeTag::Mixed,
        conditions,
    };
    label.tag = match (row1, row2) {
        (Some(Row::High), Some(Row::High)) => RegimeTag::HighT,
        _ if !label.overdamped_valid() => RegimeTag::OutsideOverdamped,
        (Some(Row::Intermediate), Some(Row::Intermediate)) => RegimeTag::IntermediateT,
        (Some(Row::Low), Some(Row::Low)) => RegimeTag::LowT,
        _ => RegimeTag::Mixed,
    };
    label
}
