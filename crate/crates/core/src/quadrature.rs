//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol·|I|)`. Panels are kept in positional
//! order and summed left to right so results are reproducible bit for bit.

use crate::error::{HeatError, Result};
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_463_316_207,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Settings for the frequency integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    /// Upper limit of thermally cut integrals, in units of the largest
    /// relevant frequency (`ω_th` or `|λ₋|`).
    pub tail_cut_multiplier: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: T::lit(1e-9),
            abs_tol: T::lit(1e-30),
            max_subdivisions: 2000,
            tail_cut_multiplier: T::lit(60.0),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() && self.rel_tol.is_finite()) {
            return Err(HeatError::InvalidQuadrature("rel_tol must be > 0"));
        }
        if !(self.abs_tol >= T::zero() && self.abs_tol.is_finite()) {
            return Err(HeatError::InvalidQuadrature("abs_tol must be >= 0"));
        }
        if self.max_subdivisions < 10 {
            return Err(HeatError::InvalidQuadrature(
                "max_subdivisions must be >= 10",
            ));
        }
        if !(self.tail_cut_multiplier >= T::lit(10.0) && self.tail_cut_multiplier.is_finite()) {
            return Err(HeatError::InvalidQuadrature(
                "tail_cut_multiplier must be >= 10",
            ));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Error bound the integral must meet for a result of size `value`.
    pub fn target(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub abs_error: T,
    pub evaluations: usize,
    pub intervals: usize,
}

impl<T: Real> Estimate<T> {
    pub fn zero() -> Self {
        Estimate {
            value: T::zero(),
            abs_error: T::zero(),
            evaluations: 0,
            intervals: 0,
        }
    }

    pub fn relative_error(&self) -> T {
        if self.value == T::zero() {
            self.abs_error
        } else {
            self.abs_error / self.value.abs()
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    refinable: bool,
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut e = err.abs();
    if res_asc != T::zero() && e != T::zero() {
        let scale = (T::lit(200.0) * e / res_asc).powf(T::lit(1.5));
        e = if scale < T::one() {
            res_asc * scale
        } else {
            res_asc
        };
    }
    let eps50 = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / eps50 {
        e = e.max(eps50 * res_abs);
    }
    e
}

fn gauss_kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Result<(T, T)> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let mut eval = |x: T| -> Result<T> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(HeatError::NonFiniteIntegrand {
                omega: x.to_f64_lossy(),
            })
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut f1 = [T::zero(); 10];
    let mut f2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let v1 = eval(center - dx)?;
        let v2 = eval(center + dx)?;
        f1[j] = v1;
        f2[j] = v2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (v1 + v2);
        res_abs = res_abs + w * (v1.abs() + v2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (v1 + v2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let scale = half_len.abs();
    let value = res_k * half_len;
    let err = rescale_error((res_k - res_g) * half_len, res_abs * scale, res_asc * scale);
    Ok((value, err))
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per consecutive breakpoint pair.
///
/// Returns [`HeatError::ToleranceNotMet`] (carrying the best value) when
/// `max_subdivisions` panels do not reach the requested accuracy.
pub fn integrate<T, F>(
    mut f: F,
    breakpoints: &[T],
    rel_tol: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut points: Vec<T> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite())
        .collect();
    points.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    points.dedup();
    if points.len() < 2 {
        return Ok(Estimate::zero());
    }

    let mut evaluations = 0usize;
    let mut panels = Vec::with_capacity(max_subdivisions.max(points.len()));
    for w in points.windows(2) {
        let (value, error) = gauss_kronrod(&mut f, w[0], w[1])?;
        evaluations += 21;
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
            refinable: true,
        });
    }

    loop {
        let total = panels.iter().fold(T::zero(), |acc, p| acc + p.value);
        let err = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        let target = abs_tol.max(rel_tol * total.abs());
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.refinable)
            .max_by(|(_, x), (_, y)| x.error.partial_cmp(&y.error).expect("finite errors"))
            .map(|(i, _)| i);

        let done = err <= target;
        let exhausted = panels.len() >= max_subdivisions || worst.is_none();
        if done || exhausted {
            let estimate = Estimate {
                value: total,
                abs_error: err,
                evaluations,
                intervals: panels.len(),
            };
            if done {
                return Ok(estimate);
            }
            return Err(HeatError::ToleranceNotMet {
                value: total.to_f64_lossy(),
                achieved: err.to_f64_lossy(),
                requested: target.to_f64_lossy(),
            });
        }

        let i = worst.expect("checked above");
        let Panel { a, b, .. } = panels[i];
        let mid = T::lit(0.5) * (a + b);
        let tiny = T::lit(100.0) * T::epsilon() * a.abs().max(b.abs());
        if !(mid > a && mid < b) || b - a <= tiny {
            panels[i].refinable = false;
            continue;
        }
        let (v1, e1) = gauss_kronrod(&mut f, a, mid)?;
        let (v2, e2) = gauss_kronrod(&mut f, mid, b)?;
        evaluations += 42;
        panels[i] = Panel {
            a,
            b: mid,
            value: v1,
            error: e1,
            refinable: true,
        };
        panels.insert(
            i + 1,
            Panel {
                a: mid,
                b,
                value: v2,
                error: e2,
                refinable: true,
            },
        );
    }
}

/// Integrates `f` over `[0, ∞)`.
///
/// `[0, split]` is integrated directly; `[split, ∞)` through `ω = split/t`,
/// which turns an `O(ω⁻²)` tail into a bounded integrand on `t ∈ (0, 1]`.
/// Both halves share one adaptive pass, so the tolerance applies to the sum.
/// `scales` are frequencies where the integrand has structure; they become
/// initial breakpoints together with a logarithmic grid.
pub fn integrate_half_line<T, F>(
    mut f: F,
    scales: &[T],
    split: T,
    rel_tol: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let one = T::one();
    let two = T::lit(2.0);
    // x ∈ [0, 1]: ω = split·x;  x ∈ [1, 2): ω = split/(2 − x).
    let mapped = |x: T, f: &mut F| -> T {
        if x <= one {
            split * f(split * x)
        } else {
            let t = two - x;
            if t <= T::zero() {
                return T::zero();
            }
            let omega = split / t;
            let v = f(omega);
            if v == T::zero() {
                T::zero()
            } else {
                v * split / (t * t)
            }
        }
    };
    let omega_points = graded_breakpoints(scales, split);
    let mut xs: Vec<T> = omega_points
        .iter()
        .map(|&w| {
            if w <= split {
                w / split
            } else {
                two - split / w
            }
        })
        .collect();
    xs.push(T::zero());
    xs.push(one);
    xs.push(T::lit(1.5));
    xs.push(T::lit(1.9));
    xs.push(two);
    integrate(
        |x| mapped(x, &mut f),
        &xs,
        rel_tol,
        abs_tol,
        max_subdivisions,
    )
}

/// Breakpoints on `(0, upper]`: every positive scale plus a grid of three
/// points per decade reaching two decades below the smallest scale.
pub fn graded_breakpoints<T: Real>(scales: &[T], upper: T) -> Vec<T> {
    let mut positive: Vec<T> = scales
        .iter()
        .copied()
        .filter(|s| s.is_finite() && *s > T::zero())
        .collect();
    positive.push(upper);
    let lo = positive.iter().copied().fold(upper, T::min) * T::lit(1e-2);
    let hi = positive.iter().copied().fold(upper, T::max);
    let mut points = positive;
    let step = T::lit(10f64.powf(1.0 / 3.0));
    let mut x = lo;
    while x < hi {
        points.push(x);
        x = x * step;
    }
    points.push(T::zero());
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    points.dedup();
    points
}
