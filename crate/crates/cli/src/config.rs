//! Line-oriented `key = value` sweep configuration.
//!
//! ```text
//! # exact against closed form over the charge rate
//! sweep = gamma_over_omega_d
//! start = 1
//! stop = 1e5
//! points = 26
//! spacing = log
//! pairs = 2:1, 3:1, 1:0.5
//! methods = exact, closed
//! ```
//!
//! Every key has a default (the `fig2` preset). A preset or the defaults form
//! the bottom layer and the user's text is applied on top; a key may appear at
//! most once per layer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use overdamped_heat::{
    CircuitParams64, Method, QuadratureConfig64, TransferMode, DEFAULT_SAFETY_FACTOR,
};

use crate::error::ConfigError;

const KEYS: &[&str] = &[
    "sweep",
    "start",
    "stop",
    "points",
    "spacing",
    "R",
    "L",
    "C",
    "M",
    "omega_c",
    "gamma_over_omega_d",
    "hbar",
    "kb",
    "T1",
    "T2",
    "pairs",
    "t2_over_t1",
    "methods",
    "mode",
    "safety_factor",
    "rel_tol",
];

/// Keys that replace each other across layers and conflict within one.
const EXCLUSIVE: &[(&[&str], &[&str])] = &[
    (&["C"], &["gamma_over_omega_d"]),
    (&["pairs"], &["T1", "T2"]),
];

const FIG2: &str = "\
sweep = gamma_over_omega_d
start = 1
stop = 1e5
points = 26
spacing = log
R = 2
L = 2
M = 1
omega_c = 5
gamma_over_omega_d = 1e4
hbar = 1
kb = 1
pairs = 2:1, 3:1, 1:0.5
methods = exact, closed
mode = exact_cubic
";

const FIG3: &str = "\
sweep = T1
start = 1e-4
stop = 10
points = 31
spacing = log
gamma_over_omega_d = 1e8
pairs = 1:0.5
t2_over_t1 = 0.5
methods = closed, low
";

const FIG4: &str = "\
sweep = T2
start = 0.1
stop = 1000
points = 41
spacing = log
gamma_over_omega_d = 1e8
pairs = 1:1, 5:1, 10:1
methods = closed, high
";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    /// Keys this preset sets on top of the defaults.
    pub fn text(&self) -> &'static str {
        match self {
            Preset::Fig2 => "",
            Preset::Fig3 => FIG3,
            Preset::Fig4 => FIG4,
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset {s:?} (expected fig2, fig3 or fig4)"))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    GammaOverOmegaD,
    T1,
    T2,
}

impl SweepVariable {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVariable::GammaOverOmegaD => "gamma_over_omega_d",
            SweepVariable::T1 => "T1",
            SweepVariable::T2 => "T2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    /// Grid values in increasing order; both endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == last {
                    return self.stop;
                }
                // Weighted sums keep decade points exact on log grids.
                let (a, b) = ((last - i) as f64, i as f64);
                let n = last as f64;
                match self.spacing {
                    Spacing::Linear => (a * self.start + b * self.stop) / n,
                    Spacing::Log => {
                        10f64.powf((a * self.start.log10() + b * self.stop.log10()) / n)
                    }
                }
            })
            .collect()
    }
}

/// How the capacitance is fixed when it is not the swept quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Capacitance {
    Farads(f64),
    GammaOverOmegaD(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitSpec {
    pub r: f64,
    pub l: f64,
    pub m: f64,
    pub omega_c: f64,
    pub hbar: f64,
    pub kb: f64,
    pub capacitance: Capacitance,
}

impl CircuitSpec {
    /// Circuit with `γ/ω_d` overridden when given.
    pub fn params(
        &self,
        gamma_over_omega_d: Option<f64>,
    ) -> overdamped_heat::error::Result<CircuitParams64> {
        let omega_d = self.r / self.l;
        let c = match (gamma_over_omega_d, self.capacitance) {
            (Some(g), _) | (None, Capacitance::GammaOverOmegaD(g)) => 1.0 / (self.r * g * omega_d),
            (None, Capacitance::Farads(c)) => c,
        };
        CircuitParams64::new(self.r, self.l, c, self.m, self.omega_c)?
            .with_constants(self.hbar, self.kb)
    }
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub preset: Option<Preset>,
    pub variable: SweepVariable,
    pub grid: Grid,
    pub circuit: CircuitSpec,
    /// `(T1, T2)` per series. The swept component is ignored, as is `T2`
    /// when `t2_over_t1` is set.
    pub pairs: Vec<(f64, f64)>,
    pub t2_over_t1: Option<f64>,
    pub methods: Vec<Method>,
    pub mode: TransferMode,
    pub safety_factor: f64,
    pub rel_tol: f64,
}

impl SweepSpec {
    pub fn quadrature(&self) -> QuadratureConfig64 {
        QuadratureConfig64::default().with_rel_tol(self.rel_tol)
    }

    /// Temperatures of series `k` at swept value `x`.
    pub fn temperatures(&self, k: usize, x: f64) -> (f64, f64) {
        let (t1, t2) = self.pairs[k];
        let (t1, t2) = match self.variable {
            SweepVariable::GammaOverOmegaD => (t1, t2),
            SweepVariable::T1 => (x, t2),
            SweepVariable::T2 => (t1, x),
        };
        match self.t2_over_t1 {
            Some(ratio) => (t1, ratio * t1),
            None => (t1, t2),
        }
    }

    /// Series label such as `2:1`, with `*` for a swept or tied temperature.
    pub fn series_label(&self, k: usize) -> String {
        let (t1, t2) = self.pairs[k];
        let t1 = if self.variable == SweepVariable::T1 {
            "*".to_string()
        } else {
            t1.to_string()
        };
        let t2 = if self.variable == SweepVariable::T2 || self.t2_over_t1.is_some() {
            "*".to_string()
        } else {
            t2.to_string()
        };
        format!("{t1}:{t2}")
    }
}

/// Parses `text` on top of the defaults.
pub fn parse_config(text: &str) -> Result<SweepSpec, ConfigError> {
    parse_with_preset(None, text)
}

/// Parses `text` on top of `preset` (or the defaults).
pub fn parse_with_preset(preset: Option<Preset>, text: &str) -> Result<SweepSpec, ConfigError> {
    let mut merged: BTreeMap<&'static str, Entry> = BTreeMap::new();
    let layers = [FIG2, preset.map_or("", |p| p.text()), text];
    for (depth, layer) in layers.iter().enumerate() {
        let entries = parse_layer(layer, depth == layers.len() - 1)?;
        for (group_a, group_b) in EXCLUSIVE {
            let has_a = group_a.iter().any(|k| entries.contains_key(k));
            let has_b = group_b.iter().any(|k| entries.contains_key(k));
            if has_a && has_b {
                return Err(ConfigError::Invalid(format!(
                    "{} and {} cannot both be set",
                    group_a.join("/"),
                    group_b.join("/")
                )));
            }
            let cleared = if has_a {
                *group_b
            } else if has_b {
                *group_a
            } else {
                &[]
            };
            for k in cleared {
                merged.remove(k);
            }
        }
        merged.extend(entries);
    }
    let mut spec = build(&merged)?;
    spec.preset = preset;
    Ok(spec)
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

fn parse_layer(text: &str, user: bool) -> Result<BTreeMap<&'static str, Entry>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Parse { line, message };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found {content:?}")))?;
        let key = key.trim();
        let value = value.trim();
        let key = *KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| err(format!("unknown key {key:?}")))?;
        if value.is_empty() {
            return Err(err(format!("missing value for {key}")));
        }
        let entry = Entry {
            value: value.to_string(),
            // Preset and default lines are not the user's; report them as 0.
            line: if user { line } else { 0 },
        };
        if out.insert(key, entry).is_some() {
            return Err(err(format!("duplicate key {key}")));
        }
    }
    Ok(out)
}

fn number(map: &BTreeMap<&str, Entry>, key: &str) -> Result<Option<f64>, ConfigError> {
    map.get(key)
        .map(|e| parse_number(&e.value, e.line, key))
        .transpose()
}

fn parse_number(value: &str, line: usize, key: &str) -> Result<f64, ConfigError> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ConfigError::Parse {
            line,
            message: format!("{key}: expected a finite number, found {value:?}"),
        }),
    }
}

fn required(map: &BTreeMap<&str, Entry>, key: &str) -> Result<f64, ConfigError> {
    number(map, key)?.ok_or_else(|| ConfigError::Invalid(format!("{key} is required")))
}

fn positive(value: f64, what: &str) -> Result<f64, ConfigError> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(ConfigError::Invalid(format!(
            "{what} must be positive, got {value}"
        )))
    }
}

fn text<'a>(map: &'a BTreeMap<&str, Entry>, key: &str) -> (&'a str, usize) {
    let e = &map[key];
    (e.value.as_str(), e.line)
}

fn build(map: &BTreeMap<&str, Entry>) -> Result<SweepSpec, ConfigError> {
    let (v, line) = text(map, "sweep");
    let variable = match v {
        "gamma_over_omega_d" => SweepVariable::GammaOverOmegaD,
        "T1" => SweepVariable::T1,
        "T2" => SweepVariable::T2,
        other => {
            return Err(ConfigError::Parse {
                line,
                message: format!("sweep: expected gamma_over_omega_d, T1 or T2, found {other:?}"),
            })
        }
    };

    let (v, line) = text(map, "spacing");
    let spacing = match v {
        "linear" => Spacing::Linear,
        "log" => Spacing::Log,
        other => {
            return Err(ConfigError::Parse {
                line,
                message: format!("spacing: expected linear or log, found {other:?}"),
            })
        }
    };
    let (v, line) = text(map, "points");
    let points = v.parse::<usize>().map_err(|_| ConfigError::Parse {
        line,
        message: format!("points: expected a non-negative integer, found {v:?}"),
    })?;
    let grid = Grid {
        start: required(map, "start")?,
        stop: required(map, "stop")?,
        points,
        spacing,
    };
    if points < 2 {
        return Err(ConfigError::Invalid(format!(
            "points >= 2 required, got {points}"
        )));
    }
    if grid.start.is_nan() || grid.stop.is_nan() || grid.start >= grid.stop {
        return Err(ConfigError::Invalid(format!(
            "start < stop required, got start = {} and stop = {}",
            grid.start, grid.stop
        )));
    }
    if spacing == Spacing::Log && grid.start <= 0.0 {
        return Err(ConfigError::Invalid(format!(
            "log spacing requires start > 0, got {}",
            grid.start
        )));
    }
    if grid.start <= 0.0 {
        return Err(ConfigError::Invalid(format!(
            "swept {} must stay positive, got start = {}",
            variable.as_str(),
            grid.start
        )));
    }

    let r = positive(required(map, "R")?, "R")?;
    let l = positive(required(map, "L")?, "L")?;
    let m = required(map, "M")?;
    if m < 0.0 {
        return Err(ConfigError::Invalid(format!(
            "M must be non-negative, got {m}"
        )));
    }
    if m >= l {
        return Err(ConfigError::Invalid(format!(
            "M < L required, got M = {m} and L = {l}"
        )));
    }
    let capacitance = match (number(map, "C")?, number(map, "gamma_over_omega_d")?) {
        (Some(c), _) => Capacitance::Farads(positive(c, "C")?),
        (None, Some(g)) => Capacitance::GammaOverOmegaD(positive(g, "gamma_over_omega_d")?),
        (None, None) => {
            return Err(ConfigError::Invalid(
                "C or gamma_over_omega_d is required".into(),
            ))
        }
    };
    let circuit = CircuitSpec {
        r,
        l,
        m,
        omega_c: positive(required(map, "omega_c")?, "omega_c")?,
        hbar: positive(required(map, "hbar")?, "hbar")?,
        kb: positive(required(map, "kb")?, "kb")?,
        capacitance,
    };

    let t2_over_t1 = number(map, "t2_over_t1")?
        .map(|r| positive(r, "t2_over_t1"))
        .transpose()?;
    if t2_over_t1.is_some() && variable != SweepVariable::T1 {
        return Err(ConfigError::Invalid(
            "t2_over_t1 requires sweep = T1".into(),
        ));
    }
    let t1_free = variable == SweepVariable::T1;
    let t2_free = variable == SweepVariable::T2 || t2_over_t1.is_some();

    let pairs = match map.get("pairs") {
        Some(e) => parse_pairs(&e.value, e.line)?,
        None => {
            let t1 = number(map, "T1")?;
            let t2 = number(map, "T2")?;
            let pick = |v: Option<f64>, free: bool, key: &str| match (v, free) {
                (Some(v), _) => Ok(v),
                (None, true) => Ok(f64::NAN),
                (None, false) => Err(ConfigError::Invalid(format!("{key} is required"))),
            };
            vec![(pick(t1, t1_free, "T1")?, pick(t2, t2_free, "T2")?)]
        }
    };
    for &(t1, t2) in &pairs {
        if !t1_free {
            positive(t1, "T1")?;
        }
        if !t2_free {
            positive(t2, "T2")?;
        }
    }
    if t2_over_t1.is_some() && pairs.len() > 1 {
        return Err(ConfigError::Invalid(
            "t2_over_t1 with sweep = T1 leaves a single series; give one pair".into(),
        ));
    }

    let (v, line) = text(map, "methods");
    let mut methods = Vec::new();
    for item in v.split(',') {
        let m = Method::parse(item).ok_or_else(|| ConfigError::Parse {
            line,
            message: format!(
                "methods: unknown method {:?} (expected exact, closed, low, high)",
                item.trim()
            ),
        })?;
        if methods.contains(&m) {
            return Err(ConfigError::Parse {
                line,
                message: format!("methods: {m} listed twice"),
            });
        }
        methods.push(m);
    }

    let (v, line) = text(map, "mode");
    let mode = parse_mode(v).ok_or_else(|| ConfigError::Parse {
        line,
        message: format!("mode: expected exact_cubic or overdamped, found {v:?}"),
    })?;

    let safety_factor = match number(map, "safety_factor")? {
        Some(s) if s > 1.0 => s,
        Some(s) => {
            return Err(ConfigError::Invalid(format!(
                "safety_factor must exceed 1, got {s}"
            )))
        }
        None => DEFAULT_SAFETY_FACTOR,
    };
    let rel_tol = match number(map, "rel_tol")? {
        Some(t) if t > 0.0 && t < 1.0 => t,
        Some(t) => {
            return Err(ConfigError::Invalid(format!(
                "rel_tol must lie in (0, 1), got {t}"
            )))
        }
        None => QuadratureConfig64::default().rel_tol,
    };

    Ok(SweepSpec {
        preset: None,
        variable,
        grid,
        circuit,
        pairs,
        t2_over_t1,
        methods,
        mode,
        safety_factor,
        rel_tol,
    })
}

pub fn parse_mode(s: &str) -> Option<TransferMode> {
    match s.trim() {
        "exact_cubic" | "cubic" => Some(TransferMode::ExactCubic),
        "overdamped" | "overdamped_linear" | "linear" => Some(TransferMode::OverdampedLinear),
        _ => None,
    }
}

fn parse_pairs(value: &str, line: usize) -> Result<Vec<(f64, f64)>, ConfigError> {
    value
        .split(',')
        .map(|item| {
            let item = item.trim();
            let (a, b) = item.split_once(':').ok_or_else(|| ConfigError::Parse {
                line,
                message: format!("pairs: expected T1:T2, found {item:?}"),
            })?;
            Ok((
                parse_number(a.trim(), line, "pairs")?,
                parse_number(b.trim(), line, "pairs")?,
            ))
        })
        .collect()
}
