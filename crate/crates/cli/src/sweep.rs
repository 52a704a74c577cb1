use std::collections::BTreeSet;

use overdamped_heat::{
    assemble_report, classify_regime, derive_scales, BathPair64, Method, RegimeTag, ReportOptions64,
};
use rayon::prelude::*;

use crate::config::{SweepSpec, SweepVariable};
use crate::error::{CliError, Result};

/// One method's numbers at one sweep point; `None` where evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodCell {
    pub method: Method,
    pub q_total: Option<f64>,
    pub q_classical: Option<f64>,
    pub q_quantum: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub series: String,
    pub swept_value: f64,
    pub gamma_over_omega_d: f64,
    pub t1: f64,
    pub t2: f64,
    pub cells: Vec<MethodCell>,
    pub regime: RegimeTag,
    /// Distinct warnings and evaluation errors across all methods.
    pub warnings: Vec<String>,
}

impl SweepRow {
    pub fn cell(&self, method: Method) -> Option<&MethodCell> {
        self.cells.iter().find(|c| c.method == method)
    }
}

/// Worker count from `HEAT_THREADS`; `0`, unset or unparsable mean automatic.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("HEAT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs the sweep with the worker count from `HEAT_THREADS`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    run_sweep_with_threads(spec, threads_from_env())
}

/// Runs the sweep on `threads` workers (`None` for automatic, `Some(1)` for
/// the calling thread only). Rows come back ordered by swept value, then
/// by series, whatever the worker count.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    let points: Vec<(f64, usize)> = spec
        .grid
        .values()
        .into_iter()
        .flat_map(|x| (0..spec.pairs.len()).map(move |k| (x, k)))
        .collect();
    if threads == Some(1) {
        return points
            .iter()
            .map(|&(x, k)| evaluate_point(spec, x, k))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(x, k)| evaluate_point(spec, x, k))
            .collect()
    })
}

/// Evaluates every requested method at one grid point. Invalid parameters
/// abort the sweep; numerical failures become warnings and empty cells.
pub fn evaluate_point(spec: &SweepSpec, x: f64, series: usize) -> Result<SweepRow> {
    let gamma_override = (spec.variable == SweepVariable::GammaOverOmegaD).then_some(x);
    let p = spec.circuit.params(gamma_override)?;
    let (t1, t2) = spec.temperatures(series, x);
    let b = BathPair64::for_circuit(t1, t2, &p)?;
    let s = derive_scales(&p);
    let regime = classify_regime(&p, &s, &b, spec.safety_factor);

    let opts = ReportOptions64 {
        safety_factor: spec.safety_factor,
        quadrature: spec.quadrature(),
        exact_mode: spec.mode,
    };
    let mut warnings = BTreeSet::new();
    let mut cells = Vec::with_capacity(spec.methods.len());
    for &method in &spec.methods {
        match assemble_report(&p, &b, method, &opts) {
            Ok(r) => {
                warnings.extend(r.validity_warnings);
                cells.push(MethodCell {
                    method,
                    q_total: finite(r.q_total),
                    q_classical: finite(r.q_classical),
                    q_quantum: finite(r.q_quantum),
                });
            }
            Err(e) if e.is_validation() => return Err(e.into()),
            Err(e) => {
                warnings.insert(format!("{method}: {e}"));
                cells.push(MethodCell {
                    method,
                    q_total: None,
                    q_classical: None,
                    q_quantum: None,
                });
            }
        }
    }

    Ok(SweepRow {
        series: spec.series_label(series),
        swept_value: x,
        gamma_over_omega_d: p.gamma() / p.omega_d(),
        t1,
        t2,
        cells,
        regime: regime.tag,
        warnings: warnings.into_iter().collect(),
    })
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}
