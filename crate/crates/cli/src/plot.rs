//! Standalone matplotlib scripts that redraw a sweep from its CSV.

use std::fmt::Write as _;
use std::path::{Component, Path, PathBuf};

use overdamped_heat::Method;

use crate::config::{Preset, Spacing, SweepSpec, SweepVariable};
use crate::error::{CliError, Result};

/// Figure layout chosen for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Exact (solid) against closed form (dashed) per temperature pair, log x.
    Convergence,
    /// Closed-form total against the low-temperature law, log-log.
    LowTemperature,
    /// Closed-form quantum part with the dashed logarithmic asymptote.
    Asymptote,
    /// Every method's total per series.
    Generic,
}

pub fn layout_for(spec: &SweepSpec) -> Layout {
    let has = |m: Method| spec.methods.contains(&m);
    match spec.preset {
        Some(Preset::Fig2) if has(Method::ExactQuadrature) && has(Method::ClosedForm) => {
            Layout::Convergence
        }
        Some(Preset::Fig3) if has(Method::ClosedForm) && has(Method::LowTempAsymptotic) => {
            Layout::LowTemperature
        }
        Some(Preset::Fig4) if has(Method::ClosedForm) && has(Method::HighTempAsymptotic) => {
            Layout::Asymptote
        }
        _ => Layout::Generic,
    }
}

/// Path of `target` as seen from the directory containing `script`, with
/// `/` separators.
fn relative_to_script(target: &Path, script: &Path) -> Result<String> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let target = std::path::absolute(target).map_err(io(target))?;
    let script = std::path::absolute(script).map_err(io(script))?;
    let dir = script
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("/"));
    let rel = pathdiff::diff_paths(&target, &dir).unwrap_or(target);
    let parts: Vec<String> = rel
        .components()
        .filter(|c| !matches!(c, Component::CurDir))
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    Ok(parts.join("/"))
}

fn py_string(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn axis_label(v: SweepVariable) -> &'static str {
    match v {
        SweepVariable::GammaOverOmegaD => r"$\gamma/\omega_d$",
        SweepVariable::T1 => "$T_1$",
        SweepVariable::T2 => "$T_2$",
    }
}

/// Script text for `spec`, reading the CSV at `csv_rel` (relative to the
/// script's directory).
pub fn plot_script(spec: &SweepSpec, csv_rel: &str) -> String {
    let layout = layout_for(spec);
    let name = spec.preset.map_or("custom", |p| p.name());
    let mut s = String::new();
    let _ = writeln!(
        s,
        "\"\"\"Heat-current sweep ({name}). Generated; run with python3.\"\"\""
    );
    s.push_str(
        "import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
",
    );
    let _ = writeln!(s, "CSV = os.path.join(HERE, {})", py_string(csv_rel));
    s.push_str(
        "

def load():
    with open(CSV, newline=\"\") as fh:
        rows = list(csv.DictReader(fh))
    series = {}
    for row in rows:
        series.setdefault(row[\"series\"], []).append(row)
    return series


def col(rows, name):
    return [float(r[name]) if r[name] else float(\"nan\") for r in rows]


series = load()
fig, ax = plt.subplots(figsize=(6, 4.5))
",
    );
    let _ = writeln!(s, "xlabel = {}", py_string(axis_label(spec.variable)));
    match layout {
        Layout::Convergence => s.push_str(
            "for i, (label, rows) in enumerate(series.items()):
    x = col(rows, \"swept\")
    color = f\"C{i}\"
    ax.plot(x, col(rows, \"exact_total\"), color=color, label=f\"exact, T1:T2 = {label}\")
    ax.plot(x, col(rows, \"closed_total\"), color=color, linestyle=\"--\", label=f\"closed form, T1:T2 = {label}\")
ax.set_xscale(\"log\")
ax.set_ylabel(\"heat current\")
",
        ),
        Layout::LowTemperature => s.push_str(
            "for label, rows in series.items():
    x = col(rows, \"swept\")
    ax.plot(x, col(rows, \"closed_total\"), label=\"total (closed form)\")
    ax.plot(x, col(rows, \"low_total\"), linestyle=\"--\", label=\"low-temperature law\")
ax.set_xscale(\"log\")
ax.set_yscale(\"log\")
ax.set_ylabel(\"heat current\")
",
        ),
        Layout::Asymptote => s.push_str(
            "for i, (label, rows) in enumerate(series.items()):
    x = col(rows, \"swept\")
    color = f\"C{i}\"
    t1 = rows[0][\"T1\"]
    ax.plot(x, col(rows, \"closed_quantum\"), color=color, label=f\"quantum part, T1 = {t1}\")
    ax.plot(x, col(rows, \"high_quantum\"), color=color, linestyle=\"--\", label=f\"log asymptote, T1 = {t1}\")
ax.set_xscale(\"log\")
ax.set_ylabel(\"quantum heat current\")
",
        ),
        Layout::Generic => {
            let methods: Vec<String> = spec.methods.iter().map(|m| py_string(m.as_str())).collect();
            let _ = writeln!(s, "methods = [{}]", methods.join(", "));
            s.push_str(
                "for label, rows in series.items():
    x = col(rows, \"swept\")
    for m in methods:
        ax.plot(x, col(rows, f\"{m}_total\"), label=f\"{m}, T1:T2 = {label}\")
ax.set_ylabel(\"heat current\")
",
            );
            if spec.grid.spacing == Spacing::Log {
                s.push_str("ax.set_xscale(\"log\")\n");
            }
        }
    }
    s.push_str(
        "ax.set_xlabel(xlabel)
ax.legend(fontsize=\"small\")
fig.tight_layout()
fig.savefig(os.path.splitext(os.path.abspath(__file__))[0] + \".png\", dpi=150)
plt.show()
",
    );
    s
}

/// Writes the plot script for `spec` to `script`, pointing at `csv_path`.
pub fn emit_plot_script(spec: &SweepSpec, csv_path: &Path, script: &Path) -> Result<()> {
    let rel = relative_to_script(csv_path, script)?;
    std::fs::write(script, plot_script(spec, &rel)).map_err(|source| CliError::Io {
        path: script.to_path_buf(),
        source,
    })
}
