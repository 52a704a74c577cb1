use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use heat_cli::config::parse_mode;
use heat_cli::{
    emit_csv, emit_plot_script, format_float, parse_with_preset, run_sweep, CliError, Preset,
};
use overdamped_heat::{
    assemble_report, BathPair64, CircuitParams64, Method, QuadratureConfig64, ReportOptions64,
};

#[derive(Parser)]
#[command(
    name = "heat",
    version,
    about = "Heat current between two coupled, damped RLC circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write it as CSV.
    Sweep {
        /// `key = value` config file, applied on top of the preset.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Also write a matplotlib script that plots the CSV.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["fig2", "fig3", "fig4"]))]
        preset: Option<String>,
    },
    /// Evaluate one working point and print the report as key=value lines.
    Eval(EvalArgs),
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long = "R")]
    r: f64,
    #[arg(long = "L")]
    l: f64,
    #[arg(long = "C")]
    c: f64,
    #[arg(long = "M")]
    m: f64,
    #[arg(long = "omega-c")]
    omega_c: f64,
    #[arg(long = "T1")]
    t1: f64,
    #[arg(long = "T2")]
    t2: f64,
    /// exact, closed, low or high.
    #[arg(long, default_value = "closed")]
    method: String,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    kb: f64,
    /// exact_cubic or overdamped (exact method only).
    #[arg(long, default_value = "exact_cubic")]
    mode: String,
    #[arg(long, default_value_t = overdamped_heat::DEFAULT_SAFETY_FACTOR)]
    safety_factor: f64,
    #[arg(long)]
    rel_tol: Option<f64>,
}

fn sweep(
    config: Option<PathBuf>,
    out: PathBuf,
    plot: Option<PathBuf>,
    preset: Option<String>,
) -> Result<(), CliError> {
    let preset = preset
        .map(|p| p.parse::<Preset>())
        .transpose()
        .map_err(CliError::Usage)?;
    let text = match &config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => String::new(),
    };
    let spec = parse_with_preset(preset, &text)?;
    let rows = run_sweep(&spec)?;
    emit_csv(&rows, &out)?;
    if let Some(script) = plot {
        emit_plot_script(&spec, &out, &script)?;
    }
    let warned = rows.iter().filter(|r| !r.warnings.is_empty()).count();
    let failed = rows
        .iter()
        .flat_map(|r| &r.cells)
        .filter(|c| c.q_total.is_none())
        .count();
    eprintln!(
        "wrote {} rows to {} ({warned} with warnings, {failed} failed cells)",
        rows.len(),
        out.display()
    );
    Ok(())
}

fn eval(a: EvalArgs) -> Result<(), CliError> {
    let method = Method::parse(&a.method).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown method {:?} (expected exact, closed, low, high)",
            a.method
        ))
    })?;
    let mode = parse_mode(&a.mode).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown mode {:?} (expected exact_cubic, overdamped)",
            a.mode
        ))
    })?;
    if a.m >= a.l {
        return Err(CliError::Usage(format!(
            "M < L required, got M = {} and L = {}",
            a.m, a.l
        )));
    }
    let p = CircuitParams64::new(a.r, a.l, a.c, a.m, a.omega_c)?.with_constants(a.hbar, a.kb)?;
    let b = BathPair64::for_circuit(a.t1, a.t2, &p)?;
    let mut quadrature = QuadratureConfig64::default();
    if let Some(t) = a.rel_tol {
        quadrature = quadrature.with_rel_tol(t);
    }
    let opts = ReportOptions64 {
        safety_factor: a.safety_factor,
        quadrature,
        exact_mode: mode,
    };
    let r = assemble_report(&p, &b, method, &opts)?;
    println!("method={}", r.method);
    println!("regime={}", r.regime.tag);
    println!("q_classical={}", format_float(r.q_classical));
    println!("q_quantum={}", format_float(r.q_quantum));
    println!("q_total={}", format_float(r.q_total));
    println!(
        "error_estimate={}",
        r.error_estimate.map(format_float).unwrap_or_default()
    );
    println!("warnings={}", r.validity_warnings.len());
    for w in &r.validity_warnings {
        println!("warning={w}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep {
            config,
            out,
            plot,
            preset,
        } => sweep(config, out, plot, preset),
        Command::Eval(a) => eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
