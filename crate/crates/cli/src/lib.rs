//! Sweep harness for `overdamped-heat`: configuration, parallel sweeps,
//! CSV output and plot scripts. The `heat` binary is a thin wrapper.

pub mod config;
pub mod csv_out;
pub mod error;
pub mod plot;
pub mod sweep;

pub use config::{parse_config, parse_with_preset, Preset, SweepSpec, SweepVariable};
pub use csv_out::{emit_csv, format_float, read_csv, to_csv_bytes};
pub use error::{CliError, ConfigError};
pub use plot::emit_plot_script;
pub use sweep::{run_sweep, run_sweep_with_threads, SweepRow};
