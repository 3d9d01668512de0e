//! Library side of the `sqt-sim` binary, kept separate so the whole command
//! can be driven in-process from tests.

pub mod args;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use sqt_core::{sqt_window, sweep_2d, PointParams, SqtError};
use thiserror::Error;

use crate::args::{default_axes, Cli, Command, MetricsFormat, SweepFormat, WindowFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] SqtError),
    #[error("cannot write '{}': {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot write to standard output: {0}")]
    Stdout(io::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_input_error() => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        }
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit status. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "sqt-sim: error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(CliError::Stdout),
    }
}

fn worker_pool(workers: Option<std::num::NonZeroUsize>) -> Result<rayon::ThreadPool, CliError> {
    let n = workers.or_else(|| std::thread::available_parallelism().ok()).map_or(1, std::num::NonZeroUsize::get);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Pool(e.to_string()))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Metrics { params, format, output } => {
            let point = PointParams::from(params);
            let scenario = point.scenario()?;
            let metrics = sqt_core::sqt_metrics(&scenario, point.t)?;
            let text = match format {
                MetricsFormat::Text => output::metrics_text(&point, scenario.bath(), &metrics),
                MetricsFormat::Json => output::metrics_json(&point, scenario.bath(), &metrics),
            };
            emit(&text, output.as_deref(), out)
        }
        Command::Window { params, t_max, grid, tol, format, output } => {
            let point = PointParams::from(params);
            let window = sqt_window(&point.scenario()?, t_max, grid, tol)?;
            let text = match format {
                WindowFormat::Text => output::window_text(&window),
                WindowFormat::Csv => output::window_csv(&window),
                WindowFormat::Json => output::window_json(&window, &point, t_max),
            };
            emit(&text, output.as_deref(), out)
        }
        Command::Sweep { params, axes, grid, format, output } => {
            let specs = axes.unwrap_or_else(|| default_axes().to_vec());
            let axis1 = specs[0].resolve(grid)?;
            let axis2 = specs[1].resolve(grid)?;
            let template = PointParams::from(params);
            let pool = worker_pool(cli.workers)?;
            let map = pool.install(|| sweep_2d(&template, axis1, axis2))?;
            let text = match format {
                SweepFormat::Csv => output::sweep_csv(&map),
                SweepFormat::Json => output::sweep_json(&map),
                SweepFormat::Pgm => output::sweep_pgm(&map),
            };
            emit(&text, output.as_deref(), out)
        }
    }
}
