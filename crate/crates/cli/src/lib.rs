//! Driver behind the `fsol` binary: argument parsing, command dispatch and
//! report writing. Exit status: 0 on success, 2 when a tolerance-gated
//! record fails, 1 on usage or numerical errors.

pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, Cmd, Opts};
pub use commands::{execute, params_of, CmdError};
pub use report::{format_float, parse_report, to_json_string, write_report, Format, Record, Report, RunManifest, StageError};

use clap::Parser;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;

/// Parses FSOL_THREADS. `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var("FSOL_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("FSOL_THREADS: {e}")),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("FSOL_THREADS must be a positive integer, got '{s}'")),
        },
    }
}

/// Sizes the global rayon pool once per process; later calls keep the
/// pool that is already there.
fn configure_threads() -> Result<usize, String> {
    if let Some(n) = threads_from_env()? {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(rayon::current_num_threads())
}

/// Runs a command and returns its records with the manifest.
pub fn run_report(cmd: &Cmd, threads: usize) -> Result<Report, CmdError> {
    let start = Instant::now();
    let results = execute(cmd)?;
    let manifest = RunManifest {
        command: cmd.name().into(),
        params: params_of(cmd.opts()),
        version: env!("CARGO_PKG_VERSION").into(),
        threads,
        wall_time_s: start.elapsed().as_secs_f64(),
        stage_errors: results.iter().map(|r| StageError { stage: r.quantity.clone(), error_estimate: r.error_estimate }).collect(),
    };
    Ok(Report { manifest, results })
}

pub fn exit_status(results: &[Record]) -> i32 {
    if results.iter().any(|r| r.passed == Some(false)) {
        EXIT_TOLERANCE
    } else {
        EXIT_OK
    }
}

/// Full driver: argv (including the program name) to exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = match configure_threads() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let report = match run_report(&cli.cmd, threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let opts = cli.cmd.opts();
    let written = match &opts.out {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                write_report(&mut w, Some(&report.manifest), &report.results, opts.format)?;
                w.flush()
            })
            .map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_report(&mut w, Some(&report.manifest), &report.results, opts.format).map_err(|e| e.to_string())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    exit_status(&report.results)
}
