//! Command-line front end for `orbitq`.
//!
//! Structured results are printed as JSON, plottable tables as CSV. Exit
//! status is 0 on success, 1 when `verify` finds a failing check, 2 on a
//! usage error and 3 on bad input.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::{parse_args, Command, RunConfig};
pub use error::{CliError, Result};
pub use table::{emit_table, Field};
pub use verify::{run_verify, Check, VerificationReport};

use commands::Output;

fn write_output(output: &Output, rc: &RunConfig) -> Result<()> {
    let sink: Box<dyn Write> = match &rc.output_path {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match output {
        Output::Json(value) => {
            serde_json::to_writer_pretty(&mut sink, value)?;
            sink.write_all(b"\n")?;
        }
        Output::Table { schema, rows } => emit_table(rows, schema, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

/// Runs a parsed command and returns the process exit status.
pub fn execute(rc: &RunConfig) -> Result<i32> {
    let cfg = &rc.config;
    let input = || -> Result<_> {
        let path = rc.input_path.as_deref().ok_or_else(|| {
            CliError::MissingInput(format!("{} needs --input", rc.command.name()))
        })?;
        commands::load_dynamics(path)
    };
    let output = match &rc.command {
        Command::Orbits => commands::orbits(&input()?)?,
        Command::Evolve { state, t } => commands::evolve_state(&input()?, *state, *t, cfg)?,
        Command::Interpolate { state, t } => commands::interpolate(&input()?, *state, *t, cfg)?,
        Command::Energy { state } => commands::energy(&input()?, *state, cfg)?,
        Command::Uncertainty { state, tau_min } => {
            commands::uncertainty(&input()?, *state, *tau_min, cfg)?
        }
        Command::Oversample {
            state,
            factors,
            t_prime,
            samples,
        } => commands::oversample_sweep(&input()?, *state, factors, *t_prime, *samples, cfg)?,
        Command::Limit { state, factors, x } => {
            commands::limit(&input()?, *state, factors, *x, cfg)?
        }
        Command::Figure { n, range, samples } => commands::figure(*n, *range, *samples)?,
        Command::Verify => {
            let path = rc
                .input_path
                .as_deref()
                .ok_or_else(|| CliError::MissingInput("verify needs --input".into()))?;
            let report = run_verify(&commands::load_file(path)?, cfg);
            write_output(&Output::Json(serde_json::to_value(&report)?), rc)?;
            return Ok(if report.all_pass { 0 } else { 1 });
        }
    };
    write_output(&output, rc)?;
    Ok(0)
}

/// Parses `argv`, runs it and reports errors on standard error.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv).and_then(|rc| execute(&rc)) {
        Ok(code) => code,
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("orbitq: {e}");
            e.exit_code()
        }
    }
}
