use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use orbitq::GlobalConfig;

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "orbitq",
    version,
    about = "Quantum emulation of invertible finite-state dynamics"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: RawCommand,
}

#[derive(Debug, Args)]
struct GlobalFlags {
    /// Dynamics file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Time between classical updates.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Planck's constant.
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Add h/(2T) to every energy eigenvalue.
    #[arg(long, global = true)]
    zero_point: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Print the orbit decomposition as JSON.
    Orbits,
    /// Evolve a configuration state and print its amplitudes as CSV.
    Evolve {
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Print the kernel amplitudes S(N, n - t/τ) along an orbit as CSV.
    Interpolate {
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Average energy of a configuration state as JSON.
    Energy {
        #[arg(long, default_value_t = 0)]
        state: usize,
    },
    /// Bandwidth report of a configuration state as JSON.
    Uncertainty {
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Shortest time between orthogonal states; defaults to T/N.
        #[arg(long)]
        tau_min: Option<f64>,
    },
    /// Isomorphism defect of the oversampled dynamics as CSV.
    Oversample {
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 4, 8])]
        factors: Vec<usize>,
        /// Reference time t' in update steps.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_prime: f64,
        /// Number of t values per period.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Offset-class profiles of an oversampled position state as CSV.
    Limit {
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 4, 8])]
        factors: Vec<usize>,
        /// Position in update steps, in [0, N).
        #[arg(long, default_value_t = 0.5)]
        x: f64,
    },
    /// |S(N, u)|² and exp(-πu²) on a grid as CSV.
    Figure {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        range: f64,
        #[arg(long, default_value_t = 600)]
        samples: usize,
    },
    /// Run every invariant check and print a JSON report.
    Verify,
}

/// A parsed subcommand with its own arguments.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Orbits,
    Evolve {
        state: usize,
        t: f64,
    },
    Interpolate {
        state: usize,
        t: f64,
    },
    Energy {
        state: usize,
    },
    Uncertainty {
        state: usize,
        tau_min: Option<f64>,
    },
    Oversample {
        state: usize,
        factors: Vec<usize>,
        t_prime: f64,
        samples: usize,
    },
    Limit {
        state: usize,
        factors: Vec<usize>,
        x: f64,
    },
    Figure {
        n: usize,
        range: f64,
        samples: usize,
    },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbits => "orbits",
            Command::Evolve { .. } => "evolve",
            Command::Interpolate { .. } => "interpolate",
            Command::Energy { .. } => "energy",
            Command::Uncertainty { .. } => "uncertainty",
            Command::Oversample { .. } => "oversample",
            Command::Limit { .. } => "limit",
            Command::Figure { .. } => "figure",
            Command::Verify => "verify",
        }
    }

    fn needs_input(&self) -> bool {
        !matches!(self, Command::Figure { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    /// `None` means standard output.
    pub output_path: Option<PathBuf>,
    pub config: GlobalConfig,
}

fn positive(flag: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::BadFlag(format!(
            "--{flag} must be positive, got {value}"
        )))
    }
}

fn map_clap_error(err: clap::Error) -> CliError {
    let text = err.to_string();
    match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(text),
        ErrorKind::InvalidSubcommand => {
            let name = err
                .get(clap::error::ContextKind::InvalidSubcommand)
                .map(|v| v.to_string())
                .unwrap_or(text);
            CliError::UnknownSubcommand(name)
        }
        ErrorKind::MissingSubcommand | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            CliError::UnknownSubcommand("no subcommand given".into())
        }
        _ => CliError::BadFlag(text.trim_end().to_string()),
    }
}

/// Parses the full argument vector, program name included.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(map_clap_error)?;
    let g = cli.global;
    let mut config = GlobalConfig {
        zero_point: g.zero_point,
        ..GlobalConfig::default()
    };
    if let Some(v) = g.tau {
        config.tau = positive("tau", v)?;
    }
    if let Some(v) = g.h {
        config.h = positive("h", v)?;
    }
    if let Some(v) = g.tol_abs {
        config.tolerance_abs = positive("tol-abs", v)?;
    }
    if let Some(v) = g.tol_rel {
        config.tolerance_rel = positive("tol-rel", v)?;
    }
    if let Some(seed) = g.seed {
        config.rng_seed = seed;
    }

    let command = match cli.command {
        RawCommand::Orbits => Command::Orbits,
        RawCommand::Evolve { state, t } => Command::Evolve {
            state,
            t: finite("t", t)?,
        },
        RawCommand::Interpolate { state, t } => Command::Interpolate {
            state,
            t: finite("t", t)?,
        },
        RawCommand::Energy { state } => Command::Energy { state },
        RawCommand::Uncertainty { state, tau_min } => Command::Uncertainty {
            state,
            tau_min: tau_min.map(|v| positive("tau-min", v)).transpose()?,
        },
        RawCommand::Oversample {
            state,
            factors,
            t_prime,
            samples,
        } => {
            check_factors(&factors)?;
            if samples == 0 {
                return Err(CliError::BadFlag("--samples must be at least 1".into()));
            }
            Command::Oversample {
                state,
                factors,
                t_prime: finite("t-prime", t_prime)?,
                samples,
            }
        }
        RawCommand::Limit { state, factors, x } => {
            check_factors(&factors)?;
            Command::Limit {
                state,
                factors,
                x: finite("x", x)?,
            }
        }
        RawCommand::Figure { n, range, samples } => {
            if n < 2 {
                return Err(CliError::BadFlag(format!(
                    "--N must be at least 2, got {n}"
                )));
            }
            if samples == 0 {
                return Err(CliError::BadFlag("--samples must be at least 1".into()));
            }
            Command::Figure {
                n,
                range: positive("range", range)?,
                samples,
            }
        }
        RawCommand::Verify => Command::Verify,
    };
    if command.needs_input() && g.input.is_none() {
        return Err(CliError::MissingInput(format!(
            "{} needs --input",
            command.name()
        )));
    }
    Ok(RunConfig {
        command,
        input_path: g.input,
        output_path: g.output,
        config,
    })
}

fn finite(flag: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::BadFlag(format!("--{flag} must be finite")))
    }
}

fn check_factors(factors: &[usize]) -> Result<()> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(CliError::BadFlag(
            "--factors must be positive integers".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<RunConfig> {
        parse_args(std::iter::once("orbitq").chain(line.split_whitespace()))
    }

    #[test]
    fn evolve_flags() {
        let rc = parse("evolve --input shift5.json --t 2.5").unwrap();
        assert_eq!(rc.command, Command::Evolve { state: 0, t: 2.5 });
        assert_eq!(rc.input_path, Some(PathBuf::from("shift5.json")));
        assert_eq!(rc.output_path, None);
    }

    #[test]
    fn figure_flags() {
        let rc = parse("figure --N 100 --range 6 --samples 1200").unwrap();
        assert_eq!(
            rc.command,
            Command::Figure {
                n: 100,
                range: 6.0,
                samples: 1200
            }
        );
        assert_eq!(rc.input_path, None);
    }

    #[test]
    fn figure_defaults() {
        let rc = parse("figure --N 100").unwrap();
        assert_eq!(
            rc.command,
            Command::Figure {
                n: 100,
                range: 3.0,
                samples: 600
            }
        );
    }

    #[test]
    fn unknown_subcommand() {
        let err = parse("bogus").unwrap_err();
        assert!(
            matches!(err, CliError::UnknownSubcommand(ref s) if s == "bogus"),
            "{err:?}"
        );
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn missing_input() {
        let err = parse("orbits").unwrap_err();
        assert!(matches!(err, CliError::MissingInput(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bad_flags() {
        for line in [
            "evolve --input a.json",
            "evolve --input a.json --t abc",
            "figure --N 100 --frobnicate",
            "orbits --input a.json --tau 0",
            "orbits --input a.json --h -1",
            "oversample --input a.json --factors 0,2",
            "figure --N 1",
        ] {
            let err = parse(line).unwrap_err();
            assert!(matches!(err, CliError::BadFlag(_)), "{line}: {err:?}");
            assert_eq!(err.exit_code(), 2);
        }
    }

    #[test]
    fn global_overrides() {
        let rc =
            parse("energy --input a.json --tau 0.5 --h 2 --zero-point --seed 7 --state 3").unwrap();
        assert_eq!(rc.command, Command::Energy { state: 3 });
        assert_eq!(rc.config.tau, 0.5);
        assert_eq!(rc.config.h, 2.0);
        assert!(rc.config.zero_point);
        assert_eq!(rc.config.rng_seed, 7);
    }

    #[test]
    fn negative_times_parse() {
        let rc = parse("interpolate --input a.json --t -1.5").unwrap();
        assert_eq!(rc.command, Command::Interpolate { state: 0, t: -1.5 });
    }

    #[test]
    fn help_is_not_an_error_status() {
        assert_eq!(parse("--help").unwrap_err().exit_code(), 0);
    }
}
