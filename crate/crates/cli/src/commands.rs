//! Subcommands other than `verify`.

use std::path::Path;

use num_complex::Complex64;
use orbitq::oversample::limit_superposition_profile;
use orbitq::{
    average_energy, config_basis_state, energy_spectrum, evolve, figure_data, interpolate_config,
    orbit_of, oversample, verify_isomorphism, width_report, Basis, ClassicalDynamics, DynamicsFile,
    GlobalConfig, Orbit,
};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::table::Field;

/// What a subcommand produces before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Value),
    Table {
        schema: Vec<&'static str>,
        rows: Vec<Vec<Field>>,
    },
}

pub fn load_file(path: &Path) -> Result<DynamicsFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    DynamicsFile::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_dynamics(path: &Path) -> Result<ClassicalDynamics> {
    Ok(load_file(path)?.build()?)
}

/// The orbit through configuration `state`, with the configured τ, and the
/// position of `state` on it.
fn orbit_through(
    dynamics: &ClassicalDynamics,
    state: usize,
    cfg: &GlobalConfig,
) -> Result<(Orbit, usize)> {
    let orbit = orbit_of(dynamics, state)?.with_tau(cfg.tau);
    let pos = orbit
        .position(state)
        .expect("orbit_of returns an orbit containing its start");
    Ok((orbit, pos))
}

fn amplitude_rows(orbit: &Orbit, amps: &[Complex64]) -> Output {
    let rows = orbit
        .members()
        .iter()
        .zip(amps)
        .map(|(&c, a)| {
            vec![
                Field::Int(c as i64),
                Field::Complex(*a),
                Field::Real(a.norm_sqr()),
            ]
        })
        .collect();
    Output::Table {
        schema: vec!["n", "re", "im", "prob"],
        rows,
    }
}

pub fn orbits(dynamics: &ClassicalDynamics) -> Result<Output> {
    let decomposition = orbitq::decompose_orbits(dynamics)?;
    Ok(Output::Json(serde_json::to_value(&decomposition)?))
}

/// Amplitudes of the configuration state `state` evolved for time `t`.
pub fn evolve_state(
    dynamics: &ClassicalDynamics,
    state: usize,
    t: f64,
    cfg: &GlobalConfig,
) -> Result<Output> {
    let (orbit, pos) = orbit_through(dynamics, state, cfg)?;
    let start = config_basis_state(&orbit, pos)?;
    let evolved = evolve(&start, t, cfg).in_basis(Basis::Configuration);
    Ok(amplitude_rows(&orbit, &evolved.amplitudes))
}

/// S(N, n - p - t/τ) along the orbit, where p is the position of `state`.
pub fn interpolate(
    dynamics: &ClassicalDynamics,
    state: usize,
    t: f64,
    cfg: &GlobalConfig,
) -> Result<Output> {
    let (orbit, pos) = orbit_through(dynamics, state, cfg)?;
    let n = orbit.len();
    let base = interpolate_config(&orbit, t / cfg.tau);
    let amps: Vec<Complex64> = (0..n).map(|j| base[(j + n - pos) % n]).collect();
    Ok(amplitude_rows(&orbit, &amps))
}

pub fn energy(dynamics: &ClassicalDynamics, state: usize, cfg: &GlobalConfig) -> Result<Output> {
    let (orbit, pos) = orbit_through(dynamics, state, cfg)?;
    let spectrum = energy_spectrum(&orbit, cfg, cfg.zero_point);
    let e = average_energy(&config_basis_state(&orbit, pos)?, &spectrum)?;
    let n = orbit.len();
    let period = orbit.period();
    let half_quantum = cfg.h * cfg.rate() / 2.0;
    let expected = if cfg.zero_point {
        half_quantum
    } else {
        cfg.h * (n as f64 - 1.0) / (2.0 * period)
    };
    let equality = (e - half_quantum).abs() <= cfg.tolerance_rel * half_quantum;
    Ok(Output::Json(json!({
        "orbit": orbit.id(),
        "length": n,
        "period": period,
        "zero_point": cfg.zero_point,
        "energy": e,
        "nu_bar": e / cfg.h,
        "expected": expected,
        "half_quantum": half_quantum,
        "equals_half_quantum": equality,
    })))
}

pub fn uncertainty(
    dynamics: &ClassicalDynamics,
    state: usize,
    tau_min: Option<f64>,
    cfg: &GlobalConfig,
) -> Result<Output> {
    let (orbit, pos) = orbit_through(dynamics, state, cfg)?;
    let spectrum = energy_spectrum(&orbit, cfg, cfg.zero_point);
    let report = width_report(
        &config_basis_state(&orbit, pos)?,
        &spectrum,
        orbit.len(),
        orbit.period(),
        tau_min,
    )?;
    Ok(Output::Json(serde_json::to_value(report)?))
}

/// Isomorphism defect at `samples` evenly spaced times per period, t in
/// update steps, for each factor.
pub fn oversample_sweep(
    dynamics: &ClassicalDynamics,
    state: usize,
    factors: &[usize],
    t_prime: f64,
    samples: usize,
    cfg: &GlobalConfig,
) -> Result<Output> {
    let (orbit, _) = orbit_through(dynamics, state, cfg)?;
    let n = orbit.len() as f64;
    let mut rows = Vec::new();
    for &m in factors {
        let ov = oversample(&orbit, m)?;
        for i in 0..samples {
            let t = n * i as f64 / samples as f64;
            rows.push(vec![
                Field::Int(m as i64),
                Field::Real(t),
                Field::Real(verify_isomorphism(&ov, t, t_prime)),
            ]);
        }
    }
    Ok(Output::Table {
        schema: vec!["M", "t", "defect"],
        rows,
    })
}

pub fn limit(
    dynamics: &ClassicalDynamics,
    state: usize,
    factors: &[usize],
    x: f64,
    cfg: &GlobalConfig,
) -> Result<Output> {
    let (orbit, _) = orbit_through(dynamics, state, cfg)?;
    let mut rows = Vec::new();
    for table in limit_superposition_profile(&orbit, factors, x)? {
        for (m, class) in table.amplitudes.iter().enumerate() {
            for (n, a) in class.iter().enumerate() {
                rows.push(vec![
                    Field::Int(table.factor as i64),
                    Field::Real(table.offset(m)),
                    Field::Int(n as i64),
                    Field::Complex(*a),
                ]);
            }
        }
    }
    Ok(Output::Table {
        schema: vec!["M", "u", "n", "re", "im"],
        rows,
    })
}

pub fn figure(n: usize, range: f64, samples: usize) -> Result<Output> {
    let rows = figure_data(n, range, samples)?
        .into_iter()
        .map(|r| vec![Field::Real(r.u), Field::Real(r.s2), Field::Real(r.gauss)])
        .collect();
    Ok(Output::Table {
        schema: vec!["u", "s2", "gauss"],
        rows,
    })
}
