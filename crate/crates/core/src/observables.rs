//! Energy, momentum, particle amplitudes and bandwidth measures.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::GlobalConfig;
use crate::error::{Error, Result};
use crate::kernel::{periodic_sinc, sinc_limit};
use crate::spectral::{Basis, QuantumState, Spectrum};

/// Energy-basis probabilities at or below this count as unoccupied.
pub const SUPPORT_THRESHOLD: f64 = 1e-20;

/// Slack allowed on the sign of a bound's inequality.
pub const BOUND_SLACK_TOLERANCE: f64 = 1e-10;

/// A single particle hopping around a ring of N sites of total length L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleModel {
    pub sites: usize,
    pub length: f64,
    pub speed: f64,
}

impl ParticleModel {
    pub fn new(sites: usize, length: f64, speed: f64) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidArgument("particle model needs a site".into()));
        }
        if !(length.is_finite() && length > 0.0) || !(speed.is_finite() && speed > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "length and speed must be positive, got L={length} v={speed}"
            )));
        }
        Ok(Self {
            sites,
            length,
            speed,
        })
    }

    /// λ = L/N.
    pub fn separation(&self) -> f64 {
        self.length / self.sites as f64
    }

    /// τ = λ/v.
    pub fn hop_time(&self) -> f64 {
        self.separation() / self.speed
    }
}

/// Σ_m |a_m|²·E_m.
pub fn average_energy(state: &QuantumState, spectrum: &Spectrum) -> Result<f64> {
    if state.orbit_id != spectrum.orbit_id {
        return Err(Error::OrbitMismatch {
            state: state.orbit_id,
            spectrum: spectrum.orbit_id,
        });
    }
    if state.len() != spectrum.len() {
        return Err(Error::LengthMismatch {
            left: state.len(),
            right: spectrum.len(),
        });
    }
    let energy = state.in_basis(Basis::Energy);
    Ok(energy
        .amplitudes
        .iter()
        .zip(&spectrum.eigenvalues)
        .map(|(a, e)| a.norm_sqr() * e)
        .sum())
}

/// ψ(x, t) = S(N, (x - v·t)/λ).
pub fn particle_amplitude(model: &ParticleModel, x: f64, t: f64) -> Complex64 {
    periodic_sinc(model.sites, (x - model.speed * t) / model.separation())
}

/// p = E/v = h/(2λ).
pub fn momentum(model: &ParticleModel, config: &GlobalConfig) -> f64 {
    config.h / (2.0 * model.separation())
}

/// Bandwidth measures of a periodic evolution. Frequencies are E/h.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WidthReport {
    /// Highest minus lowest occupied frequency.
    pub bandwidth: f64,
    pub nu_bar: f64,
    pub nu_0: f64,
    /// 2(ν̄ - ν₀).
    pub first_moment_width: f64,
    /// (N - 1)/T.
    pub b_min_states: f64,
    /// 1/(2τ_min); zero when fewer than two distinct states are required.
    pub b_min_pair: f64,
    pub tau_min: f64,
    pub num_distinct: usize,
    pub period: f64,
    pub bandwidth_bound_holds: bool,
    pub first_moment_bound_holds: bool,
}

impl WidthReport {
    /// The larger of the two minimum-bandwidth constraints.
    pub fn b_min(&self) -> f64 {
        self.b_min_states.max(self.b_min_pair)
    }

    pub fn bandwidth_slack(&self) -> f64 {
        self.bandwidth - self.b_min_states
    }

    pub fn first_moment_slack(&self) -> f64 {
        self.first_moment_width - self.b_min()
    }
}

/// Bandwidth, mean and lowest frequency, and the two minimum-bandwidth
/// bounds for a state assumed to pass through `num_distinct` mutually
/// orthogonal states in `period`. `tau_min` defaults to period/num_distinct.
pub fn width_report(
    state: &QuantumState,
    spectrum: &Spectrum,
    num_distinct: usize,
    period: f64,
    tau_min: Option<f64>,
) -> Result<WidthReport> {
    if num_distinct == 0 || !(period.is_finite() && period > 0.0) {
        return Err(Error::InvalidArgument(
            "need at least one distinct state and a positive period".into(),
        ));
    }
    let probs = state.in_basis(Basis::Energy).probabilities();
    if probs.len() != spectrum.len() {
        return Err(Error::LengthMismatch {
            left: probs.len(),
            right: spectrum.len(),
        });
    }
    let occupied: Vec<usize> = (0..probs.len())
        .filter(|&m| probs[m] > SUPPORT_THRESHOLD)
        .collect();
    let (&lo, &hi) = match (occupied.first(), occupied.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::EmptySupport),
    };
    let nu_0 = spectrum.frequency(lo);
    let bandwidth = spectrum.frequency(hi) - nu_0;
    let nu_bar = average_energy(state, spectrum)? / spectrum.h;
    let first_moment_width = 2.0 * (nu_bar - nu_0);
    let tau_min = tau_min.unwrap_or(period / num_distinct as f64);
    let b_min_states = (num_distinct - 1) as f64 / period;
    let b_min_pair = if num_distinct >= 2 {
        1.0 / (2.0 * tau_min)
    } else {
        0.0
    };
    let mut report = WidthReport {
        bandwidth,
        nu_bar,
        nu_0,
        first_moment_width,
        b_min_states,
        b_min_pair,
        tau_min,
        num_distinct,
        period,
        bandwidth_bound_holds: false,
        first_moment_bound_holds: false,
    };
    report.bandwidth_bound_holds = report.bandwidth_slack() >= -BOUND_SLACK_TOLERANCE;
    report.first_moment_bound_holds = report.first_moment_slack() >= -BOUND_SLACK_TOLERANCE;
    Ok(report)
}

/// Composite Simpson rule on [a, b] with `intervals` (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = (intervals.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Quadrature points per unit length for the second-moment integrals.
const MOMENT_POINTS_PER_UNIT: usize = 64;

/// ⟨(x - x̄)²⟩ over [0, N] with x̄ = N/2, using the large-N density
/// sin²(π(x - x̄))/(π(x - x̄))². Grows as N/(2π²).
pub fn second_moment(n: usize) -> f64 {
    let center = n as f64 / 2.0;
    simpson(
        |x| {
            let u = x - center;
            u * u * sinc_limit(u).norm_sqr()
        },
        0.0,
        n as f64,
        MOMENT_POINTS_PER_UNIT * n,
    )
}

/// The same moment with the exact periodic density |S(N, x - x̄)|².
/// Also linear in N, with slope ln 2/π² instead of 1/(2π²).
pub fn second_moment_periodic(n: usize) -> f64 {
    let center = n as f64 / 2.0;
    simpson(
        |x| {
            let u = x - center;
            u * u * periodic_sinc(n, u).norm_sqr()
        },
        0.0,
        n as f64,
        MOMENT_POINTS_PER_UNIT * n,
    )
}

/// exp(-πu²): unit height and unit area.
pub fn unit_gaussian(u: f64) -> f64 {
    (-PI * u * u).exp()
}

/// Variance of the unit gaussian by quadrature; analytically 1/(2π).
pub fn gaussian_variance() -> f64 {
    let mass = simpson(unit_gaussian, -8.0, 8.0, 4096);
    simpson(|u| u * u * unit_gaussian(u), -8.0, 8.0, 4096) / mass
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub u: f64,
    pub s2: f64,
    pub gauss: f64,
}

/// |S(N, u)|² next to exp(-πu²) on u = range·(2i - samples)/samples,
/// i = 0..=samples. Integer u land exactly on the grid whenever
/// samples/(2·range) is an integer.
pub fn figure_data(n: usize, range: f64, samples: usize) -> Result<Vec<FigureRow>> {
    if n < 2 {
        return Err(Error::InvalidArgument("figure needs N >= 2".into()));
    }
    if samples == 0 || !(range.is_finite() && range > 0.0) {
        return Err(Error::InvalidArgument(
            "figure needs a positive range and at least one interval".into(),
        ));
    }
    Ok((0..=samples)
        .map(|i| {
            let u = range * (2 * i) as f64 / samples as f64 - range;
            let u = if 2 * i == samples { 0.0 } else { u };
            FigureRow {
                u,
                s2: periodic_sinc(n, u).norm_sqr(),
                gauss: unit_gaussian(u),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Orbit;
    use crate::kernel::kernel_direct_sum;
    use crate::spectral::{config_basis_state, energy_eigenstate, energy_spectrum};

    fn orbit(n: usize) -> Orbit {
        Orbit::of_length(n, 1.0).unwrap()
    }

    #[test]
    fn average_energy_examples() {
        let cfg = GlobalConfig::default();
        let o = orbit(101);
        let e = average_energy(
            &config_basis_state(&o, 17).unwrap(),
            &energy_spectrum(&o, &cfg, false),
        )
        .unwrap();
        assert!((e - 100.0 / 202.0).abs() < 1e-12);

        let o = orbit(9);
        let spectrum = energy_spectrum(&o, &cfg, false);
        assert_eq!(
            average_energy(&energy_eigenstate(&o, 3).unwrap(), &spectrum).unwrap(),
            spectrum.eigenvalues[3]
        );

        for n in [1, 2, 7, 64] {
            let o = orbit(n);
            let e = average_energy(
                &config_basis_state(&o, 0).unwrap(),
                &energy_spectrum(&o, &cfg, true),
            )
            .unwrap();
            assert!((e - 0.5).abs() < 1e-12, "n={n} e={e}");
        }
    }

    #[test]
    fn average_energy_rejects_foreign_spectrum() {
        let cfg = GlobalConfig::default();
        let a = Orbit::new(0, vec![0, 1], 1.0).unwrap();
        let b = Orbit::new(1, vec![2, 3], 1.0).unwrap();
        let err = average_energy(
            &config_basis_state(&a, 0).unwrap(),
            &energy_spectrum(&b, &cfg, false),
        );
        assert!(matches!(
            err,
            Err(Error::OrbitMismatch {
                state: 0,
                spectrum: 1
            })
        ));
    }

    #[test]
    fn particle_examples() {
        let model = ParticleModel::new(10, 5.0, 2.0).unwrap();
        let lambda = model.separation();
        assert_eq!(
            particle_amplitude(&model, 1.2 * 2.0, 1.2),
            Complex64::new(1.0, 0.0)
        );
        assert!(particle_amplitude(&model, 3.0 * lambda + 0.8, 0.4).norm() < 1e-15);
        let t = 0.731;
        let total: f64 = (0..10)
            .map(|n| particle_amplitude(&model, n as f64 * lambda, t).norm_sqr())
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(ParticleModel::new(0, 1.0, 1.0).is_err());
        assert!(ParticleModel::new(3, -1.0, 1.0).is_err());
    }

    #[test]
    fn momentum_examples() {
        let cfg = GlobalConfig::default();
        let model = ParticleModel::new(4, 4.0, 1.0).unwrap();
        assert_eq!(momentum(&model, &cfg), 0.5);
        let halved = ParticleModel::new(8, 4.0, 1.0).unwrap();
        assert_eq!(momentum(&halved, &cfg), 1.0);
    }

    #[test]
    fn width_report_examples() {
        let cfg = GlobalConfig::default();
        let o = orbit(12);
        let spectrum = energy_spectrum(&o, &cfg, false);
        let r = width_report(
            &config_basis_state(&o, 5).unwrap(),
            &spectrum,
            12,
            12.0,
            None,
        )
        .unwrap();
        assert!((r.bandwidth - 11.0 / 12.0).abs() < 1e-15);
        assert!(r.bandwidth_bound_holds && r.first_moment_bound_holds);
        assert!((r.first_moment_width - 11.0 / 12.0).abs() < 1e-12);

        let r = width_report(&energy_eigenstate(&o, 4).unwrap(), &spectrum, 1, 12.0, None).unwrap();
        assert_eq!(r.bandwidth, 0.0);
        assert!(r.first_moment_width.abs() < 1e-15);

        let o = orbit(2);
        let spectrum = energy_spectrum(&o, &cfg, false);
        let r = width_report(
            &config_basis_state(&o, 0).unwrap(),
            &spectrum,
            2,
            2.0,
            Some(1.0),
        )
        .unwrap();
        assert!((r.first_moment_width - 0.5).abs() < 1e-15);
        assert!((r.first_moment_width - r.b_min_pair).abs() < 1e-15);

        let zero = QuantumState::new(0, Basis::Energy, vec![Complex64::new(0.0, 0.0); 2]);
        assert!(matches!(
            width_report(&zero, &spectrum, 2, 2.0, None),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn second_moment_examples() {
        let target = |n: usize| n as f64 / (2.0 * PI * PI);
        assert!((second_moment(1000) / target(1000) - 1.0).abs() < 0.05);
        assert!((second_moment(100) / target(100) - 1.0).abs() < 0.10);
        assert!((second_moment(1000) / second_moment(500) - 2.0).abs() < 0.1);
        let slope = 2f64.ln() / (PI * PI);
        assert!((second_moment_periodic(400) / (400.0 * slope) - 1.0).abs() < 0.01);
    }

    #[test]
    fn gaussian_variance_is_one_over_two_pi() {
        assert!((gaussian_variance() * 2.0 * PI - 1.0).abs() < 1e-6);
    }

    #[test]
    fn figure_examples() {
        let rows = figure_data(100, 2.0, 8).unwrap();
        assert_eq!(rows.len(), 9);
        let center = rows[4];
        assert_eq!((center.u, center.s2, center.gauss), (0.0, 1.0, 1.0));
        let one = rows[6];
        assert_eq!(one.u, 1.0);
        assert!(one.s2 < 1e-20);
        assert!((one.gauss - (-PI).exp()).abs() < 1e-15);
        let half = rows[5];
        assert_eq!(half.u, 0.5);
        assert!((half.s2 - kernel_direct_sum(100, 0.5, 0).unwrap().norm_sqr()).abs() < 1e-12);
        assert!((half.gauss - (-PI / 4.0).exp()).abs() < 1e-15);
        assert!(figure_data(1, 1.0, 4).is_err());
    }
}
