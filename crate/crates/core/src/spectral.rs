//! Quantum emulation of a single orbit.
//!
//! The energy eigenstates of an orbit of length N are the discrete Fourier
//! transforms of its configuration states,
//!
//! ```text
//! |E:m⟩ = (1/√N) Σ_n exp(+2πi·n·m/N) |n⟩,     |n⟩ = (1/√N) Σ_m exp(-2πi·n·m/N) |E:m⟩,
//! ```
//!
//! with eigenvalues m·h/T. Evolving for one update interval τ multiplies the
//! energy amplitudes by exp(-2πi·m/N), which carries |n⟩ to |n+1⟩. Evolving
//! for a fractional time gives the bandlimited interpolation
//! `|t⟩ = Σ_n S(N, n - t) |n⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::GlobalConfig;
use crate::dft::{dft, Direction};
use crate::dynamics::Orbit;
use crate::error::{Error, Result};
use crate::kernel::{cis_pi, periodic_sinc, periodic_sinc_shifted};

/// Largest orbit for which [`unit_step`] materializes a dense matrix.
pub const MAX_DENSE_ORBIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Configuration,
    Energy,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Configuration => "configuration",
            Basis::Energy => "energy",
        }
    }
}

/// A pure state on one orbit, stored in either basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    pub orbit_id: usize,
    pub basis: Basis,
    pub amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(orbit_id: usize, basis: Basis, amplitudes: Vec<Complex64>) -> Self {
        Self {
            orbit_id,
            basis,
            amplitudes,
        }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// ⟨self|other⟩, computed in a common basis.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let other = other.in_basis(self.basis);
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    /// |⟨self|other⟩|.
    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        self.inner(other).map(|z| z.norm())
    }

    pub fn in_basis(&self, basis: Basis) -> QuantumState {
        match (self.basis, basis) {
            (Basis::Configuration, Basis::Energy) => transform(self, Basis::Energy),
            (Basis::Energy, Basis::Configuration) => transform(self, Basis::Configuration),
            _ => self.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StateRecord::from(self)).expect("state record serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let rec: StateRecord = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        rec.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct StateRecord {
    orbit: usize,
    basis: Basis,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl From<&QuantumState> for StateRecord {
    fn from(s: &QuantumState) -> Self {
        Self {
            orbit: s.orbit_id,
            basis: s.basis,
            re: s.amplitudes.iter().map(|a| a.re).collect(),
            im: s.amplitudes.iter().map(|a| a.im).collect(),
        }
    }
}

impl TryFrom<StateRecord> for QuantumState {
    type Error = Error;

    fn try_from(rec: StateRecord) -> Result<Self> {
        if rec.re.len() != rec.im.len() {
            return Err(Error::LengthMismatch {
                left: rec.re.len(),
                right: rec.im.len(),
            });
        }
        let amplitudes = rec
            .re
            .into_iter()
            .zip(rec.im)
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        Ok(QuantumState::new(rec.orbit, rec.basis, amplitudes))
    }
}

/// Σ conj(a_i)·b_i.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn transform(state: &QuantumState, target: Basis) -> QuantumState {
    let direction = match target {
        Basis::Energy => Direction::Forward,
        Basis::Configuration => Direction::Inverse,
    };
    QuantumState::new(state.orbit_id, target, dft(&state.amplitudes, direction))
}

/// Energy eigenvalues of one orbit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub orbit_id: usize,
    pub eigenvalues: Vec<f64>,
    pub zero_point_included: bool,
    pub period: f64,
    pub h: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Level spacing h/T.
    pub fn spacing(&self) -> f64 {
        self.h / self.period
    }

    /// Eigenfrequency E_m/h.
    pub fn frequency(&self, m: usize) -> f64 {
        self.eigenvalues[m] / self.h
    }
}

/// E_m = m·h/T_d, plus h/(2T_d) when `zero_point` is set.
pub fn energy_spectrum(orbit: &Orbit, config: &GlobalConfig, zero_point: bool) -> Spectrum {
    let period = orbit.period();
    let spacing = config.h / period;
    let offset = if zero_point { 0.5 * spacing } else { 0.0 };
    Spectrum {
        orbit_id: orbit.id(),
        eigenvalues: (0..orbit.len())
            .map(|m| m as f64 * spacing + offset)
            .collect(),
        zero_point_included: zero_point,
        period,
        h: config.h,
    }
}

/// |n⟩ in the configuration basis.
pub fn config_basis_state(orbit: &Orbit, n: usize) -> Result<QuantumState> {
    let len = orbit.len();
    if n >= len {
        return Err(Error::IndexOutOfRange { index: n, len });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
    amplitudes[n] = Complex64::new(1.0, 0.0);
    Ok(QuantumState::new(
        orbit.id(),
        Basis::Configuration,
        amplitudes,
    ))
}

/// |E:m⟩ in the energy basis.
pub fn energy_eigenstate(orbit: &Orbit, m: usize) -> Result<QuantumState> {
    let len = orbit.len();
    if m >= len {
        return Err(Error::IndexOutOfRange { index: m, len });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
    amplitudes[m] = Complex64::new(1.0, 0.0);
    Ok(QuantumState::new(orbit.id(), Basis::Energy, amplitudes))
}

pub fn to_energy_basis(state: &QuantumState) -> Result<QuantumState> {
    if state.basis != Basis::Configuration {
        return Err(Error::WrongBasis {
            expected: Basis::Configuration.name(),
            found: state.basis.name(),
        });
    }
    Ok(transform(state, Basis::Energy))
}

pub fn to_config_basis(state: &QuantumState) -> Result<QuantumState> {
    if state.basis != Basis::Energy {
        return Err(Error::WrongBasis {
            expected: Basis::Energy.name(),
            found: state.basis.name(),
        });
    }
    Ok(transform(state, Basis::Configuration))
}

/// Reduce `x` into [-p/2, p/2].
fn reduce(x: f64, p: f64) -> f64 {
    x - p * (x / p).round()
}

/// exp(-iHt/ħ) applied to `state`; the result is in the same basis as the input.
///
/// Energy amplitude m picks up exp(-2πi·t·m/(N·τ)), where τ is `config.tau`.
/// With `config.zero_point` every amplitude also picks up the global phase
/// exp(-iπ·t/(N·τ)).
pub fn evolve(state: &QuantumState, t: f64, config: &GlobalConfig) -> QuantumState {
    let n = state.len();
    if n == 0 {
        return state.clone();
    }
    let nf = n as f64;
    let steps = t / config.tau;
    let reduced = reduce(steps, nf);
    let mut energy = state.in_basis(Basis::Energy);
    for (m, a) in energy.amplitudes.iter_mut().enumerate() {
        *a *= cis_pi(-2.0 * reduced * m as f64 / nf);
    }
    if config.zero_point {
        let global = cis_pi(-reduce(steps, 2.0 * nf) / nf);
        for a in &mut energy.amplitudes {
            *a *= global;
        }
    }
    energy.in_basis(state.basis)
}

/// The one-step evolution operator as a dense N×N matrix.
pub fn unit_step(orbit: &Orbit) -> Result<DMatrix<Complex64>> {
    let n = orbit.len();
    if n > MAX_DENSE_ORBIT {
        return Err(Error::TooLarge {
            what: "dense unit-step matrix",
            size: n,
            limit: MAX_DENSE_ORBIT,
        });
    }
    let cfg = GlobalConfig::default();
    let mut u = DMatrix::zeros(n, n);
    for col in 0..n {
        let image = evolve(&config_basis_state(orbit, col)?, cfg.tau, &cfg);
        for (row, a) in image.amplitudes.iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}

/// Amplitudes S(N, n - t) of the continuous-time state |t⟩, with `t`
/// measured in update steps.
pub fn interpolate_config(orbit: &Orbit, t: f64) -> Vec<Complex64> {
    let n = orbit.len();
    (0..n).map(|i| periodic_sinc(n, i as f64 - t)).collect()
}

/// A periodic function with N consecutive Fourier frequencies k/T..(k+N-1)/T.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedFunction {
    /// a_m for m = k..k+N-1.
    pub coefficients: Vec<Complex64>,
    pub period: f64,
    pub lowest_index: i64,
}

impl BandlimitedFunction {
    pub fn new(coefficients: Vec<Complex64>, period: f64, lowest_index: i64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("no coefficients".into()));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "period must be positive, got {period}"
            )));
        }
        Ok(Self {
            coefficients,
            period,
            lowest_index,
        })
    }

    /// Coefficients drawn uniformly from the unit square.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, period: f64, lowest_index: i64) -> Self {
        let coefficients = (0..n.max(1))
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        Self {
            coefficients,
            period,
            lowest_index,
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.coefficients.len()
    }

    /// f(t) = Σ a_m exp(2πi·m·t/T).
    pub fn eval(&self, t: f64) -> Complex64 {
        let x = reduce(t / self.period, 1.0);
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let m = self.lowest_index + j as i64;
                a * cis_pi(2.0 * reduce(m as f64 * x, 1.0))
            })
            .sum()
    }

    /// f at `count` equally spaced times j·T/count.
    pub fn samples(&self, count: usize) -> Vec<Complex64> {
        (0..count)
            .map(|j| self.eval(j as f64 * self.period / count as f64))
            .collect()
    }

    /// The N samples that determine f, at spacing T/N.
    pub fn nyquist_samples(&self) -> Vec<Complex64> {
        self.samples(self.bandwidth())
    }
}

/// f(t) = Σ_n f(nτ)·S_k(N, t/τ - n) from N samples at spacing τ.
pub fn reconstruct(samples: &[Complex64], t: f64, k: i64, tau: f64) -> Complex64 {
    let n = samples.len();
    let x = t / tau;
    samples
        .iter()
        .enumerate()
        .map(|(j, f)| f * periodic_sinc_shifted(n, x - j as f64, k))
        .sum()
}

/// (1/N) Σ_n f(nτ)·g(nτ).
pub fn bandlimited_product_sum(f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    if f.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let sum: Complex64 = f.iter().zip(g).map(|(a, b)| a * b).sum();
    Ok(sum / f.len() as f64)
}

/// Whether N samples integrate f·g exactly, for bands of width N starting at
/// `k_f` and `k_g`: the product's frequencies k_f+k_g..k_f+k_g+2N-2 must hold
/// no nonzero multiple of N.
pub fn product_sum_is_exact(n: usize, k_f: i64, k_g: i64) -> bool {
    let n = n as i64;
    let lo = k_f + k_g;
    let hi = lo + 2 * (n - 1);
    let first = lo.div_euclid(n) + i64::from(lo.rem_euclid(n) != 0);
    let last = hi.div_euclid(n);
    (first..=last).all(|q| q == 0)
}

/// Largest entry of |(N/G)·Σ_j |t_j⟩⟨t_j| - I| over the grid t_j = j·N/G
/// (in update steps), i.e. the closure integral with measure dt/τ.
pub fn closure_defect(orbit: &Orbit, grid: usize) -> Result<f64> {
    let n = orbit.len();
    if grid < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "grid of {grid} points is below 2N = {}",
            2 * n
        )));
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..grid {
        let t = j as f64 * n as f64 / grid as f64;
        let v = interpolate_config(orbit, t);
        for (r, vr) in v.iter().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                acc[r * n + c] += vr * vc.conj();
            }
        }
    }
    let weight = n as f64 / grid as f64;
    let mut defect: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            let target = if r == c { 1.0 } else { 0.0 };
            defect = defect.max((acc[r * n + c] * weight - target).norm());
        }
    }
    Ok(defect)
}

/// |∫_0^T f(t)·⟨t′|t⟩ dt/τ - f(t′)| for f on the orbit's own band 0..N-1.
///
/// The integrand has frequencies -(N-1)..N-1 in units of 1/T, so a uniform
/// 2N-point sum evaluates the integral exactly.
pub fn dirac_defect(orbit: &Orbit, f: &BandlimitedFunction, t_prime: f64) -> Result<f64> {
    let n = orbit.len();
    let period = orbit.period();
    if f.bandwidth() != n {
        return Err(Error::BandwidthMismatch(format!(
            "function has {} frequencies, orbit has {n}",
            f.bandwidth()
        )));
    }
    if f.lowest_index != 0 {
        return Err(Error::BandwidthMismatch(format!(
            "function band starts at {}, kernel band starts at 0",
            f.lowest_index
        )));
    }
    if (f.period - period).abs() > 1e-12 * period {
        return Err(Error::BandwidthMismatch(format!(
            "function period {} differs from orbit period {period}",
            f.period
        )));
    }
    let tau = orbit.tau();
    let grid = 2 * n;
    let integral: Complex64 = (0..grid)
        .map(|j| {
            let t = j as f64 * period / grid as f64;
            f.eval(t) * periodic_sinc(n, (t_prime - t) / tau)
        })
        .sum::<Complex64>()
        * (n as f64 / grid as f64);
    Ok((integral - f.eval(t_prime)).norm())
}

/// Entrywise max |A - B|.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_direct_sum;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const TWO_PI: f64 = 2.0 * PI;

    fn orbit(n: usize) -> Orbit {
        Orbit::of_length(n, 1.0).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn spectrum_examples() {
        let cfg = GlobalConfig::default();
        assert_eq!(
            energy_spectrum(&orbit(4), &cfg, false).eigenvalues,
            vec![0.0, 0.25, 0.5, 0.75]
        );
        assert_eq!(
            energy_spectrum(&orbit(1), &cfg, false).eigenvalues,
            vec![0.0]
        );
        assert_eq!(
            energy_spectrum(&orbit(2), &cfg, true).eigenvalues,
            vec![0.25, 0.75]
        );
    }

    #[test]
    fn config_state_examples() {
        let o = orbit(3);
        let s = config_basis_state(&o, 0).unwrap();
        assert_eq!(s.amplitudes, vec![c(1.0), c(0.0), c(0.0)]);
        let e = to_energy_basis(&s).unwrap();
        for a in &e.amplitudes {
            assert!((a - c(1.0 / 3f64.sqrt())).norm() < 1e-15);
        }
        assert!(matches!(
            config_basis_state(&o, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn energy_amplitudes_of_config_state_follow_inverse_transform() {
        let o = orbit(6);
        let e = to_energy_basis(&config_basis_state(&o, 2).unwrap()).unwrap();
        for (m, a) in e.amplitudes.iter().enumerate() {
            let expected = Complex64::from_polar(1.0 / 6f64.sqrt(), -TWO_PI * 2.0 * m as f64 / 6.0);
            assert!((a - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn basis_change_errors() {
        let s = config_basis_state(&orbit(3), 1).unwrap();
        assert!(matches!(to_config_basis(&s), Err(Error::WrongBasis { .. })));
        let e = to_energy_basis(&s).unwrap();
        assert!(matches!(to_energy_basis(&e), Err(Error::WrongBasis { .. })));
    }

    #[test]
    fn uniform_energy_state_is_config_zero() {
        let n = 5;
        let amps = vec![c(1.0 / (n as f64).sqrt()); n];
        let s = to_config_basis(&QuantumState::new(0, Basis::Energy, amps)).unwrap();
        assert!((s.amplitudes[0] - c(1.0)).norm() < 1e-15);
        assert!(s.amplitudes[1..].iter().all(|a| a.norm() < 1e-15));
    }

    #[test]
    fn evolve_examples() {
        let cfg = GlobalConfig::default();
        let o = orbit(7);
        for n in 0..7 {
            let s = config_basis_state(&o, n).unwrap();
            let next = config_basis_state(&o, (n + 1) % 7).unwrap();
            let f = evolve(&s, cfg.tau, &cfg).fidelity(&next).unwrap();
            assert!(f >= 1.0 - 1e-10);
        }
        let s = config_basis_state(&o, 3).unwrap();
        let same = evolve(&s, 0.0, &cfg);
        assert!(same
            .amplitudes
            .iter()
            .zip(&s.amplitudes)
            .all(|(a, b)| (a - b).norm() < 1e-15));
        let full = evolve(&s, 7.0 * cfg.tau, &cfg);
        assert!((s.fidelity(&full).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolve_with_zero_point_adds_global_phase_only() {
        let base = GlobalConfig {
            tau: 0.5,
            ..Default::default()
        };
        let zp = GlobalConfig {
            zero_point: true,
            ..base
        };
        let o = orbit(4);
        let s = config_basis_state(&o, 0).unwrap();
        let a = evolve(&s, 0.5, &base);
        let b = evolve(&s, 0.5, &zp);
        // global phase exp(-iπ·t/T) with t/T = 1/4
        let phase = Complex64::from_polar(1.0, -PI / 4.0);
        for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
            assert!((x * phase - y).norm() < 1e-14);
        }
        // a full period leaves the zero-point state at -1 times itself
        let full = evolve(&s, 2.0, &zp);
        assert!((full.amplitudes[0] + c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn unit_step_examples() {
        let u = unit_step(&orbit(2)).unwrap();
        let swap = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        assert!(max_abs_diff(&u, &swap) < 1e-10);

        let u = unit_step(&orbit(5)).unwrap();
        let u5 = u.pow(5);
        assert!(max_abs_diff(&u5, &DMatrix::identity(5, 5)) < 1e-9);
        let unitarity = u.adjoint() * &u;
        assert!(max_abs_diff(&unitarity, &DMatrix::identity(5, 5)) < 1e-10);

        let u = unit_step(&orbit(3)).unwrap();
        let e2 = nalgebra::DVector::from_vec(vec![c(0.0), c(0.0), c(1.0)]);
        let out = u * e2;
        assert!((out[0] - c(1.0)).norm() < 1e-10);
    }

    #[test]
    fn unit_step_size_limit() {
        assert!(matches!(
            unit_step(&orbit(MAX_DENSE_ORBIT + 1)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn interpolation_examples() {
        let v = interpolate_config(&orbit(5), 2.0);
        for (n, a) in v.iter().enumerate() {
            let expected = if n == 2 { 1.0 } else { 0.0 };
            assert!((a - c(expected)).norm() < 1e-15);
        }
        let v = interpolate_config(&orbit(2), 0.5);
        assert!((v[0] - kernel_direct_sum(2, -0.5, 0).unwrap()).norm() < 1e-14);
        assert!((v[1] - kernel_direct_sum(2, 0.5, 0).unwrap()).norm() < 1e-14);
        for a in v {
            assert!((a.norm() - 0.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn reconstruct_examples() {
        // f(t) = exp(2πi t/T), N = 8, τ = 1
        let n = 8;
        let samples: Vec<_> = (0..n)
            .map(|j| Complex64::from_polar(1.0, TWO_PI * j as f64 / n as f64))
            .collect();
        let got = reconstruct(&samples, 3.5, 0, 1.0);
        let expected = Complex64::from_polar(1.0, TWO_PI * 3.5 / 8.0);
        assert!((got - expected).norm() < 1e-10);

        let constant = vec![Complex64::new(0.3, -1.2); 6];
        for t in [0.0, 0.7, 2.25, 5.9] {
            assert!((reconstruct(&constant, t, 0, 1.0) - constant[0]).norm() < 1e-10);
        }
        assert_eq!(reconstruct(&samples, 3.0, 0, 1.0), samples[3]);
    }

    #[test]
    fn product_sum_examples() {
        let ones = vec![c(1.0); 5];
        assert!((bandlimited_product_sum(&ones, &ones).unwrap() - c(1.0)).norm() < 1e-15);

        let f: Vec<_> = (0..4)
            .map(|j| Complex64::from_polar(1.0, TWO_PI * j as f64 / 4.0))
            .collect();
        let g: Vec<_> = f.iter().map(|z| z.conj()).collect();
        assert!((bandlimited_product_sum(&f, &g).unwrap() - c(1.0)).norm() < 1e-15);

        assert!(matches!(
            bandlimited_product_sum(&f, &ones),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn product_sum_exactness_condition() {
        // mirrored bands fold exactly onto frequency 0
        assert!(product_sum_is_exact(4, 0, -3));
        assert!(product_sum_is_exact(4, 2, -5));
        // two non-negative bands alias frequency N onto 0
        assert!(!product_sum_is_exact(4, 0, 0));
        assert!(product_sum_is_exact(1, 0, 0));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure_defect(&orbit(1), 2).unwrap(), 0.0);
        assert!(closure_defect(&orbit(8), 64).unwrap() < 1e-9);
        assert!(closure_defect(&orbit(8), 16).unwrap() < 1e-9);
        assert!(closure_defect(&orbit(8), 15).is_err());
    }

    #[test]
    fn dirac_examples() {
        let o = orbit(6);
        let mut coeffs = vec![c(0.0); 6];
        coeffs[0] = Complex64::new(0.7, 0.2);
        let constant = BandlimitedFunction::new(coeffs.clone(), 6.0, 0).unwrap();
        assert!(dirac_defect(&o, &constant, 2.3).unwrap() < 1e-10);

        coeffs[0] = c(0.0);
        coeffs[1] = c(1.0);
        let mode = BandlimitedFunction::new(coeffs, 6.0, 0).unwrap();
        assert!(dirac_defect(&o, &mode, 0.3 * 6.0).unwrap() < 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let f = BandlimitedFunction::random(&mut rng, 6, 6.0, 0);
        assert!(dirac_defect(&o, &f, rng.random_range(0.0..6.0)).unwrap() < 1e-8);

        let shifted = BandlimitedFunction::random(&mut rng, 6, 6.0, 2);
        assert!(matches!(
            dirac_defect(&o, &shifted, 1.0),
            Err(Error::BandwidthMismatch(_))
        ));
        let narrow = BandlimitedFunction::random(&mut rng, 5, 6.0, 0);
        assert!(matches!(
            dirac_defect(&o, &narrow, 1.0),
            Err(Error::BandwidthMismatch(_))
        ));
    }

    #[test]
    fn state_json_shape() {
        let s = QuantumState::new(
            2,
            Basis::Configuration,
            vec![c(1.0), Complex64::new(0.0, -0.5)],
        );
        let json = s.to_json();
        assert_eq!(
            json,
            serde_json::json!({"orbit": 2, "basis": "configuration", "re": [1.0, 0.0], "im": [0.0, -0.5]})
        );
        assert_eq!(QuantumState::from_json(&json).unwrap(), s);
        let bad = serde_json::json!({"orbit": 0, "basis": "energy", "re": [1.0], "im": []});
        assert!(QuantumState::from_json(&bad).is_err());
    }
}
