//! M-fold oversampled dynamics and its bandlimited basis.
//!
//! Inserting M-1 intermediate states between consecutive configurations of an
//! orbit gives an extended orbit of M·N states traversed in the same period
//! T. The lowest N energy eigenstates of that extended orbit, transformed
//! back, form the bandlimited configuration states
//!
//! ```text
//! |n⟩_N = (1/√M) Σ_k S(N, k/M - n) |k/M⟩,
//! ```
//!
//! which evolve exactly like the configuration states of the original orbit.
//! Extended states are indexed by the integer k; their time label k/M is
//! always formed as `k / M + (k % M) / M` so that regrouped sums agree bit
//! for bit.

use num_complex::Complex64;

use crate::config::GlobalConfig;
use crate::dynamics::Orbit;
use crate::error::{Error, Result};
use crate::kernel::periodic_sinc;
use crate::spectral::{evolve, inner, to_config_basis, Basis, QuantumState};

/// Largest extended orbit length M·N.
pub const MAX_EXTENDED_LEN: usize = 4096;

/// An orbit with M sub-steps per update interval.
#[derive(Debug, Clone, PartialEq)]
pub struct OversampledOrbit {
    base: Orbit,
    factor: usize,
}

impl OversampledOrbit {
    pub fn base(&self) -> &Orbit {
        &self.base
    }

    /// Oversampling factor M.
    pub fn factor(&self) -> usize {
        self.factor
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn extended_len(&self) -> usize {
        self.factor * self.base.len()
    }

    /// τ/M.
    pub fn step_time(&self) -> f64 {
        self.base.tau() / self.factor as f64
    }

    /// Same as the base period.
    pub fn period(&self) -> f64 {
        self.base.period()
    }

    /// The extended orbit as an ordinary orbit of length M·N with step τ/M.
    pub fn extended_orbit(&self) -> Orbit {
        Orbit::new(
            self.base.id(),
            (0..self.extended_len()).collect(),
            self.step_time(),
        )
        .expect("extended orbit is non-empty with positive step")
    }

    /// Time label of extended index k, in base update steps.
    pub fn time_label(&self, k: usize) -> f64 {
        label(k / self.factor, k % self.factor, self.factor)
    }
}

fn label(whole: usize, offset: usize, factor: usize) -> f64 {
    whole as f64 + offset as f64 / factor as f64
}

pub fn oversample(orbit: &Orbit, factor: usize) -> Result<OversampledOrbit> {
    if factor == 0 {
        return Err(Error::InvalidArgument(
            "oversampling factor must be at least 1".into(),
        ));
    }
    let len = factor.saturating_mul(orbit.len());
    if len > MAX_EXTENDED_LEN {
        return Err(Error::TooLarge {
            what: "oversampled orbit",
            size: len,
            limit: MAX_EXTENDED_LEN,
        });
    }
    Ok(OversampledOrbit {
        base: orbit.clone(),
        factor,
    })
}

/// A bandlimited configuration state |n⟩_N over the extended basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedBasisState {
    pub factor: usize,
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl BandlimitedBasisState {
    pub fn as_state(&self, orbit_id: usize) -> QuantumState {
        QuantumState::new(orbit_id, Basis::Configuration, self.amplitudes.clone())
    }
}

/// Energy-basis amplitudes of |n⟩_N: e^{-2πi·n·m/N}/√N on the lowest N
/// levels of the extended orbit, zero above.
fn bandlimited_energy_amplitudes(ov: &OversampledOrbit, n: usize) -> Vec<Complex64> {
    let base = ov.base_len();
    let scale = 1.0 / (base as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); ov.extended_len()];
    for (m, a) in amps.iter_mut().take(base).enumerate() {
        // n·m reduced mod N exactly
        let cycles = ((n * m) % base) as f64 / base as f64;
        *a = crate::kernel::cis_pi(-2.0 * cycles) * scale;
    }
    amps
}

/// |n⟩_N built by transforming the lowest N energy eigenstates of the
/// extended orbit back to its configuration basis.
pub fn bandlimited_basis_state(ov: &OversampledOrbit, n: usize) -> Result<BandlimitedBasisState> {
    if n >= ov.base_len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: ov.base_len(),
        });
    }
    let energy = QuantumState::new(
        ov.base.id(),
        Basis::Energy,
        bandlimited_energy_amplitudes(ov, n),
    );
    Ok(BandlimitedBasisState {
        factor: ov.factor,
        n,
        amplitudes: to_config_basis(&energy)?.amplitudes,
    })
}

/// |t⟩_N: evolve |0⟩_N under the extended Hamiltonian for `t` base steps.
pub fn bandlimited_evolve(ov: &OversampledOrbit, t: f64) -> Vec<Complex64> {
    let energy = QuantumState::new(
        ov.base.id(),
        Basis::Energy,
        bandlimited_energy_amplitudes(ov, 0),
    );
    // one base step spans M extended steps
    let cfg = GlobalConfig {
        tau: 1.0 / ov.factor as f64,
        ..GlobalConfig::default()
    };
    evolve(&energy, t, &cfg)
        .in_basis(Basis::Configuration)
        .amplitudes
}

/// (1/√M) Σ_k S(N, k/M - t) |k/M⟩ summed over k.
pub fn bandlimited_evolve_kernel(ov: &OversampledOrbit, t: f64) -> Vec<Complex64> {
    let scale = 1.0 / (ov.factor as f64).sqrt();
    (0..ov.extended_len())
        .map(|k| periodic_sinc(ov.base_len(), ov.time_label(k) - t) * scale)
        .collect()
}

/// The same state regrouped by offset class: (1/√M) Σ_m Σ_n S(N, n + m/M - t) |n + m/M⟩.
pub fn bandlimited_evolve_grouped(ov: &OversampledOrbit, t: f64) -> Vec<Complex64> {
    let scale = 1.0 / (ov.factor as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); ov.extended_len()];
    for offset in 0..ov.factor {
        for n in 0..ov.base_len() {
            let k = n * ov.factor + offset;
            out[k] = periodic_sinc(ov.base_len(), label(n, offset, ov.factor) - t) * scale;
        }
    }
    out
}

/// |⟨t′|t⟩_N - S(N, t′ - t)|.
pub fn verify_isomorphism(ov: &OversampledOrbit, t: f64, t_prime: f64) -> f64 {
    let a = bandlimited_evolve(ov, t_prime);
    let b = bandlimited_evolve(ov, t);
    (inner(&a, &b) - periodic_sinc(ov.base_len(), t_prime - t)).norm()
}

/// Amplitude profile of |x⟩_N for one oversampling factor, split by offset
/// class u = m/M.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub factor: usize,
    pub x: f64,
    /// `amplitudes[m][n]` = √M·⟨n + m/M | x⟩_N.
    pub amplitudes: Vec<Vec<Complex64>>,
}

impl ProfileTable {
    pub fn offset(&self, m: usize) -> f64 {
        m as f64 / self.factor as f64
    }

    /// Probability carried by offset class m: (1/M) Σ_n |amplitude|².
    pub fn class_weight(&self, m: usize) -> f64 {
        self.amplitudes[m].iter().map(|a| a.norm_sqr()).sum::<f64>() / self.factor as f64
    }

    /// Profile at a continuous offset u ∈ [0, 1), read as a step function.
    fn at(&self, u_index: usize, grid: usize, n: usize) -> Complex64 {
        self.amplitudes[u_index * self.factor / grid][n]
    }
}

/// Offset-class profiles of |x⟩_N for each factor in `factors`.
pub fn limit_superposition_profile(
    orbit: &Orbit,
    factors: &[usize],
    x: f64,
) -> Result<Vec<ProfileTable>> {
    let n = orbit.len();
    if !(0.0..n as f64).contains(&x) {
        return Err(Error::InvalidArgument(format!("x = {x} outside [0, {n})")));
    }
    factors
        .iter()
        .map(|&factor| {
            let ov = oversample(orbit, factor)?;
            let state = bandlimited_evolve(&ov, x);
            let root = (factor as f64).sqrt();
            let amplitudes = (0..factor)
                .map(|m| (0..n).map(|j| state[j * factor + m] * root).collect())
                .collect();
            Ok(ProfileTable {
                factor,
                x,
                amplitudes,
            })
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sup-norm distance between two profiles, both read as step functions of u
/// on the common refinement of their grids.
pub fn profile_sup_difference(a: &ProfileTable, b: &ProfileTable) -> Result<f64> {
    let na = a.amplitudes.first().map_or(0, Vec::len);
    let nb = b.amplitudes.first().map_or(0, Vec::len);
    if na != nb {
        return Err(Error::LengthMismatch {
            left: na,
            right: nb,
        });
    }
    let grid = a.factor / gcd(a.factor, b.factor) * b.factor;
    let mut sup: f64 = 0.0;
    for j in 0..grid {
        for n in 0..na {
            sup = sup.max((a.at(j, grid, n) - b.at(j, grid, n)).norm());
        }
    }
    Ok(sup)
}
