//! The full invariant suite behind `verify`.
//!
//! Every check gets its own random stream derived from the seed, so the
//! report is identical whether checks run in parallel or not. Spectral
//! checks depend only on orbit length and run once per distinct length.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use orbitq::observables::BOUND_SLACK_TOLERANCE;
use orbitq::oversample::{bandlimited_evolve_grouped, bandlimited_evolve_kernel};
use orbitq::spectral::{inner, MAX_DENSE_ORBIT};
use orbitq::{
    average_energy, bandlimited_basis_state, bandlimited_evolve, config_basis_state,
    decompose_orbits, energy_spectrum, evolve, from_two_channel_lga, interpolate_config,
    kernel_direct_sum, momentum, orbit_of, oversample, particle_amplitude, periodic_sinc,
    reconstruct, step, width_report, BandlimitedFunction, Basis, ClassicalDynamics, DynamicsFile,
    GlobalConfig, Orbit, OrbitDecomposition, ParticleModel, QuantumState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// At most this many distinct orbit lengths get the spectral checks.
pub const MAX_LENGTHS: usize = 24;
/// At most this many positions per orbit for per-state checks.
pub const MAX_POSITIONS: usize = 256;
/// At most this many orbits for per-orbit dynamics checks.
pub const MAX_ORBITS: usize = 1000;
pub const OVERSAMPLE_FACTORS: [usize; 4] = [1, 2, 4, 8];
const MAX_OVERSAMPLE_LENGTHS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn measured(name: &str, defect: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            defect,
            tolerance,
            pass: defect <= tolerance,
            error: None,
        }
    }

    fn failed(name: &str, tolerance: f64, error: String) -> Self {
        Self {
            name: name.to_string(),
            defect: f64::INFINITY,
            tolerance,
            pass: false,
            error: Some(error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub num_states: usize,
    pub num_orbits: usize,
    /// Distinct orbit lengths that went through the spectral checks.
    pub lengths_checked: Vec<usize>,
    /// Distinct lengths above the dense limit, not checked spectrally.
    pub lengths_skipped: Vec<usize>,
    pub oversample_lengths: Vec<usize>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl VerificationReport {
    fn from_checks(seed: u64, ctx: Option<&Context>, checks: Vec<Check>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        Self {
            seed,
            num_states: ctx.map_or(0, |c| c.dynamics.num_states()),
            num_orbits: ctx.map_or(0, |c| c.decomposition.orbits().len()),
            lengths_checked: ctx.map_or_else(Vec::new, |c| c.lengths.clone()),
            lengths_skipped: ctx.map_or_else(Vec::new, |c| c.skipped.clone()),
            oversample_lengths: ctx.map_or_else(Vec::new, |c| c.oversample_lengths.clone()),
            checks,
            all_pass,
        }
    }
}

struct Context {
    dynamics: ClassicalDynamics,
    decomposition: OrbitDecomposition,
    cfg: GlobalConfig,
    lengths: Vec<usize>,
    skipped: Vec<usize>,
    oversample_lengths: Vec<usize>,
}

/// Up to `cap` items spread evenly over `items`, first and last included.
fn spread<T: Copy>(items: &[T], cap: usize) -> Vec<T> {
    if items.len() <= cap {
        return items.to_vec();
    }
    (0..cap)
        .map(|i| items[i * (items.len() - 1) / (cap - 1)])
        .collect()
}

fn positions(n: usize) -> Vec<usize> {
    spread(&(0..n).collect::<Vec<_>>(), MAX_POSITIONS)
}

impl Context {
    fn new(dynamics: ClassicalDynamics, cfg: GlobalConfig) -> orbitq::Result<Self> {
        let decomposition = decompose_orbits(&dynamics)?;
        let distinct: BTreeSet<usize> = decomposition.orbits().iter().map(Orbit::len).collect();
        let (dense, skipped): (Vec<usize>, Vec<usize>) =
            distinct.into_iter().partition(|&n| n <= MAX_DENSE_ORBIT);
        let lengths = spread(&dense, MAX_LENGTHS);
        let largest_factor = OVERSAMPLE_FACTORS[OVERSAMPLE_FACTORS.len() - 1];
        let eligible: Vec<usize> = lengths
            .iter()
            .copied()
            .filter(|&n| n * largest_factor <= orbitq::oversample::MAX_EXTENDED_LEN)
            .collect();
        let oversample_lengths = if eligible.is_empty() {
            vec![5]
        } else {
            spread(&eligible, MAX_OVERSAMPLE_LENGTHS)
        };
        Ok(Self {
            dynamics,
            decomposition,
            cfg,
            lengths,
            skipped,
            oversample_lengths,
        })
    }

    fn orbit(&self, n: usize) -> Orbit {
        Orbit::of_length(n, self.cfg.tau).expect("lengths are positive")
    }
}

type CheckFn = fn(&Context, &mut ChaCha8Rng) -> orbitq::Result<f64>;

/// Name, tolerance and body of every check, in report order.
const CHECKS: &[(&str, f64, CheckFn)] = &[
    ("dynamics.partition", 0.0, dynamics_partition),
    ("dynamics.full_period_return", 0.0, dynamics_full_period),
    (
        "dynamics.orbit_of_matches_decomposition",
        0.0,
        dynamics_orbit_of,
    ),
    ("dynamics.lga_bijective", 0.0, dynamics_lga),
    ("kernel.kronecker", 1e-12, kernel_kronecker),
    ("kernel.periodicity", 1e-12, kernel_periodicity),
    ("kernel.closed_form_vs_direct_sum", 1e-11, kernel_oracle),
    ("kernel.conjugate_symmetry", 1e-12, kernel_conjugate),
    ("kernel.partition_of_unity", 1e-10, kernel_partition),
    ("spectral.step_fidelity", 1e-10, spectral_isomorphism),
    ("spectral.norm_preserved", 1e-12, spectral_unitarity),
    (
        "spectral.interpolation_matches_evolution",
        1e-10,
        spectral_interpolation,
    ),
    ("spectral.overlap_is_kernel", 1e-10, spectral_overlap),
    ("spectral.average_energy", 1e-10, spectral_energy),
    (
        "spectral.reconstruct_linear_and_exact",
        1e-9,
        spectral_reconstruct,
    ),
    ("oversample.average_energy", 1e-10, oversample_energy),
    ("oversample.step_fidelity", 1e-10, oversample_isomorphism),
    ("oversample.regrouping_exact", 0.0, oversample_regrouping),
    (
        "oversample.factor_independence",
        1e-9,
        oversample_independence,
    ),
    (
        "observables.configuration_bandwidth",
        1e-12,
        observables_bandwidth,
    ),
    (
        "observables.first_moment_bound",
        BOUND_SLACK_TOLERANCE,
        observables_first_moment,
    ),
    (
        "observables.particle_normalization",
        1e-10,
        observables_normalization,
    ),
    (
        "observables.particle_localization",
        1e-12,
        observables_localization,
    ),
    (
        "observables.momentum_separation",
        1e-12,
        observables_momentum,
    ),
];

/// Number of checks in a report for valid dynamics.
pub fn check_count() -> usize {
    CHECKS.len() + 1
}

/// Runs the whole suite. Dynamics that fail to build produce a single
/// failed "bijectivity" check.
pub fn run_verify(file: &DynamicsFile, cfg: &GlobalConfig) -> VerificationReport {
    let dynamics = match file.build() {
        Ok(d) => d,
        Err(e) => {
            return VerificationReport::from_checks(
                cfg.rng_seed,
                None,
                vec![Check::failed("bijectivity", 0.0, e.to_string())],
            )
        }
    };
    let ctx = match Context::new(dynamics, *cfg) {
        Ok(c) => c,
        Err(e) => {
            return VerificationReport::from_checks(
                cfg.rng_seed,
                None,
                vec![Check::failed("dynamics.partition", 0.0, e.to_string())],
            )
        }
    };
    let mut checks = vec![Check::measured("bijectivity", 0.0, 0.0)];
    checks.par_extend(
        CHECKS
            .par_iter()
            .enumerate()
            .map(|(i, &(name, tol, body))| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
                rng.set_stream(i as u64);
                match body(&ctx, &mut rng) {
                    Ok(defect) => Check::measured(name, defect, tol),
                    Err(e) => Check::failed(name, tol, e.to_string()),
                }
            }),
    );
    VerificationReport::from_checks(cfg.rng_seed, Some(&ctx), checks)
}

fn count(flags: impl Iterator<Item = bool>) -> f64 {
    flags.filter(|&bad| bad).count() as f64
}

fn dynamics_partition(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let d = &ctx.decomposition;
    let total: usize = d.orbits().iter().map(Orbit::len).sum();
    let mut bad = total.abs_diff(ctx.dynamics.num_states()) as f64;
    bad += count((0..ctx.dynamics.num_states()).map(|s| match d.locate(s) {
        Some((o, p)) => d.orbits()[o].members().get(p) != Some(&s),
        None => true,
    }));
    Ok(bad)
}

fn sampled_orbits(ctx: &Context) -> Vec<&Orbit> {
    let all: Vec<&Orbit> = ctx.decomposition.orbits().iter().collect();
    spread(&all, MAX_ORBITS)
}

fn dynamics_full_period(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut bad = 0.0;
    for orbit in sampled_orbits(ctx) {
        let n = orbit.len();
        for &p in &spread(&(0..n).collect::<Vec<_>>(), 4) {
            let c = orbit.members()[p];
            if step(&ctx.dynamics, c, n as i64)? != c {
                bad += 1.0;
            }
        }
    }
    Ok(bad)
}

fn dynamics_orbit_of(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut bad = 0.0;
    for orbit in sampled_orbits(ctx) {
        let start = orbit.members()[orbit.len() / 2];
        let found = orbit_of(&ctx.dynamics, start)?;
        if found.id() != orbit.id() || found.members() != orbit.members() {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn dynamics_lga(_: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut bad = 0.0;
    for sites in 1..=6 {
        for reflect in [false, true] {
            let ok = from_two_channel_lga(sites, reflect)
                .and_then(|d| decompose_orbits(&d))
                .map(|dec| dec.orbits().iter().map(Orbit::len).sum::<usize>() == 1 << (2 * sites))
                .unwrap_or(false);
            if !ok {
                bad += 1.0;
            }
        }
    }
    Ok(bad)
}

fn random_kernel_args(rng: &mut ChaCha8Rng) -> (usize, f64) {
    let n = rng.random_range(1..=1024usize);
    let u = rng.random_range(-2.0 * n as f64..2.0 * n as f64);
    (n, u)
}

fn kernel_kronecker(_: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(1..=1024usize);
        let span = 3 * n as i64;
        for _ in 0..40 {
            let k = rng.random_range(-span..=span);
            let s = periodic_sinc(n, k as f64);
            if k.rem_euclid(n as i64) == 0 {
                if s != Complex64::new(1.0, 0.0) {
                    return Ok(f64::INFINITY);
                }
            } else {
                worst = worst.max(s.norm());
            }
        }
    }
    Ok(worst)
}

fn kernel_periodicity(_: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    Ok((0..2000)
        .map(|_| {
            let (n, u) = random_kernel_args(rng);
            (periodic_sinc(n, u + n as f64) - periodic_sinc(n, u)).norm()
        })
        .fold(0.0, f64::max))
}

fn kernel_oracle(_: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (n, u) = random_kernel_args(rng);
        worst = worst.max((periodic_sinc(n, u) - kernel_direct_sum(n, u, 0)?).norm());
    }
    Ok(worst)
}

fn kernel_conjugate(_: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    Ok((0..2000)
        .map(|_| {
            let (n, u) = random_kernel_args(rng);
            (periodic_sinc(n, -u) - periodic_sinc(n, u).conj()).norm()
        })
        .fold(0.0, f64::max))
}

fn kernel_partition(_: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    Ok((0..200)
        .map(|_| {
            let n = rng.random_range(1..=512usize);
            let t = rng.random_range(-(n as f64)..n as f64);
            let sum: Complex64 = (0..n).map(|j| periodic_sinc(n, j as f64 - t)).sum();
            (sum - 1.0).norm()
        })
        .fold(0.0, f64::max))
}

fn over_lengths(ctx: &Context, f: impl Fn(&Orbit) -> orbitq::Result<f64>) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        worst = worst.max(f(&ctx.orbit(n))?);
    }
    Ok(worst)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> QuantumState {
    let amps: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    QuantumState::new(
        0,
        Basis::Configuration,
        amps.iter().map(|a| a / norm).collect(),
    )
}

fn spectral_isomorphism(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    over_lengths(ctx, |orbit| {
        let n = orbit.len();
        let mut worst: f64 = 0.0;
        for p in positions(n) {
            let moved = evolve(&config_basis_state(orbit, p)?, ctx.cfg.tau, &ctx.cfg);
            let f = moved.fidelity(&config_basis_state(orbit, (p + 1) % n)?)?;
            worst = worst.max(1.0 - f);
        }
        Ok(worst)
    })
}

fn spectral_unitarity(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        for _ in 0..4 {
            let s = random_state(rng, n);
            let t = rng.random_range(-100.0..100.0) * ctx.cfg.tau;
            worst = worst.max((evolve(&s, t, &ctx.cfg).norm() - 1.0).abs());
        }
    }
    Ok(worst)
}

fn spectral_interpolation(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    // the zero-point offset only adds a global phase; compare without it
    let cfg = GlobalConfig {
        zero_point: false,
        ..ctx.cfg
    };
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        let orbit = ctx.orbit(n);
        let origin = config_basis_state(&orbit, 0)?;
        for _ in 0..4 {
            let steps = rng.random_range(-(n as f64)..2.0 * n as f64);
            let evolved = evolve(&origin, steps * cfg.tau, &cfg).in_basis(Basis::Configuration);
            let interp = interpolate_config(&orbit, steps);
            for (a, b) in evolved.amplitudes.iter().zip(&interp) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    Ok(worst)
}

fn spectral_overlap(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        let orbit = ctx.orbit(n);
        for _ in 0..100 {
            let t = rng.random_range(0.0..n as f64);
            let tp = rng.random_range(0.0..n as f64);
            let overlap = inner(
                &interpolate_config(&orbit, tp),
                &interpolate_config(&orbit, t),
            );
            worst = worst.max((overlap - periodic_sinc(n, tp - t)).norm());
        }
    }
    Ok(worst)
}

fn spectral_energy(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let cfg = &ctx.cfg;
    over_lengths(ctx, |orbit| {
        let n = orbit.len();
        let plain = energy_spectrum(orbit, cfg, false);
        let shifted = energy_spectrum(orbit, cfg, true);
        let expected = cfg.h * (n as f64 - 1.0) / (2.0 * orbit.period());
        let half_quantum = cfg.h * cfg.rate() / 2.0;
        let mut worst: f64 = 0.0;
        for p in positions(n) {
            let s = config_basis_state(orbit, p)?;
            let e = average_energy(&s, &plain)?;
            worst = worst.max((e - expected).abs() / expected.max(half_quantum));
            let e = average_energy(&s, &shifted)?;
            worst = worst.max((e - half_quantum).abs() / half_quantum);
        }
        Ok(worst)
    })
}

fn spectral_reconstruct(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let tau = ctx.cfg.tau;
    let mut worst: f64 = 0.0;
    // sampling the test functions is quadratic in N
    for n in ctx.lengths.iter().map(|&n| n.min(MAX_POSITIONS)) {
        let period = n as f64 * tau;
        let k = rng.random_range(-(n as i64)..=n as i64);
        let f = BandlimitedFunction::random(rng, n, period, k).nyquist_samples();
        let g = BandlimitedFunction::random(rng, n, period, k).nyquist_samples();
        let a = rng.random_range(-2.0..2.0);
        let combo: Vec<Complex64> = f.iter().zip(&g).map(|(x, y)| x * a + y).collect();
        for _ in 0..8 {
            let t = rng.random_range(-period..period);
            let lhs = reconstruct(&combo, t, k, tau);
            let rhs = reconstruct(&f, t, k, tau) * a + reconstruct(&g, t, k, tau);
            worst = worst.max((lhs - rhs).norm());
        }
        for j in 0..n {
            worst = worst.max((reconstruct(&f, j as f64 * tau, k, tau) - f[j]).norm());
        }
    }
    Ok(worst)
}

fn over_oversampled(
    ctx: &Context,
    mut f: impl FnMut(&orbitq::OversampledOrbit) -> orbitq::Result<f64>,
) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.oversample_lengths {
        for m in OVERSAMPLE_FACTORS {
            worst = worst.max(f(&oversample(&ctx.orbit(n), m)?)?);
        }
    }
    Ok(worst)
}

fn oversample_energy(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let cfg = &ctx.cfg;
    over_oversampled(ctx, |ov| {
        let n = ov.base_len();
        let ext = ov.extended_orbit();
        let spectrum = energy_spectrum(&ext, cfg, false);
        let expected = cfg.h * (n as f64 - 1.0) / (2.0 * ov.period());
        let scale = cfg.h / ov.period();
        let mut worst: f64 = 0.0;
        for p in positions(n) {
            let s = bandlimited_basis_state(ov, p)?.as_state(ext.id());
            worst = worst.max((average_energy(&s, &spectrum)? - expected).abs() / scale);
        }
        Ok(worst)
    })
}

fn oversample_isomorphism(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    over_oversampled(ctx, |ov| {
        let n = ov.base_len();
        let mut worst: f64 = 0.0;
        for k in positions(n) {
            let target = bandlimited_basis_state(ov, k)?;
            let fidelity = inner(&target.amplitudes, &bandlimited_evolve(ov, k as f64)).norm();
            worst = worst.max(1.0 - fidelity);
        }
        Ok(worst)
    })
}

fn oversample_regrouping(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    over_oversampled(ctx, |ov| {
        let n = ov.base_len() as f64;
        let mut bad = 0.0;
        for _ in 0..5 {
            let t = rng.random_range(-n..2.0 * n);
            let a = bandlimited_evolve_kernel(ov, t);
            let b = bandlimited_evolve_grouped(ov, t);
            bad += count(a.iter().zip(&b).map(|(x, y)| x != y));
        }
        Ok(bad)
    })
}

fn oversample_independence(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.oversample_lengths {
        let orbit = ctx.orbit(n);
        let bases: Vec<_> = OVERSAMPLE_FACTORS
            .iter()
            .map(|&m| oversample(&orbit, m))
            .collect::<orbitq::Result<_>>()?;
        for _ in 0..20 {
            let t = rng.random_range(0.0..n as f64);
            let tp = rng.random_range(0.0..n as f64);
            let reference = periodic_sinc(n, tp - t);
            for ov in &bases {
                let overlap = inner(&bandlimited_evolve(ov, tp), &bandlimited_evolve(ov, t));
                worst = worst.max((overlap - reference).norm());
            }
        }
    }
    Ok(worst)
}

fn observables_bandwidth(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let cfg = &ctx.cfg;
    over_lengths(ctx, |orbit| {
        let n = orbit.len();
        let spectrum = energy_spectrum(orbit, cfg, cfg.zero_point);
        let mut worst: f64 = 0.0;
        for p in positions(n) {
            let r = width_report(
                &config_basis_state(orbit, p)?,
                &spectrum,
                n,
                orbit.period(),
                None,
            )?;
            worst = worst.max((r.bandwidth - r.b_min_states).abs() * orbit.period());
        }
        Ok(worst)
    })
}

/// Equal-weight states on N levels spaced `stride` apart pass through N
/// orthogonal states in T/stride.
fn observables_first_moment(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(1..=12usize);
        let stride = rng.random_range(1..=3usize);
        let offset = rng.random_range(0..5usize);
        let len = offset + stride * (n - 1) + 1;
        let orbit = Orbit::of_length(len, ctx.cfg.tau)?;
        let spectrum = energy_spectrum(&orbit, &ctx.cfg, rng.random_bool(0.5));
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        for j in 0..n {
            let phase = rng.random_range(0.0..2.0 * PI);
            amps[offset + j * stride] = Complex64::from_polar(1.0 / (n as f64).sqrt(), phase);
        }
        let state = QuantumState::new(orbit.id(), Basis::Energy, amps);
        let r = width_report(&state, &spectrum, n, orbit.period() / stride as f64, None)?;
        worst = worst.max(-r.first_moment_slack() * r.period);
    }
    Ok(worst.max(0.0))
}

fn particle(ctx: &Context, n: usize) -> orbitq::Result<ParticleModel> {
    // unit speed, so one hop takes τ
    ParticleModel::new(n, n as f64 * ctx.cfg.tau, 1.0)
}

fn observables_normalization(ctx: &Context, rng: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        let model = particle(ctx, n)?;
        let lambda = model.separation();
        // each time costs N kernel evaluations
        for _ in 0..2 {
            let t = rng.random_range(-2.0..2.0) * model.length;
            let total: f64 = (0..n)
                .map(|j| particle_amplitude(&model, j as f64 * lambda, t).norm_sqr())
                .sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok(worst)
}

fn observables_localization(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in ctx.lengths.iter().filter(|&&n| n <= MAX_POSITIONS) {
        let model = particle(ctx, n)?;
        let lambda = model.separation();
        for k in 0..2 * n {
            let t = k as f64 * model.hop_time();
            for j in 0..n {
                let p = particle_amplitude(&model, j as f64 * lambda, t).norm_sqr();
                let target = if j == k % n { 1.0 } else { 0.0 };
                worst = worst.max((p - target).abs());
            }
        }
    }
    Ok(worst)
}

fn observables_momentum(ctx: &Context, _: &mut ChaCha8Rng) -> orbitq::Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in &ctx.lengths {
        let model = particle(ctx, n)?;
        let p = momentum(&model, &ctx.cfg);
        worst = worst.max((p * model.separation() - ctx.cfg.h / 2.0).abs() / ctx.cfg.h);
    }
    Ok(worst)
}
