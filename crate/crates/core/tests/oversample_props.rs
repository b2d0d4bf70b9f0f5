use orbitq::oversample::{bandlimited_evolve_grouped, bandlimited_evolve_kernel};
use orbitq::spectral::inner;
use orbitq::{
    average_energy, bandlimited_basis_state, bandlimited_evolve, energy_spectrum, oversample,
    periodic_sinc, verify_isomorphism, Basis, Complex64, GlobalConfig, Orbit, QuantumState,
};
use proptest::prelude::*;

fn orbit(n: usize) -> Orbit {
    Orbit::of_length(n, 1.0).unwrap()
}

#[test]
fn bandlimited_states_keep_base_average_energy() {
    let cfg = GlobalConfig::default();
    for n in [1, 2, 5, 9] {
        let base = orbit(n);
        let expected = cfg.h * (n as f64 - 1.0) / (2.0 * base.period());
        for m in [1, 2, 4, 8] {
            let ov = oversample(&base, m).unwrap();
            let ext = ov.extended_orbit();
            let spectrum = energy_spectrum(&ext, &cfg, false);
            for k in 0..n {
                let s = bandlimited_basis_state(&ov, k).unwrap().as_state(ext.id());
                let e = average_energy(&s, &spectrum).unwrap();
                assert!((e - expected).abs() < 1e-10, "n={n} M={m} k={k}");
            }
        }
    }
}

#[test]
fn integer_times_reproduce_the_orbit() {
    for m in [1, 3, 4] {
        let ov = oversample(&orbit(7), m).unwrap();
        for step in 0..14 {
            let state = bandlimited_evolve(&ov, step as f64);
            let target = bandlimited_basis_state(&ov, step % 7).unwrap();
            let f = inner(&target.amplitudes, &state).norm();
            assert!(f >= 1.0 - 1e-10, "M={m} step={step}");
        }
    }
}

#[test]
fn inner_products_independent_of_factor() {
    let pairs = [(0.1, 2.7), (3.3, 0.05), (4.9, 4.2), (1.0, 1.5)];
    for (t, tp) in pairs {
        let values: Vec<Complex64> = [1, 2, 4, 8]
            .iter()
            .map(|&m| {
                let ov = oversample(&orbit(5), m).unwrap();
                inner(&bandlimited_evolve(&ov, tp), &bandlimited_evolve(&ov, t))
            })
            .collect();
        for v in &values {
            assert!((v - values[0]).norm() < 1e-9);
            assert!((v - periodic_sinc(5, tp - t)).norm() < 1e-9);
        }
    }
}

#[test]
fn evolution_is_norm_preserving_in_extended_space() {
    let ov = oversample(&orbit(6), 5).unwrap();
    for t in [0.13, 1.77, 4.5] {
        let s = QuantumState::new(0, Basis::Configuration, bandlimited_evolve(&ov, t));
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn regrouping_is_exact(n in 1usize..12, m in 1usize..9, t in -10.0f64..10.0) {
        let ov = oversample(&orbit(n), m).unwrap();
        prop_assert_eq!(bandlimited_evolve_kernel(&ov, t), bandlimited_evolve_grouped(&ov, t));
    }

    #[test]
    fn isomorphism_defect_small(t in 0.0f64..5.0, tp in 0.0f64..5.0, m in prop::sample::select(vec![1usize, 2, 4, 8])) {
        let ov = oversample(&orbit(5), m).unwrap();
        prop_assert!(verify_isomorphism(&ov, t, tp) < 1e-9);
    }
}
