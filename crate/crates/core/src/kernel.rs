//! The periodic sinc kernel S(N, u) = (1/N) Σ_{m=0}^{N-1} exp(2πi·m·u/N).
//!
//! `S(N, ·)` is 1 at multiples of N, 0 at every other integer, and
//! interpolates smoothly in between. It approaches a phase times `sinc(u)`
//! as N grows. [`kernel_direct_sum`] evaluates the defining sum term by term
//! and serves as an independent check on the closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitude returned by the kernel functions.
pub type KernelValue = Complex64;

/// Largest N accepted by [`kernel_direct_sum`].
pub const MAX_DIRECT_SUM: usize = 1_000_000;

/// Below this, `sin(πu/N)` is treated as a removable zero.
const SINGULAR_THRESHOLD: f64 = 1e-12;

/// sin(πx) with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let y = x - 2.0 * (x * 0.5).round();
    let (sign, a) = if y < 0.0 { (-1.0, -y) } else { (1.0, y) };
    let v = if a <= 0.25 {
        (PI * a).sin()
    } else if a <= 0.75 {
        (PI * (a - 0.5)).cos()
    } else {
        (PI * (1.0 - a)).sin()
    };
    sign * v
}

/// cos(πx) with exact zeros at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let a = (x - 2.0 * (x * 0.5).round()).abs();
    if a <= 0.25 {
        (PI * a).cos()
    } else if a <= 0.75 {
        (PI * (0.5 - a)).sin()
    } else {
        -(PI * (1.0 - a)).cos()
    }
}

/// exp(iπx).
pub fn cis_pi(x: f64) -> Complex64 {
    Complex64::new(cos_pi(x), sin_pi(x))
}

/// Reduce `u` into [-N/2, N/2] using the kernel's period N.
fn reduce(n: usize, u: f64) -> f64 {
    let nf = n as f64;
    u - nf * (u / nf).round()
}

/// S(N, u).
///
/// # Panics
///
/// If `n == 0`.
pub fn periodic_sinc(n: usize, u: f64) -> KernelValue {
    assert!(n >= 1, "periodic_sinc requires N >= 1");
    let r = reduce(n, u);
    if r == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let nf = n as f64;
    let phase = cis_pi(r * (nf - 1.0) / nf);
    let denom = sin_pi(r / nf);
    if denom.abs() < SINGULAR_THRESHOLD {
        let x = PI * r;
        return phase * (1.0 - x * x * (1.0 - 1.0 / (nf * nf)) / 6.0);
    }
    phase * (sin_pi(r) / (nf * denom))
}

/// S_k(N, u) = exp(2πi·k·u/N)·S(N, u), the kernel for frequencies k..k+N-1.
pub fn periodic_sinc_shifted(n: usize, u: f64, k: i64) -> KernelValue {
    assert!(n >= 1, "periodic_sinc_shifted requires N >= 1");
    if k == 0 {
        return periodic_sinc(n, u);
    }
    // S_k is N-periodic in u for integer k, so reduce before forming the phase.
    let r = reduce(n, u);
    let cycles = (k as f64 * r / n as f64).rem_euclid(1.0);
    cis_pi(2.0 * cycles) * periodic_sinc(n, r)
}

/// Large-N limit exp(iπu)·sin(πu)/(πu).
pub fn sinc_limit(u: f64) -> KernelValue {
    if u == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let x = PI * u;
    let mag = if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        sin_pi(u) / x
    };
    cis_pi(u) * mag
}

/// Literal evaluation of (1/N) Σ_{m=k}^{k+N-1} exp(2πi·m·u/N).
///
/// Each phase m·u/N is reduced modulo 1 by splitting u into integer and
/// fractional parts so that large arguments keep full precision.
pub fn kernel_direct_sum(n: usize, u: f64, k: i64) -> Result<KernelValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if n > MAX_DIRECT_SUM {
        return Err(Error::TooLarge {
            what: "direct kernel sum",
            size: n,
            limit: MAX_DIRECT_SUM,
        });
    }
    let whole = u.floor();
    let frac = u - whole;
    let whole = whole as i128;
    let modulus = n as i128;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in k..k + n as i64 {
        let int_part = (m as i128 * whole).rem_euclid(modulus) as f64;
        let cycles = ((int_part + m as f64 * frac) / n as f64).rem_euclid(1.0);
        sum += Complex64::from_polar(1.0, 2.0 * PI * cycles);
    }
    Ok(sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn trig_helpers_exact_at_integers() {
        for i in -10..=10 {
            assert_eq!(sin_pi(i as f64), 0.0);
            assert_eq!(cos_pi(i as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.3) - (0.3 * PI).sin()).abs() < 1e-15);
        assert!((cos_pi(-1.7) - (-1.7 * PI).cos()).abs() < 1e-15);
        assert!((sin_pi(0.6) - (0.6 * PI).sin()).abs() < 1e-15);
        assert!((sin_pi(-0.9) - (-0.9 * PI).sin()).abs() < 1e-15);
    }

    #[test]
    fn periodic_sinc_examples() {
        assert_eq!(periodic_sinc(5, 0.0), Complex64::new(1.0, 0.0));
        assert_eq!(periodic_sinc(5, 2.0).norm(), 0.0);
        assert_eq!(periodic_sinc(5, 10.0), Complex64::new(1.0, 0.0));
        let oracle = kernel_direct_sum(100, 0.5, 0).unwrap();
        assert!(close(periodic_sinc(100, 0.5), oracle, 1e-12));
    }

    #[test]
    fn periodic_sinc_near_removable_zero() {
        let u = 1e-14;
        let v = periodic_sinc(7, u);
        assert!(close(v, kernel_direct_sum(7, u, 0).unwrap(), 1e-12));
        let v = periodic_sinc(7, 7.0 + 1e-13);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_state_kernel_is_one() {
        for u in [0.0, 0.3, -2.7, 11.5] {
            assert!(close(periodic_sinc(1, u), Complex64::new(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn shifted_examples() {
        assert_eq!(periodic_sinc_shifted(5, 3.0, 0), periodic_sinc(5, 3.0));
        assert!(periodic_sinc_shifted(4, 1.0, 2).norm() < 1e-15);
        let oracle = kernel_direct_sum(8, 0.25, 3).unwrap();
        assert!(close(periodic_sinc_shifted(8, 0.25, 3), oracle, 1e-12));
        let oracle = kernel_direct_sum(8, 13.6, -5).unwrap();
        assert!(close(periodic_sinc_shifted(8, 13.6, -5), oracle, 1e-12));
    }

    #[test]
    fn sinc_limit_examples() {
        assert_eq!(sinc_limit(0.0), Complex64::new(1.0, 0.0));
        assert!(sinc_limit(1.0).norm() < 1e-16);
        assert!((periodic_sinc(100_000, 0.5) - sinc_limit(0.5)).norm() < 1e-4);
    }

    #[test]
    fn direct_sum_examples() {
        // (1 + e^{iπ} + e^{2πi})/3
        let v = kernel_direct_sum(3, 1.5, 0).unwrap();
        assert!(close(v, Complex64::new(1.0 / 3.0, 0.0), 1e-15));
        assert!(kernel_direct_sum(2, 1.0, 0).unwrap().norm() < 1e-15);
        assert!(close(
            kernel_direct_sum(7, 7.0, 0).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(matches!(
            kernel_direct_sum(MAX_DIRECT_SUM + 1, 0.0, 0),
            Err(Error::TooLarge { .. })
        ));
    }
}
