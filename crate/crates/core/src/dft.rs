//! Unitary discrete Fourier transforms.
//!
//! The direct O(N²) transform is the reference; the FFT path must agree with
//! it to 1e-10 and is used for longer vectors.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Vectors at least this long go through the FFT.
pub const FAST_PATH_MIN_LEN: usize = 64;

/// Sign of the exponent in exp(±2πi·n·m/N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// exp(-2πi·n·m/N): configuration amplitudes to energy amplitudes.
    Forward,
    /// exp(+2πi·n·m/N): energy amplitudes to configuration amplitudes.
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// out[m] = (1/√N) Σ_n exp(±2πi·n·m/N) in[n], summed literally.
pub fn dft_direct(input: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let n = input.len();
    if n == 0 {
        return Vec::new();
    }
    // n·m is reduced mod N exactly, so one table of N roots suffices
    let roots: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, direction.sign() * 2.0 * PI * j as f64 / n as f64))
        .collect();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in input.iter().enumerate() {
                acc += roots[(j * m) % n] * x;
            }
            acc * scale
        })
        .collect()
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Same transform as [`dft_direct`], computed with an FFT.
pub fn dft_fast(input: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let n = input.len();
    if n == 0 {
        return Vec::new();
    }
    let fft = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        match direction {
            Direction::Forward => p.plan_fft_forward(n),
            Direction::Inverse => p.plan_fft_inverse(n),
        }
    });
    let mut buf = input.to_vec();
    fft.process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for x in &mut buf {
        *x *= scale;
    }
    buf
}

/// Picks the direct or fast transform by length.
pub fn dft(input: &[Complex64], direction: Direction) -> Vec<Complex64> {
    if input.len() >= FAST_PATH_MIN_LEN {
        dft_fast(input, direction)
    } else {
        dft_direct(input, direction)
    }
}
