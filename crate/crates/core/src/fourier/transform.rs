//! Thin wrapper around `rustfft` with a per-thread planner cache.
//!
//! Coefficients are normalised so that `c_k = (1/n) Σ_j f_j e^{-2πi k x_j}`;
//! with this convention `c_0` is the mean and the inverse transform is a plain
//! sum over modes.
//!
//! The mean is split off before either transform so that round-off scales
//! with the fluctuating part of a field rather than with its offset.

use std::cell::RefCell;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn forward(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v - mean, 0.0)).collect();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n));
    fft.process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf[0] += mean;
    buf
}

/// Inverse transform keeping the real part. Callers are responsible for
/// handing in Hermitian-symmetric spectra.
pub(crate) fn inverse(mut coeffs: Vec<Complex64>) -> Vec<f64> {
    let n = coeffs.len();
    let mean = std::mem::take(&mut coeffs[0]).re;
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    fft.process(&mut coeffs);
    coeffs.into_iter().map(|c| c.re + mean).collect()
}
