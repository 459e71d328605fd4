//! Off-grid evaluation of periodic fields.

use std::f64::consts::{PI, TAU};

use rustfft::num_complex::Complex64;

use super::field::PeriodicField;
use super::transform;

/// How [`compose_with`](super::compose_with) evaluates a field between grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// The trigonometric interpolant of the samples; spectrally accurate.
    #[default]
    Trigonometric,
    /// Periodic cubic spline through the samples; fourth-order accurate.
    CubicSpline,
}

/// Trigonometric interpolant of a field, evaluated by direct summation over
/// the retained modes.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    n: usize,
    /// `c_0 ..= c_{n/2}`; negative modes follow by conjugate symmetry.
    coeffs: Vec<Complex64>,
}

impl TrigInterpolant {
    pub fn new(field: &PeriodicField) -> Self {
        let n = field.grid().n();
        let mut coeffs = field.to_spectrum();
        coeffs.truncate(n / 2 + 1);
        Self { n, coeffs }
    }

    /// Value at an arbitrary real `y` (the interpolant is 1-periodic).
    pub fn eval(&self, y: f64) -> f64 {
        self.eval_with_derivative(y).0
    }

    /// Value and first derivative at `y`.
    pub fn eval_with_derivative(&self, y: f64) -> (f64, f64) {
        let half = self.n / 2;
        let y = y.rem_euclid(1.0);
        let step = Complex64::from_polar(1.0, TAU * y);
        let mut z = step;
        let mut value = self.coeffs[0].re;
        let mut slope = 0.0;
        for k in 1..half {
            // re-anchor every 32 modes to stop the recurrence drifting
            if k % 32 == 0 {
                z = Complex64::from_polar(1.0, TAU * k as f64 * y);
            }
            let term = self.coeffs[k] * z;
            value += 2.0 * term.re;
            slope -= 2.0 * TAU * k as f64 * term.im;
            z *= step;
        }
        let nyq = self.coeffs[half].re;
        let arg = PI * self.n as f64 * y;
        value += nyq * arg.cos();
        slope -= nyq * PI * self.n as f64 * arg.sin();
        (value, slope)
    }
}

/// Periodic cubic spline through the grid samples of a field.
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    values: Vec<f64>,
    /// Second derivatives at the knots.
    curvature: Vec<f64>,
}

impl PeriodicSpline {
    pub fn new(field: &PeriodicField) -> Self {
        let n = field.grid().n();
        let h = 1.0 / n as f64;
        let values = field.values().to_vec();
        // M_{j-1} + 4 M_j + M_{j+1} = 6 (f_{j+1} - 2 f_j + f_{j-1}) / h²
        // is circulant, so it diagonalises under the DFT with symbol 4 + 2cos(2πk/n).
        let rhs: Vec<f64> = (0..n)
            .map(|j| {
                let prev = values[(j + n - 1) % n];
                let next = values[(j + 1) % n];
                6.0 * (next - 2.0 * values[j] + prev) / (h * h)
            })
            .collect();
        let mut spec = transform::forward(&rhs);
        for (j, c) in spec.iter_mut().enumerate() {
            *c /= 4.0 + 2.0 * (TAU * j as f64 / n as f64).cos();
        }
        let curvature = transform::inverse(spec);
        Self { values, curvature }
    }

    pub fn eval(&self, y: f64) -> f64 {
        let n = self.values.len();
        let h = 1.0 / n as f64;
        let s = y.rem_euclid(1.0) * n as f64;
        let j = (s.floor() as usize).min(n - 1);
        let t = s - j as f64;
        let j1 = (j + 1) % n;
        let a = 1.0 - t;
        let (f0, f1) = (self.values[j], self.values[j1]);
        let (m0, m1) = (self.curvature[j], self.curvature[j1]);
        a * f0 + t * f1 + h * h / 6.0 * ((a * a * a - a) * m0 + (t * t * t - t) * m1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::GridSpec;

    #[test]
    fn trig_interpolant_reproduces_samples_and_nyquist() {
        let g = GridSpec::new(16).unwrap();
        let f = PeriodicField::from_fn(g, |x| 0.3 + (3.0 * TAU * x).sin() + (8.0 * TAU * x).cos());
        let interp = TrigInterpolant::new(&f);
        for (x, v) in g.points().zip(f.values()) {
            assert!((interp.eval(x) - v).abs() < 1e-13);
        }
    }

    #[test]
    fn trig_interpolant_exact_off_grid() {
        let g = GridSpec::new(64).unwrap();
        let exact = |x: f64| (TAU * x).sin() + 0.2 * (5.0 * TAU * x).cos();
        let d_exact = |x: f64| TAU * (TAU * x).cos() - TAU * (5.0 * TAU * x).sin();
        let interp = TrigInterpolant::new(&PeriodicField::from_fn(g, exact));
        for y in [0.013, 0.5077, 0.91, 1.37, -0.2] {
            let (v, d) = interp.eval_with_derivative(y);
            assert!((v - exact(y)).abs() < 1e-13);
            assert!((d - d_exact(y)).abs() < 1e-11);
        }
    }

    #[test]
    fn spline_is_fourth_order() {
        let exact = |x: f64| (TAU * x).sin().exp();
        let err = |n: usize| {
            let g = GridSpec::new(n).unwrap();
            let s = PeriodicSpline::new(&PeriodicField::from_fn(g, exact));
            (0..97)
                .map(|i| {
                    let y = (i as f64 + 0.37) / 97.0;
                    (s.eval(y) - exact(y)).abs()
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(64) / err(128);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }
}
