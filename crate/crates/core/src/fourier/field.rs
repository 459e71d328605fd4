use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use rustfft::num_complex::Complex64;

use super::grid::GridSpec;
use super::transform;
use crate::error::{Error, Result};

/// A real function on the unit circle, stored by its samples at `x_j = j/n`.
///
/// The spectral view is recovered on demand with [`PeriodicField::to_spectrum`];
/// every operator below acts as a Fourier multiplier on the trigonometric
/// interpolant of the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicField {
    grid: GridSpec,
    values: Vec<f64>,
}

impl PeriodicField {
    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::SampleCount {
                expected: grid.n(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: GridSpec, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.n()],
        }
    }

    /// Builds a field from normalised coefficients in FFT order. Only the real
    /// part of the synthesis is kept.
    pub fn from_spectrum(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::SampleCount {
                expected: grid.n(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            grid,
            values: transform::inverse(coeffs),
        })
    }

    pub fn to_spectrum(&self) -> Vec<Complex64> {
        transform::forward(&self.values)
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two fields on the same grid.
    pub(crate) fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn apply_multiplier(&self, multiplier: impl Fn(i64, bool) -> Complex64) -> Self {
        let mut coeffs = self.to_spectrum();
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c *= multiplier(self.grid.mode(j), self.grid.is_nyquist(j));
        }
        Self {
            grid: self.grid,
            values: transform::inverse(coeffs),
        }
    }

    /// Exact derivative of the trigonometric interpolant. The Nyquist mode has
    /// no real odd counterpart and is dropped.
    pub fn derivative(&self) -> Self {
        self.apply_multiplier(|k, nyquist| {
            if nyquist {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, TAU * k as f64)
            }
        })
    }

    /// `A = 1 - ∂x²`, scaling mode `k` by `1 + (2πk)²`.
    pub fn apply_helmholtz(&self) -> Self {
        self.apply_multiplier(|k, _| Complex64::new(helmholtz_symbol(k), 0.0))
    }

    /// `A⁻¹`, scaling mode `k` by `1 / (1 + (2πk)²)`.
    pub fn invert_helmholtz(&self) -> Self {
        self.apply_multiplier(|k, _| Complex64::new(1.0 / helmholtz_symbol(k), 0.0))
    }

    /// `μ(f) = ∫₀¹ f dx` by the trapezoid rule, exact for band-limited fields.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `π(f) = f - μ(f)`.
    pub fn project_zero_mean(&self) -> Self {
        let m = self.mean();
        self.map(|v| v - m)
    }

    /// Zeroes every mode above the grid's dealias cutoff.
    pub fn dealias(&self) -> Self {
        let cutoff = self.grid.dealias_cutoff() as i64;
        if cutoff as usize >= self.grid.n() / 2 {
            return self.clone();
        }
        self.apply_multiplier(|k, _| {
            if k.abs() <= cutoff {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Pointwise product followed by dealiasing.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(self.mul_dealiased(other))
    }

    pub(crate) fn mul_dealiased(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b).dealias()
    }

    /// `∫₀¹ f g dx` by the trapezoid rule (no dealiasing).
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / self.values.len() as f64
    }

    /// `(Σ_k (1+(2πk)²)^s |c_k|²)^{1/2}`; `s = 0` is the L₂ norm.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.to_spectrum()
            .iter()
            .enumerate()
            .map(|(j, c)| helmholtz_symbol(self.grid.mode(j)).powf(s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + a * y)
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map(|v| a * v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

#[inline]
pub(crate) fn helmholtz_symbol(k: i64) -> f64 {
    let w = TAU * k as f64;
    1.0 + w * w
}

// The operator impls assume matching grids; geometric routines validate
// grids once at their entry points.
impl Add for &PeriodicField {
    type Output = PeriodicField;
    fn add(self, rhs: &PeriodicField) -> PeriodicField {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in field addition");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PeriodicField {
    type Output = PeriodicField;
    fn sub(self, rhs: &PeriodicField) -> PeriodicField {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in field subtraction");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PeriodicField {
    type Output = PeriodicField;
    fn neg(self) -> PeriodicField {
        self.map(|v| -v)
    }
}

impl Mul<f64> for &PeriodicField {
    type Output = PeriodicField;
    fn mul(self, a: f64) -> PeriodicField {
        self.scale(a)
    }
}
