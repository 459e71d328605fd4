//! Spectral calculus on the unit circle: Fourier multipliers, means,
//! dealiased products, and composition with circle diffeomorphisms.

mod diffeo;
mod field;
mod grid;
mod interp;
mod transform;

pub use diffeo::{compose, compose_with, DiffeoMap, DEFAULT_PHIX_FLOOR};
pub use field::PeriodicField;
pub use grid::GridSpec;
pub use interp::{Interpolation, PeriodicSpline, TrigInterpolant};
pub use rustfft::num_complex::Complex64;
