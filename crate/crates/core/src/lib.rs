//! A pseudo-spectral laboratory for the periodic two-component π-Camassa–Holm
//! system
//!
//! ```text
//! m_t = -m_x u - 2 u_x m - π(ρ) ρ_x,    π(ρ)_t = -(π(ρ) u)_x,
//! m = u - u_xx,                          π(ρ) = ρ - ∫₀¹ ρ dx,
//! ```
//!
//! on the circle `ℝ/ℤ`, together with the geodesic geometry behind it: the
//! system is the Euler equation of a right-invariant metric on the
//! semidirect product of circle diffeomorphisms with scalar functions modulo
//! constants.
//!
//! * [`fourier`]: spectral calculus and circle diffeomorphisms.
//! * [`geometry`]: bracket, inertia operator, metric, Christoffel operator,
//!   the adjoint operator `ℬ`, the connection, and identity residuals.
//! * [`curvature`]: the curvature tensor and two independent evaluations
//!   of the sectional curvature.
//! * [`solver`]: Eulerian and Lagrangian time integration with
//!   conservation-law monitoring.
//!
//! ```
//! use pi2ch::fourier::{GridSpec, PeriodicField};
//! use pi2ch::geometry::TangentPair;
//! use pi2ch::curvature::sectional_closed;
//! use std::f64::consts::{PI, TAU};
//!
//! let grid = GridSpec::new(64)?;
//! let zero = PeriodicField::zeros(grid);
//! let u = TangentPair::new(zero.clone(), PeriodicField::from_fn(grid, |x| (TAU * x).sin()))?;
//! let v = TangentPair::new(zero, PeriodicField::from_fn(grid, |x| (TAU * x).cos()))?;
//! let report = sectional_closed(&u, &v)?;
//! assert!((report.s_direct - PI * PI / (1.0 + 16.0 * PI * PI)).abs() < 1e-9);
//! # Ok::<(), pi2ch::Error>(())
//! ```

pub mod curvature;
mod error;
pub mod fourier;
pub mod geometry;
pub mod profiles;
pub mod sample;
pub mod solver;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
