//! Lie-algebraic and Riemannian structure of the semidirect product of
//! circle diffeomorphisms with scalar classes modulo constants.
//!
//! Everything here is evaluated at the identity unless the name ends in
//! `_at`, in which case the right-invariant extension to a [`GroupPoint`] is
//! used.

mod connection;
mod identities;
mod operators;
mod pair;

pub use connection::{
    directional_derivative, local_bracket, nabla, nabla_with, FiniteDifference, DEFAULT_FD_STEP,
};
pub use identities::{
    compatibility_residual, gamma_decomposition_residual, gamma_decomposition_residual_with,
};
pub use operators::{
    bilinear_b, christoffel, christoffel_at, inertia_apply, inertia_invert, lie_bracket, metric, metric_at,
    metric_norm,
};
pub use pair::{GroupPoint, TangentPair};

pub(crate) use operators::{christoffel_with_inverse, gamma, metric_unchecked};
