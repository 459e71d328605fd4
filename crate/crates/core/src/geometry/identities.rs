//! Residuals of the structural identities tying Γ, ℬ, the bracket and the
//! metric together. Each is zero in exact arithmetic.

use super::operators::{b_operator, gamma, metric_unchecked};
use super::pair::TangentPair;
use crate::error::Result;

/// Metric norm of `Γ(u,v) - ½[((u₁v₁)ₓ, [u₂ₓv₁ + v₂ₓu₁]) + ℬ(u,v) + ℬ(v,u)]`.
pub fn gamma_decomposition_residual(u: &TangentPair, v: &TangentPair) -> Result<f64> {
    u.check_same(v)?;
    Ok(gamma_decomposition_residual_with(u, v, b_operator))
}

/// Same as [`gamma_decomposition_residual`] with a caller-supplied `ℬ`.
pub fn gamma_decomposition_residual_with(
    u: &TangentPair,
    v: &TangentPair,
    b: impl Fn(&TangentPair, &TangentPair) -> TangentPair,
) -> f64 {
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let transport = TangentPair::from_class(
        u1.mul_dealiased(v1).derivative(),
        &u2.derivative().mul_dealiased(v1) + &v2.derivative().mul_dealiased(u1),
    );
    let rhs = transport.add(&b(u, v)).add(&b(v, u)).scale(0.5);
    let diff = gamma(u, v).sub(&rhs);
    metric_unchecked(&diff, &diff).max(0.0).sqrt()
}

/// Absolute value of the six-term sum, under the L₂ pairing, whose vanishing
/// is equivalent to compatibility of the connection with the metric:
///
/// `⟨v₂ₓu₁, πw₂⟩ + ⟨w₂ₓu₁, πv₂⟩ + ⟨½(πv₂ πu₂)ₓ, w₁⟩ + ⟨½(πw₂ πu₂)ₓ, v₁⟩
///  + ⟨½(v₁ₓπu₂ + u₁ₓπv₂), πw₂⟩ + ⟨½(w₁ₓπu₂ + u₁ₓπw₂), πv₂⟩`.
pub fn compatibility_residual(u: &TangentPair, v: &TangentPair, w: &TangentPair) -> Result<f64> {
    u.check_same(v)?;
    u.check_same(w)?;
    let (u1, u2) = (u.v1(), u.v2().project_zero_mean());
    let (v1, v2) = (v.v1(), v.v2().project_zero_mean());
    let (w1, w2) = (w.v1(), w.v2().project_zero_mean());
    let (u1x, v1x, w1x) = (u1.derivative(), v1.derivative(), w1.derivative());
    let l2 = |a: &crate::fourier::PeriodicField, b: &crate::fourier::PeriodicField| a.inner_unchecked(b);

    let terms = [
        l2(&v2.derivative().mul_dealiased(u1), &w2),
        l2(&w2.derivative().mul_dealiased(u1), &v2),
        0.5 * l2(&v2.mul_dealiased(&u2).derivative(), w1),
        0.5 * l2(&w2.mul_dealiased(&u2).derivative(), v1),
        0.5 * l2(&(&v1x.mul_dealiased(&u2) + &u1x.mul_dealiased(&v2)), &w2),
        0.5 * l2(&(&w1x.mul_dealiased(&u2) + &u1x.mul_dealiased(&w2)), &v2),
    ];
    Ok(terms.iter().sum::<f64>().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{GridSpec, PeriodicField};
    use std::f64::consts::TAU;

    #[test]
    fn trivial_cases_vanish() {
        let g = GridSpec::new(32).unwrap();
        let z = TangentPair::zero(g);
        assert_eq!(gamma_decomposition_residual(&z, &z).unwrap(), 0.0);
        assert_eq!(compatibility_residual(&z, &z, &z).unwrap(), 0.0);
        let a = TangentPair::from_class(
            PeriodicField::from_fn(g, |x| (TAU * x).sin()),
            PeriodicField::zeros(g),
        );
        let b = TangentPair::from_class(
            PeriodicField::from_fn(g, |x| (2.0 * TAU * x).cos()),
            PeriodicField::zeros(g),
        );
        assert_eq!(compatibility_residual(&a, &b, &a).unwrap(), 0.0);
    }

    #[test]
    fn decomposition_for_mixed_pair() {
        let g = GridSpec::new(64).unwrap();
        let u = TangentPair::from_class(
            PeriodicField::from_fn(g, |x| (TAU * x).sin()),
            PeriodicField::zeros(g),
        );
        let v = TangentPair::from_class(
            PeriodicField::zeros(g),
            PeriodicField::from_fn(g, |x| (TAU * x).cos()),
        );
        assert!(gamma_decomposition_residual(&u, &v).unwrap() <= 1e-10);
    }
}
