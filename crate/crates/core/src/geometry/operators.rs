use super::pair::{GroupPoint, TangentPair};
use crate::error::Result;
use crate::fourier::{DiffeoMap, PeriodicField, DEFAULT_PHIX_FLOOR};

fn check(pairs: &[&TangentPair]) -> Result<()> {
    let (first, rest) = pairs.split_first().expect("at least one operand");
    rest.iter().try_for_each(|p| first.check_same(p))
}

/// Semidirect-product bracket
/// `[(u₁,[u₂]), (v₁,[v₂])] = (v₁ₓu₁ - u₁ₓv₁, [v₂ₓu₁ - u₂ₓv₁])`.
pub fn lie_bracket(u: &TangentPair, v: &TangentPair) -> Result<TangentPair> {
    check(&[u, v])?;
    Ok(bracket(u, v))
}

pub(crate) fn bracket(u: &TangentPair, v: &TangentPair) -> TangentPair {
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let first = &v1.derivative().mul_dealiased(u1) - &u1.derivative().mul_dealiased(v1);
    let second = &v2.derivative().mul_dealiased(u1) - &u2.derivative().mul_dealiased(v1);
    TangentPair::from_class(first, second)
}

/// Inertia operator `diag(1 - ∂x², π)`.
pub fn inertia_apply(u: &TangentPair) -> TangentPair {
    TangentPair::from_class(u.v1().apply_helmholtz(), u.v2().project_zero_mean())
}

/// Inverse of [`inertia_apply`] on its range.
pub fn inertia_invert(w: &TangentPair) -> TangentPair {
    TangentPair::from_class(w.v1().invert_helmholtz(), w.v2().project_zero_mean())
}

/// The metric at the identity,
/// `∫ (u₁v₁ + u₁ₓv₁ₓ + u₂v₂) dx - μ(u₂)μ(v₂)`.
pub fn metric(u: &TangentPair, v: &TangentPair) -> Result<f64> {
    check(&[u, v])?;
    Ok(metric_unchecked(u, v))
}

pub(crate) fn metric_unchecked(u: &TangentPair, v: &TangentPair) -> f64 {
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    u1.inner_unchecked(v1) + u1.derivative().inner_unchecked(&v1.derivative()) + u2.inner_unchecked(v2)
        - u2.mean() * v2.mean()
}

/// Norm induced by [`metric`].
pub fn metric_norm(u: &TangentPair) -> f64 {
    metric_unchecked(u, u).max(0.0).sqrt()
}

/// The right-translated metric at `p = (φ, [f])`, evaluated through the
/// `φ_x`-weighted integral
/// `∫ (U₁V₁ + U₂V₂)φ_x + U₁ₓV₁ₓ/φ_x dx - ∫U₂φ_x dx ∫V₂φ_x dx`,
/// which needs no composition.
pub fn metric_at(p: &GroupPoint, u: &TangentPair, v: &TangentPair) -> Result<f64> {
    check(&[u, v])?;
    p.grid().check_same(u.grid())?;
    let phi = p.phi();
    phi.check_floor(DEFAULT_PHIX_FLOOR)?;
    let phi_x = phi.phi_x();
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let (u1x, v1x) = (u1.derivative(), v1.derivative());
    let n = phi_x.values().len() as f64;
    let mut bulk = 0.0;
    let mut mean_u = 0.0;
    let mut mean_v = 0.0;
    for j in 0..phi_x.values().len() {
        let px = phi_x.values()[j];
        bulk += (u1.values()[j] * v1.values()[j] + u2.values()[j] * v2.values()[j]) * px
            + u1x.values()[j] * v1x.values()[j] / px;
        mean_u += u2.values()[j] * px;
        mean_v += v2.values()[j] * px;
    }
    Ok(bulk / n - (mean_u / n) * (mean_v / n))
}

/// Christoffel operator at the identity,
/// `Γ(u,v) = -½ (A⁻¹∂x(2u₁v₁ + u₁ₓv₁ₓ + π(u₂)π(v₂)), [u₁ₓπ(v₂) + v₁ₓπ(u₂)])`.
pub fn christoffel(u: &TangentPair, v: &TangentPair) -> Result<TangentPair> {
    check(&[u, v])?;
    Ok(gamma(u, v))
}

pub(crate) fn gamma(u: &TangentPair, v: &TangentPair) -> TangentPair {
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let (u1x, v1x) = (u1.derivative(), v1.derivative());
    let (pu2, pv2) = (u2.project_zero_mean(), v2.project_zero_mean());
    let source = u1
        .mul_dealiased(v1)
        .scale(2.0)
        .axpy(1.0, &u1x.mul_dealiased(&v1x))
        .axpy(1.0, &pu2.mul_dealiased(&pv2));
    let first = source.derivative().invert_helmholtz().scale(-0.5);
    let second = (&u1x.mul_dealiased(&pv2) + &v1x.mul_dealiased(&pu2)).scale(-0.5);
    TangentPair::from_class(first, second)
}

/// Right-invariant extension `Γ_p(U,V) = Γ(U∘φ⁻¹, V∘φ⁻¹)∘φ`.
pub fn christoffel_at(p: &GroupPoint, u: &TangentPair, v: &TangentPair) -> Result<TangentPair> {
    check(&[u, v])?;
    p.grid().check_same(u.grid())?;
    let inverse = p.phi().invert(DEFAULT_PHIX_FLOOR)?;
    Ok(christoffel_with_inverse(p.phi(), &inverse, u, v))
}

/// [`christoffel_at`] when `φ⁻¹` is already known.
pub(crate) fn christoffel_with_inverse(
    phi: &DiffeoMap,
    inverse: &DiffeoMap,
    u: &TangentPair,
    v: &TangentPair,
) -> TangentPair {
    let ue = u.compose(inverse);
    let ve = if u == v { ue.clone() } else { v.compose(inverse) };
    gamma(&ue, &ve).compose(phi)
}

/// The operator `ℬ` characterised by `⟨ℬ(u,v), w⟩ = ⟨u, [v,w]⟩`:
/// `ℬ₁ = -A⁻¹(2v₁ₓAu₁ + v₁Au₁ₓ + v₂ₓπ(u₂))`, `ℬ₂ = -[(π(u₂)v₁)ₓ]`.
pub fn bilinear_b(u: &TangentPair, v: &TangentPair) -> Result<TangentPair> {
    check(&[u, v])?;
    Ok(b_operator(u, v))
}

pub(crate) fn b_operator(u: &TangentPair, v: &TangentPair) -> TangentPair {
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let pu2 = u2.project_zero_mean();
    let au1 = u1.apply_helmholtz();
    let au1x = u1.derivative().apply_helmholtz();
    let inner: PeriodicField = v1
        .derivative()
        .mul_dealiased(&au1)
        .scale(2.0)
        .axpy(1.0, &v1.mul_dealiased(&au1x))
        .axpy(1.0, &v2.derivative().mul_dealiased(&pu2));
    let first = inner.invert_helmholtz().scale(-1.0);
    let second = pu2.mul_dealiased(v1).derivative().scale(-1.0);
    TangentPair::from_class(first, second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::GridSpec;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, TAU};

    fn g() -> GridSpec {
        GridSpec::new(64).unwrap()
    }
    fn sin(k: f64) -> PeriodicField {
        PeriodicField::from_fn(g(), move |x| (k * TAU * x).sin())
    }
    fn cos(k: f64) -> PeriodicField {
        PeriodicField::from_fn(g(), move |x| (k * TAU * x).cos())
    }
    fn zero() -> PeriodicField {
        PeriodicField::zeros(g())
    }
    fn pair(a: PeriodicField, b: PeriodicField) -> TangentPair {
        TangentPair::new(a, b).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let b = lie_bracket(&pair(sin(1.0), zero()), &pair(cos(1.0), zero())).unwrap();
        assert!(b.v1().max_abs_diff(&PeriodicField::constant(g(), -TAU)) < 1e-12);
        assert!(b.v2().sup_norm() < 1e-14);

        let b = lie_bracket(&pair(zero(), sin(1.0)), &pair(zero(), cos(1.0))).unwrap();
        assert!(b.sup_norm() < 1e-14);

        // -2π sin²(2πx) projected to zero mean is π cos(4πx)
        let b = lie_bracket(&pair(sin(1.0), zero()), &pair(zero(), cos(1.0))).unwrap();
        assert!(b.v1().sup_norm() < 1e-14);
        assert!(b.v2().max_abs_diff(&cos(2.0).scale(PI)) < 1e-12);
    }

    #[test]
    fn inertia_examples() {
        let a = inertia_apply(&pair(sin(1.0), zero()));
        assert!(a.v1().max_abs_diff(&sin(1.0).scale(1.0 + 4.0 * PI * PI)) < 1e-11);
        let a = inertia_apply(&pair(zero(), cos(1.0)));
        assert!(a.v2().max_abs_diff(&cos(1.0)) < 1e-15);
    }

    #[test]
    fn metric_examples() {
        let s = pair(sin(1.0), zero());
        assert_abs_diff_eq!(
            metric(&s, &s).unwrap(),
            (1.0 + 4.0 * PI * PI) / 2.0,
            epsilon = 1e-12
        );
        // a constant class is the zero class
        let c = TangentPair::from_class(zero(), PeriodicField::constant(g(), 3.0));
        assert_abs_diff_eq!(metric(&c, &c).unwrap(), 0.0, epsilon = 1e-15);
        let r = pair(zero(), cos(1.0));
        assert_abs_diff_eq!(metric(&r, &r).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn metric_at_identity_matches_metric() {
        let u = pair(sin(1.0), cos(2.0));
        let v = pair(cos(3.0), sin(1.0));
        let p = GroupPoint::identity(g());
        assert_abs_diff_eq!(
            metric_at(&p, &u, &v).unwrap(),
            metric(&u, &v).unwrap(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn christoffel_examples() {
        let c = pair(PeriodicField::constant(g(), 0.7), zero());
        assert!(christoffel(&c, &c).unwrap().sup_norm() < 1e-14);

        let gm = christoffel(&pair(zero(), sin(1.0)), &pair(zero(), cos(1.0))).unwrap();
        let expect = cos(2.0).scale(-PI / (1.0 + 16.0 * PI * PI));
        assert!(gm.v1().max_abs_diff(&expect) < 1e-14);
        assert!(gm.v2().sup_norm() < 1e-14);
    }

    #[test]
    fn christoffel_at_identity() {
        let u = pair(sin(1.0), cos(2.0));
        let v = pair(cos(3.0), sin(1.0));
        let p = GroupPoint::identity(g());
        let a = christoffel_at(&p, &u, &v).unwrap();
        let b = christoffel(&u, &v).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13);
    }

    #[test]
    fn b_examples() {
        let c1 = pair(PeriodicField::constant(g(), 1.5), zero());
        let c2 = pair(PeriodicField::constant(g(), -0.5), zero());
        assert!(bilinear_b(&c1, &c2).unwrap().sup_norm() < 1e-13);

        let u2 = sin(1.0);
        let v1 = cos(2.0);
        let b = bilinear_b(&pair(zero(), u2.clone()), &pair(v1.clone(), zero())).unwrap();
        let expect = u2.multiply(&v1).unwrap().derivative().scale(-1.0);
        assert!(b.v1().sup_norm() < 1e-13);
        assert!(b.v2().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let other = GridSpec::new(32).unwrap();
        let a = pair(sin(1.0), zero());
        let b = TangentPair::zero(other);
        assert!(christoffel(&a, &b).is_err());
        assert!(metric(&a, &b).is_err());
        assert!(lie_bracket(&a, &b).is_err());
        assert!(bilinear_b(&a, &b).is_err());
    }
}
