//! The affine connection `∇_X Y = DY·X - Γ(X, Y)` on the flat chart `(η, f)`.

use super::operators::christoffel_at;
use super::pair::{GroupPoint, TangentPair};
use crate::error::Result;

/// Default step for the chart derivative `DY·X`.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Finite-difference rule for chart derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiniteDifference {
    #[default]
    Central,
    /// Central differences at `h` and `h/2` combined to cancel the `h²` term.
    Richardson,
}

fn central<Y>(y: &Y, p: &GroupPoint, dir: &TangentPair, h: f64) -> Result<TangentPair>
where
    Y: Fn(&GroupPoint) -> TangentPair,
{
    let plus = y(&p.shifted(dir, h)?);
    let minus = y(&p.shifted(dir, -h)?);
    Ok(plus.sub(&minus).scale(0.5 / h))
}

/// `DY(p)·dir` by differencing `Y` along the chart line `p + ε·dir`.
pub fn directional_derivative<Y>(
    y: &Y,
    p: &GroupPoint,
    dir: &TangentPair,
    h: f64,
    rule: FiniteDifference,
) -> Result<TangentPair>
where
    Y: Fn(&GroupPoint) -> TangentPair,
{
    match rule {
        FiniteDifference::Central => central(y, p, dir, h),
        FiniteDifference::Richardson => {
            let coarse = central(y, p, dir, h)?;
            let fine = central(y, p, dir, 0.5 * h)?;
            Ok(fine.scale(4.0 / 3.0).axpy(-1.0 / 3.0, &coarse))
        }
    }
}

/// `∇_X Y (p)` with central differences of step `fd_step`.
pub fn nabla<X, Y>(x: &X, y: &Y, p: &GroupPoint, fd_step: f64) -> Result<TangentPair>
where
    X: Fn(&GroupPoint) -> TangentPair,
    Y: Fn(&GroupPoint) -> TangentPair,
{
    nabla_with(x, y, p, fd_step, FiniteDifference::Central)
}

pub fn nabla_with<X, Y>(
    x: &X,
    y: &Y,
    p: &GroupPoint,
    fd_step: f64,
    rule: FiniteDifference,
) -> Result<TangentPair>
where
    X: Fn(&GroupPoint) -> TangentPair,
    Y: Fn(&GroupPoint) -> TangentPair,
{
    let xp = x(p);
    let yp = y(p);
    let dy = directional_derivative(y, p, &xp, fd_step, rule)?;
    Ok(dy.sub(&christoffel_at(p, &xp, &yp)?))
}

/// The chart expression of the bracket of vector fields, `DY·X - DX·Y`.
pub fn local_bracket<X, Y>(x: &X, y: &Y, p: &GroupPoint, fd_step: f64) -> Result<TangentPair>
where
    X: Fn(&GroupPoint) -> TangentPair,
    Y: Fn(&GroupPoint) -> TangentPair,
{
    let dy = directional_derivative(y, p, &x(p), fd_step, FiniteDifference::Central)?;
    let dx = directional_derivative(x, p, &y(p), fd_step, FiniteDifference::Central)?;
    Ok(dy.sub(&dx))
}
