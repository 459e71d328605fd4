use crate::fourier::PeriodicField;

/// A state that explicit Runge–Kutta schemes can form linear combinations of.
pub trait OdeState: Clone {
    /// `self + a * dir`.
    fn axpy(&self, a: f64, dir: &Self) -> Self;
}

impl OdeState for f64 {
    fn axpy(&self, a: f64, dir: &Self) -> Self {
        self + a * dir
    }
}

impl OdeState for PeriodicField {
    fn axpy(&self, a: f64, dir: &Self) -> Self {
        PeriodicField::axpy(self, a, dir)
    }
}

impl<T: OdeState, const N: usize> OdeState for [T; N] {
    fn axpy(&self, a: f64, dir: &Self) -> Self {
        std::array::from_fn(|i| self[i].axpy(a, &dir[i]))
    }
}

/// One step of the classical four-stage Runge–Kutta method for the
/// autonomous system `y' = rhs(y)`.
pub fn step_rk4<S, E>(state: &S, dt: f64, mut rhs: impl FnMut(&S) -> Result<S, E>) -> Result<S, E>
where
    S: OdeState,
{
    let k1 = rhs(state)?;
    let k2 = rhs(&state.axpy(0.5 * dt, &k1))?;
    let k3 = rhs(&state.axpy(0.5 * dt, &k2))?;
    let k4 = rhs(&state.axpy(dt, &k3))?;
    Ok(state
        .axpy(dt / 6.0, &k1)
        .axpy(dt / 3.0, &k2)
        .axpy(dt / 3.0, &k3)
        .axpy(dt / 6.0, &k4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::GridSpec;
    use std::convert::Infallible;

    #[test]
    fn zero_rhs_leaves_state_unchanged() {
        let g = GridSpec::new(16).unwrap();
        let y = PeriodicField::from_fn(g, |x| x.sin());
        let z = PeriodicField::zeros(g);
        let next = step_rk4(&y, 0.1, |_| Ok::<_, Infallible>(z.clone())).unwrap();
        assert_eq!(next, y);
    }

    #[test]
    fn linear_problem_matches_quartic_taylor_polynomial() {
        let g = GridSpec::new(16).unwrap();
        let lambda = -1.7;
        let dt = 0.3;
        let y0 = PeriodicField::constant(g, 2.0);
        let next = step_rk4(&y0, dt, |y| Ok::<_, Infallible>(y.scale(lambda))).unwrap();
        let z = lambda * dt;
        let taylor = 1.0 + z + z * z / 2.0 + z.powi(3) / 6.0 + z.powi(4) / 24.0;
        for v in next.values() {
            assert!((v - 2.0 * taylor).abs() < 1e-15);
        }
    }
}
