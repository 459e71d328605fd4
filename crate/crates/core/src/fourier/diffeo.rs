use super::field::PeriodicField;
use super::grid::GridSpec;
use super::interp::{Interpolation, PeriodicSpline, TrigInterpolant};
use crate::error::{Error, Result};

/// Default lower bound on `φ_x` accepted by inversion.
pub const DEFAULT_PHIX_FLOOR: f64 = 1e-6;

/// Orientation-preserving circle diffeomorphism `φ(x) = x + η(x)` with a
/// periodic displacement `η`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffeoMap {
    displacement: PeriodicField,
}

impl DiffeoMap {
    /// Wraps a displacement, rejecting maps with `φ_x ≤ 0` at some grid point.
    pub fn new(displacement: PeriodicField) -> Result<Self> {
        let map = Self { displacement };
        let min_phi_x = map.min_phi_x();
        if min_phi_x.is_nan() || min_phi_x <= 0.0 {
            return Err(Error::NotMonotone { min_phi_x });
        }
        Ok(map)
    }

    pub fn identity(grid: GridSpec) -> Self {
        Self {
            displacement: PeriodicField::zeros(grid),
        }
    }

    /// Rigid rotation `x ↦ x + θ`.
    pub fn rotation(grid: GridSpec, theta: f64) -> Self {
        Self {
            displacement: PeriodicField::constant(grid, theta),
        }
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        self.displacement.grid()
    }

    #[inline]
    pub fn displacement(&self) -> &PeriodicField {
        &self.displacement
    }

    /// Samples `φ(x_j) = x_j + η(x_j)`, not reduced modulo 1.
    pub fn samples(&self) -> Vec<f64> {
        self.grid()
            .points()
            .zip(self.displacement.values())
            .map(|(x, d)| x + d)
            .collect()
    }

    pub fn phi_x(&self) -> PeriodicField {
        self.displacement.derivative().map(|d| 1.0 + d)
    }

    pub fn min_phi_x(&self) -> f64 {
        self.phi_x().min()
    }

    pub fn check_floor(&self, floor: f64) -> Result<()> {
        let min_phi_x = self.min_phi_x();
        if min_phi_x < floor {
            Err(Error::BelowFloor { min_phi_x, floor })
        } else {
            Ok(())
        }
    }

    /// `φ ∘ ψ`, the map `x ↦ φ(ψ(x))`.
    pub fn then_after(&self, psi: &DiffeoMap) -> Result<DiffeoMap> {
        self.grid().check_same(psi.grid())?;
        let pulled = compose(&self.displacement, psi);
        DiffeoMap::new(&psi.displacement + &pulled)
    }

    /// The inverse map, found point by point with a safeguarded Newton
    /// iteration on the trigonometric interpolant of `η`.
    ///
    /// Fails with [`Error::BelowFloor`] when `min φ_x` is under `floor`, which
    /// signals that the map is close to losing invertibility.
    pub fn invert(&self, floor: f64) -> Result<DiffeoMap> {
        self.check_floor(floor)?;
        let grid = *self.grid();
        let eta = TrigInterpolant::new(&self.displacement);
        // the interpolant may overshoot the samples slightly between nodes
        let spread = self.displacement.max() - self.displacement.min();
        let margin = 0.5 * spread + 1e-12;
        let lo_shift = -self.displacement.max() - margin;
        let hi_shift = -self.displacement.min() + margin;

        let mut out = Vec::with_capacity(grid.n());
        for x in grid.points() {
            let y = invert_point(&eta, x, x + lo_shift, x + hi_shift)?;
            out.push(y - x);
        }
        DiffeoMap::new(PeriodicField::from_values(grid, out)?)
    }
}

fn invert_point(eta: &TrigInterpolant, target: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let residual = |y: f64| {
        let (d, dd) = eta.eval_with_derivative(y);
        (y + d - target, 1.0 + dd)
    };
    // widen the bracket if the overshoot margin was not enough
    for _ in 0..60 {
        if residual(lo).0 <= 0.0 {
            break;
        }
        lo -= hi - lo;
    }
    for _ in 0..60 {
        if residual(hi).0 >= 0.0 {
            break;
        }
        hi += hi - lo;
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (g, slope) = residual(y);
        if g.abs() <= 1e-14 {
            return Ok(y);
        }
        if g < 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let newton = y - g / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - y).abs() <= 1e-15 * (1.0 + y.abs()) || hi - lo <= 1e-14 {
            return Ok(next);
        }
        y = next;
    }
    Err(Error::InversionFailed { target })
}

/// `f ∘ φ` using the trigonometric interpolant of `f`.
pub fn compose(f: &PeriodicField, phi: &DiffeoMap) -> PeriodicField {
    compose_with(f, phi, Interpolation::Trigonometric)
}

pub fn compose_with(f: &PeriodicField, phi: &DiffeoMap, how: Interpolation) -> PeriodicField {
    assert_eq!(f.grid(), phi.grid(), "grid mismatch in composition");
    let points = phi.samples();
    let values = match how {
        Interpolation::Trigonometric => {
            let interp = TrigInterpolant::new(f);
            points.iter().map(|&y| interp.eval(y)).collect()
        }
        Interpolation::CubicSpline => {
            let spline = PeriodicSpline::new(f);
            points.iter().map(|&y| spline.eval(y)).collect()
        }
    };
    PeriodicField::from_values(*f.grid(), values).expect("sample count preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn wobble(grid: GridSpec, amp: f64) -> DiffeoMap {
        DiffeoMap::new(PeriodicField::from_fn(grid, |x| amp * (TAU * x).sin())).unwrap()
    }

    #[test]
    fn rejects_folded_maps() {
        let g = GridSpec::new(64).unwrap();
        let folded = PeriodicField::from_fn(g, |x| 0.3 * (TAU * x).sin());
        assert!(matches!(DiffeoMap::new(folded), Err(Error::NotMonotone { .. })));
    }

    #[test]
    fn compose_with_identity_and_quarter_shift() {
        let g = GridSpec::new(32).unwrap();
        let s = PeriodicField::from_fn(g, |x| (TAU * x).sin());
        assert!(compose(&s, &DiffeoMap::identity(g)).max_abs_diff(&s) < 1e-14);
        let shifted = compose(&s, &DiffeoMap::rotation(g, 0.25));
        let c = PeriodicField::from_fn(g, |x| (TAU * x).cos());
        assert!(shifted.max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn compose_matches_analytic_evaluation() {
        let g = GridSpec::new(256).unwrap();
        let phi = wobble(g, 0.1);
        let f = PeriodicField::from_fn(g, |x| (TAU * x).cos());
        let expect = PeriodicField::from_fn(g, |x| (TAU * (x + 0.1 * (TAU * x).sin())).cos());
        assert!(compose(&f, &phi).max_abs_diff(&expect) <= 1e-10);
    }

    #[test]
    fn spline_composition_is_close() {
        let g = GridSpec::new(256).unwrap();
        let phi = wobble(g, 0.1);
        let f = PeriodicField::from_fn(g, |x| (TAU * x).cos());
        let a = compose_with(&f, &phi, Interpolation::CubicSpline);
        let b = compose(&f, &phi);
        assert!(a.max_abs_diff(&b) < 1e-7);
    }

    #[test]
    fn inversion_of_identity_and_rotation() {
        let g = GridSpec::new(32).unwrap();
        let id = DiffeoMap::identity(g).invert(DEFAULT_PHIX_FLOOR).unwrap();
        assert!(id.displacement().sup_norm() < 1e-15);
        let inv = DiffeoMap::rotation(g, 0.25).invert(DEFAULT_PHIX_FLOOR).unwrap();
        assert!(
            inv.displacement()
                .max_abs_diff(&PeriodicField::constant(g, -0.25))
                < 1e-14
        );
    }

    #[test]
    fn inversion_round_trip() {
        let g = GridSpec::new(256).unwrap();
        let phi = wobble(g, 0.1);
        let psi = phi.invert(DEFAULT_PHIX_FLOOR).unwrap();
        // φ(ψ(x_j)) = x_j
        let eta = TrigInterpolant::new(phi.displacement());
        for (x, y) in g.points().zip(psi.samples()) {
            assert!((y + eta.eval(y) - x).abs() <= 1e-10);
        }
        let round = phi.then_after(&psi).unwrap();
        assert!(round.displacement().sup_norm() <= 1e-9);
    }

    #[test]
    fn inversion_respects_floor() {
        let g = GridSpec::new(64).unwrap();
        let steep = wobble(g, 0.159);
        assert!(matches!(steep.invert(0.5), Err(Error::BelowFloor { .. })));
    }
}
