use crate::error::{Error, Result};
use crate::fourier::{compose, DiffeoMap, GridSpec, PeriodicField};

/// Mean magnitude above which a class representative is reported as
/// non-normalised.
const MEAN_TOLERANCE: f64 = 1e-12;

/// An element `(v₁, [v₂])` of the Lie algebra of the semidirect product: a
/// velocity field and a scalar class modulo constants. The class is stored
/// through its zero-mean representative.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPair {
    v1: PeriodicField,
    v2: PeriodicField,
}

impl TangentPair {
    /// Builds a pair, projecting `v2` to zero mean with a warning if it was
    /// not already normalised.
    pub fn new(v1: PeriodicField, v2: PeriodicField) -> Result<Self> {
        v1.grid().check_same(v2.grid()).map_err(|_| Error::GridMismatch {
            left: v1.grid().n(),
            right: v2.grid().n(),
        })?;
        let m = v2.mean();
        if m.abs() > MEAN_TOLERANCE {
            log::warn!("second component has mean {m:e}; projecting to its zero-mean representative");
        }
        Ok(Self::from_class(v1, v2))
    }

    /// Builds a pair from an arbitrary representative of the class, silently
    /// normalising it.
    pub fn from_class(v1: PeriodicField, v2: PeriodicField) -> Self {
        assert_eq!(v1.grid(), v2.grid(), "grid mismatch in tangent pair");
        Self {
            v2: v2.project_zero_mean(),
            v1,
        }
    }

    pub fn zero(grid: GridSpec) -> Self {
        Self {
            v1: PeriodicField::zeros(grid),
            v2: PeriodicField::zeros(grid),
        }
    }

    #[inline]
    pub fn v1(&self) -> &PeriodicField {
        &self.v1
    }

    #[inline]
    pub fn v2(&self) -> &PeriodicField {
        &self.v2
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        self.v1.grid()
    }

    pub fn into_parts(self) -> (PeriodicField, PeriodicField) {
        (self.v1, self.v2)
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            v1: self.v1.scale(a),
            v2: self.v2.scale(a),
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        Self {
            v1: self.v1.axpy(a, &other.v1),
            v2: self.v2.axpy(a, &other.v2),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    /// Componentwise `∂x`; the result's second component is again zero mean.
    pub fn derivative(&self) -> Self {
        Self {
            v1: self.v1.derivative(),
            v2: self.v2.derivative(),
        }
    }

    /// Componentwise dealiased product with a scalar field, re-normalised.
    pub fn times(&self, s: &PeriodicField) -> Self {
        Self::from_class(self.v1.mul_dealiased(s), self.v2.mul_dealiased(s))
    }

    /// Componentwise `· ∘ φ`, re-normalised.
    pub fn compose(&self, phi: &DiffeoMap) -> Self {
        Self::from_class(compose(&self.v1, phi), compose(&self.v2, phi))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.v1
            .max_abs_diff(&other.v1)
            .max(self.v2.max_abs_diff(&other.v2))
    }

    pub fn sup_norm(&self) -> f64 {
        self.v1.sup_norm().max(self.v2.sup_norm())
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        self.grid().check_same(other.grid())
    }
}

/// A point `(φ, [f])` of the semidirect product, with `f` stored zero mean.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    phi: DiffeoMap,
    f: PeriodicField,
}

impl GroupPoint {
    pub fn new(phi: DiffeoMap, f: PeriodicField) -> Result<Self> {
        phi.grid().check_same(f.grid())?;
        let m = f.mean();
        if m.abs() > MEAN_TOLERANCE {
            log::warn!("group point scalar has mean {m:e}; projecting to zero mean");
        }
        Ok(Self {
            phi,
            f: f.project_zero_mean(),
        })
    }

    pub fn identity(grid: GridSpec) -> Self {
        Self {
            phi: DiffeoMap::identity(grid),
            f: PeriodicField::zeros(grid),
        }
    }

    #[inline]
    pub fn phi(&self) -> &DiffeoMap {
        &self.phi
    }

    #[inline]
    pub fn f(&self) -> &PeriodicField {
        &self.f
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        self.phi.grid()
    }

    /// The point `p + h·dir` in the flat chart `(η, f)`, where `φ = id + η`.
    pub fn shifted(&self, dir: &TangentPair, h: f64) -> Result<Self> {
        self.grid().check_same(dir.grid())?;
        let phi = DiffeoMap::new(self.phi.displacement().axpy(h, dir.v1()))?;
        Ok(Self {
            phi,
            f: self.f.axpy(h, dir.v2()).project_zero_mean(),
        })
    }
}
