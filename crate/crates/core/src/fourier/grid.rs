use crate::error::{Error, Result};

/// Uniform grid on the unit circle `[0, 1)` together with the dealiasing rule
/// applied after products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    dealias_fraction: f64,
}

impl GridSpec {
    pub const DEFAULT_DEALIAS: f64 = 2.0 / 3.0;

    /// Grid with `n` points and the 2/3 dealiasing rule.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_dealias(n, Self::DEFAULT_DEALIAS)
    }

    pub fn with_dealias(n: usize, dealias_fraction: f64) -> Result<Self> {
        if n < 16 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGridSize(n));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(Error::InvalidDealiasFraction(dealias_fraction));
        }
        Ok(Self { n, dealias_fraction })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    /// Largest mode kept after a product.
    pub fn dealias_cutoff(&self) -> usize {
        let half = (self.n / 2) as f64;
        // guard against 2/3 * n/2 landing a hair below an integer
        ((self.dealias_fraction * half) + 1e-9).floor() as usize
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Grid abscissae `x_j = j / n`.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.n).map(move |j| j as f64 * h)
    }

    /// Signed wavenumber stored at FFT index `j`; the Nyquist index maps to `+n/2`.
    #[inline]
    pub fn mode(&self, j: usize) -> i64 {
        if j <= self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    #[inline]
    pub fn is_nyquist(&self, j: usize) -> bool {
        j == self.n / 2
    }

    pub(crate) fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}
