//! Named initial-data profiles.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::fourier::{GridSpec, PeriodicField};

/// One Fourier mode `a cos(2πkx) + b sin(2πkx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: u32,
    pub cos: f64,
    pub sin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Zero,
    Constant(f64),
    /// `amplitude · cos(2πk(x - shift))`.
    SingleMode {
        k: u32,
        amplitude: f64,
        shift: f64,
    },
    /// `mean + first·cos(2πx) + second·sin(4πx)`.
    TwoMode {
        mean: f64,
        first: f64,
        second: f64,
    },
    /// Periodised Gaussian `amplitude · Σ_m exp(-(x - center + m)² / (2 width²))`.
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    Modes(Vec<Mode>),
}

impl Profile {
    /// The default smooth test datum: `1 + 0.1 cos(2πx) + 0.05 sin(4πx)`.
    pub const TWO_MODE: Profile = Profile::TwoMode {
        mean: 1.0,
        first: 0.1,
        second: 0.05,
    };

    pub fn sample(&self, grid: GridSpec) -> Result<PeriodicField> {
        Ok(match self {
            Profile::Zero => PeriodicField::zeros(grid),
            Profile::Constant(c) => PeriodicField::constant(grid, *c),
            Profile::SingleMode { k, amplitude, shift } => {
                let (k, a, s) = (*k as f64, *amplitude, *shift);
                PeriodicField::from_fn(grid, |x| a * (TAU * k * (x - s)).cos())
            }
            Profile::TwoMode { mean, first, second } => PeriodicField::from_fn(grid, |x| {
                mean + first * (TAU * x).cos() + second * (2.0 * TAU * x).sin()
            }),
            Profile::Gaussian {
                amplitude,
                center,
                width,
            } => {
                if width.is_nan() || *width <= 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "width",
                        reason: format!("must be positive, got {width}"),
                    });
                }
                PeriodicField::from_fn(grid, |x| amplitude * periodized_gaussian(x - center, *width))
            }
            Profile::Modes(modes) => {
                if let Some(m) = modes.iter().find(|m| m.k as usize > grid.n() / 2 - 1) {
                    return Err(Error::InvalidParameter {
                        name: "modes",
                        reason: format!("mode {} is not resolved on {} points", m.k, grid.n()),
                    });
                }
                PeriodicField::from_fn(grid, |x| {
                    modes
                        .iter()
                        .map(|m| {
                            let arg = TAU * m.k as f64 * x;
                            m.cos * arg.cos() + m.sin * arg.sin()
                        })
                        .sum()
                })
            }
        })
    }
}

/// `Σ_m exp(-(d + m)² / (2w²))`, summed outward from the nearest image until
/// the terms drop below machine precision.
fn periodized_gaussian(d: f64, width: f64) -> f64 {
    let d = d - d.round();
    let term = |m: f64| (-(d + m).powi(2) / (2.0 * width * width)).exp();
    let mut total = term(0.0);
    for m in 1.. {
        let pair = term(m as f64) + term(-(m as f64));
        total += pair;
        if pair <= f64::EPSILON * total {
            break;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_mode_values() {
        let g = GridSpec::new(16).unwrap();
        let f = Profile::TWO_MODE.sample(g).unwrap();
        assert!((f.mean() - 1.0).abs() < 1e-15);
        assert!((f.values()[0] - 1.1).abs() < 1e-15);
    }

    #[test]
    fn gaussian_is_periodic_and_peaked() {
        let g = GridSpec::new(64).unwrap();
        let p = Profile::Gaussian {
            amplitude: 1.0,
            center: 0.0,
            width: 0.3,
        };
        let f = p.sample(g).unwrap();
        // symmetric about the centre
        for j in 1..32 {
            assert!((f.values()[j] - f.values()[64 - j]).abs() < 1e-14);
        }
        assert_eq!(f.max(), f.values()[0]);
        assert!(Profile::Gaussian {
            amplitude: 1.0,
            center: 0.0,
            width: 0.0
        }
        .sample(g)
        .is_err());
    }

    #[test]
    fn unresolved_modes_rejected() {
        let g = GridSpec::new(16).unwrap();
        let p = Profile::Modes(vec![Mode {
            k: 8,
            cos: 1.0,
            sin: 0.0,
        }]);
        assert!(p.sample(g).is_err());
    }
}
