//! Time integration of the π-2CH system.
//!
//! Two formulations are integrated independently:
//!
//! * **Eulerian**: `(u, r)` with `r = π(ρ)` the zero-mean representative,
//!   `u_t = -u u_x - ½A⁻¹∂x(2u² + u_x² + r²)`, `r_t = -(r u)_x`. The flow map
//!   `φ_t = u∘φ` and the scalar `f_t = r∘φ` are carried along so the
//!   Lagrangian conservation laws can be monitored.
//! * **Lagrangian**: the geodesic equation `(φ_tt, f_tt) = Γ_{(φ,f)}((φ_t,f_t),(φ_t,f_t))`
//!   started at the identity, with `(u, r) = (φ_t, f_t)∘φ⁻¹` recovered on
//!   demand.
//!
//! Both use explicit RK4 with a fixed step.

mod eulerian;
mod lagrangian;
mod monitor;
mod rk4;

use crate::error::{Error, Result};
use crate::fourier::{DiffeoMap, GridSpec, PeriodicField};

pub use eulerian::{eulerian_rhs, eulerian_rhs_for, integrate_eulerian, EulerianRun};
pub use lagrangian::{
    dependence_perturbation, integrate_lagrangian, lagrangian_rhs, reconstruct_eulerian,
    smooth_dependence_probe, LagrangianRun,
};
pub use monitor::{conservation_residuals, monitors, Residuals};
pub use rk4::{step_rk4, OdeState};

/// Time-stepping scheme. Only classical RK4 is provided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Rk4,
}

/// Which equations the Eulerian right-hand side integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Model {
    /// The full two-component system.
    #[default]
    TwoComponent,
    /// The one-component Camassa–Holm equation; `r` is frozen.
    CamassaHolm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub grid: GridSpec,
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub model: Model,
    /// Integration halts with a wave-breaking flag once `min φ_x` drops to this.
    pub min_phix_floor: f64,
    /// Snapshots are kept every this many steps (plus the final state).
    pub snapshot_stride: usize,
    /// Diagnostics are recorded every this many steps (plus the final state).
    pub diagnostics_stride: usize,
    /// Sup-norm ceiling above which a run is declared unstable.
    pub sup_ceiling: f64,
}

impl SolverConfig {
    pub fn new(grid: GridSpec, dt: f64, t_end: f64) -> Self {
        Self {
            grid,
            dt,
            t_end,
            scheme: Scheme::Rk4,
            model: Model::TwoComponent,
            min_phix_floor: 1e-4,
            snapshot_stride: 50,
            diagnostics_stride: 1,
            sup_ceiling: 1e6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt", format!("must be positive and finite, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad(
                "t_end",
                format!("must be non-negative and finite, got {}", self.t_end),
            );
        }
        if !(self.min_phix_floor > 0.0 && self.min_phix_floor < 1.0) {
            return bad(
                "min_phix_floor",
                format!("must lie in (0, 1), got {}", self.min_phix_floor),
            );
        }
        if self.snapshot_stride == 0 {
            return bad("snapshot_stride", "must be at least 1".into());
        }
        if self.diagnostics_stride == 0 {
            return bad("diagnostics_stride", "must be at least 1".into());
        }
        if self.sup_ceiling.is_nan() || self.sup_ceiling <= 0.0 {
            return bad(
                "sup_ceiling",
                format!("must be positive, got {}", self.sup_ceiling),
            );
        }
        Ok(())
    }

    /// Step sizes covering `[0, t_end]`; the last one absorbs the remainder.
    pub(crate) fn step_sizes(&self) -> Vec<f64> {
        let ratio = self.t_end / self.dt;
        let count = (ratio - 1e-9).ceil().max(0.0) as usize;
        (0..count)
            .map(|i| {
                if i + 1 == count {
                    self.t_end - self.dt * i as f64
                } else {
                    self.dt
                }
            })
            .collect()
    }
}

/// Eulerian state `(u, [ρ])` with `r` the zero-mean representative of `[ρ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerianState {
    pub t: f64,
    pub u: PeriodicField,
    pub r: PeriodicField,
}

impl EulerianState {
    /// Builds a state from a velocity and a density, keeping `π(ρ)`.
    pub fn from_density(t: f64, u: PeriodicField, rho: &PeriodicField) -> Result<Self> {
        u.grid().check_same(rho.grid())?;
        Ok(Self {
            t,
            u,
            r: rho.project_zero_mean(),
        })
    }

    /// `m = u - u_xx`.
    pub fn momentum(&self) -> PeriodicField {
        self.u.apply_helmholtz()
    }
}

/// Point and velocity `(φ, [f], φ_t, [f]_t)` on the semidirect product.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianState {
    pub t: f64,
    pub phi: DiffeoMap,
    pub f: PeriodicField,
    pub phi_t: PeriodicField,
    pub f_t: PeriodicField,
}

/// Conserved quantities and blow-up indicators at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy: f64,
    /// `sup |(m∘φ)φ_x² + (r∘φ)f_xφ_x - m₀|`.
    pub m1_residual: f64,
    /// `sup |(r∘φ)φ_x - r₀|`.
    pub m2_residual: f64,
    pub mean_r: f64,
    pub min_phi_x: f64,
}

/// Why a run stopped.
#[derive(Debug, Clone, PartialEq)]
pub enum HaltReason {
    Completed,
    /// `min φ_x` reached the configured floor.
    WaveBreaking {
        t: f64,
        min_phi_x: f64,
    },
    /// Non-finite values or a sup-norm above the ceiling.
    Instability {
        t: f64,
        detail: String,
    },
}

impl HaltReason {
    pub fn is_completed(&self) -> bool {
        matches!(self, HaltReason::Completed)
    }
}

/// Largest relative deviation of the energy from its initial value.
pub fn relative_energy_drift(records: &[DiagnosticsRecord]) -> f64 {
    let Some(first) = records.first() else {
        return 0.0;
    };
    let scale = first.energy.abs();
    records.iter().fold(0.0, |m, r| {
        let d = (r.energy - first.energy).abs();
        m.max(if scale > 0.0 { d / scale } else { d })
    })
}

/// Field-wise check against the instability criteria.
pub(crate) fn instability(fields: &[&PeriodicField], ceiling: f64) -> Option<String> {
    for f in fields {
        if !f.is_finite() {
            return Some("non-finite value in state".into());
        }
        let s = f.sup_norm();
        if s > ceiling {
            return Some(format!("sup norm {s:e} exceeds ceiling {ceiling:e}"));
        }
    }
    None
}
