use std::convert::Infallible;

use super::monitor::record;
use super::{instability, step_rk4, DiagnosticsRecord, EulerianState, HaltReason, Model, SolverConfig};
use crate::error::{Error, Result};
use crate::fourier::{DiffeoMap, PeriodicField, TrigInterpolant};

/// Time derivatives `(u_t, r_t)` of the two-component system.
pub fn eulerian_rhs(s: &EulerianState) -> (PeriodicField, PeriodicField) {
    eulerian_rhs_for(Model::TwoComponent, &s.u, &s.r)
}

/// `u_t = -u u_x - ½A⁻¹∂x(2u² + u_x² + r²)`, `r_t = -(r u)_x`; under
/// [`Model::CamassaHolm`] the `r` terms are dropped and `r_t = 0`.
pub fn eulerian_rhs_for(
    model: Model,
    u: &PeriodicField,
    r: &PeriodicField,
) -> (PeriodicField, PeriodicField) {
    let ux = u.derivative();
    let mut source = u.mul_dealiased(u).scale(2.0).axpy(1.0, &ux.mul_dealiased(&ux));
    if model == Model::TwoComponent {
        source = source.axpy(1.0, &r.mul_dealiased(r));
    }
    let du = u
        .mul_dealiased(&ux)
        .scale(-1.0)
        .axpy(-0.5, &source.derivative().invert_helmholtz());
    let dr = match model {
        Model::TwoComponent => r.mul_dealiased(u).derivative().scale(-1.0),
        Model::CamassaHolm => PeriodicField::zeros(*u.grid()),
    };
    (du, dr)
}

/// Samples of `g ∘ φ` for `φ = id + η`, without requiring `φ` to be monotone.
fn pull_back(g: &PeriodicField, eta: &PeriodicField) -> PeriodicField {
    let interp = TrigInterpolant::new(g);
    let values = eta
        .grid()
        .points()
        .zip(eta.values())
        .map(|(x, d)| interp.eval(x + d))
        .collect();
    PeriodicField::from_values(*g.grid(), values).expect("sample count preserved")
}

/// State `[u, r, η, f]`: Eulerian fields plus the flow map `φ = id + η` and
/// the transported scalar `f`.
fn rhs_with_flow(model: Model, s: &[PeriodicField; 4]) -> [PeriodicField; 4] {
    let [u, r, eta, _] = s;
    let (du, dr) = eulerian_rhs_for(model, u, r);
    [du, dr, pull_back(u, eta), pull_back(r, eta)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerianRun {
    pub snapshots: Vec<EulerianState>,
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub halt: HaltReason,
    /// Last accepted state.
    pub final_state: EulerianState,
}

/// Integrates the Eulerian system from `s0` to `cfg.t_end`.
///
/// A halt (wave breaking or instability) is not an error: the run returns
/// with [`EulerianRun::halt`] set and the data collected so far.
pub fn integrate_eulerian(s0: &EulerianState, cfg: &SolverConfig) -> Result<EulerianRun> {
    cfg.validate()?;
    cfg.grid.check_same(s0.u.grid())?;
    cfg.grid.check_same(s0.r.grid())?;
    let mean = s0.r.mean();
    if mean.abs() > 1e-12 {
        log::warn!("initial r has mean {mean:e}; projecting to zero mean");
    }
    let grid = cfg.grid;
    let r_init = s0.r.project_zero_mean();
    let m0 = s0.u.apply_helmholtz();
    let mut t = s0.t;
    let mut state = [
        s0.u.clone(),
        r_init.clone(),
        PeriodicField::zeros(grid),
        PeriodicField::zeros(grid),
    ];

    let snapshot = |t: f64, s: &[PeriodicField; 4]| EulerianState {
        t,
        u: s[0].clone(),
        r: s[1].clone(),
    };
    let diag = |t: f64, s: &[PeriodicField; 4]| -> Option<DiagnosticsRecord> {
        let phi = DiffeoMap::new(s[2].clone()).ok()?;
        Some(record(t, &s[0], &s[1], &phi, &s[3], &m0, &r_init))
    };

    let mut snapshots = vec![snapshot(t, &state)];
    let mut diagnostics: Vec<_> = diag(t, &state).into_iter().collect();
    let mut halt = HaltReason::Completed;
    let steps = cfg.step_sizes();
    for (i, &h) in steps.iter().enumerate() {
        let mut next = step_rk4(&state, h, |s| Ok::<_, Infallible>(rhs_with_flow(cfg.model, s)))
            .unwrap_or_else(|e| match e {});
        next[3] = next[3].project_zero_mean();
        let t_next = t + h;
        if let Some(detail) = instability(&[&next[0], &next[1]], cfg.sup_ceiling) {
            halt = HaltReason::Instability { t: t_next, detail };
            break;
        }
        state = next;
        t = t_next;
        let min_phi_x = 1.0 + state[2].derivative().min();
        let breaking = min_phi_x <= cfg.min_phix_floor;
        let last = i + 1 == steps.len() || breaking;
        if (i + 1) % cfg.snapshot_stride == 0 || last {
            snapshots.push(snapshot(t, &state));
        }
        if (i + 1) % cfg.diagnostics_stride == 0 || last {
            diagnostics.extend(diag(t, &state));
        }
        if breaking {
            halt = HaltReason::WaveBreaking { t, min_phi_x };
            break;
        }
    }
    Ok(EulerianRun {
        final_state: snapshot(t, &state),
        snapshots,
        diagnostics,
        halt,
    })
}

pub(crate) fn require_completed(halt: &HaltReason) -> Result<()> {
    match halt {
        HaltReason::Completed => Ok(()),
        HaltReason::WaveBreaking { t, min_phi_x } => Err(Error::Halted {
            t: *t,
            reason: format!("wave breaking, min phi_x = {min_phi_x:e}"),
        }),
        HaltReason::Instability { t, detail } => Err(Error::Halted {
            t: *t,
            reason: detail.clone(),
        }),
    }
}
