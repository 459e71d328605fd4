use std::f64::consts::TAU;

use super::eulerian::require_completed;
use super::monitor::record;
use super::{
    instability, integrate_eulerian, step_rk4, DiagnosticsRecord, EulerianState, HaltReason, LagrangianState,
    SolverConfig,
};
use crate::error::{Error, Result};
use crate::fourier::{compose, DiffeoMap, GridSpec, PeriodicField};
use crate::geometry::{christoffel_with_inverse, TangentPair};

/// Geodesic acceleration `(φ_tt, f_tt) = Γ_{(φ,f)}((φ_t,f_t),(φ_t,f_t))`.
///
/// Fails with [`Error::BelowFloor`] once `min φ_x` is at or below `floor`.
pub fn lagrangian_rhs(s: &LagrangianState, floor: f64) -> Result<(PeriodicField, PeriodicField)> {
    s.phi.check_floor(floor)?;
    let inverse = s.phi.invert(floor)?;
    let vel = TangentPair::from_class(s.phi_t.clone(), s.f_t.clone());
    Ok(christoffel_with_inverse(&s.phi, &inverse, &vel, &vel).into_parts())
}

/// `u = φ_t∘φ⁻¹`, `r = π(f_t∘φ⁻¹)`.
pub fn reconstruct_eulerian(s: &LagrangianState, floor: f64) -> Result<EulerianState> {
    let inverse = s.phi.invert(floor)?;
    Ok(EulerianState {
        t: s.t,
        u: compose(&s.phi_t, &inverse),
        r: compose(&s.f_t, &inverse).project_zero_mean(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianRun {
    pub snapshots: Vec<LagrangianState>,
    /// Eulerian fields reconstructed at each snapshot.
    pub eulerian: Vec<EulerianState>,
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub halt: HaltReason,
    /// Last accepted state.
    pub final_state: LagrangianState,
}

fn to_state(t: f64, a: &[PeriodicField; 4]) -> Result<LagrangianState> {
    Ok(LagrangianState {
        t,
        phi: DiffeoMap::new(a[0].clone())?,
        f: a[1].clone(),
        phi_t: a[2].clone(),
        f_t: a[3].clone(),
    })
}

fn is_breaking(e: &Error) -> bool {
    matches!(e, Error::BelowFloor { .. } | Error::NotMonotone { .. })
}

/// Integrates the geodesic equation from the identity with initial velocity
/// `u0 = (u₀, r₀)` up to `cfg.t_end`.
pub fn integrate_lagrangian(u0: &TangentPair, cfg: &SolverConfig) -> Result<LagrangianRun> {
    cfg.validate()?;
    cfg.grid.check_same(u0.grid())?;
    let grid = cfg.grid;
    let floor = cfg.min_phix_floor;
    let (m0, r0) = (u0.v1().apply_helmholtz(), u0.v2().clone());
    let mut t = 0.0;
    let mut state = [
        PeriodicField::zeros(grid),
        PeriodicField::zeros(grid),
        u0.v1().clone(),
        u0.v2().clone(),
    ];

    let mut snapshots = Vec::new();
    let mut eulerian = Vec::new();
    let mut diagnostics = Vec::new();
    let mut keep = |s: &LagrangianState,
                    snap: bool,
                    diag: bool,
                    snapshots: &mut Vec<LagrangianState>,
                    diagnostics: &mut Vec<DiagnosticsRecord>|
     -> Result<()> {
        if !(snap || diag) {
            return Ok(());
        }
        let e = reconstruct_eulerian(s, floor)?;
        if diag {
            diagnostics.push(record(s.t, &e.u, &e.r, &s.phi, &s.f, &m0, &r0));
        }
        if snap {
            snapshots.push(s.clone());
            eulerian.push(e);
        }
        Ok(())
    };
    keep(
        &to_state(t, &state)?,
        true,
        true,
        &mut snapshots,
        &mut diagnostics,
    )?;

    let mut halt = HaltReason::Completed;
    let steps = cfg.step_sizes();
    for (i, &h) in steps.iter().enumerate() {
        let stepped = step_rk4(&state, h, |a| {
            let s = to_state(t, a)?;
            let (pt, ft) = lagrangian_rhs(&s, floor)?;
            Ok([a[2].clone(), a[3].clone(), pt, ft])
        });
        let mut next = match stepped {
            Ok(next) => next,
            Err(e) if is_breaking(&e) => {
                let min_phi_x = 1.0 + state[0].derivative().min();
                halt = HaltReason::WaveBreaking { t, min_phi_x };
                break;
            }
            Err(e) => return Err(e),
        };
        next[1] = next[1].project_zero_mean();
        let t_next = t + h;
        if let Some(detail) = instability(&next.iter().collect::<Vec<_>>(), cfg.sup_ceiling) {
            halt = HaltReason::Instability { t: t_next, detail };
            break;
        }
        let min_phi_x = 1.0 + next[0].derivative().min();
        if min_phi_x <= floor {
            halt = HaltReason::WaveBreaking { t: t_next, min_phi_x };
            break;
        }
        state = next;
        t = t_next;
        let last = i + 1 == steps.len();
        let s = to_state(t, &state)?;
        keep(
            &s,
            (i + 1) % cfg.snapshot_stride == 0 || last,
            (i + 1) % cfg.diagnostics_stride == 0 || last,
            &mut snapshots,
            &mut diagnostics,
        )?;
    }
    Ok(LagrangianRun {
        final_state: to_state(t, &state)?,
        snapshots,
        eulerian,
        diagnostics,
        halt,
    })
}

/// The fixed perturbation direction `(cos 4πx, sin 2πx)` used by
/// [`smooth_dependence_probe`].
pub fn dependence_perturbation(grid: GridSpec) -> TangentPair {
    TangentPair::from_class(
        PeriodicField::from_fn(grid, |x| (2.0 * TAU * x).cos()),
        PeriodicField::from_fn(grid, |x| (TAU * x).sin()),
    )
}

/// Sup-norm distance at `t_end` between the Eulerian solutions from `u0` and
/// from `u0 + ε·δ`, with `δ` from [`dependence_perturbation`].
///
/// `eps` must lie in `[0, 0.1]`; both runs must complete.
pub fn smooth_dependence_probe(u0: &TangentPair, eps: f64, cfg: &SolverConfig) -> Result<f64> {
    if !(0.0..=0.1).contains(&eps) {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: format!("must lie in [0, 0.1], got {eps}"),
        });
    }
    cfg.grid.check_same(u0.grid())?;
    let delta = dependence_perturbation(cfg.grid);
    let start = |p: &TangentPair| EulerianState {
        t: 0.0,
        u: p.v1().clone(),
        r: p.v2().clone(),
    };
    let (s0, s1) = (start(u0), start(&u0.axpy(eps, &delta)));
    let (a, b) = rayon::join(|| integrate_eulerian(&s0, cfg), || integrate_eulerian(&s1, cfg));
    let (a, b) = (a?, b?);
    require_completed(&a.halt)?;
    require_completed(&b.halt)?;
    let (x, y) = (&a.final_state, &b.final_state);
    Ok(x.u.max_abs_diff(&y.u).max(x.r.max_abs_diff(&y.r)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;
    use crate::geometry::christoffel;

    fn g() -> GridSpec {
        GridSpec::new(64).unwrap()
    }

    fn at_identity(u0: &TangentPair) -> LagrangianState {
        LagrangianState {
            t: 0.0,
            phi: DiffeoMap::identity(g()),
            f: PeriodicField::zeros(g()),
            phi_t: u0.v1().clone(),
            f_t: u0.v2().clone(),
        }
    }

    fn smooth() -> TangentPair {
        TangentPair::from_class(
            PeriodicField::from_fn(g(), |x| 0.2 * (TAU * x).sin()),
            PeriodicField::from_fn(g(), |x| 0.1 * (TAU * x).cos()),
        )
    }

    #[test]
    fn rhs_at_identity_is_christoffel() {
        let u0 = smooth();
        let (pt, ft) = lagrangian_rhs(&at_identity(&u0), 1e-4).unwrap();
        let expect = christoffel(&u0, &u0).unwrap();
        assert!(pt.max_abs_diff(expect.v1()) < 1e-14);
        assert!(ft.max_abs_diff(expect.v2()) < 1e-14);
    }

    #[test]
    fn reconstruction_at_identity() {
        let u0 = smooth();
        let e = reconstruct_eulerian(&at_identity(&u0), 1e-4).unwrap();
        assert!(e.u.max_abs_diff(u0.v1()) < 1e-15);
        assert!(e.r.max_abs_diff(u0.v2()) < 1e-15);
    }

    #[test]
    fn zero_velocity_stays_at_rest() {
        let run = integrate_lagrangian(&TangentPair::zero(g()), &SolverConfig::new(g(), 0.05, 0.5)).unwrap();
        assert!(run.halt.is_completed());
        assert_eq!(run.final_state.phi, DiffeoMap::identity(g()));
        assert!(run.diagnostics.iter().all(|d| d.energy == 0.0));
    }

    #[test]
    fn constant_velocity_rotates() {
        let c = 0.37;
        let u0 = TangentPair::from_class(PeriodicField::constant(g(), c), PeriodicField::zeros(g()));
        let cfg = SolverConfig::new(g(), 0.01, 0.5);
        let run = integrate_lagrangian(&u0, &cfg).unwrap();
        for s in &run.snapshots {
            let shift = PeriodicField::constant(g(), c * s.t);
            assert!(s.phi.displacement().max_abs_diff(&shift) < 1e-10);
            let (pt, ft) = lagrangian_rhs(s, cfg.min_phix_floor).unwrap();
            assert!(pt.sup_norm() < 1e-10 && ft.sup_norm() < 1e-10);
        }
        for e in &run.eulerian {
            assert!(e.u.max_abs_diff(u0.v1()) < 1e-10);
        }
    }

    #[test]
    fn rhs_refuses_states_below_floor() {
        let eta = PeriodicField::from_fn(g(), |x| 0.159 * (TAU * x).sin());
        let s = LagrangianState {
            phi: DiffeoMap::new(eta).unwrap(),
            ..at_identity(&smooth())
        };
        assert!(matches!(lagrangian_rhs(&s, 1e-2), Err(Error::BelowFloor { .. })));
    }

    #[test]
    fn probe_arguments() {
        let cfg = SolverConfig::new(g(), 0.01, 0.05);
        assert_eq!(smooth_dependence_probe(&smooth(), 0.0, &cfg).unwrap(), 0.0);
        assert!(smooth_dependence_probe(&smooth(), 0.2, &cfg).is_err());
        assert!(smooth_dependence_probe(&smooth(), -0.01, &cfg).is_err());
    }
}
