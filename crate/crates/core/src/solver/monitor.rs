use super::{DiagnosticsRecord, LagrangianState};
use crate::error::Result;
use crate::fourier::{compose, DiffeoMap, PeriodicField};
use crate::geometry::{metric_unchecked, TangentPair};

/// Sup-norm residuals of the two Lagrangian conservation laws
/// `(m∘φ)φ_x² + (r∘φ)f_xφ_x = m₀` and `(r∘φ)φ_x = r₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub m1: f64,
    pub m2: f64,
}

pub fn conservation_residuals(
    u: &PeriodicField,
    r: &PeriodicField,
    phi: &DiffeoMap,
    f: &PeriodicField,
    m0: &PeriodicField,
    r0: &PeriodicField,
) -> Residuals {
    let m_phi = compose(&u.apply_helmholtz(), phi);
    let r_phi = compose(r, phi);
    let phi_x = phi.phi_x();
    let f_x = f.derivative();
    let mut m1: f64 = 0.0;
    let mut m2: f64 = 0.0;
    for j in 0..phi_x.values().len() {
        let px = phi_x.values()[j];
        let rp = r_phi.values()[j];
        let lhs1 = m_phi.values()[j] * px * px + rp * f_x.values()[j] * px;
        m1 = m1.max((lhs1 - m0.values()[j]).abs());
        m2 = m2.max((rp * px - r0.values()[j]).abs());
    }
    Residuals { m1, m2 }
}

pub(crate) fn record(
    t: f64,
    u: &PeriodicField,
    r: &PeriodicField,
    phi: &DiffeoMap,
    f: &PeriodicField,
    m0: &PeriodicField,
    r0: &PeriodicField,
) -> DiagnosticsRecord {
    let res = conservation_residuals(u, r, phi, f, m0, r0);
    let state = TangentPair::from_class(u.clone(), r.clone());
    DiagnosticsRecord {
        t,
        energy: metric_unchecked(&state, &state),
        m1_residual: res.m1,
        m2_residual: res.m2,
        mean_r: r.mean(),
        min_phi_x: phi.min_phi_x(),
    }
}

/// Conservation residuals, energy and blow-up indicators of a Lagrangian
/// state, with `m₀ = A u₀` and `r₀ = π(ρ₀)`.
pub fn monitors(
    s: &LagrangianState,
    m0: &PeriodicField,
    r0: &PeriodicField,
    floor: f64,
) -> Result<DiagnosticsRecord> {
    let e = super::reconstruct_eulerian(s, floor)?;
    Ok(record(s.t, &e.u, &e.r, &s.phi, &s.f, m0, r0))
}
