//! The four experiments. Each validates its configuration before computing
//! and reports how the run ended through an [`Outcome`].

mod curvature;
mod geodesic;
mod simulate;
mod verify;

use pi2ch::solver::{DiagnosticsRecord, EulerianState, HaltReason};
use serde_json::{json, Value};

use crate::output::Cell;

pub use curvature::cmd_curvature;
pub use geodesic::cmd_geodesic;
pub use simulate::cmd_simulate;
pub use verify::{cmd_verify, Fault};

/// How a command finished. Errors (bad config, I/O, non-finite output) are
/// reported separately through `anyhow`.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Completed,
    WaveBreaking,
    Instability,
    /// Names of the identities outside tolerance.
    IdentityFailure(Vec<String>),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Completed => 0,
            Outcome::WaveBreaking => 2,
            Outcome::Instability => 3,
            Outcome::IdentityFailure(_) => 4,
        }
    }

    fn from_halt(h: &HaltReason) -> Self {
        match h {
            HaltReason::Completed => Outcome::Completed,
            HaltReason::WaveBreaking { .. } => Outcome::WaveBreaking,
            HaltReason::Instability { .. } => Outcome::Instability,
        }
    }

    /// The more severe of two outcomes.
    fn worst(self, other: Self) -> Self {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

const SNAPSHOT_HEADER: [&str; 4] = ["t", "x", "u", "r"];
const DIAGNOSTICS_HEADER: [&str; 6] = ["t", "energy", "m1_residual", "m2_residual", "mean_r", "min_phi_x"];

fn snapshot_rows(snapshots: &[EulerianState]) -> impl Iterator<Item = [Cell; 4]> + '_ {
    snapshots.iter().flat_map(|s| {
        s.u.grid()
            .points()
            .zip(s.u.values().iter().zip(s.r.values()))
            .map(move |(x, (&u, &r))| [s.t.into(), x.into(), u.into(), r.into()])
            .collect::<Vec<_>>()
    })
}

fn diagnostics_rows(records: &[DiagnosticsRecord]) -> impl Iterator<Item = [Cell; 6]> + '_ {
    records.iter().map(|d| {
        [
            d.t.into(),
            d.energy.into(),
            d.m1_residual.into(),
            d.m2_residual.into(),
            d.mean_r.into(),
            d.min_phi_x.into(),
        ]
    })
}

fn halt_json(h: &HaltReason) -> Value {
    match h {
        HaltReason::Completed => json!({"reason": "completed"}),
        HaltReason::WaveBreaking { t, min_phi_x } => {
            json!({"reason": "wave-breaking", "t": t, "min_phi_x": min_phi_x})
        }
        HaltReason::Instability { t, detail } => {
            json!({"reason": "instability", "t": t, "detail": detail})
        }
    }
}

fn record_json(d: &DiagnosticsRecord) -> Value {
    json!({
        "t": d.t,
        "energy": d.energy,
        "m1_residual": d.m1_residual,
        "m2_residual": d.m2_residual,
        "mean_r": d.mean_r,
        "min_phi_x": d.min_phi_x,
    })
}

/// Run-level extremes of the diagnostics.
fn diagnostics_summary(records: &[DiagnosticsRecord]) -> Value {
    let max = |f: fn(&DiagnosticsRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
    let min_phi_x = records.iter().map(|d| d.min_phi_x).fold(f64::INFINITY, f64::min);
    json!({
        "records": records.len(),
        "final": records.last().map(record_json).unwrap_or_else(|| json!({})),
        "max_m1_residual": max(|d| d.m1_residual),
        "max_m2_residual": max(|d| d.m2_residual),
        "max_abs_mean_r": max(|d| d.mean_r.abs()),
        "min_phi_x": if min_phi_x.is_finite() { min_phi_x } else { 1.0 },
        "relative_energy_drift": pi2ch::solver::relative_energy_drift(records),
    })
}

fn grid_json(cfg: &crate::config::RunConfig) -> Value {
    json!({"n": cfg.grid.n, "dealias_fraction": cfg.grid.dealias_fraction})
}
