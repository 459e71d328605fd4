use pi2ch::geometry::TangentPair;
use pi2ch::solver::{integrate_eulerian, integrate_lagrangian, EulerianState};
use serde_json::json;

use super::*;
use crate::config::RunConfig;
use crate::output::{write_csv, write_json};

/// Lagrangian integration from the identity alongside the Eulerian run from
/// the same data. Writes the reconstructed trajectory to `snapshots.csv`, the
/// Eulerian one to `eulerian_snapshots.csv`, and their difference at common
/// snapshot times to `crosscheck.csv`.
pub fn cmd_geodesic(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    cfg.validate()?;
    let solver = cfg.solver_config()?;
    let (u, rho) = cfg.initial_fields()?;
    let s0 = EulerianState::from_density(0.0, u, &rho)?;
    let u0 = TangentPair::from_class(s0.u.clone(), s0.r.clone());
    let (lagrangian, eulerian) = rayon::join(
        || integrate_lagrangian(&u0, &solver),
        || integrate_eulerian(&s0, &solver),
    );
    let (lagrangian, eulerian) = (lagrangian?, eulerian?);
    log::info!(
        "geodesic: lagrangian {:?}, eulerian {:?}",
        lagrangian.halt,
        eulerian.halt
    );

    let cross: Vec<[Cell; 3]> = lagrangian
        .eulerian
        .iter()
        .filter_map(|l| {
            let e = eulerian.snapshots.iter().find(|e| e.t == l.t)?;
            Some([
                l.t.into(),
                l.u.max_abs_diff(&e.u).into(),
                l.r.max_abs_diff(&e.r).into(),
            ])
        })
        .collect();
    let max_col = |i: usize| {
        cross
            .iter()
            .map(|row| match row[i] {
                Cell::Real(v) => v,
                Cell::Int(v) => v as f64,
            })
            .fold(0.0, f64::max)
    };

    let out = &cfg.output;
    if out.csv() {
        let dir = &out.directory;
        write_csv(
            &dir.join("snapshots.csv"),
            &SNAPSHOT_HEADER,
            snapshot_rows(&lagrangian.eulerian),
        )?;
        write_csv(
            &dir.join("eulerian_snapshots.csv"),
            &SNAPSHOT_HEADER,
            snapshot_rows(&eulerian.snapshots),
        )?;
        write_csv(
            &dir.join("diagnostics.csv"),
            &DIAGNOSTICS_HEADER,
            diagnostics_rows(&lagrangian.diagnostics),
        )?;
        write_csv(
            &dir.join("crosscheck.csv"),
            &["t", "supnorm_diff_u", "supnorm_diff_r"],
            &cross,
        )?;
    }
    if out.json() {
        let summary = json!({
            "command": "geodesic",
            "grid": grid_json(cfg),
            "dt": cfg.time.dt,
            "t_end": cfg.time.t_end,
            "seed": cfg.seed,
            "halt": halt_json(&lagrangian.halt),
            "t_final": lagrangian.final_state.t,
            "diagnostics": diagnostics_summary(&lagrangian.diagnostics),
            "eulerian": {
                "halt": halt_json(&eulerian.halt),
                "diagnostics": diagnostics_summary(&eulerian.diagnostics),
            },
            "crosscheck": {
                "rows": cross.len(),
                "max_supnorm_diff_u": max_col(1),
                "max_supnorm_diff_r": max_col(2),
            },
        });
        write_json(&out.directory.join("summary.json"), &summary)?;
    }
    Ok(Outcome::from_halt(&lagrangian.halt).worst(Outcome::from_halt(&eulerian.halt)))
}
