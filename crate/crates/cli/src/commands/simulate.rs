use pi2ch::solver::{integrate_eulerian, EulerianState};
use serde_json::json;

use super::*;
use crate::config::RunConfig;
use crate::output::{write_csv, write_json};

/// Eulerian integration: `snapshots.csv`, `diagnostics.csv`, `summary.json`.
pub fn cmd_simulate(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    cfg.validate()?;
    let solver = cfg.solver_config()?;
    let (u, rho) = cfg.initial_fields()?;
    let s0 = EulerianState::from_density(0.0, u, &rho)?;
    let run = integrate_eulerian(&s0, &solver)?;
    log::info!("simulate: {:?} at t = {}", run.halt, run.final_state.t);

    let out = &cfg.output;
    if out.csv() {
        write_csv(
            &out.directory.join("snapshots.csv"),
            &SNAPSHOT_HEADER,
            snapshot_rows(&run.snapshots),
        )?;
        write_csv(
            &out.directory.join("diagnostics.csv"),
            &DIAGNOSTICS_HEADER,
            diagnostics_rows(&run.diagnostics),
        )?;
    }
    if out.json() {
        let summary = json!({
            "command": "simulate",
            "grid": grid_json(cfg),
            "dt": cfg.time.dt,
            "t_end": cfg.time.t_end,
            "seed": cfg.seed,
            "halt": halt_json(&run.halt),
            "t_final": run.final_state.t,
            "diagnostics": diagnostics_summary(&run.diagnostics),
        });
        write_json(&out.directory.join("summary.json"), &summary)?;
    }
    Ok(Outcome::from_halt(&run.halt))
}
