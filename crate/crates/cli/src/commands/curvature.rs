use std::f64::consts::TAU;

use pi2ch::curvature::{curvature_scan_with, sectional_closed, CurvatureReport};
use pi2ch::fourier::{GridSpec, PeriodicField};
use pi2ch::geometry::TangentPair;
use serde_json::json;

use super::*;
use crate::config::RunConfig;
use crate::output::{write_csv, write_json};

/// The plane spanned by `(sin 2πx, 0)` and `(0, cos 2πx)`, on which the
/// μ-correction equals π².
fn counterexample(grid: GridSpec) -> anyhow::Result<CurvatureReport> {
    let zero = PeriodicField::zeros(grid);
    let u = TangentPair::from_class(PeriodicField::from_fn(grid, |x| (TAU * x).sin()), zero.clone());
    let v = TangentPair::from_class(zero, PeriodicField::from_fn(grid, |x| (TAU * x).cos()));
    Ok(sectional_closed(&u, &v)?)
}

fn row(id: usize, r: &CurvatureReport) -> [Cell; 6] {
    [
        (id as u64).into(),
        r.s_closed.into(),
        r.s_direct.into(),
        r.abs_diff.into(),
        r.gamma_part.into(),
        r.mu_correction.into(),
    ]
}

/// Seeded scan of closed-form against tensor-path sectional curvature:
/// `curvature.csv` and `summary.json`.
pub fn cmd_curvature(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    cfg.validate()?;
    let grid = cfg.grid_spec()?;
    let opts = cfg.scan_options()?;
    let scan = curvature_scan_with(&opts, grid)?;
    let extra = if cfg.curvature.with_counterexample() {
        Some(counterexample(grid)?)
    } else {
        None
    };
    let s = &scan.summary;
    log::info!(
        "curvature: {} pairs, max relative difference {:e}",
        opts.pair_count,
        s.max_rel_diff
    );

    let out = &cfg.output;
    if out.csv() {
        let rows = scan
            .reports
            .iter()
            .enumerate()
            .map(|(i, r)| row(i, r))
            .chain(extra.iter().map(|r| row(opts.pair_count, r)));
        write_csv(
            &out.directory.join("curvature.csv"),
            &[
                "pair_id",
                "s_closed",
                "s_direct",
                "abs_diff",
                "gamma_part",
                "mu_correction",
            ],
            rows,
        )?;
    }
    if out.json() {
        let mut summary = json!({
            "command": "curvature",
            "grid": grid_json(cfg),
            "seed": cfg.seed,
            "pair_count": opts.pair_count,
            "max_mode": opts.max_mode,
            "kind": cfg.curvature.kind,
            "max_abs_diff": s.max_abs_diff,
            "max_rel_diff": s.max_rel_diff,
            "max_abs_mu_correction": s.max_abs_mu_correction,
            "sign_counts": {"positive": s.positive, "negative": s.negative, "zero": s.zero},
        });
        if let Some(r) = &extra {
            summary["counterexample"] = json!({
                "pair_id": opts.pair_count,
                "s_closed": r.s_closed,
                "s_direct": r.s_direct,
                "mu_correction": r.mu_correction,
            });
        }
        write_json(&out.directory.join("summary.json"), &summary)?;
    }
    Ok(Outcome::Completed)
}
