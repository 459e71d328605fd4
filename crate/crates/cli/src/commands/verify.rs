use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use pi2ch::curvature::{d1_gamma, sectional_closed};
use pi2ch::fourier::{DiffeoMap, GridSpec, PeriodicField};
use pi2ch::geometry::{
    bilinear_b, christoffel, christoffel_at, compatibility_residual, directional_derivative,
    gamma_decomposition_residual_with, lie_bracket, local_bracket, metric, metric_at, nabla,
    FiniteDifference, GroupPoint, TangentPair,
};
use pi2ch::sample::{tangent_pair, trial_rng};

use super::*;
use crate::config::RunConfig;
use crate::output::write_json;

/// Deliberate defects for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Flip the sign of ℬ.
    BSign,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    residual: f64,
}

impl Check {
    /// False for a NaN residual.
    fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Everything a check needs to draw its inputs.
struct Suite {
    grid: GridSpec,
    seed: u64,
    max_mode: usize,
    trials: usize,
    fd_trials: usize,
    fd_step: f64,
    fault: Option<Fault>,
}

impl Suite {
    /// Max over `count` trials of `f(trial inputs)`, with one generator
    /// stream per (check, trial).
    fn max_over<F>(&self, check: u64, count: usize, f: F) -> anyhow::Result<f64>
    where
        F: Fn(&mut rand_chacha::ChaCha8Rng) -> anyhow::Result<f64> + Sync,
    {
        let values = (0..count)
            .into_par_iter()
            .map(|i| f(&mut trial_rng(self.seed, (check << 32) | i as u64)))
            .collect::<anyhow::Result<Vec<f64>>>()?;
        Ok(values.into_iter().fold(0.0, f64::max))
    }

    fn pair<R: Rng>(&self, rng: &mut R) -> TangentPair {
        tangent_pair(self.grid, self.max_mode, rng)
    }

    fn b(&self, u: &TangentPair, v: &TangentPair) -> TangentPair {
        let b = bilinear_b(u, v).expect("same grid");
        match self.fault {
            Some(Fault::BSign) => b.scale(-1.0),
            None => b,
        }
    }

    /// A point away from the identity for the connection checks.
    fn off_identity<R: Rng>(&self, rng: &mut R) -> anyhow::Result<GroupPoint> {
        let (a, s) = (rng.gen_range(-0.03..0.03), rng.gen_range(0.0..1.0));
        let eta = PeriodicField::from_fn(self.grid, |x| s + a * (std::f64::consts::TAU * x).sin());
        let f = self.pair(rng).v2().scale(0.05);
        Ok(GroupPoint::new(DiffeoMap::new(eta)?, f)?)
    }

    fn run(&self) -> anyhow::Result<Vec<Check>> {
        let g = self.grid;
        let mut checks = Vec::new();
        let mut push = |name, tolerance, residual| {
            checks.push(Check {
                name,
                tolerance,
                residual,
            })
        };

        push(
            "transform_round_trip",
            1e-13,
            self.max_over(0, self.trials, |rng| {
                let values = (0..g.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let f = PeriodicField::from_values(g, values)?;
                let back = PeriodicField::from_spectrum(g, f.to_spectrum())?;
                Ok(back.max_abs_diff(&f))
            })?,
        );
        push(
            "helmholtz_round_trip",
            1e-12,
            self.max_over(1, self.trials, |rng| {
                let w = self.pair(rng).v1().clone();
                Ok(w.apply_helmholtz().invert_helmholtz().max_abs_diff(&w))
            })?,
        );
        push(
            "christoffel_symmetry",
            1e-12,
            self.max_over(2, self.trials, |rng| {
                let (u, v) = (self.pair(rng), self.pair(rng));
                Ok(christoffel(&u, &v)?.max_abs_diff(&christoffel(&v, &u)?))
            })?,
        );
        push(
            "adjoint",
            1e-9,
            self.max_over(3, self.trials, |rng| {
                let (u, v, w) = (self.pair(rng), self.pair(rng), self.pair(rng));
                let lhs = metric(&self.b(&u, &v), &w)?;
                let rhs = metric(&u, &lie_bracket(&v, &w)?)?;
                Ok((lhs - rhs).abs())
            })?,
        );
        push(
            "gamma_decomposition",
            1e-9,
            self.max_over(4, self.trials, |rng| {
                let (u, v) = (self.pair(rng), self.pair(rng));
                Ok(gamma_decomposition_residual_with(&u, &v, |a, b| self.b(a, b)))
            })?,
        );
        push(
            "compatibility",
            1e-9,
            self.max_over(5, self.trials, |rng| {
                let (u, v, w) = (self.pair(rng), self.pair(rng), self.pair(rng));
                Ok(compatibility_residual(&u, &v, &w)?)
            })?,
        );
        push(
            "torsion",
            1e-12,
            self.max_over(6, self.fd_trials, |rng| {
                let p = self.off_identity(rng)?;
                let (x, y) = (self.pair(rng), self.pair(rng));
                let (fx, fy) = (|_: &GroupPoint| x.clone(), |_: &GroupPoint| y.clone());
                let torsion = nabla(&fx, &fy, &p, self.fd_step)?.sub(&nabla(&fy, &fx, &p, self.fd_step)?);
                let bracket = local_bracket(&fx, &fy, &p, self.fd_step)?;
                Ok(torsion.sup_norm().max(bracket.sup_norm()))
            })?,
        );
        push(
            "metric_compatibility",
            1e-5,
            self.max_over(7, self.fd_trials, |rng| {
                let (x, y, z) = (self.pair(rng), self.pair(rng), self.pair(rng));
                let id = GroupPoint::identity(g);
                let h = self.fd_step;
                let at = |s: f64| -> anyhow::Result<f64> { Ok(metric_at(&id.shifted(&x, s)?, &y, &z)?) };
                let central = |h: f64| -> anyhow::Result<f64> { Ok((at(h)? - at(-h)?) / (2.0 * h)) };
                let lhs = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
                let (fx, fy, fz) = (
                    |_: &GroupPoint| x.clone(),
                    |_: &GroupPoint| y.clone(),
                    |_: &GroupPoint| z.clone(),
                );
                let rhs = metric(&nabla(&fx, &fy, &id, h)?, &z)? + metric(&y, &nabla(&fx, &fz, &id, h)?)?;
                Ok((lhs - rhs).abs())
            })?,
        );
        push(
            "d1_gamma",
            1e-6,
            self.max_over(8, self.fd_trials, |rng| {
                let (w, u, v) = (self.pair(rng), self.pair(rng), self.pair(rng));
                let gamma_at = |q: &GroupPoint| christoffel_at(q, &w, &u).expect("point above floor");
                let id = GroupPoint::identity(g);
                let fd =
                    directional_derivative(&gamma_at, &id, &v, self.fd_step, FiniteDifference::Richardson)?;
                Ok(d1_gamma(&w, &u, &v)?.max_abs_diff(&fd))
            })?,
        );
        push(
            "curvature_equivalence",
            1e-7,
            self.max_over(9, self.trials, |rng| {
                let (u, v) = (self.pair(rng), self.pair(rng));
                Ok(sectional_closed(&u, &v)?.rel_diff())
            })?,
        );
        Ok(checks)
    }
}

/// Highest random mode whose products stay exact: three factors must fit
/// under the dealias cutoff.
pub(crate) fn exact_max_mode(grid: GridSpec, configured: usize) -> usize {
    configured.min(grid.dealias_cutoff() / 3).max(1)
}

/// Runs the identity suite and writes `verify.json`. Any residual above its
/// tolerance gives [`Outcome::IdentityFailure`] naming the identities.
pub fn cmd_verify(cfg: &RunConfig, fault: Option<Fault>) -> anyhow::Result<Outcome> {
    cfg.validate()?;
    let grid = cfg.grid_spec()?;
    let v = &cfg.verify;
    let max_mode = exact_max_mode(grid, v.max_mode);
    if max_mode < v.max_mode {
        log::warn!(
            "verify: max_mode lowered from {} to {max_mode} on {} points",
            v.max_mode,
            grid.n()
        );
    }
    let suite = Suite {
        grid,
        seed: cfg.seed,
        max_mode,
        trials: v.trials,
        fd_trials: v.fd_trials,
        fd_step: v.fd_step,
        fault,
    };
    let checks = suite.run()?;
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass())
        .map(|c| c.name.to_string())
        .collect();
    for c in &checks {
        log::info!(
            "verify: {} {:e} (tolerance {:e})",
            c.name,
            c.residual,
            c.tolerance
        );
    }

    if cfg.output.json() {
        let identities: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "max_residual": c.residual,
                    "tolerance": c.tolerance,
                    "pass": c.pass(),
                })
            })
            .collect();
        let mut report = json!({
            "command": "verify",
            "grid": grid_json(cfg),
            "seed": cfg.seed,
            "max_mode": max_mode,
            "trials": v.trials,
            "fd_trials": v.fd_trials,
            "fd_step": v.fd_step,
            "identities": identities,
            "passed": failed.is_empty(),
        });
        if let Some(Fault::BSign) = fault {
            report["fault"] = json!("b-sign");
        }
        write_json(&cfg.output.directory.join("verify.json"), &report)?;
    }
    Ok(if failed.is_empty() {
        Outcome::Completed
    } else {
        Outcome::IdentityFailure(failed)
    })
}
