//! Curvature of the right-invariant metric at the identity.
//!
//! Two independent routes are provided: [`sectional_direct`] assembles the
//! full curvature tensor from the local formula
//! `R(u,v)w = D₁Γ(w,u)v - D₁Γ(w,v)u + Γ(Γ(w,v),u) - Γ(Γ(w,u),v)`
//! and pairs it with the metric, while [`sectional_closed`] evaluates the
//! closed form `⟨Γ(u,v),Γ(u,v)⟩ - ⟨Γ(u,u),Γ(v,v)⟩` plus four mean-value
//! corrections. The corrections vanish for one-component data, which is why
//! the bare Γ formula is not enough in the two-component case.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{GridSpec, PeriodicField};
use crate::geometry::{gamma, metric_unchecked, TangentPair};
use crate::sample::{self, DEFAULT_MAX_MODE};

/// Both evaluations of `S(u,v) = ⟨R(u,v)v, u⟩` for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureReport {
    pub s_closed: f64,
    pub s_direct: f64,
    pub abs_diff: f64,
    pub mu_correction: f64,
    pub gamma_part: f64,
}

impl CurvatureReport {
    /// `|s_closed - s_direct| / (1 + |s_direct|)`.
    pub fn rel_diff(&self) -> f64 {
        self.abs_diff / (1.0 + self.s_direct.abs())
    }
}

/// Derivative of the right-invariant Christoffel map in the base point,
/// `D₁Γ(w,u)v = -Γ(wₓv₁, u) - Γ(uₓv₁, w) + Γ(w,u)ₓv₁`.
pub fn d1_gamma(w: &TangentPair, u: &TangentPair, v: &TangentPair) -> Result<TangentPair> {
    w.grid().check_same(u.grid())?;
    w.grid().check_same(v.grid())?;
    Ok(d1(w, u, v))
}

fn d1(w: &TangentPair, u: &TangentPair, v: &TangentPair) -> TangentPair {
    let s = v.v1();
    let a = gamma(&w.derivative().times(s), u);
    let b = gamma(&u.derivative().times(s), w);
    let c = gamma(w, u).derivative().times(s);
    c.sub(&a).sub(&b)
}

/// Curvature tensor `R(u,v)w` at the identity.
pub fn riemann(u: &TangentPair, v: &TangentPair, w: &TangentPair) -> Result<TangentPair> {
    u.grid().check_same(v.grid())?;
    u.grid().check_same(w.grid())?;
    Ok(riemann_unchecked(u, v, w))
}

fn riemann_unchecked(u: &TangentPair, v: &TangentPair, w: &TangentPair) -> TangentPair {
    d1(w, u, v)
        .sub(&d1(w, v, u))
        .add(&gamma(&gamma(w, v), u))
        .sub(&gamma(&gamma(w, u), v))
}

/// Unnormalised sectional curvature `⟨R(u,v)v, u⟩` from the full tensor.
pub fn sectional_direct(u: &TangentPair, v: &TangentPair) -> Result<f64> {
    u.grid().check_same(v.grid())?;
    Ok(metric_unchecked(&riemann_unchecked(u, v, v), u))
}

/// `⟨Γ(u,v),Γ(u,v)⟩ - ⟨Γ(u,u),Γ(v,v)⟩`.
pub fn gamma_part(u: &TangentPair, v: &TangentPair) -> Result<f64> {
    u.grid().check_same(v.grid())?;
    let uv = gamma(u, v);
    Ok(metric_unchecked(&uv, &uv) - metric_unchecked(&gamma(u, u), &gamma(v, v)))
}

/// `μ(u₁ₓv₂)² + μ(u₂ₓv₁)² + μ(u₁u₂ₓ)μ(v₁ₓv₂) + μ(u₂v₁ₓ)μ(u₁v₂ₓ)`.
pub fn mu_correction(u: &TangentPair, v: &TangentPair) -> Result<f64> {
    u.grid().check_same(v.grid())?;
    let mu = |a: &PeriodicField, b: &PeriodicField| a.inner_unchecked(b);
    let (u1, u2) = (u.v1(), u.v2());
    let (v1, v2) = (v.v1(), v.v2());
    let (u1x, u2x) = (u1.derivative(), u2.derivative());
    let (v1x, v2x) = (v1.derivative(), v2.derivative());
    Ok(mu(&u1x, v2).powi(2)
        + mu(&u2x, v1).powi(2)
        + mu(u1, &u2x) * mu(&v1x, v2)
        + mu(u2, &v1x) * mu(u1, &v2x))
}

/// Closed-form curvature alongside the direct evaluation.
pub fn sectional_closed(u: &TangentPair, v: &TangentPair) -> Result<CurvatureReport> {
    let gamma_part = gamma_part(u, v)?;
    let mu_correction = mu_correction(u, v)?;
    let s_closed = gamma_part + mu_correction;
    let s_direct = sectional_direct(u, v)?;
    Ok(CurvatureReport {
        s_closed,
        s_direct,
        abs_diff: (s_closed - s_direct).abs(),
        mu_correction,
        gamma_part,
    })
}

/// Which family of random planes a scan draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairKind {
    /// Both components random.
    #[default]
    Generic,
    /// Second components zero: the one-component reduction.
    ChReduced,
    /// `v` a random multiple of `u`; the plane degenerates and `S = 0`.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub pair_count: usize,
    pub seed: u64,
    pub max_mode: usize,
    pub kind: PairKind,
}

impl ScanOptions {
    pub fn new(pair_count: usize, seed: u64) -> Self {
        Self {
            pair_count,
            seed,
            max_mode: DEFAULT_MAX_MODE,
            kind: PairKind::Generic,
        }
    }
}

/// Magnitude below which a curvature value is counted as zero.
pub const ZERO_CURVATURE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScanSummary {
    pub max_abs_diff: f64,
    pub max_rel_diff: f64,
    pub max_abs_mu_correction: f64,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl ScanSummary {
    pub fn from_reports(reports: &[CurvatureReport]) -> Self {
        reports.iter().fold(Self::default(), |mut s, r| {
            s.max_abs_diff = s.max_abs_diff.max(r.abs_diff);
            s.max_rel_diff = s.max_rel_diff.max(r.rel_diff());
            s.max_abs_mu_correction = s.max_abs_mu_correction.max(r.mu_correction.abs());
            if r.s_closed.abs() <= ZERO_CURVATURE {
                s.zero += 1;
            } else if r.s_closed > 0.0 {
                s.positive += 1;
            } else {
                s.negative += 1;
            }
            s
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureScan {
    pub reports: Vec<CurvatureReport>,
    pub summary: ScanSummary,
}

/// The pair used for trial `index` of a scan.
pub fn scan_pair(opts: &ScanOptions, grid: GridSpec, index: usize) -> (TangentPair, TangentPair) {
    let mut rng = sample::trial_rng(opts.seed, index as u64);
    match opts.kind {
        PairKind::Generic => (
            sample::tangent_pair(grid, opts.max_mode, &mut rng),
            sample::tangent_pair(grid, opts.max_mode, &mut rng),
        ),
        PairKind::ChReduced => {
            let zero = PeriodicField::zeros(grid);
            let u1 = sample::band_limited(grid, opts.max_mode, &mut rng);
            let v1 = sample::band_limited(grid, opts.max_mode, &mut rng);
            (
                TangentPair::from_class(u1, zero.clone()),
                TangentPair::from_class(v1, zero),
            )
        }
        PairKind::Degenerate => {
            let u = sample::tangent_pair(grid, opts.max_mode, &mut rng);
            let factor = rng.gen_range(0.5..2.0);
            let v = u.scale(factor);
            (u, v)
        }
    }
}

/// Seeded randomized comparison of the closed and direct curvature over
/// `pair_count` random planes. Deterministic for a given seed regardless of
/// thread count.
pub fn curvature_scan(pair_count: usize, seed: u64, grid: GridSpec) -> Result<CurvatureScan> {
    curvature_scan_with(&ScanOptions::new(pair_count, seed), grid)
}

pub fn curvature_scan_with(opts: &ScanOptions, grid: GridSpec) -> Result<CurvatureScan> {
    if opts.pair_count == 0 {
        return Err(Error::InvalidParameter {
            name: "pair_count",
            reason: "must be at least 1".into(),
        });
    }
    let reports = (0..opts.pair_count)
        .into_par_iter()
        .map(|i| {
            let (u, v) = scan_pair(opts, grid, i);
            sectional_closed(&u, &v)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = ScanSummary::from_reports(&reports);
    Ok(CurvatureScan { reports, summary })
}
