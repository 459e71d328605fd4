//! Run configuration: a JSON tree with defaults for every key. Unknown keys
//! are rejected.

use std::path::{Path, PathBuf};

use anyhow::Context;
use pi2ch::curvature::{PairKind, ScanOptions};
use pi2ch::fourier::{GridSpec, PeriodicField};
use pi2ch::profiles::{Mode, Profile};
use pi2ch::solver::{Model, SolverConfig};
use serde::{Deserialize, Serialize};

/// A configuration problem, reported with the offending key.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(key: &str, reason: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{key}: {reason}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub grid: GridSection,
    pub time: TimeSection,
    pub scheme: SchemeName,
    pub initial: InitialSection,
    pub output: OutputSection,
    pub seed: u64,
    pub solver: SolverSection,
    pub curvature: CurvatureSection,
    pub verify: VerifySection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: GridSection::default(),
            time: TimeSection::default(),
            scheme: SchemeName::Rk4,
            initial: InitialSection::default(),
            output: OutputSection::default(),
            seed: 7,
            solver: SolverSection::default(),
            curvature: CurvatureSection::default(),
            verify: VerifySection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub n: usize,
    pub dealias_fraction: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            n: 256,
            dealias_fraction: 2.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeSection {
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_stride: usize,
    pub diagnostics_stride: usize,
}

impl Default for TimeSection {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 0.5,
            snapshot_stride: 50,
            diagnostics_stride: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    Rk4,
}

/// Initial datum for one field: a named preset or a list of Fourier modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    Zero,
    Constant {
        value: f64,
    },
    TwoMode {
        #[serde(default = "one")]
        mean: f64,
        #[serde(default = "tenth")]
        first: f64,
        #[serde(default = "twentieth")]
        second: f64,
    },
    SingleMode {
        k: u32,
        amplitude: f64,
        #[serde(default)]
        shift: f64,
    },
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    Modes {
        modes: Vec<ModeSpec>,
    },
}

fn one() -> f64 {
    1.0
}
fn tenth() -> f64 {
    0.1
}
fn twentieth() -> f64 {
    0.05
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub k: u32,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

impl ProfileSpec {
    pub fn two_mode() -> Self {
        ProfileSpec::TwoMode {
            mean: one(),
            first: tenth(),
            second: twentieth(),
        }
    }

    pub fn to_profile(&self) -> Profile {
        match self {
            ProfileSpec::Zero => Profile::Zero,
            ProfileSpec::Constant { value } => Profile::Constant(*value),
            ProfileSpec::TwoMode { mean, first, second } => Profile::TwoMode {
                mean: *mean,
                first: *first,
                second: *second,
            },
            ProfileSpec::SingleMode { k, amplitude, shift } => Profile::SingleMode {
                k: *k,
                amplitude: *amplitude,
                shift: *shift,
            },
            ProfileSpec::Gaussian {
                amplitude,
                center,
                width,
            } => Profile::Gaussian {
                amplitude: *amplitude,
                center: *center,
                width: *width,
            },
            ProfileSpec::Modes { modes } => Profile::Modes(
                modes
                    .iter()
                    .map(|m| Mode {
                        k: m.k,
                        cos: m.cos,
                        sin: m.sin,
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    pub u: ProfileSpec,
    pub rho: ProfileSpec,
}

impl Default for InitialSection {
    fn default() -> Self {
        Self {
            u: ProfileSpec::two_mode(),
            rho: ProfileSpec::two_mode(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            formats: vec![Format::Csv, Format::Json],
        }
    }
}

impl OutputSection {
    pub fn csv(&self) -> bool {
        self.formats.contains(&Format::Csv)
    }

    pub fn json(&self) -> bool {
        self.formats.contains(&Format::Json)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    TwoComponent,
    CamassaHolm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub model: ModelName,
    pub min_phix_floor: f64,
    pub sup_ceiling: f64,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            model: ModelName::TwoComponent,
            min_phix_floor: 1e-4,
            sup_ceiling: 1e6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKindName {
    Generic,
    ChReduced,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CurvatureSection {
    pub pair_count: usize,
    pub max_mode: usize,
    pub kind: PairKindName,
    /// Append the pair `(sin 2πx, 0)`, `(0, cos 2πx)` as a last row. Defaults
    /// to true for generic scans only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_counterexample: Option<bool>,
}

impl Default for CurvatureSection {
    fn default() -> Self {
        Self {
            pair_count: 100,
            max_mode: 8,
            kind: PairKindName::Generic,
            include_counterexample: None,
        }
    }
}

impl CurvatureSection {
    pub fn with_counterexample(&self) -> bool {
        self.include_counterexample
            .unwrap_or(self.kind == PairKindName::Generic)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub trials: usize,
    /// Trials for the finite-difference checks, which cost more per trial.
    pub fd_trials: usize,
    pub max_mode: usize,
    pub fd_step: f64,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            trials: 100,
            fd_trials: 50,
            max_mode: 8,
            fd_step: 1e-4,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("malformed config: {e}")))
    }

    /// Reads `path`, or the defaults when no path is given, and applies the
    /// overrides.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| ConfigError(format!("cannot read {}: {e}", p.display())))?;
                Self::from_json(&text).with_context(|| format!("in {}", p.display()))?
            }
            None => Self::default(),
        };
        cfg.apply(overrides);
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(out) = &o.out {
            self.output.directory = out.clone();
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(n) = o.n {
            self.grid.n = n;
        }
        if let Some(dt) = o.dt {
            self.time.dt = dt;
        }
        if let Some(t_end) = o.t_end {
            self.time.t_end = t_end;
        }
    }

    pub fn grid_spec(&self) -> Result<GridSpec, ConfigError> {
        GridSpec::with_dealias(self.grid.n, self.grid.dealias_fraction).map_err(|e| invalid("grid", e))
    }

    pub fn solver_config(&self) -> Result<SolverConfig, ConfigError> {
        let mut s = SolverConfig::new(self.grid_spec()?, self.time.dt, self.time.t_end);
        s.model = match self.solver.model {
            ModelName::TwoComponent => Model::TwoComponent,
            ModelName::CamassaHolm => Model::CamassaHolm,
        };
        s.min_phix_floor = self.solver.min_phix_floor;
        s.sup_ceiling = self.solver.sup_ceiling;
        s.snapshot_stride = self.time.snapshot_stride;
        s.diagnostics_stride = self.time.diagnostics_stride;
        s.validate().map_err(|e| match e {
            pi2ch::Error::InvalidParameter { name, reason } => {
                let section = match name {
                    "dt" | "t_end" | "snapshot_stride" | "diagnostics_stride" => "time",
                    _ => "solver",
                };
                invalid(&format!("{section}.{name}"), reason)
            }
            other => ConfigError(other.to_string()),
        })?;
        Ok(s)
    }

    /// Samples `initial.u` and `initial.rho`.
    pub fn initial_fields(&self) -> Result<(PeriodicField, PeriodicField), ConfigError> {
        let g = self.grid_spec()?;
        let u = self
            .initial
            .u
            .to_profile()
            .sample(g)
            .map_err(|e| invalid("initial.u", e))?;
        let rho = self
            .initial
            .rho
            .to_profile()
            .sample(g)
            .map_err(|e| invalid("initial.rho", e))?;
        Ok((u, rho))
    }

    pub fn scan_options(&self) -> Result<ScanOptions, ConfigError> {
        let c = &self.curvature;
        if c.pair_count == 0 {
            return Err(invalid("curvature.pair_count", "must be at least 1"));
        }
        self.check_max_mode("curvature.max_mode", c.max_mode)?;
        let mut opts = ScanOptions::new(c.pair_count, self.seed);
        opts.max_mode = c.max_mode;
        opts.kind = match c.kind {
            PairKindName::Generic => PairKind::Generic,
            PairKindName::ChReduced => PairKind::ChReduced,
            PairKindName::Degenerate => PairKind::Degenerate,
        };
        Ok(opts)
    }

    fn check_max_mode(&self, key: &str, m: usize) -> Result<(), ConfigError> {
        let limit = self.grid.n / 2 - 1;
        if m == 0 || m > limit {
            return Err(invalid(
                key,
                format!("must lie in 1..={limit} on {} points", self.grid.n),
            ));
        }
        Ok(())
    }

    /// Everything every command needs, checked before any compute.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.grid_spec()?;
        if self.output.formats.is_empty() {
            return Err(invalid("output.formats", "at least one format is required"));
        }
        self.solver_config()?;
        self.initial_fields()?;
        self.scan_options()?;
        let v = &self.verify;
        if v.trials == 0 {
            return Err(invalid("verify.trials", "must be at least 1"));
        }
        if v.fd_trials == 0 {
            return Err(invalid("verify.fd_trials", "must be at least 1"));
        }
        self.check_max_mode("verify.max_mode", v.max_mode)?;
        if !(v.fd_step > 0.0 && v.fd_step < 0.1) {
            return Err(invalid(
                "verify.fd_step",
                format!("must lie in (0, 0.1), got {}", v.fd_step),
            ));
        }
        Ok(())
    }
}
