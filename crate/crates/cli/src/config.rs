//! Effective run configuration: config file, then flags, then defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use winding::geometry::{DEFAULT_DELTA, DEFAULT_DT_MIN};
use winding::{Geometry, LimitLaw, SimParams};

use crate::args::{GeometryKind, RunArgs};
use crate::error::{CliError, Result};

pub const DEFAULT_R0: f64 = 1.0;
pub const DEFAULT_N: u64 = 1000;
pub const DEFAULT_BINS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub beta: f64,
    pub r0: f64,
    pub t_list: Vec<f64>,
    pub n_realizations: u64,
    pub seed: u64,
    pub delta: f64,
    /// `None` means `t / 1000` for each `t`.
    pub dt_max: Option<f64>,
    pub dt_min: f64,
    pub bins: usize,
    pub out_dir: PathBuf,
}

impl RunConfig {
    /// Builds the configuration. `need_times` is false for `validate`, which
    /// may discover the times from the sample files instead.
    pub fn from_args(args: &RunArgs, need_times: bool) -> Result<Self> {
        let base = match &args.config {
            Some(path) => Some(load(path)?),
            None => None,
        };
        let geometry = match (args.geometry, &base) {
            (Some(kind), _) => build_geometry(kind, args.a, args.b)?,
            (None, Some(c)) => override_radii(c.geometry, args.a, args.b)?,
            (None, None) => return Err(CliError::Config("--geometry is required".into())),
        };
        let pick = |flag: Option<f64>, from: fn(&RunConfig) -> f64, default: f64| {
            flag.or(base.as_ref().map(from)).unwrap_or(default)
        };
        let t_list = if !args.t.is_empty() {
            args.t.clone()
        } else {
            base.as_ref().map(|c| c.t_list.clone()).unwrap_or_default()
        };
        let config = RunConfig {
            geometry,
            beta: pick(args.beta, |c| c.beta, 0.0),
            r0: pick(args.r0, |c| c.r0, DEFAULT_R0),
            t_list,
            n_realizations: args
                .n
                .or(base.as_ref().map(|c| c.n_realizations))
                .unwrap_or(DEFAULT_N),
            seed: args.seed.or(base.as_ref().map(|c| c.seed)).unwrap_or(0),
            delta: pick(args.delta, |c| c.delta, DEFAULT_DELTA),
            dt_max: args.dt_max.or(base.as_ref().and_then(|c| c.dt_max)),
            dt_min: pick(args.dt_min, |c| c.dt_min, DEFAULT_DT_MIN),
            bins: args
                .bins
                .or(base.as_ref().map(|c| c.bins))
                .unwrap_or(DEFAULT_BINS),
            out_dir: args
                .out
                .clone()
                .or(base.as_ref().map(|c| c.out_dir.clone()))
                .unwrap_or_else(|| PathBuf::from(".")),
        };
        config.check(need_times)?;
        Ok(config)
    }

    pub fn check(&self, need_times: bool) -> Result<()> {
        if need_times && self.t_list.is_empty() {
            return Err(CliError::Config("at least one --t is required".into()));
        }
        if self.t_list.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(CliError::Config(format!(
                "times must be strictly increasing, got {:?}",
                self.t_list
            )));
        }
        if self.bins == 0 {
            return Err(CliError::Config("--bins must be at least 1".into()));
        }
        // Probe with t = 1 when no time is known yet.
        for &t in self
            .t_list
            .iter()
            .chain(self.t_list.is_empty().then_some(&1.0))
        {
            self.params(t).validate(&self.geometry)?;
        }
        Ok(())
    }

    pub fn params(&self, t: f64) -> SimParams {
        SimParams::new(self.beta, t, self.r0)
            .with_realizations(self.n_realizations)
            .with_seed(self.seed)
            .with_delta(self.delta)
            .with_dt_bounds(self.dt_min, self.dt_max.unwrap_or(t / 1000.0))
    }

    /// The law the samples are compared with: the drift laws for `β > 0`,
    /// the drift-free laws otherwise. The annulus law covers both.
    pub fn law(&self) -> LimitLaw {
        law_for(&self.geometry, self.beta, self.r0)
    }
}

pub fn law_for(geometry: &Geometry, beta: f64, r0: f64) -> LimitLaw {
    match *geometry {
        Geometry::FreePlane if beta > 0.0 => LimitLaw::PointVortex { beta, r0 },
        Geometry::FreePlane => LimitLaw::PointFree { r0 },
        Geometry::DiskExterior { a } if beta > 0.0 => LimitLaw::DiskVortex { beta, a },
        Geometry::DiskExterior { a } => LimitLaw::DiskFree { a },
        Geometry::Annulus { a, b } => LimitLaw::AnnulusGauss { beta, a, b },
    }
}

fn build_geometry(kind: GeometryKind, a: Option<f64>, b: Option<f64>) -> Result<Geometry> {
    let missing =
        |flag: &str| CliError::Config(format!("--geometry {kind:?} needs --{flag}").to_lowercase());
    let unused = |flag: &str| {
        Err(CliError::Config(format!(
            "--{flag} does not apply to this geometry"
        )))
    };
    let geometry = match kind {
        GeometryKind::Point => {
            if a.is_some() {
                return unused("a");
            }
            if b.is_some() {
                return unused("b");
            }
            Geometry::FreePlane
        }
        GeometryKind::Disk => {
            if b.is_some() {
                return unused("b");
            }
            Geometry::DiskExterior {
                a: a.ok_or_else(|| missing("a"))?,
            }
        }
        GeometryKind::Annulus => Geometry::Annulus {
            a: a.ok_or_else(|| missing("a"))?,
            b: b.ok_or_else(|| missing("b"))?,
        },
    };
    geometry.validate()?;
    Ok(geometry)
}

fn override_radii(geometry: Geometry, a: Option<f64>, b: Option<f64>) -> Result<Geometry> {
    let kind = match geometry {
        Geometry::FreePlane => GeometryKind::Point,
        Geometry::DiskExterior { .. } => GeometryKind::Disk,
        Geometry::Annulus { .. } => GeometryKind::Annulus,
    };
    build_geometry(kind, a.or(geometry.inner()), b.or(geometry.outer()))
}

/// Reads a bare configuration or the `config` echo inside a report.
fn load(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let value = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(value).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
