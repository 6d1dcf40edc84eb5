//! Domains, simulation parameters and per-trajectory state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The region the particle diffuses in. Boundaries are reflecting circles
/// centred on the vortex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    /// The punctured plane `0 < r < ∞`.
    FreePlane,
    /// The exterior of a disk, `a ≤ r < ∞`.
    DiskExterior { a: f64 },
    /// The annulus `a ≤ r ≤ b`.
    Annulus { a: f64, b: f64 },
}

impl Geometry {
    pub fn disk(a: f64) -> Result<Self> {
        let g = Geometry::DiskExterior { a };
        g.validate()?;
        Ok(g)
    }

    pub fn annulus(a: f64, b: f64) -> Result<Self> {
        let g = Geometry::Annulus { a, b };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Geometry::FreePlane => Ok(()),
            Geometry::DiskExterior { a } => positive("a", a),
            Geometry::Annulus { a, b } => {
                positive("a", a)?;
                positive("b", b)?;
                if b > a {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "annulus needs b > a, got a = {a}, b = {b}"
                    )))
                }
            }
        }
    }

    /// Inner radius, if any.
    pub fn inner(&self) -> Option<f64> {
        match *self {
            Geometry::FreePlane => None,
            Geometry::DiskExterior { a } | Geometry::Annulus { a, .. } => Some(a),
        }
    }

    /// Outer radius, if any.
    pub fn outer(&self) -> Option<f64> {
        match *self {
            Geometry::Annulus { b, .. } => Some(b),
            _ => None,
        }
    }

    /// Short name used in file names and CSV headers.
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::FreePlane => "point",
            Geometry::DiskExterior { .. } => "disk",
            Geometry::Annulus { .. } => "annulus",
        }
    }

    /// Whether radius `r` lies in the closed domain.
    pub fn contains_radius(&self, r: f64) -> bool {
        if !(r > 0.0) {
            return false;
        }
        match *self {
            Geometry::FreePlane => r.is_finite(),
            Geometry::DiskExterior { a } => r >= a && r.is_finite(),
            Geometry::Annulus { a, b } => r >= a && r <= b,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// Parameters of one ensemble. Defaults follow [`SimParams::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    /// Vortex strength; the tangential drift speed is `beta / r`.
    pub beta: f64,
    pub t_final: f64,
    /// Start radius; trajectories start at `(r0, 0)`.
    pub r0: f64,
    /// Relative spatial step: the typical Gaussian displacement is `delta * r`.
    pub delta: f64,
    pub dt_max: f64,
    pub dt_min: f64,
    pub n_realizations: u64,
    pub seed: u64,
}

pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_DT_MIN: f64 = 1e-12;

impl SimParams {
    /// Parameters with the default step control: `delta = 0.05`,
    /// `dt_max = t_final / 1000`, `dt_min = 1e-12`, one realization, seed 0.
    pub fn new(beta: f64, t_final: f64, r0: f64) -> Self {
        SimParams {
            beta,
            t_final,
            r0,
            delta: DEFAULT_DELTA,
            dt_max: t_final / 1000.0,
            dt_min: DEFAULT_DT_MIN,
            n_realizations: 1,
            seed: 0,
        }
    }

    pub fn with_realizations(mut self, n: u64) -> Self {
        self.n_realizations = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_dt_bounds(mut self, dt_min: f64, dt_max: f64) -> Self {
        self.dt_min = dt_min;
        self.dt_max = dt_max;
        self
    }

    /// Checks the parameter invariants, including that `r0` lies strictly
    /// inside `geometry`.
    pub fn validate(&self, geometry: &Geometry) -> Result<()> {
        geometry.validate()?;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must be >= 0, got {}", self.beta));
        }
        positive("t_final", self.t_final)?;
        positive("r0", self.r0)?;
        if !(self.delta > 0.0 && self.delta <= 0.5) {
            return bad(format!("delta must lie in (0, 0.5], got {}", self.delta));
        }
        positive("dt_max", self.dt_max)?;
        positive("dt_min", self.dt_min)?;
        if self.dt_min > self.dt_max {
            return bad(format!(
                "dt_min = {} exceeds dt_max = {}",
                self.dt_min, self.dt_max
            ));
        }
        if self.n_realizations == 0 {
            return bad("n_realizations must be >= 1".into());
        }
        if let Some(a) = geometry.inner() {
            if self.r0 <= a {
                return bad(format!("r0 = {} must exceed a = {a}", self.r0));
            }
        }
        if let Some(b) = geometry.outer() {
            if self.r0 >= b {
                return bad(format!("r0 = {} must be below b = {b}", self.r0));
            }
        }
        Ok(())
    }
}

/// Position, accumulated winding angle and elapsed time of one particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub position: [f64; 2],
    /// Continuous winding angle around the origin, on the whole real line.
    pub theta_acc: f64,
    pub time: f64,
}

impl ParticleState {
    /// State at `(r0, 0)` with no winding.
    pub fn start(r0: f64) -> Self {
        ParticleState {
            position: [r0, 0.0],
            theta_acc: 0.0,
            time: 0.0,
        }
    }

    pub fn radius(&self) -> f64 {
        self.position[0].hypot(self.position[1])
    }
}

/// Terminal winding angle of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingSample {
    pub theta_final: f64,
    pub n_steps: u64,
    pub seed_index: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_invariants() {
        assert!(Geometry::disk(0.5).is_ok());
        assert!(Geometry::disk(0.0).is_err());
        assert!(Geometry::annulus(0.5, 2.0).is_ok());
        assert!(Geometry::annulus(2.0, 2.0).is_err());
        assert!(Geometry::annulus(-1.0, 2.0).is_err());
    }

    #[test]
    fn start_radius_must_be_inside() {
        let annulus = Geometry::Annulus { a: 0.5, b: 2.0 };
        assert!(SimParams::new(1.0, 20.0, 1.0).validate(&annulus).is_ok());
        assert!(SimParams::new(1.0, 20.0, 0.5).validate(&annulus).is_err());
        assert!(SimParams::new(1.0, 20.0, 2.0).validate(&annulus).is_err());
        let disk = Geometry::DiskExterior { a: 0.1 };
        assert!(SimParams::new(3.0, 1e4, 0.1).validate(&disk).is_err());
        assert!(SimParams::new(3.0, 1e4, 0.2).validate(&disk).is_ok());
    }

    #[test]
    fn step_control_invariants() {
        let g = Geometry::FreePlane;
        let p = SimParams::new(1.0, 10.0, 1.0);
        assert_eq!(p.dt_max, 0.01);
        assert!(p.validate(&g).is_ok());
        assert!(p.with_delta(0.6).validate(&g).is_err());
        assert!(p.with_delta(0.0).validate(&g).is_err());
        assert!(p.with_dt_bounds(1.0, 0.5).validate(&g).is_err());
        assert!(p.with_realizations(0).validate(&g).is_err());
        assert!(SimParams::new(-1.0, 10.0, 1.0).validate(&g).is_err());
    }

    #[test]
    fn contains_radius() {
        let g = Geometry::Annulus { a: 0.5, b: 2.0 };
        assert!(g.contains_radius(0.5));
        assert!(g.contains_radius(2.0));
        assert!(!g.contains_radius(2.0001));
        assert!(!Geometry::FreePlane.contains_radius(0.0));
    }
}
