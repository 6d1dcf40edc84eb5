//! Fixtures shared by the benchmarks.

use winding::{Geometry, SimParams};

/// The three simulation setups: geometry, drift and start radius.
pub fn setups() -> [(&'static str, Geometry, f64, f64); 3] {
    [
        ("point", Geometry::FreePlane, 1.0, 1.0),
        ("disk", Geometry::DiskExterior { a: 0.1 }, 3.0, 1.0),
        ("annulus", Geometry::Annulus { a: 0.5, b: 2.0 }, 1.0, 1.0),
    ]
}

/// Default step control for one trajectory up to `t`.
pub fn params(beta: f64, r0: f64, t: f64) -> SimParams {
    SimParams::new(beta, t, r0).with_seed(42)
}
