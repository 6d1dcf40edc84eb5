//! Winding angle of planar Brownian motion driven by a point-vortex drift.
//!
//! The crate has four layers:
//!
//! * [`sde`]: an adaptive Euler–Maruyama integrator for
//!   `dR = R⊥ β/|R|² dt + √2 dW` with reflecting circular boundaries that
//!   tracks the continuous winding angle, plus a deterministic parallel
//!   ensemble runner.
//! * [`laws`]: the asymptotic winding laws (inverse-Gamma point law, theta
//!   function disk law, Gaussian annulus law, and the drift-free Cauchy and
//!   hyperbolic-secant laws) with their time-dependent normalizers.
//! * [`oracles`]: independent numerical routes to the same laws: Fourier
//!   quadrature of the asymptotic characteristic functions and the leading
//!   annulus eigenvalue from the Bessel cross-product condition.
//! * [`stats`]: histograms, L2 and Kolmogorov–Smirnov distances and the
//!   validation report tying simulations to laws.

pub mod error;
pub mod geometry;
pub mod laws;
pub mod oracles;
pub mod quadrature;
pub mod sde;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use geometry::{Geometry, ParticleState, SimParams, WindingSample};
pub use laws::{LimitLaw, Normalizer, EULER_GAMMA};
pub use oracles::{ComplexOrder, QuadratureSpec};
pub use sde::{run_ensemble, simulate_winding};
pub use stats::{make_histogram, validate, Histogram, ValidationReport};
