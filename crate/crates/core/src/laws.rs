//! Asymptotic winding laws and their time-dependent normalizers.
//!
//! Each law describes the large-`t` distribution of an affine image
//! `x = (Θ(t) − shift) / scale` of the winding angle:
//!
//! | law            | scale                      | log argument            | density                     |
//! |----------------|----------------------------|-------------------------|-----------------------------|
//! | point vortex   | `β L²/8`                   | `L = ln(4t/(r0² e^γ))`  | inverse Gamma(½, ½)         |
//! | disk vortex    | `β M²/4`                   | `M = ln(4t/(a² e^{2γ}))`| `−(π/2) θ₂′(π/2, e^{−π²x})` |
//! | annulus        | `√(2A)`, shift `βA`        | `A = 2t ln(b/a)/(b²−a²)`| standard normal             |
//! | point, `β = 0` | `L/2`                      | `L = ln(4t/(r0² e^γ))`  | standard Cauchy             |
//! | disk, `β = 0`  | `L/2`                      | `L = ln(4t/(a² e^γ))`   | hyperbolic secant           |

use std::f64::consts::{FRAC_1_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::erfc;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Relative cutoff for the theta-function series.
pub const THETA_SERIES_CUTOFF: f64 = 1e-16;

/// Crossover between the direct theta series and its Poisson dual. At
/// `x = 1/π` both series decay at the same rate.
const THETA_DUAL_BELOW: f64 = FRAC_1_PI;

/// One of the five asymptotic winding laws, with the parameters its
/// normalizer needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LimitLaw {
    PointVortex { beta: f64, r0: f64 },
    DiskVortex { beta: f64, a: f64 },
    AnnulusGauss { beta: f64, a: f64, b: f64 },
    PointFree { r0: f64 },
    DiskFree { a: f64 },
}

/// Affine map `x = (θ − shift) / scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub scale: f64,
    pub shift: f64,
}

impl Normalizer {
    #[inline]
    pub fn apply(&self, theta: f64) -> f64 {
        (theta - self.shift) / self.scale
    }
}

impl LimitLaw {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{what} in {self:?}")))
            }
        };
        match *self {
            LimitLaw::PointVortex { beta, r0 } => {
                check(beta > 0.0, "beta must be > 0 (use PointFree for beta = 0)")?;
                check(r0 > 0.0, "r0 must be > 0")
            }
            LimitLaw::DiskVortex { beta, a } => {
                check(beta > 0.0, "beta must be > 0 (use DiskFree for beta = 0)")?;
                check(a > 0.0, "a must be > 0")
            }
            LimitLaw::AnnulusGauss { beta, a, b } => {
                check(beta >= 0.0, "beta must be >= 0")?;
                check(a > 0.0 && b > a, "need 0 < a < b")
            }
            LimitLaw::PointFree { r0 } => check(r0 > 0.0, "r0 must be > 0"),
            LimitLaw::DiskFree { a } => check(a > 0.0, "a must be > 0"),
        }
    }

    /// Stable identifier used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            LimitLaw::PointVortex { .. } => "point",
            LimitLaw::DiskVortex { .. } => "disk",
            LimitLaw::AnnulusGauss { .. } => "annulus",
            LimitLaw::PointFree { .. } => "point-free",
            LimitLaw::DiskFree { .. } => "disk-free",
        }
    }

    /// The normalizer at time `t`, or `NormalizerUndefined` below the time
    /// where its logarithm turns positive.
    pub fn normalizer(&self, t: f64) -> Result<Normalizer> {
        self.validate()?;
        let scale = match *self {
            LimitLaw::PointVortex { beta, r0 } => {
                let l = log_ratio(t, r0 * r0 * EULER_GAMMA.exp())?;
                beta * l * l / 8.0
            }
            LimitLaw::DiskVortex { beta, a } => {
                let m = log_ratio(t, a * a * (2.0 * EULER_GAMMA).exp())?;
                beta * m * m / 4.0
            }
            LimitLaw::AnnulusGauss { beta, a, b } => {
                if !(t > 0.0) {
                    return Err(Error::NormalizerUndefined { t, threshold: 0.0 });
                }
                let big_a = annulus_a(t, a, b);
                return Ok(Normalizer {
                    scale: (2.0 * big_a).sqrt(),
                    shift: beta * big_a,
                });
            }
            LimitLaw::PointFree { r0 } => 0.5 * log_ratio(t, r0 * r0 * EULER_GAMMA.exp())?,
            LimitLaw::DiskFree { a } => 0.5 * log_ratio(t, a * a * EULER_GAMMA.exp())?,
        };
        Ok(Normalizer { scale, shift: 0.0 })
    }

    /// For the drift-free laws, the older normalizer without the `e^γ`
    /// factor, `x = 2Θ / ln(4t/r0²)` (resp. `a²`). `None` for other laws.
    pub fn uncorrected_normalizer(&self, t: f64) -> Option<Result<Normalizer>> {
        let length = match *self {
            LimitLaw::PointFree { r0 } => r0,
            LimitLaw::DiskFree { a } => a,
            _ => return None,
        };
        Some(log_ratio(t, length * length).map(|l| Normalizer {
            scale: 0.5 * l,
            shift: 0.0,
        }))
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            LimitLaw::PointVortex { .. } => pdf_point(x),
            LimitLaw::DiskVortex { .. } => pdf_disk(x),
            LimitLaw::AnnulusGauss { .. } => pdf_annulus_normalized(x),
            LimitLaw::PointFree { .. } => pdf_point_free(x),
            LimitLaw::DiskFree { .. } => pdf_disk_free(x),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            LimitLaw::PointVortex { .. } => cdf_point(x),
            LimitLaw::DiskVortex { .. } => cdf_disk(x),
            LimitLaw::AnnulusGauss { .. } => cdf_normal(x),
            LimitLaw::PointFree { .. } => cdf_point_free(x),
            LimitLaw::DiskFree { .. } => cdf_disk_free(x),
        }
    }

    /// Histogram window for the normalized variable.
    pub fn default_range(&self) -> (f64, f64) {
        match self {
            LimitLaw::PointVortex { .. } => (0.0, 20.0),
            LimitLaw::DiskVortex { .. } => (0.0, 5.0),
            LimitLaw::AnnulusGauss { .. } => (-6.0, 6.0),
            LimitLaw::PointFree { .. } | LimitLaw::DiskFree { .. } => (-10.0, 10.0),
        }
    }
}

/// `ln(4t / area)`, required to be positive.
fn log_ratio(t: f64, area: f64) -> Result<f64> {
    let threshold = area / 4.0;
    if !(t > threshold) || !t.is_finite() {
        return Err(Error::NormalizerUndefined { t, threshold });
    }
    Ok((4.0 * t / area).ln())
}

/// Maps raw winding angles through `law`'s normalizer at time `t`.
pub fn normalize_samples(samples: &[f64], law: &LimitLaw, t: f64) -> Result<Vec<f64>> {
    let n = law.normalizer(t)?;
    Ok(samples.iter().map(|&theta| n.apply(theta)).collect())
}

/// Inverse-Gamma(½, ½) density `(2π)^{-1/2} x^{-3/2} e^{-1/(2x)}` on `x > 0`.
pub fn pdf_point(x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    INV_SQRT_2PI * (-0.5 / x).exp() / (x * x.sqrt())
}

/// Gamma(½, ½) density `(2π)^{-1/2} y^{-1/2} e^{-y/2}`, the law of `1/x`
/// for `x` distributed as [`pdf_point`].
pub fn gamma_pdf_half_half(y: f64) -> f64 {
    if !(y > 0.0) {
        return 0.0;
    }
    INV_SQRT_2PI * (-0.5 * y).exp() / y.sqrt()
}

/// `P(X ≤ x) = erfc(1/√(2x))` for the point-vortex law.
pub fn cdf_point(x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    erfc((0.5 / x).sqrt())
}

/// Disk-vortex density `π Σ_{n≥0} (−1)^n (2n+1) e^{−(2n+1)²π²x/4}` on
/// `x > 0`.
///
/// Below `x = 1/π` the Poisson-dual form
/// `π (πx)^{−3/2} Σ (−1)^n (2n+1) e^{−(2n+1)²/(4x)}` is summed instead; both
/// series are then dominated by their first term, so the result is never
/// negative.
pub fn pdf_disk(x: f64) -> f64 {
    pdf_disk_truncated(x, THETA_SERIES_CUTOFF)
}

/// [`pdf_disk`] with an explicit relative truncation threshold: summation
/// stops once `|term| < rel_cutoff · max |partial sum|`.
pub fn pdf_disk_truncated(x: f64, rel_cutoff: f64) -> f64 {
    if !(x > 0.0) || x == f64::INFINITY {
        return 0.0;
    }
    if x >= THETA_DUAL_BELOW {
        let c = PI * PI * x / 4.0;
        PI * alternating_sum(rel_cutoff, |m| m * (-m * m * c).exp())
    } else {
        let c = 0.25 / x;
        if c > 740.0 {
            return 0.0;
        }
        let prefactor = PI / (PI * x).powf(1.5);
        prefactor * alternating_sum(rel_cutoff, |m| m * (-m * m * c).exp())
    }
}

/// Disk-vortex distribution function.
pub fn cdf_disk(x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x >= THETA_DUAL_BELOW {
        // Termwise integral of the density, with Σ(−1)^n 4/((2n+1)π) = 1
        // pulled out.
        let c = PI * PI * x / 4.0;
        1.0 - 4.0 / PI * alternating_sum(THETA_SERIES_CUTOFF, |m| (-m * m * c).exp() / m)
    } else {
        let s = 0.5 / x.sqrt();
        2.0 * alternating_sum(THETA_SERIES_CUTOFF, |m| erfc(m * s))
    }
}

/// `Σ_{n≥0} (−1)^n term(2n+1)` for rapidly decaying terms.
fn alternating_sum(rel_cutoff: f64, term: impl Fn(f64) -> f64) -> f64 {
    let mut sum = 0.0f64;
    let mut largest = 0.0f64;
    for n in 0..10_000u32 {
        let m = f64::from(2 * n + 1);
        let t = term(m);
        sum += if n % 2 == 0 { t } else { -t };
        largest = largest.max(sum.abs());
        if t.abs() < rel_cutoff * largest || t == 0.0 {
            break;
        }
    }
    sum
}

/// Standard normal density; the annulus law in `z = (Θ − βA)/√(2A)`.
pub fn pdf_annulus_normalized(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

pub fn cdf_normal(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// `A(t) = 2t ln(b/a) / (b² − a²)`, the annulus winding clock.
pub fn annulus_a(t: f64, a: f64, b: f64) -> f64 {
    let h = b - a;
    if h == 0.0 {
        return t / (a * a);
    }
    2.0 * t * (h / a).ln_1p() / (h * (b + a))
}

/// Standard Cauchy density.
pub fn pdf_point_free(x: f64) -> f64 {
    FRAC_1_PI / (1.0 + x * x)
}

pub fn cdf_point_free(x: f64) -> f64 {
    0.5 + x.atan() * FRAC_1_PI
}

/// Standard hyperbolic secant density `½ sech(πx/2)`.
pub fn pdf_disk_free(x: f64) -> f64 {
    let u = 0.5 * PI * x.abs();
    // ½ sech(u) = e^{−u} / (1 + e^{−2u})
    let e = (-u).exp();
    e / (1.0 + e * e)
}

pub fn cdf_disk_free(x: f64) -> f64 {
    2.0 * FRAC_1_PI * (0.5 * PI * x).exp().atan()
}
