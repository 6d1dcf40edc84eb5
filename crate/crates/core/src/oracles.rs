//! Independent numerical routes to the asymptotic laws.
//!
//! Separating the Fokker–Planck equation in `e^{iμθ}` turns the vortex drift
//! into a complex Bessel order `k_μ = √(μ² + iβμ)`. The large-time winding
//! densities are then Fourier integrals over `μ`:
//!
//! * around a point, `W(θ) = (1/2π) ∫ exp(−k_μ L/2 + iμθ) dμ` with
//!   `L = ln(4t/(r0² e^γ))`;
//! * outside a disk, `W(θ) = (1/2π) ∫ cosh(k_μ ln(r0/a)) sech(k_μ M/2)
//!   e^{iμθ} dμ` with `M = ln(4t/(a² e^{2γ}))`.
//!
//! These are evaluated here by adaptive quadrature, without the small-`μ`
//! expansions that give the closed-form laws, so they converge to those laws
//! only as `t → ∞`. The annulus is checked through its leading eigenvalue:
//! the smallest `λ > 0` with `J′_k(λa) Y′_k(λb) = J′_k(λb) Y′_k(λa)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laws::EULER_GAMMA;
use crate::quadrature::{integrate_complex_pieces, Tolerance};
use crate::special::{bessel_j_prime, bessel_y_prime};

/// The Bessel order `k_μ = √(μ² + iβμ)` on the branch with `Re k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder(pub Complex64);

impl ComplexOrder {
    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// `k_μ = √(μ² + iβμ)`. The principal square root already has
/// non-negative real part, and `k_{−μ} = conj(k_μ)`.
pub fn complex_order(mu: f64, beta: f64) -> ComplexOrder {
    ComplexOrder(Complex64::new(mu * mu, beta * mu).sqrt())
}

/// Truncation and tolerances for the `μ` integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Upper limit of the `μ` integral; `None` picks the point where the
    /// integrand envelope has dropped below `abs_tol / 10`.
    pub mu_cutoff: Option<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            mu_cutoff: None,
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if let Some(c) = self.mu_cutoff {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "mu_cutoff must be positive, got {c}"
                )));
            }
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    /// Cutoff for an integrand bounded by `2 e^{−rate·μ}`, so that the
    /// neglected tail `(1/π) ∫_c^∞ 2 e^{−rate·μ} dμ` is below `abs_tol/10`.
    fn cutoff_for_rate(&self, rate: f64) -> f64 {
        self.mu_cutoff.unwrap_or_else(|| {
            let c = (20.0 / (PI * rate * self.abs_tol)).ln() / rate;
            c.max(1.0 / rate)
        })
    }
}

/// `(1/2π) ∫_{−c}^{c} f(μ) dμ`, folded onto `[0, c]`. The imaginary part
/// must vanish by conjugate symmetry; a residue above `abs_tol` is a
/// failure.
fn fourier_density(
    f: impl Fn(f64) -> Complex64,
    theta: f64,
    cutoff: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // About four panels per oscillation of e^{iμθ}.
    let pieces = ((cutoff * theta.abs() / PI * 2.0).ceil() as usize).clamp(8, 4096);
    let est = integrate_complex_pieces(|mu| f(mu) + f(-mu), 0.0, cutoff, pieces, spec.tolerance())?;
    let density = est.value / (2.0 * PI);
    if density.im.abs() > spec.abs_tol {
        return Err(Error::QuadratureFailure(format!(
            "imaginary residue {:.3e} exceeds abs_tol",
            density.im
        )));
    }
    Ok(density.re)
}

/// Large-time winding density around a point vortex, by direct quadrature
/// of `(1/2π) ∫ (r0 e^{γ/2} / (2√t))^{k_μ} e^{iμθ} dμ`.
pub fn point_density_quadrature(
    theta: f64,
    t: f64,
    r0: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(r0 > 0.0 && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need r0 > 0, beta >= 0 (r0 = {r0}, beta = {beta})"
        )));
    }
    let threshold = r0 * r0 * EULER_GAMMA.exp() / 4.0;
    if !(t > threshold) {
        return Err(Error::NormalizerUndefined { t, threshold });
    }
    // (r0 e^{γ/2} / 2√t)^k = e^{−k L/2}
    let half_l = 0.5 * (4.0 * t / (r0 * r0 * EULER_GAMMA.exp())).ln();
    // Re k_μ ≥ |μ|, so the integrand is bounded by e^{−μ L/2}.
    let cutoff = spec.cutoff_for_rate(half_l);
    let integrand = |mu: f64| {
        let k = complex_order(mu, beta).0;
        (Complex64::new(0.0, mu * theta) - k * half_l).exp()
    };
    fourier_density(integrand, theta, cutoff, spec)
}

/// Large-time winding density outside a reflecting disk of radius `a`,
/// starting at radius `r0 ≥ a`, by quadrature of
/// `(1/2π) ∫ cosh(k_μ ln(r0/a)) sech(k_μ ln(ã/2√t)) e^{iμθ} dμ`, `ã = a e^γ`.
pub fn disk_density_quadrature(
    theta: f64,
    t: f64,
    r0: f64,
    a: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(a > 0.0 && r0 >= a && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < a <= r0 and beta >= 0 (a = {a}, r0 = {r0}, beta = {beta})"
        )));
    }
    let a_eff = a * EULER_GAMMA.exp();
    let threshold = a_eff * a_eff / 4.0;
    if !(t > threshold) {
        return Err(Error::NormalizerUndefined { t, threshold });
    }
    // sech(k ln(ã/2√t)) = sech(k M/2) since sech is even.
    let half_m = 0.5 * (4.0 * t / (a_eff * a_eff)).ln();
    let rho = (r0 / a).ln();
    let decay = half_m - rho;
    if !(decay > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "integrand does not decay: ln(r0/a) = {rho} >= M/2 = {half_m}"
        )));
    }
    let cutoff = spec.cutoff_for_rate(decay);
    let integrand = |mu: f64| {
        let k = complex_order(mu, beta).0;
        // cosh(kρ)/cosh(kM/2), rewritten with decaying exponentials only.
        let ratio = (k * (rho - half_m)).exp() * (1.0 + (k * (-2.0 * rho)).exp())
            / (1.0 + (k * (-2.0 * half_m)).exp());
        ratio * Complex64::new(0.0, mu * theta).exp()
    };
    fourier_density(integrand, theta, cutoff, spec)
}

/// Points in the bracketing scan over `λ ∈ (0, 4π/(b−a)]`.
pub const EIGENVALUE_SCAN_POINTS: usize = 4096;

/// The cross product whose zeros are the reflecting-annulus eigenvalues.
pub fn bessel_cross_product(lambda: f64, a: f64, b: f64, k: f64) -> f64 {
    let (xa, xb) = (lambda * a, lambda * b);
    bessel_j_prime(k, xa) * bessel_y_prime(k, xb) - bessel_j_prime(k, xb) * bessel_y_prime(k, xa)
}

/// Smallest `λ > 0` with `J′_k(λa) Y′_k(λb) − J′_k(λb) Y′_k(λa) = 0`, for a
/// real non-integer order `k > 0`.
///
/// The first sign change on a uniform grid over `(0, 4π/(b−a)]` is refined
/// by bisection to a relative width of `1e-12`.
pub fn annulus_lead_eigenvalue(a: f64, b: f64, k: f64) -> Result<f64> {
    if !(a > 0.0 && b > a && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    if !(k > 0.0 && k.fract() != 0.0 && k < 20.0) {
        return Err(Error::InvalidParameter(format!(
            "order must be positive, non-integer and below 20, got {k}"
        )));
    }
    let h = 4.0 * PI / (b - a) / EIGENVALUE_SCAN_POINTS as f64;
    let f = |lambda: f64| bessel_cross_product(lambda, a, b, k);

    let mut lo = h;
    let mut f_lo = f(lo);
    let mut bracket = None;
    for i in 2..=EIGENVALUE_SCAN_POINTS {
        let hi = h * i as f64;
        let f_hi = f(hi);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() {
            bracket = Some((lo, hi, f_lo));
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    let (mut lo, mut hi, mut f_lo) = bracket.ok_or(Error::BracketNotFound)?;
    while hi - lo > 1e-12 * lo {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `λ² (b² − a²) / (2k² ln(b/a))`, which tends to 1 as `k → 0`.
pub fn eigenvalue_ratio(lambda: f64, a: f64, b: f64, k: f64) -> f64 {
    lambda * lambda * (b * b - a * a) / (2.0 * k * k * (b / a).ln())
}
