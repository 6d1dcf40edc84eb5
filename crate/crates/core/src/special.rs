//! Special functions: `erfc`, `Γ`, and real-order Bessel functions of the
//! first kind with the derivatives needed by the annulus eigenvalue search.

/// Complementary error function, accurate to a few ulp on the whole real
/// line (musl's implementation through `libm`).
#[inline]
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// The Gamma function for real arguments.
#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

const SERIES_MAX_TERMS: usize = 400;

/// Power-series terms `(-1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1))`, passed to
/// `visit(m, term)` until they are negligible.
///
/// Works for any real order whose `Γ(ν+1)` is finite. The series loses about
/// `x / 2.3` decimal digits to cancellation, so it is intended for
/// `x ≲ 20`.
fn for_each_series_term(nu: f64, x: f64, mut visit: impl FnMut(usize, f64)) {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) / gamma(nu + 1.0);
    let mut largest = term.abs();
    for m in 0..SERIES_MAX_TERMS {
        visit(m, term);
        let mf = m as f64;
        term *= -q / ((mf + 1.0) * (mf + 1.0 + nu));
        largest = largest.max(term.abs());
        if mf > half && term.abs() <= 1e-18 * largest {
            break;
        }
    }
}

/// `J_ν(x)` for real order `ν` (not a negative integer) and `x > 0`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for_each_series_term(nu, x, |_, t| sum += t);
    sum
}

/// `J′_ν(x)`, by termwise differentiation of the power series.
pub fn bessel_j_prime(nu: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for_each_series_term(nu, x, |m, t| sum += t * (2.0 * m as f64 + nu));
    sum / x
}

/// `Y′_ν(x)` for non-integer `ν`, from
/// `Y_ν = (J_ν cos νπ − J_{−ν}) / sin νπ`.
pub fn bessel_y_prime(nu: f64, x: f64) -> f64 {
    let (s, c) = (std::f64::consts::PI * nu).sin_cos();
    (bessel_j_prime(nu, x) * c - bessel_j_prime(-nu, x)) / s
}
