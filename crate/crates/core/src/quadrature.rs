//! Globally adaptive 7/15-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the total
//! estimate drops below `max(abs_tol, rel_tol·|I|)`. Integrands may be real
//! or complex; semi-infinite ranges go through `x = a + (u/(1-u))²`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights,
// copied at their published precision.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and subdivision budget for one adaptive integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

/// Result of an adaptive integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64) -> Segment {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    }
}

/// Integrates a complex-valued `f` over the finite interval `[lo, hi]`.
pub fn integrate_complex<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<Estimate<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_complex_pieces(f, lo, hi, 1, tol)
}

/// Like [`integrate_complex`], starting from `pieces` equal panels. Use
/// this for oscillatory integrands, where a single 15-point panel can
/// underestimate its own error.
pub fn integrate_complex_pieces<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    pieces: usize,
    tol: Tolerance,
) -> Result<Estimate<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::QuadratureFailure(format!(
            "finite limits required, got [{lo}, {hi}]"
        )));
    }
    if !(tol.abs_tol > 0.0 && tol.rel_tol > 0.0) {
        return Err(Error::InvalidParameter(
            "quadrature tolerances must be positive".into(),
        ));
    }
    if lo == hi {
        return Ok(Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        });
    }

    let pieces = pieces.max(1);
    let width = (hi - lo) / pieces as f64;
    let mut heap = BinaryHeap::with_capacity(2 * pieces);
    for i in 0..pieces {
        let a = lo + width * i as f64;
        let b = if i + 1 == pieces { hi } else { a + width };
        heap.push(kronrod15(&mut f, a, b));
    }
    let mut value: Complex64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();
    let mut evaluations = 15 * pieces;
    let mut subdivisions = 0;

    loop {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::QuadratureFailure("non-finite integrand".into()));
        }
        let target = tol.abs_tol.max(tol.rel_tol * value.norm());
        if error <= target {
            break;
        }
        if subdivisions >= tol.max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "subdivision limit {} reached with error {error:.3e} > {target:.3e}",
                tol.max_subdivisions
            )));
        }
        let worst = heap.pop().expect("heap holds every segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(Error::QuadratureFailure(format!(
                "interval [{}, {}] cannot be split further",
                worst.lo, worst.hi
            )));
        }
        let left = kronrod15(&mut f, worst.lo, mid);
        let right = kronrod15(&mut f, mid, worst.hi);
        evaluations += 30;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // The running sum of errors drifts; resum occasionally.
        if subdivisions % 64 == 0 {
            error = heap.iter().map(|s| s.error).sum();
            value = heap.iter().map(|s| s.value).sum();
        }
    }

    Ok(Estimate {
        value,
        error,
        evaluations,
    })
}

/// Integrates a real-valued `f` over `[lo, hi]`.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<Estimate<f64>>
where
    F: FnMut(f64) -> f64,
{
    let est = integrate_complex(|x| Complex64::new(f(x), 0.0), lo, hi, tol)?;
    Ok(Estimate {
        value: est.value.re,
        error: est.error,
        evaluations: est.evaluations,
    })
}

/// Integrates `f` over `[lo, ∞)` through `x = lo + (u/(1-u))²`.
///
/// The squared map keeps the transformed integrand bounded for tails as
/// heavy as `x^{-3/2}`; the plain `u/(1-u)` map leaves a `(1-u)^{-1/2}`
/// endpoint singularity there that fools the error estimate.
pub fn integrate_to_infinity<F>(mut f: F, lo: f64, tol: Tolerance) -> Result<Estimate<f64>>
where
    F: FnMut(f64) -> f64,
{
    integrate(
        |u| {
            let w = 1.0 - u;
            if w <= 0.0 {
                return 0.0;
            }
            let v = u / w;
            f(lo + v * v) * 2.0 * v / (w * w)
        },
        0.0,
        1.0,
        tol,
    )
}

/// Integrates `f` over the whole real line, split at `centre`.
pub fn integrate_real_line<F>(mut f: F, centre: f64, tol: Tolerance) -> Result<Estimate<f64>>
where
    F: FnMut(f64) -> f64,
{
    let half = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        ..tol
    };
    let right = integrate_to_infinity(&mut f, centre, half)?;
    let left = integrate_to_infinity(|x| f(2.0 * centre - x), centre, half)?;
    Ok(Estimate {
        value: left.value + right.value,
        error: left.error + right.error,
        evaluations: left.evaluations + right.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Tolerance {
        Tolerance {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 5000,
        }
    }

    #[test]
    fn polynomial_is_exact() {
        let est = integrate(|x| x * x, 0.0, 1.0, tight()).unwrap();
        assert!((est.value - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(est.evaluations, 15);
    }

    #[test]
    fn endpoint_singularity() {
        let est = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, tight()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-11, "{}", est.value);
    }

    #[test]
    fn oscillatory() {
        let est = integrate(|x| (50.0 * x).cos(), 0.0, 10.0, tight()).unwrap();
        let want = (500.0f64).sin() / 50.0;
        assert!((est.value - want).abs() < 1e-12);
    }

    #[test]
    fn semi_infinite_and_real_line() {
        let est = integrate_to_infinity(|x| (-x).exp(), 0.0, tight()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        let cauchy = |x: f64| 1.0 / (std::f64::consts::PI * (1.0 + x * x));
        let est = integrate_real_line(cauchy, 0.0, tight()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heavy_tail() {
        // ∫_1^∞ x^{-3/2} dx = 2
        let est = integrate_to_infinity(|x| x.powf(-1.5), 1.0, tight()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-11, "{}", est.value);
    }

    #[test]
    fn complex_integrand() {
        // ∫_0^1 e^{ix} dx = (e^{i} - 1)/i
        let est = integrate_complex(|x| Complex64::new(0.0, x).exp(), 0.0, 1.0, tight()).unwrap();
        let want = (Complex64::new(0.0, 1.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((est.value - want).norm() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let tol = Tolerance {
            max_subdivisions: 3,
            ..tight()
        };
        let err = integrate(|x| (1000.0 * x).sin() / x.sqrt(), 0.0, 1.0, tol).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure(_)));
    }
}
