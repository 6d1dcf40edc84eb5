//! Histograms, distances between samples and laws, and validation reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::LimitLaw;

/// Equal-width, density-normalized histogram.
///
/// `densities[i] = count_i / (n_samples · Δx)`, so the histogram carries
/// mass `1 − clipped_fraction`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub n_samples: usize,
    pub clipped_fraction: f64,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.edges[self.edges.len() - 1] - self.edges[0]) / self.densities.len() as f64
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1]))
    }

    /// `Σ densities · Δx`.
    pub fn mass(&self) -> f64 {
        self.densities.iter().sum::<f64>() * self.bin_width()
    }
}

pub fn make_histogram(samples: &[f64], n_bins: usize, range: (f64, f64)) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (low, high) = range;
    if n_bins == 0 || !(low < high) || !low.is_finite() || !high.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "histogram needs n_bins >= 1 and a finite low < high, got {n_bins} bins over [{low}, {high}]"
        )));
    }
    let width = (high - low) / n_bins as f64;
    let mut counts = vec![0u64; n_bins];
    let mut inside = 0u64;
    for &x in samples {
        if x >= low && x <= high {
            let bin = (((x - low) / width) as usize).min(n_bins - 1);
            counts[bin] += 1;
            inside += 1;
        }
    }
    let n = samples.len();
    let scale = 1.0 / (n as f64 * width);
    Ok(Histogram {
        edges: (0..=n_bins).map(|i| low + width * i as f64).collect(),
        densities: counts.iter().map(|&c| c as f64 * scale).collect(),
        n_samples: n,
        clipped_fraction: (n as u64 - inside) as f64 / n as f64,
    })
}

/// `√(Σ_i (density_i − pdf(center_i))² Δx)`.
pub fn l2_error(hist: &Histogram, pdf: impl Fn(f64) -> f64) -> f64 {
    let dx = hist.bin_width();
    let ss: f64 = hist
        .densities
        .iter()
        .zip(hist.centers())
        .map(|(&d, c)| {
            let e = d - pdf(c);
            e * e
        })
        .sum();
    (ss * dx).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above.abs()).max(below.abs());
    }
    Ok(d.min(1.0))
}

/// Mean and unbiased variance (zero variance for a single sample).
pub fn mean_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (n - 1.0))
}

/// Sample median (mean of the two middle order statistics for even sizes).
pub fn median(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let m = sorted.len() / 2;
    Ok(if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        0.5 * (sorted[m - 1] + sorted[m])
    })
}

/// Empirical-versus-analytic comparison at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub geometry: String,
    pub law: LimitLaw,
    pub t: f64,
    pub n_samples: usize,
    pub normalizer_scale: f64,
    pub normalizer_shift: f64,
    pub l2_error: f64,
    pub ks_distance: f64,
    /// Moments and median of the normalized samples.
    pub sample_mean: f64,
    pub sample_variance: f64,
    pub sample_median: f64,
    pub clipped_fraction: f64,
    /// For the drift-free laws: the same metrics under the normalizer
    /// without the `e^γ` correction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncorrected: Option<UncorrectedMetrics>,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncorrectedMetrics {
    pub normalizer_scale: f64,
    pub l2_error: f64,
    pub ks_distance: f64,
}

/// Normalizes raw winding angles for `law` at time `t` and compares them to
/// the law on its default window with `bins` bins.
pub fn validate(samples: &[f64], law: &LimitLaw, t: f64, bins: usize) -> Result<ValidationReport> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let normalizer = law.normalizer(t)?;
    let xs: Vec<f64> = samples.iter().map(|&s| normalizer.apply(s)).collect();
    let hist = make_histogram(&xs, bins, law.default_range())?;
    let (sample_mean, sample_variance) = mean_variance(&xs);

    let uncorrected = match law.uncorrected_normalizer(t) {
        None => None,
        Some(n) => {
            let n = n?;
            let ys: Vec<f64> = samples.iter().map(|&s| n.apply(s)).collect();
            let h = make_histogram(&ys, bins, law.default_range())?;
            Some(UncorrectedMetrics {
                normalizer_scale: n.scale,
                l2_error: l2_error(&h, |x| law.pdf(x)),
                ks_distance: ks_distance(&ys, |x| law.cdf(x))?,
            })
        }
    };

    Ok(ValidationReport {
        geometry: geometry_of(law).to_string(),
        law: *law,
        t,
        n_samples: samples.len(),
        normalizer_scale: normalizer.scale,
        normalizer_shift: normalizer.shift,
        l2_error: l2_error(&hist, |x| law.pdf(x)),
        ks_distance: ks_distance(&xs, |x| law.cdf(x))?,
        sample_mean,
        sample_variance,
        sample_median: median(&xs)?,
        clipped_fraction: hist.clipped_fraction,
        uncorrected,
        histogram: hist,
    })
}

fn geometry_of(law: &LimitLaw) -> &'static str {
    match law {
        LimitLaw::PointVortex { .. } | LimitLaw::PointFree { .. } => "point",
        LimitLaw::DiskVortex { .. } | LimitLaw::DiskFree { .. } => "disk",
        LimitLaw::AnnulusGauss { .. } => "annulus",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{cdf_point, pdf_annulus_normalized};

    #[test]
    fn histogram_examples() {
        let h = make_histogram(&[0.5], 1, (0.0, 1.0)).unwrap();
        assert_eq!(h.densities, vec![1.0]);
        assert_eq!(h.clipped_fraction, 0.0);

        let h = make_histogram(&[0.5, 5.0], 1, (0.0, 1.0)).unwrap();
        assert_eq!(h.densities, vec![0.5]);
        assert_eq!(h.clipped_fraction, 0.5);

        // Upper edge belongs to the last bin; NaN is clipped.
        let h = make_histogram(&[1.0, 0.0, f64::NAN], 2, (0.0, 1.0)).unwrap();
        assert_eq!(h.densities, vec![2.0 / 3.0, 2.0 / 3.0]);
        assert!((h.mass() + h.clipped_fraction - 1.0).abs() < 1e-15);

        assert_eq!(make_histogram(&[], 3, (0.0, 1.0)), Err(Error::EmptyInput));
        assert!(make_histogram(&[1.0], 0, (0.0, 1.0)).is_err());
        assert!(make_histogram(&[1.0], 3, (1.0, 1.0)).is_err());
    }

    #[test]
    fn l2_examples() {
        let h = make_histogram(&[0.5], 1, (0.0, 1.0)).unwrap();
        assert_eq!(l2_error(&h, |_| 1.0), 0.0);
        assert_eq!(l2_error(&h, |_| 0.0), 1.0);

        let h = make_histogram(&[0.5], 2, (0.0, 2.0)).unwrap();
        assert_eq!(h.densities, vec![1.0, 0.0]);
        assert!((l2_error(&h, |_| 0.5) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ks_examples() {
        let median = 2.198_109_338_317_732_4;
        let d = ks_distance(&[median], cdf_point).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
        assert_eq!(ks_distance(&[-5.0, -1.0], cdf_point).unwrap(), 1.0);
        assert_eq!(ks_distance(&[], cdf_point), Err(Error::EmptyInput));
    }

    #[test]
    fn gaussian_histogram_tracks_density() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let xs: Vec<f64> = (0..1_000_000)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        let h = make_histogram(&xs, 100, (-5.0, 5.0)).unwrap();
        let worst = h
            .densities
            .iter()
            .zip(h.centers())
            .map(|(d, c)| (d - pdf_annulus_normalized(c)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 0.01, "{worst}");
    }

    #[test]
    fn median_and_moments() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]).unwrap(), 2.5);
        let (m, v) = mean_variance(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((v - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn validate_reports_both_normalizers_for_free_laws() {
        let samples = [1.0, -2.0, 3.5, 10.0, -0.1];
        let r = validate(&samples, &LimitLaw::PointFree { r0: 1.0 }, 1e4, 20).unwrap();
        let u = r
            .uncorrected
            .expect("free laws carry the uncorrected metrics");
        assert!(u.normalizer_scale > r.normalizer_scale);
        let r = validate(
            &samples,
            &LimitLaw::PointVortex { beta: 1.0, r0: 1.0 },
            1e4,
            20,
        )
        .unwrap();
        assert!(r.uncorrected.is_none());
        assert!(validate(
            &samples,
            &LimitLaw::PointVortex { beta: 1.0, r0: 1.0 },
            0.1,
            20
        )
        .is_err());
    }
}
