//! The annulus eigenvalue against an independent shooting solution of
//! `R'' + R'/r + (λ² − k²/r²) R = 0` with `R'(a) = R'(b) = 0`.

use winding::oracles::{annulus_lead_eigenvalue, eigenvalue_ratio};

/// `R'(b)` for the solution with `R(a) = 1, R'(a) = 0`, by RK4.
fn shoot(lambda: f64, a: f64, b: f64, k: f64) -> f64 {
    let rhs = |r: f64, y: [f64; 2]| [y[1], -y[1] / r - (lambda * lambda - k * k / (r * r)) * y[0]];
    let n = 4000;
    let h = (b - a) / n as f64;
    let mut y = [1.0, 0.0];
    let mut r = a;
    for _ in 0..n {
        let k1 = rhs(r, y);
        let k2 = rhs(
            r + h / 2.0,
            [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]],
        );
        let k3 = rhs(
            r + h / 2.0,
            [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]],
        );
        let k4 = rhs(r + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for j in 0..2 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        r += h;
    }
    y[1]
}

fn shooting_eigenvalue(a: f64, b: f64, k: f64) -> f64 {
    // R'(b) < 0 for λ → 0 when k is small only past the root; scan then bisect.
    let mut lo = 1e-6;
    let f_lo = shoot(lo, a, b, k);
    let mut hi = lo;
    while shoot(hi, a, b, k).signum() == f_lo.signum() {
        hi += 1e-3;
    }
    lo = hi - 1e-3;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if shoot(mid, a, b, k).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn agrees_with_shooting() {
    for (a, b, k) in [(0.5, 2.0, 0.05), (0.5, 2.0, 0.3), (1.0, 1.5, 0.2)] {
        let bessel = annulus_lead_eigenvalue(a, b, k).unwrap();
        let shot = shooting_eigenvalue(a, b, k);
        assert!(
            ((bessel - shot) / shot).abs() < 1e-7,
            "a={a} b={b} k={k}: {bessel} vs {shot}"
        );
    }
}

#[test]
fn ratio_tends_to_one() {
    let gaps: Vec<f64> = [0.2, 0.1, 0.05, 0.02, 0.01]
        .iter()
        .map(|&k| {
            (eigenvalue_ratio(annulus_lead_eigenvalue(0.5, 2.0, k).unwrap(), 0.5, 2.0, k) - 1.0)
                .abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
