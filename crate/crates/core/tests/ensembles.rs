use winding::laws::annulus_a;
use winding::sde::{simulate_winding_observed, substream};
use winding::stats::mean_variance;
use winding::{run_ensemble, Error, Geometry, SimParams};

const ANNULUS: Geometry = Geometry::Annulus { a: 0.5, b: 2.0 };

fn thetas(beta: f64, t: f64, n: u64, seed: u64) -> Vec<f64> {
    let p = SimParams::new(beta, t, 1.0)
        .with_realizations(n)
        .with_seed(seed);
    run_ensemble(&p, &ANNULUS)
        .unwrap()
        .into_iter()
        .map(|s| s.theta_final)
        .collect()
}

#[test]
fn drift_free_annulus_is_centred() {
    let t = 5.0;
    let n = 1000;
    for seed in [1, 2, 3] {
        let (mean, _) = mean_variance(&thetas(0.0, t, n, seed));
        let tol = 4.0 * (2.0 * annulus_a(t, 0.5, 2.0) / n as f64).sqrt();
        assert!(mean.abs() <= tol, "seed {seed}: mean {mean} > {tol}");
    }
}

#[test]
fn mean_winding_increases_with_beta() {
    let n = 2000;
    let stats: Vec<(f64, f64)> = [0.0, 1.0, 2.0]
        .iter()
        .map(|&beta| {
            let (m, v) = mean_variance(&thetas(beta, 5.0, n, 11));
            (m, (v / n as f64).sqrt())
        })
        .collect();
    for w in stats.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        assert!(hi.0 - lo.0 > 4.0 * (lo.1 + hi.1), "{stats:?}");
    }
}

#[test]
fn paths_stay_in_the_domain_and_wind_continuously() {
    let p = SimParams::new(2.0, 3.0, 1.0);
    for geometry in [
        ANNULUS,
        Geometry::DiskExterior { a: 0.8 },
        Geometry::FreePlane,
    ] {
        let mut prev_time = 0.0;
        let mut count = 0u64;
        let sample = simulate_winding_observed(&p, &geometry, &mut substream(5, 1), |s| {
            assert!(
                geometry.contains_radius(s.radius()),
                "{geometry:?}: r = {}",
                s.radius()
            );
            // The drift bound may undercut dt_min close to the vortex, so tiny
            // steps can leave the clock unchanged at f64 resolution.
            assert!(s.time >= prev_time);
            prev_time = s.time;
            count += 1;
        })
        .unwrap();
        assert_eq!(prev_time, 3.0);
        assert_eq!(count, sample.n_steps);
    }
}

#[test]
fn integrator_failure_names_the_trajectory() {
    // Too thin to ever accept a step of the default size.
    let thin = Geometry::Annulus {
        a: 1.0,
        b: 1.0 + 1e-9,
    };
    let p = SimParams::new(0.0, 1.0, 1.0 + 5e-10).with_realizations(3);
    match run_ensemble(&p, &thin) {
        Err(Error::IntegratorFailure {
            index, consecutive, ..
        }) => {
            assert_eq!(index, 0);
            assert_eq!(consecutive, 100);
        }
        other => panic!("expected IntegratorFailure, got {other:?}"),
    }
}
