//! Euler–Maruyama integration of `dR = R⊥ β/|R|² dt + √2 dW` with
//! reflecting circular boundaries and continuous winding-angle tracking.
//!
//! The time step scales with `r²` so that both the Gaussian displacement
//! (`≈ delta·r`) and the deterministic drift rotation (`≤ delta` radians)
//! stay small relative to the distance from the vortex. The winding
//! increment of a step is the signed angle between consecutive positions,
//! which is exact as long as a single step never turns by more than π.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, ParticleState, SimParams, WindingSample};

/// Reflections allowed per step before the step is rejected.
const MAX_REFLECTIONS: usize = 64;

/// Consecutive rejected steps before a trajectory is abandoned.
pub const MAX_CONSECUTIVE_REJECTIONS: u32 = 100;

/// Point-vortex drift `position⊥ · β/|position|²`, with `(x, y)⊥ = (−y, x)`.
pub fn drift_velocity(position: [f64; 2], beta: f64) -> Result<[f64; 2]> {
    let [x, y] = position;
    let r2 = x * x + y * y;
    if !(r2 > 0.0) {
        return Err(Error::OriginSingularity);
    }
    let w = beta / r2;
    Ok([-y * w, x * w])
}

/// Adaptive time step at the current state.
///
/// `dt = clamp((delta·r)²/2, dt_min, dt_max)`, further limited to
/// `delta·r²/β` when `β > 0` and to the time remaining before `t_final`.
pub fn choose_dt(state: &ParticleState, params: &SimParams) -> f64 {
    let [x, y] = state.position;
    dt_for_radius_sq(x * x + y * y, state.time, params)
}

#[inline]
fn dt_for_radius_sq(r2: f64, time: f64, params: &SimParams) -> f64 {
    let mut dt = (0.5 * params.delta * params.delta * r2).clamp(params.dt_min, params.dt_max);
    if params.beta > 0.0 {
        dt = dt.min(params.delta * r2 / params.beta);
    }
    dt.min(params.t_final - time)
}

/// Mirrors `position` radially back into `geometry`, keeping its polar
/// angle: `r ← 2a − r` below the inner circle, `r ← 2b − r` beyond the
/// outer one, repeated until inside.
pub fn reflect(position: [f64; 2], geometry: &Geometry) -> Result<[f64; 2]> {
    let [x, y] = position;
    let r2 = x * x + y * y;
    if !(r2 > 0.0) {
        return Err(Error::StepRejected);
    }
    let (a, b) = match *geometry {
        Geometry::FreePlane => return Ok(position),
        Geometry::DiskExterior { a } => (a, f64::INFINITY),
        Geometry::Annulus { a, b } => (a, b),
    };
    // Squared comparison first: the square root is only needed to mirror.
    if r2 >= a * a && r2 <= b * b {
        return Ok(position);
    }
    let r = r2.sqrt();
    let mut mirrored = r;
    for _ in 0..MAX_REFLECTIONS {
        if mirrored < a {
            mirrored = 2.0 * a - mirrored;
        } else if mirrored > b {
            mirrored = 2.0 * b - mirrored;
        } else {
            let s = mirrored / r;
            return Ok([x * s, y * s]);
        }
        if !(mirrored > 0.0) {
            return Err(Error::StepRejected);
        }
    }
    Err(Error::StepRejected)
}

/// Signed angle from `from` to `to` as seen from the origin, in `(−π, π]`.
#[inline]
pub fn winding_increment(from: [f64; 2], to: [f64; 2]) -> f64 {
    let cross = from[0] * to[1] - from[1] * to[0];
    let dot = from[0] * to[0] + from[1] * to[1];
    cross.atan2(dot)
}

/// One Euler–Maruyama step of length `dt` driven by the standard normal
/// pair `noise`, followed by reflection into `geometry`.
pub fn step(
    state: &ParticleState,
    dt: f64,
    noise: [f64; 2],
    geometry: &Geometry,
    beta: f64,
) -> Result<ParticleState> {
    let drift = drift_velocity(state.position, beta)?;
    let sigma = (2.0 * dt).sqrt();
    let candidate = [
        state.position[0] + drift[0] * dt + sigma * noise[0],
        state.position[1] + drift[1] * dt + sigma * noise[1],
    ];
    let next = reflect(candidate, geometry)?;
    Ok(ParticleState {
        position: next,
        theta_acc: state.theta_acc + winding_increment(state.position, next),
        time: state.time + dt,
    })
}

/// The random stream of trajectory `index`: ChaCha8 keyed by `seed`, on
/// stream `index`. Trajectories therefore never share random numbers and
/// do not depend on how the ensemble is scheduled.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Integrates one trajectory from `(r0, 0)` to `t_final` and returns its
/// terminal winding angle.
///
/// `params` are assumed valid for `geometry` (see [`SimParams::validate`]).
pub fn simulate_winding<R: Rng + ?Sized>(
    params: &SimParams,
    geometry: &Geometry,
    rng: &mut R,
) -> Result<WindingSample> {
    simulate_inner(params, geometry, rng, 0, |_| {})
}

/// Like [`simulate_winding`], calling `observe` with every accepted state.
pub fn simulate_winding_observed<R: Rng + ?Sized>(
    params: &SimParams,
    geometry: &Geometry,
    rng: &mut R,
    observe: impl FnMut(&ParticleState),
) -> Result<WindingSample> {
    simulate_inner(params, geometry, rng, 0, observe)
}

fn simulate_inner<R: Rng + ?Sized>(
    params: &SimParams,
    geometry: &Geometry,
    rng: &mut R,
    index: u64,
    mut observe: impl FnMut(&ParticleState),
) -> Result<WindingSample> {
    let mut state = ParticleState::start(params.r0);
    let mut n_steps = 0u64;
    let mut rejected = 0u32;
    while state.time < params.t_final {
        let dt = choose_dt(&state, params);
        let noise = [rng.sample(StandardNormal), rng.sample(StandardNormal)];
        match step(&state, dt, noise, geometry, params.beta) {
            Ok(mut next) => {
                if dt >= params.t_final - state.time {
                    next.time = params.t_final;
                }
                state = next;
                n_steps += 1;
                rejected = 0;
                observe(&state);
            }
            Err(Error::StepRejected | Error::OriginSingularity) => {
                rejected += 1;
                if rejected >= MAX_CONSECUTIVE_REJECTIONS {
                    return Err(Error::IntegratorFailure {
                        index,
                        time: state.time,
                        consecutive: rejected,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(WindingSample {
        theta_final: state.theta_acc,
        n_steps,
        seed_index: index,
    })
}

/// Simulates `params.n_realizations` independent trajectories in parallel
/// on the current rayon pool. Sample `i` always uses `substream(seed, i)`,
/// and results are returned in index order.
pub fn run_ensemble(params: &SimParams, geometry: &Geometry) -> Result<Vec<WindingSample>> {
    params.validate(geometry)?;
    let results: Vec<Result<WindingSample>> = (0..params.n_realizations)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(params.seed, i);
            simulate_inner(params, geometry, &mut rng, i, |_| {})
        })
        .collect();
    // First failure by index, so errors are as reproducible as samples.
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANNULUS: Geometry = Geometry::Annulus { a: 0.5, b: 2.0 };

    #[test]
    fn drift_examples() {
        assert_eq!(drift_velocity([1.0, 0.0], 1.0).unwrap(), [0.0, 1.0]);
        assert_eq!(drift_velocity([0.0, 2.0], 1.0).unwrap(), [-0.5, 0.0]);
        assert_eq!(drift_velocity([3.0, 4.0], 0.0).unwrap(), [-0.0, 0.0]);
        assert_eq!(
            drift_velocity([0.0, 0.0], 1.0),
            Err(Error::OriginSingularity)
        );
    }

    #[test]
    fn dt_examples() {
        let p = SimParams::new(0.0, 1000.0, 1.0).with_dt_bounds(1e-12, 1.0);
        let s = ParticleState::start(1.0);
        assert!((choose_dt(&s, &p) - 0.00125).abs() < 1e-18);

        let far = ParticleState::start(1e3);
        assert_eq!(choose_dt(&far, &p), 1.0);

        let late = ParticleState {
            time: 1000.0 - 1e-9,
            ..s
        };
        assert_eq!(choose_dt(&late, &p), 1000.0 - late.time);
        assert!((choose_dt(&late, &p) - 1e-9).abs() < 1e-12);

        // Drift bound: β·dt/r² ≤ delta.
        let strong = SimParams::new(100.0, 1000.0, 1.0).with_dt_bounds(1e-12, 1.0);
        let dt = choose_dt(&s, &strong);
        assert!((dt - 0.05 / 100.0).abs() < 1e-18);
    }

    #[test]
    fn reflect_examples() {
        let disk = Geometry::DiskExterior { a: 0.5 };
        let angle: f64 = 0.7;
        let p = [0.45 * angle.cos(), 0.45 * angle.sin()];
        let q = reflect(p, &disk).unwrap();
        assert!((q[0].hypot(q[1]) - 0.55).abs() < 1e-15);
        assert!((q[1].atan2(q[0]) - angle).abs() < 1e-15);

        assert_eq!(reflect([0.7, 0.0], &ANNULUS).unwrap(), [0.7, 0.0]);
        let q = reflect([0.0, 2.1], &ANNULUS).unwrap();
        assert!((q[1] - 1.9).abs() < 1e-15 && q[0] == 0.0);

        // Overshoot across the whole annulus needs two mirrors.
        let q = reflect([3.7, 0.0], &ANNULUS).unwrap();
        assert!((q[0] - 0.7).abs() < 1e-15, "{q:?}");

        assert_eq!(reflect([0.0, 0.0], &ANNULUS), Err(Error::StepRejected));
        // Mirroring through the origin.
        let thin = Geometry::Annulus { a: 1.0, b: 1.1 };
        assert_eq!(reflect([2.3, 0.0], &thin), Err(Error::StepRejected));
    }

    #[test]
    fn step_examples() {
        let s = ParticleState::start(1.0);
        let free = Geometry::FreePlane;
        let next = step(&s, 0.3, [0.0, 0.0], &free, 0.0).unwrap();
        assert_eq!(next.position, [1.0, 0.0]);
        assert_eq!(next.theta_acc, 0.0);
        assert_eq!(next.time, 0.3);

        let next = step(&s, 0.01, [0.0, 0.0], &free, 1.0).unwrap();
        assert_eq!(next.position, [1.0, 0.01]);
        assert!((next.theta_acc - 0.01f64.atan()).abs() < 1e-17);
        assert!((next.theta_acc - 0.009_999_666_686_665_238).abs() < 1e-15);
    }

    #[test]
    fn increment_never_jumps_by_two_pi() {
        let near_pi = winding_increment([1.0, 0.0], [-1.0, 1e-12]);
        assert!(near_pi > std::f64::consts::PI - 1e-9 && near_pi < std::f64::consts::PI);
        let below = winding_increment([1.0, 0.0], [-1.0, -1e-12]);
        assert!(below < 1e-9 - std::f64::consts::PI && below > -std::f64::consts::PI);
    }

    #[test]
    fn short_horizon_barely_winds() {
        let p = SimParams::new(0.0, 1e-8, 1.0);
        let mut rng = substream(7, 0);
        let s = simulate_winding(&p, &Geometry::FreePlane, &mut rng).unwrap();
        assert!(s.theta_final.abs() < 1e-3);
        assert!(s.n_steps >= 1);
    }

    #[test]
    fn lands_exactly_on_horizon() {
        let p = SimParams::new(1.0, 0.37, 1.0);
        let mut last = 0.0;
        let mut rng = substream(3, 5);
        simulate_winding_observed(&p, &ANNULUS, &mut rng, |s| last = s.time).unwrap();
        assert_eq!(last, 0.37);
    }

    #[test]
    fn same_stream_same_sample() {
        let p = SimParams::new(1.0, 2.0, 1.0);
        let a = simulate_winding(&p, &ANNULUS, &mut substream(11, 4)).unwrap();
        let b = simulate_winding(&p, &ANNULUS, &mut substream(11, 4)).unwrap();
        assert_eq!(a.theta_final.to_bits(), b.theta_final.to_bits());
        assert_eq!(a.n_steps, b.n_steps);
        let c = simulate_winding(&p, &ANNULUS, &mut substream(11, 5)).unwrap();
        assert_ne!(a.theta_final, c.theta_final);
    }

    #[test]
    fn ensemble_of_one_matches_substream_zero() {
        let p = SimParams::new(1.0, 1.0, 1.0).with_seed(99);
        let ens = run_ensemble(&p, &ANNULUS).unwrap();
        let single = simulate_winding(&p, &ANNULUS, &mut substream(99, 0)).unwrap();
        assert_eq!(ens.len(), 1);
        assert_eq!(ens[0].theta_final, single.theta_final);
        assert_eq!(ens[0].seed_index, 0);
    }

    #[test]
    fn ensemble_rejects_invalid_params() {
        let p = SimParams::new(1.0, 1.0, 3.0);
        assert!(matches!(
            run_ensemble(&p, &ANNULUS),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn persistent_rejection_fails_the_trajectory() {
        // Steps of size ~1 in an annulus of width 1e-9 overshoot by far
        // more than 64 mirrors can absorb.
        let thin = Geometry::Annulus {
            a: 1.0,
            b: 1.0 + 1e-9,
        };
        let p = SimParams::new(0.0, 1.0, 1.0 + 5e-10)
            .with_delta(0.5)
            .with_dt_bounds(10.0, 10.0);
        let err = simulate_winding(&p, &thin, &mut substream(0, 0)).unwrap_err();
        assert!(
            matches!(
                err,
                Error::IntegratorFailure {
                    consecutive: 100,
                    ..
                }
            ),
            "{err:?}"
        );
    }
}
