mod common;

use common::*;
use hweno_core::limiter::{limiter_candidates, limiter_smoothness};
use hweno_core::reconstruct::{candidate_point_values, flux_smoothness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

/// Either rough random data or samples of a smooth function (where the
/// indicators nearly cancel).
fn window(rng: &mut ChaCha8Rng) -> ([f64; 3], [f64; 3], f64) {
    let dx = 10f64.powf(rng.gen_range(-3.0..0.0));
    let mag = 10f64.powf(rng.gen_range(-3.0..3.0));
    if rng.gen_bool(0.5) {
        let f = [0; 3].map(|_| mag * rng.gen_range(-1.0..1.0));
        let h = [0; 3].map(|_| mag / dx * rng.gen_range(-1.0..1.0));
        (f, h, dx)
    } else {
        let (k, x0) = (rng.gen_range(0.5..3.0), rng.gen_range(0.0..6.0));
        let f = [-1.0, 0.0, 1.0].map(|m: f64| mag * (k * (x0 + m * dx)).sin());
        let h = [-1.0, 0.0, 1.0].map(|m: f64| mag * k * (k * (x0 + m * dx)).cos());
        (f, h, dx)
    }
}

fn scale(f: &[f64; 3], h: &[f64; 3], dx: f64) -> f64 {
    f.iter().chain(h.iter().map(|x| x * dx).collect::<Vec<_>>().iter()).fold(0.0f64, |m, x| m.max(x.abs()))
}

#[test]
fn flux_candidates_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let (f, h, dx) = window(&mut rng);
        let g = h.map(|x| q(x) * q(dx));
        let oracle = FluxOracle::new(&f.map(q), &g);
        let [p0, p1, p2, dp0] = oracle.face_values();
        let c = candidate_point_values(f, h, dx);
        let s = scale(&f, &h, dx);
        assert!(rel_err(c.p0, &p0, s) < TOL, "p0 {f:?} {h:?} {dx}");
        assert!(rel_err(c.p1, &p1, s) < TOL, "p1 {f:?} {h:?} {dx}");
        assert!(rel_err(c.p2, &p2, s) < TOL, "p2 {f:?} {h:?} {dx}");
        assert!(rel_err(c.dp0, &(dp0 / q(dx)), s / dx) < TOL, "dp0 {f:?} {h:?} {dx}");
    }
}

#[test]
fn flux_smoothness_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (f, h, dx) = window(&mut rng);
        let g = h.map(|x| q(x) * q(dx));
        let exact = FluxOracle::new(&f.map(q), &g).smoothness();
        let got = flux_smoothness(f, h, dx).beta;
        let s = scale(&f, &h, dx);
        for k in 0..3 {
            assert!(rel_err(got[k], &exact[k], s * s) < TOL, "beta{k} {f:?} {h:?} {dx}");
        }
    }
}

#[test]
fn limiter_kernels_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let (u, v, dx) = window(&mut rng);
        let (wl, wr) = (q(v[0]) * q(dx), q(v[2]) * q(dx));
        let oracle = LimiterOracle::new(&u.map(q), &wl, &wr);
        let slopes = oracle.center_slopes();
        let beta = oracle.smoothness();
        let c = limiter_candidates(u, v[0], v[2], dx);
        let got = limiter_smoothness(u, v[0], v[2], dx).beta;
        let s = scale(&u, &v, dx);
        for (k, d) in [c.dq0, c.dq1, c.dq2].into_iter().enumerate() {
            assert!(rel_err(d, &(&slopes[k] / q(dx)), s / dx) < TOL, "dq{k} {u:?} {v:?} {dx}");
            assert!(rel_err(got[k], &beta[k], s * s) < TOL, "beta{k} {u:?} {v:?} {dx}");
        }
    }
}

#[test]
fn oracle_reproduces_polynomial_data() {
    // Averages of a quintic fed to the oracle give back the quintic.
    let coeffs = [qi(1, 3), qi(-2, 1), qi(5, 7), qi(1, 1), qi(-3, 4), qi(2, 9)];
    let p = Poly(coeffs.to_vec());
    let dp = p.derivative();
    let avg = |poly: &Poly, c: i64| poly.integral(&(qi(c, 1) - qi(1, 2)), &(qi(c, 1) + qi(1, 2)));
    let f = [avg(&p, -1), avg(&p, 0), avg(&p, 1)];
    let g = [avg(&dp, -1), avg(&dp, 0), avg(&dp, 1)];
    assert_eq!(FluxOracle::new(&f, &g).p0, p);
}
