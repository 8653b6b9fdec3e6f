//! Hermite WENO limiter for the derivative unknowns.
//!
//! The modified derivative at node `i` blends the derivative of a quartic
//! Hermite interpolant (point values at `i-1, i, i+1`, derivatives at
//! `i-1, i+1`) with the slopes of the two one-sided linear interpolants.
//! It only enters the convex combinations of the Runge-Kutta stages.

use crate::reconstruct::{combine, SmoothnessTriple};

/// Derivatives at `x_i` of the quartic and the two linear interpolants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimiterCandidates {
    pub dq0: f64,
    pub dq1: f64,
    pub dq2: f64,
}

#[inline(always)]
pub fn limiter_candidates(u: [f64; 3], v_left: f64, v_right: f64, dx: f64) -> LimiterCandidates {
    let [um, u0, up] = u;
    LimiterCandidates {
        dq0: 0.75 * (up - um) / dx - 0.25 * (v_left + v_right),
        dq1: (u0 - um) / dx,
        dq2: (up - u0) / dx,
    }
}

#[inline(always)]
pub fn limiter_smoothness(u: [f64; 3], v_left: f64, v_right: f64, dx: f64) -> SmoothnessTriple {
    let [um, u0, up] = u;
    let (wm, wp) = (dx * v_left, dx * v_right);
    let second = um - 2.0 * u0 + up;
    let a1 = -0.25 * (wm + wp) + 0.75 * (up - um);
    let a2 = 0.25 * (wm - wp) + second;
    let a3 = 0.25 * (wm + wp) + 0.25 * (um - up);
    let a4 = 0.25 * (wp - wm) - 0.5 * second;
    let t1 = a1 + 0.25 * a3;
    let t2 = a2 + (63.0 / 130.0) * a4;
    let beta0 = t1 * t1
        + (13.0 / 3.0) * t2 * t2
        + (781.0 / 20.0) * a3 * a3
        + (1421461.0 / 2275.0) * a4 * a4;
    let l = u0 - um;
    let r = u0 - up;
    SmoothnessTriple::new([beta0, l * l, r * r])
}

/// Normalized limiter weights `λ_ℓ ∝ d_ℓ (1 + τ / (β_ℓ + ε))`.
#[inline(always)]
pub fn limiter_weights(s: &SmoothnessTriple, d: &[f64; 3], epsilon: f64) -> [f64; 3] {
    crate::reconstruct::nonlinear_weights(s, d, epsilon)
}

/// Modified derivative `ṽ_i` from `u`, `v` at nodes `i-1, i, i+1`.
///
/// `v[1]` does not enter the result; it is accepted so callers can pass a
/// plain window.
#[inline(always)]
pub fn modified_derivative(u: [f64; 3], v: [f64; 3], dx: f64, d: &[f64; 3], epsilon: f64) -> f64 {
    let c = limiter_candidates(u, v[0], v[2], dx);
    let s = limiter_smoothness(u, v[0], v[2], dx);
    let lambda = limiter_weights(&s, d, epsilon);
    combine(c.dq0, c.dq1, c.dq2, &lambda, d)
}

/// Applies [`modified_derivative`] to every interior node of a line whose
/// `u` and `v` carry `ghost` extra points on each side.
pub fn limit_line(u: &[f64], v: &[f64], ghost: usize, dx: f64, d: &[f64; 3], epsilon: f64, out: &mut [f64]) {
    let n = out.len();
    debug_assert!(u.len() >= n + 2 * ghost && ghost >= 1);
    for (i, o) in out.iter_mut().enumerate() {
        let k = i + ghost;
        *o = modified_derivative(
            [u[k - 1], u[k], u[k + 1]],
            [v[k - 1], v[k], v[k + 1]],
            dx,
            d,
            epsilon,
        );
    }
}
