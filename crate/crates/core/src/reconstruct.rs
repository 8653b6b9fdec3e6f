//! Hermite WENO interface reconstruction on a compact three-point stencil.
//!
//! The upwind-biased value at `x_{i+1/2}` is built from the split flux `f`
//! and the split derivative flux `h` at nodes `i-1, i, i+1`:
//!
//! * a quintic `p0` matching the cell averages of `f` and of `p0' = h` on all
//!   three cells,
//! * two quadratics `p1`, `p2` matching two averages of `f` and the average of
//!   `h` on the center cell.
//!
//! `f̂` is the nonlinear convex combination of the three candidates; `ĥ` is
//! the derivative of the quintic, used linearly. The minus-side values use the
//! mirror image of the same formulas about the interface.
//!
//! All kernels take derivative data scaled by the mesh size internally
//! (`g = dx * h`), so the smoothness indicators are dimensionally the square
//! of the flux.

use crate::error::{Error, Result};

/// Lax-Friedrichs split of a node sequence into upwind parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitFluxPair {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

/// Global Lax-Friedrichs splitting `½(f ± α u)`, applied node by node.
///
/// The same routine splits the derivative flux when called with `(h, v)`.
pub fn split_flux_lf(f: &[f64], u: &[f64], alpha: f64) -> Result<SplitFluxPair> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidWaveSpeed(alpha));
    }
    if f.len() != u.len() {
        return Err(Error::ExtentMismatch(format!(
            "flux has {} nodes, state has {}",
            f.len(),
            u.len()
        )));
    }
    let (plus, minus) = f
        .iter()
        .zip(u)
        .map(|(&fi, &ui)| split_value(fi, ui, alpha))
        .unzip();
    Ok(SplitFluxPair { plus, minus })
}

#[inline(always)]
pub fn split_value(f: f64, u: f64, alpha: f64) -> (f64, f64) {
    (0.5 * (f + alpha * u), 0.5 * (f - alpha * u))
}

/// Interface values of the three Hermite candidates and of the quintic's
/// derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSet {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub dp0: f64,
}

/// Smoothness indicators of three candidates plus the global difference
/// measure `τ = ¼(|β0-β1| + |β0-β2|)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessTriple {
    pub beta: [f64; 3],
    pub tau: f64,
}

impl SmoothnessTriple {
    #[inline(always)]
    pub fn new(beta: [f64; 3]) -> Self {
        Self {
            beta,
            tau: tau(beta),
        }
    }
}

#[inline(always)]
pub fn tau(beta: [f64; 3]) -> f64 {
    let s = (beta[0] - beta[1]).abs() + (beta[0] - beta[2]).abs();
    0.25 * s * s
}

/// Candidate values at `x_{i+1/2}` from `f`, `h` at nodes `i-1, i, i+1`.
#[inline(always)]
pub fn candidate_point_values(f: [f64; 3], h: [f64; 3], dx: f64) -> CandidateSet {
    let [fm, f0, fp] = f;
    let (gm, g0, gp) = (dx * h[0], dx * h[1], dx * h[2]);
    CandidateSet {
        p0: (11.0 / 60.0) * (fm + fp) + (19.0 / 30.0) * f0 + (gm + 10.0 * g0 - gp) / 20.0,
        p1: fm / 6.0 + (5.0 / 6.0) * f0 + (2.0 / 3.0) * g0,
        p2: (5.0 / 6.0) * f0 + fp / 6.0 + g0 / 3.0,
        dp0: quintic_derivative(f, h, dx),
    }
}

/// `p0'(x_{i+1/2})`, the linear derivative-flux value.
#[inline(always)]
pub fn quintic_derivative(f: [f64; 3], h: [f64; 3], dx: f64) -> f64 {
    (f[0] - 8.0 * f[1] + 7.0 * f[2]) / (4.0 * dx) + (h[0] - 2.0 * h[1] - 5.0 * h[2]) / 12.0
}

/// Smoothness indicators of the quintic and the two quadratics on the center
/// cell.
///
/// `β2` integrates the right quadratic, which gives
/// `(dx·h_i)² + 13/3 (dx·h_i - f_{i+1} + f_i)²`.
#[inline(always)]
pub fn flux_smoothness(f: [f64; 3], h: [f64; 3], dx: f64) -> SmoothnessTriple {
    let [fm, f0, fp] = f;
    let (gm, g0, gp) = (dx * h[0], dx * h[1], dx * h[2]);
    let second = fm - 2.0 * f0 + fp;
    let a1 = (19.0 / 192.0) * (gm + gp) + (79.0 / 48.0) * g0 + (27.0 / 64.0) * (fm - fp);
    let a2 = (3.0 / 8.0) * (gm - gp) + 1.25 * second;
    let a3 = -((11.0 / 24.0) * (gm + gp) + (17.0 / 6.0) * g0) + (15.0 / 8.0) * (fp - fm);
    let a4 = 0.25 * (gp - gm) - 0.5 * second;
    let a5 = 0.25 * (gm + gp) + g0 + 0.75 * (fm - fp);

    let t1 = a1 + 0.25 * a3 + a5 / 16.0;
    let t2 = a2 + (63.0 / 130.0) * a4;
    let t3 = a3 + (8825.0 / 10934.0) * a5;
    let beta0 = t1 * t1
        + (13.0 / 3.0) * t2 * t2
        + (781.0 / 20.0) * t3 * t3
        + (1421461.0 / 2275.0) * a4 * a4
        + (21520059541.0 / 1377684.0) * a5 * a5;

    let g2 = g0 * g0;
    let l = g0 - f0 + fm;
    let r = g0 - fp + f0;
    let beta1 = g2 + (13.0 / 3.0) * l * l;
    let beta2 = g2 + (13.0 / 3.0) * r * r;
    SmoothnessTriple::new([beta0, beta1, beta2])
}

/// Normalized nonlinear weights `ω_ℓ ∝ γ_ℓ (1 + τ / (β_ℓ + ε))`.
#[inline(always)]
pub fn nonlinear_weights(s: &SmoothnessTriple, gamma: &[f64; 3], epsilon: f64) -> [f64; 3] {
    let w0 = gamma[0] * (1.0 + s.tau / (s.beta[0] + epsilon));
    let w1 = gamma[1] * (1.0 + s.tau / (s.beta[1] + epsilon));
    let w2 = gamma[2] * (1.0 + s.tau / (s.beta[2] + epsilon));
    let inv = 1.0 / (w0 + w1 + w2);
    [w0 * inv, w1 * inv, w2 * inv]
}

/// Convex recombination of a high-order candidate with two low-order ones.
///
/// With `ω = γ` this collapses to `high`.
#[inline(always)]
pub fn combine(high: f64, low1: f64, low2: f64, omega: &[f64; 3], gamma: &[f64; 3]) -> f64 {
    omega[0] * (high - gamma[1] * low1 - gamma[2] * low2) / gamma[0]
        + omega[1] * low1
        + omega[2] * low2
}

/// `(f̂⁺, ĥ⁺)` at `x_{i+1/2}` from split values at nodes `i-1, i, i+1`.
#[inline(always)]
pub fn reconstruct_plus(
    f: [f64; 3],
    h: [f64; 3],
    dx: f64,
    gamma: &[f64; 3],
    epsilon: f64,
) -> (f64, f64) {
    let c = candidate_point_values(f, h, dx);
    let s = flux_smoothness(f, h, dx);
    let w = nonlinear_weights(&s, gamma, epsilon);
    (combine(c.p0, c.p1, c.p2, &w, gamma), c.dp0)
}

/// Only the nonlinear `f̂⁺` part of [`reconstruct_plus`].
#[inline(always)]
pub fn reconstruct_value_plus(
    f: [f64; 3],
    h: [f64; 3],
    dx: f64,
    gamma: &[f64; 3],
    epsilon: f64,
) -> f64 {
    let [fm, f0, fp] = f;
    let g0 = dx * h[1];
    let p0 = (11.0 / 60.0) * (fm + fp)
        + (19.0 / 30.0) * f0
        + (dx * h[0] + 10.0 * g0 - dx * h[2]) / 20.0;
    let p1 = fm / 6.0 + (5.0 / 6.0) * f0 + (2.0 / 3.0) * g0;
    let p2 = (5.0 / 6.0) * f0 + fp / 6.0 + g0 / 3.0;
    let s = flux_smoothness(f, h, dx);
    let w = nonlinear_weights(&s, gamma, epsilon);
    combine(p0, p1, p2, &w, gamma)
}

/// `(f̂⁻, ĥ⁻)` at `x_{i+1/2}` from split values at nodes `i, i+1, i+2`.
///
/// Reflecting about the interface reverses the node order and flips the sign
/// of derivative data; the reconstructed derivative flips back.
#[inline(always)]
pub fn reconstruct_minus(
    f: [f64; 3],
    h: [f64; 3],
    dx: f64,
    gamma: &[f64; 3],
    epsilon: f64,
) -> (f64, f64) {
    let (v, d) = reconstruct_plus(
        [f[2], f[1], f[0]],
        [-h[2], -h[1], -h[0]],
        dx,
        gamma,
        epsilon,
    );
    (v, -d)
}

#[inline(always)]
pub fn reconstruct_value_minus(
    f: [f64; 3],
    h: [f64; 3],
    dx: f64,
    gamma: &[f64; 3],
    epsilon: f64,
) -> f64 {
    reconstruct_value_plus([f[2], f[1], f[0]], [-h[2], -h[1], -h[0]], dx, gamma, epsilon)
}

#[inline(always)]
pub fn quintic_derivative_minus(f: [f64; 3], h: [f64; 3], dx: f64) -> f64 {
    -quintic_derivative([f[2], f[1], f[0]], [-h[2], -h[1], -h[0]], dx)
}

/// Full interface fluxes `(f̂, ĥ)` at `x_{i+1/2}`.
///
/// `f_split` and `h_split` hold the four split node values at `i-1 ..= i+2`;
/// the plus part reads the first three, the minus part the last three.
pub fn reconstruct_interface(
    f_split: (&[f64; 4], &[f64; 4]),
    h_split: (&[f64; 4], &[f64; 4]),
    dx: f64,
    gamma: &[f64; 3],
    epsilon: f64,
) -> (f64, f64) {
    let (fp, fm) = f_split;
    let (hp, hm) = h_split;
    let (f_plus, h_plus) = reconstruct_plus(
        [fp[0], fp[1], fp[2]],
        [hp[0], hp[1], hp[2]],
        dx,
        gamma,
        epsilon,
    );
    let (f_minus, h_minus) = reconstruct_minus(
        [fm[1], fm[2], fm[3]],
        [hm[1], hm[2], hm[3]],
        dx,
        gamma,
        epsilon,
    );
    (f_plus + f_minus, h_plus + h_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const G: [f64; 3] = [0.98, 0.01, 0.01];

    /// `β2` with the sign pattern repeated from `β1`.
    fn printed_beta2(f: [f64; 3], h: [f64; 3], dx: f64) -> f64 {
        let g0 = dx * h[1];
        g0 * g0 + (13.0 / 3.0) * (g0 + f[1] - f[0]).powi(2)
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_value(2.0, 2.0, 2.0), (3.0, -1.0));
        assert_eq!(split_value(0.0, 0.0, 7.0), (0.0, 0.0));
        assert_eq!(split_value(0.5, 1.0, 1.5), (1.0, -0.5));
        let s = split_flux_lf(&[2.0, 0.5], &[2.0, 1.0], 2.0).unwrap();
        assert_eq!(s.plus, vec![3.0, 1.25]);
        assert_eq!(s.minus, vec![-1.0, -0.75]);
    }

    #[test]
    fn split_rejects_negative_alpha() {
        assert!(split_flux_lf(&[1.0], &[1.0], -1.0).is_err());
        assert!(split_flux_lf(&[1.0], &[1.0, 2.0], 1.0).is_err());
    }

    #[test]
    fn constant_reproduction() {
        let c = candidate_point_values([3.0; 3], [0.0; 3], 0.1);
        assert_relative_eq!(c.p0, 3.0, epsilon = 1e-15);
        assert_relative_eq!(c.p1, 3.0, epsilon = 1e-15);
        assert_relative_eq!(c.p2, 3.0, epsilon = 1e-15);
        assert_eq!(c.dp0, 0.0);
        let s = flux_smoothness([3.0; 3], [0.0; 3], 0.1);
        assert_eq!(s.beta, [0.0; 3]);
        assert_eq!(s.tau, 0.0);
    }

    #[test]
    fn linear_reproduction() {
        let (xi, dx) = (0.7, 0.1);
        let c = candidate_point_values([xi - dx, xi, xi + dx], [1.0; 3], dx);
        for p in [c.p0, c.p1, c.p2] {
            assert_relative_eq!(p, xi + dx / 2.0, epsilon = 1e-14);
        }
        assert_relative_eq!(c.dp0, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_smoothness_unit_spacing() {
        let xi = 4.0;
        let s = flux_smoothness([xi - 1.0, xi, xi + 1.0], [1.0; 3], 1.0);
        for b in s.beta {
            assert_relative_eq!(b, 1.0, epsilon = 1e-12);
        }
        assert!(s.tau < 1e-24);
    }

    #[test]
    fn beta2_uses_right_quadratic() {
        // Linear data with a kink on the right: the derived form sees the
        // jump in slope between nodes i and i+1, the printed one does not.
        let f = [0.0, 1.0, 3.0];
        let h = [1.0, 1.0, 1.0];
        let derived = flux_smoothness(f, h, 1.0).beta[2];
        assert_relative_eq!(derived, 1.0 + 13.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(printed_beta2(f, h, 1.0), 1.0 + 13.0 / 3.0 * 4.0, epsilon = 1e-14);
        // On symmetric linear data both agree.
        let f = [1.0, 2.0, 3.0];
        assert_relative_eq!(flux_smoothness(f, h, 1.0).beta[2], 1.0, epsilon = 1e-14);
        assert_relative_eq!(printed_beta2(f, h, 1.0), 1.0 + 13.0 / 3.0 * 4.0, epsilon = 1e-14);
    }

    #[test]
    fn weights_equal_gamma_when_tau_vanishes() {
        let s = SmoothnessTriple::new([2.0, 2.0, 2.0]);
        assert_eq!(s.tau, 0.0);
        let w = nonlinear_weights(&s, &G, 1e-6);
        for k in 0..3 {
            assert_relative_eq!(w[k], G[k], epsilon = 1e-15);
        }
        let third = [1.0 / 3.0; 3];
        let w = nonlinear_weights(&SmoothnessTriple::new([1.0; 3]), &third, 1e-6);
        for k in 0..3 {
            assert_relative_eq!(w[k], 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn weights_for_discontinuous_quintic() {
        let s = SmoothnessTriple::new([0.0, 4.0, 4.0]);
        assert_eq!(s.tau, 16.0);
        let w = nonlinear_weights(&s, &G, 1e-6);
        // Direct evaluation of the weight formula.
        let w0 = 0.98 * (1.0 + 16.0 / 1e-6);
        let w12 = 0.01 * (1.0 + 16.0 / (4.0 + 1e-6));
        let z = w0 + 2.0 * w12;
        assert_relative_eq!(w[0], w0 / z, max_relative = 1e-14);
        assert!((1.0 - w[0] - 6.4e-9).abs() < 1e-10);
    }

    #[test]
    fn forced_linear_weights_give_quintic() {
        let c = candidate_point_values([0.3, -1.2, 2.5], [0.7, 4.0, -3.0], 0.05);
        let v = combine(c.p0, c.p1, c.p2, &G, &G);
        assert_relative_eq!(v, c.p0, max_relative = 1e-14);
    }

    #[test]
    fn constant_state_interface_flux() {
        // Constant u, f(u) = u^2/2 with alpha = |u|: splitting cancels exactly.
        let (u, alpha) = (1.3, 1.3);
        let f = 0.5 * u * u;
        let (fp, fm) = split_value(f, u, alpha);
        let (hp, hm) = split_value(0.0, 0.0, alpha);
        let (fh, hh) = reconstruct_interface((&[fp; 4], &[fm; 4]), (&[hp; 4], &[hm; 4]), 0.1, &G, 1e-6);
        assert_relative_eq!(fh, f, epsilon = 1e-15);
        assert_eq!(hh, 0.0);
    }

    proptest! {
        #[test]
        fn weights_normalized(b0 in 0.0..1e3f64, b1 in 0.0..1e3f64, b2 in 0.0..1e3f64,
                              g0 in 0.01..1.0f64, g1 in 0.01..1.0f64, g2 in 0.01..1.0f64) {
            let z = g0 + g1 + g2;
            let gamma = [g0 / z, g1 / z, g2 / z];
            let w = nonlinear_weights(&SmoothnessTriple::new([b0, b1, b2]), &gamma, 1e-6);
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            prop_assert!(w.iter().all(|&x| x > 0.0 && x < 1.0));
        }

        #[test]
        fn minus_is_mirrored_plus(f in prop::array::uniform3(-5.0..5.0f64),
                                  h in prop::array::uniform3(-50.0..50.0f64),
                                  dx in 0.001..1.0f64) {
            let (v, d) = reconstruct_minus(f, h, dx, &G, 1e-6);
            let (vp, dp) = reconstruct_plus([f[2], f[1], f[0]], [-h[2], -h[1], -h[0]], dx, &G, 1e-6);
            prop_assert_eq!(v, vp);
            prop_assert_eq!(d, -dp);
            prop_assert_eq!(v, reconstruct_value_minus(f, h, dx, &G, 1e-6));
            prop_assert_eq!(d, quintic_derivative_minus(f, h, dx));
        }

        #[test]
        fn value_only_path_matches(f in prop::array::uniform3(-5.0..5.0f64),
                                   h in prop::array::uniform3(-50.0..50.0f64),
                                   dx in 0.001..1.0f64) {
            let (v, _) = reconstruct_plus(f, h, dx, &G, 1e-6);
            let v2 = reconstruct_value_plus(f, h, dx, &G, 1e-6);
            prop_assert!((v - v2).abs() <= 1e-13 * (1.0 + v.abs()));
        }

        /// With small-stencil indicators below a thousandth of the quintic's and τ ≥ β0,
        /// the quintic's weight drops under a tenth of its linear weight.
        #[test]
        fn eno_weight_suppression(b0 in 1e-2..1e3f64, r1 in 0.0..1e-3f64, r2 in 0.0..1e-3f64) {
            let s = SmoothnessTriple::new([b0, r1 * b0, r2 * b0]);
            prop_assume!(s.tau >= b0);
            let w = nonlinear_weights(&s, &G, 1e-6);
            prop_assert!(w[0] < G[0] / 10.0);
        }
    }
}
