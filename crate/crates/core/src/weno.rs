//! Classical fifth-order WENO reconstruction (Jiang-Shu weights).

/// Five split-flux values `f_{i-2} ..= f_{i+2}` for the plus side of
/// `x_{i+1/2}`.
pub type Weno5Window = [f64; 5];

pub const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];
pub const EPSILON: f64 = 1e-6;

/// Nonlinear weights and candidate values for one window.
#[inline(always)]
pub fn weno5_parts(w: &Weno5Window) -> ([f64; 3], [f64; 3]) {
    let [a, b, c, d, e] = *w;
    let q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let q2 = (2.0 * c + 5.0 * d - e) / 6.0;

    let s0 = (13.0 / 12.0) * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2);
    let s1 = (13.0 / 12.0) * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2);
    let s2 = (13.0 / 12.0) * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2);

    let w0 = LINEAR_WEIGHTS[0] / (EPSILON + s0).powi(2);
    let w1 = LINEAR_WEIGHTS[1] / (EPSILON + s1).powi(2);
    let w2 = LINEAR_WEIGHTS[2] / (EPSILON + s2).powi(2);
    let inv = 1.0 / (w0 + w1 + w2);
    ([w0 * inv, w1 * inv, w2 * inv], [q0, q1, q2])
}

/// Upwind-biased interface value at `x_{i+1/2}`.
#[inline(always)]
pub fn weno5_reconstruct(w: &Weno5Window) -> f64 {
    let (omega, q) = weno5_parts(w);
    omega[0] * q[0] + omega[1] * q[1] + omega[2] * q[2]
}

/// Minus-side value at `x_{i+1/2}` from `f_{i-1} ..= f_{i+3}`.
#[inline(always)]
pub fn weno5_reconstruct_minus(w: &Weno5Window) -> f64 {
    weno5_reconstruct(&[w[4], w[3], w[2], w[1], w[0]])
}
