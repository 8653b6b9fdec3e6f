//! Flux functions seen by the line sweeps.
//!
//! A sweep along one axis needs the flux, its Jacobian applied to a
//! derivative vector, a wave-speed bound, and, for systems, an eigenframe at
//! each interface. `N` is the number of conserved components.

use crate::euler::CharacteristicFrame;
use crate::grid::Axis;

pub trait LinePhysics<const N: usize>: Sync {
    fn flux(&self, u: &[f64; N], axis: Axis) -> [f64; N];

    /// `f'(u) d`.
    fn flux_jvp(&self, u: &[f64; N], d: &[f64; N], axis: Axis) -> [f64; N];

    /// Spectral radius of the flux Jacobian.
    fn wave_speed(&self, u: &[f64; N], axis: Axis) -> f64;

    /// Eigenframe at the interface between `left` and `right`; `None` for
    /// scalar equations, which reconstruct in physical variables.
    fn frame(&self, left: &[f64; N], right: &[f64; N], axis: Axis) -> Option<CharacteristicFrame<N>>;

    /// Component that flips sign under reflection across a wall normal to
    /// `axis`.
    fn normal_momentum(&self, axis: Axis) -> Option<usize>;

    /// `Some((density, pressure))` when the state is not physically
    /// admissible.
    fn inadmissible(&self, _u: &[f64; N]) -> Option<(f64, f64)> {
        None
    }
}

/// Scalar conservation laws `u_t + f(u)_x + g(u)_y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFlux {
    /// `f = a_x u`, `g = a_y u`.
    Linear { ax: f64, ay: f64 },
    /// `f = g = u²/2`.
    Burgers,
    /// `f = 4u² / (4u² + (1-u)²)` along x; no y flux.
    BuckleyLeverett,
}

impl ScalarFlux {
    #[inline(always)]
    pub fn value(&self, u: f64, axis: Axis) -> f64 {
        match *self {
            ScalarFlux::Linear { ax, ay } => match axis {
                Axis::X => ax * u,
                Axis::Y => ay * u,
            },
            ScalarFlux::Burgers => 0.5 * u * u,
            ScalarFlux::BuckleyLeverett => match axis {
                Axis::X => {
                    let a = 4.0 * u * u;
                    a / (a + (1.0 - u) * (1.0 - u))
                }
                Axis::Y => 0.0,
            },
        }
    }

    #[inline(always)]
    pub fn derivative(&self, u: f64, axis: Axis) -> f64 {
        match *self {
            ScalarFlux::Linear { ax, ay } => match axis {
                Axis::X => ax,
                Axis::Y => ay,
            },
            ScalarFlux::Burgers => u,
            ScalarFlux::BuckleyLeverett => match axis {
                Axis::X => {
                    let w = 1.0 - u;
                    let den = 4.0 * u * u + w * w;
                    8.0 * u * w / (den * den)
                }
                Axis::Y => 0.0,
            },
        }
    }

    /// `max |f'(u)|` over `u ∈ [lo, hi]` by dense sampling followed by a
    /// golden-section refinement around the best sample.
    pub fn max_speed_on(&self, lo: f64, hi: f64, axis: Axis) -> f64 {
        let n = 4096;
        let speed = |u: f64| self.derivative(u, axis).abs();
        let h = (hi - lo) / n as f64;
        let (mut best_k, mut best) = (0usize, speed(lo));
        for k in 1..=n {
            let s = speed(lo + k as f64 * h);
            if s > best {
                best = s;
                best_k = k;
            }
        }
        let mut a = lo + (best_k.saturating_sub(1)) as f64 * h;
        let mut b = (lo + (best_k + 1) as f64 * h).min(hi);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..100 {
            let c = b - r * (b - a);
            let d = a + r * (b - a);
            if speed(c) > speed(d) {
                b = d;
            } else {
                a = c;
            }
        }
        best.max(speed(0.5 * (a + b)))
    }
}

impl LinePhysics<1> for ScalarFlux {
    #[inline(always)]
    fn flux(&self, u: &[f64; 1], axis: Axis) -> [f64; 1] {
        [self.value(u[0], axis)]
    }

    #[inline(always)]
    fn flux_jvp(&self, u: &[f64; 1], d: &[f64; 1], axis: Axis) -> [f64; 1] {
        [self.derivative(u[0], axis) * d[0]]
    }

    #[inline(always)]
    fn wave_speed(&self, u: &[f64; 1], axis: Axis) -> f64 {
        self.derivative(u[0], axis).abs()
    }

    #[inline(always)]
    fn frame(&self, _: &[f64; 1], _: &[f64; 1], _: Axis) -> Option<CharacteristicFrame<1>> {
        None
    }

    fn normal_momentum(&self, _: Axis) -> Option<usize> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn buckley_leverett_derivative_matches_finite_difference() {
        let f = ScalarFlux::BuckleyLeverett;
        for &u in &[0.1, 0.3, 0.5, 0.8] {
            let h = 1e-6;
            let fd = (f.value(u + h, Axis::X) - f.value(u - h, Axis::X)) / (2.0 * h);
            assert_relative_eq!(f.derivative(u, Axis::X), fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn buckley_leverett_speed_bound() {
        // Independent oracle: brute-force scan at a much finer resolution.
        let f = ScalarFlux::BuckleyLeverett;
        let brute = (0..=1_000_000)
            .map(|k| f.derivative(k as f64 * 1e-6, Axis::X).abs())
            .fold(0.0, f64::max);
        let alpha = f.max_speed_on(0.0, 1.0, Axis::X);
        assert!(alpha >= brute - 1e-9);
        assert_relative_eq!(alpha, brute, max_relative = 1e-8);
        assert!(alpha > 2.33 && alpha < 2.34, "alpha = {alpha}");
    }

    #[test]
    fn burgers_initial_speed_bound() {
        let f = ScalarFlux::Burgers;
        let alpha = f.max_speed_on(-0.5, 1.5, Axis::X);
        assert_relative_eq!(alpha, 1.5, epsilon = 1e-12);
    }
}
