//! Compressible Euler equations for an ideal gas.
//!
//! Conserved variables are `(ρ, ρμ, E)` in one dimension and
//! `(ρ, ρμ, ρν, E)` in two, with `E = p/(γ-1) + ρ|velocity|²/2`.

use crate::error::{Error, Result};
use crate::grid::Axis;
use crate::physics::LinePhysics;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParams {
    pub gas_gamma: f64,
}

impl Default for EulerParams {
    fn default() -> Self {
        Self { gas_gamma: 1.4 }
    }
}

impl EulerParams {
    pub fn new(gas_gamma: f64) -> Result<Self> {
        if !(gas_gamma > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "ratio of specific heats must exceed 1, got {gas_gamma}"
            )));
        }
        Ok(Self { gas_gamma })
    }
}

/// Left/right eigenvectors and eigenvalues of a flux Jacobian.
///
/// `left[k]` is the k-th left eigenvector (a row of `L`), `right[k]` the k-th
/// right eigenvector (a column of `R`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicFrame<const N: usize> {
    pub left: [[f64; N]; N],
    pub right: [[f64; N]; N],
    pub eigenvalues: [f64; N],
}

impl<const N: usize> CharacteristicFrame<N> {
    pub fn identity() -> Self {
        let mut m = [[0.0; N]; N];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1.0;
        }
        Self {
            left: m,
            right: m,
            eigenvalues: [0.0; N],
        }
    }

    /// `L q`.
    #[inline(always)]
    pub fn project(&self, q: &[f64; N]) -> [f64; N] {
        let mut w = [0.0; N];
        for k in 0..N {
            let row = &self.left[k];
            let mut s = 0.0;
            for m in 0..N {
                s += row[m] * q[m];
            }
            w[k] = s;
        }
        w
    }

    /// `R w`.
    #[inline(always)]
    pub fn unproject(&self, w: &[f64; N]) -> [f64; N] {
        let mut q = [0.0; N];
        for k in 0..N {
            let col = &self.right[k];
            for m in 0..N {
                q[m] += col[m] * w[k];
            }
        }
        q
    }
}

/// Projects a window of physical vectors into characteristic scalars.
pub fn project<const N: usize>(window: &[[f64; N]], frame: &CharacteristicFrame<N>) -> Vec<[f64; N]> {
    window.iter().map(|q| frame.project(q)).collect()
}

pub fn unproject<const N: usize>(window: &[[f64; N]], frame: &CharacteristicFrame<N>) -> Vec<[f64; N]> {
    window.iter().map(|w| frame.unproject(w)).collect()
}

#[inline(always)]
pub fn conserved_1d(rho: f64, vel: f64, p: f64, params: &EulerParams) -> [f64; 3] {
    [rho, rho * vel, p / (params.gas_gamma - 1.0) + 0.5 * rho * vel * vel]
}

#[inline(always)]
pub fn conserved_2d(rho: f64, vx: f64, vy: f64, p: f64, params: &EulerParams) -> [f64; 4] {
    [
        rho,
        rho * vx,
        rho * vy,
        p / (params.gas_gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy),
    ]
}

#[inline(always)]
pub fn pressure_1d(u: &[f64; 3], params: &EulerParams) -> f64 {
    (params.gas_gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
}

#[inline(always)]
pub fn pressure_2d(u: &[f64; 4], params: &EulerParams) -> f64 {
    (params.gas_gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
}

fn admissibility(rho: f64, p: f64) -> Result<()> {
    if rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Inadmissible {
            index: "state".into(),
            density: rho,
            pressure: p,
        })
    }
}

/// Analytic Euler flux of a 1D (`N = 3`) or 2D (`N = 4`) state.
pub fn euler_flux<const N: usize>(u: &[f64; N], axis: Axis, params: &EulerParams) -> Result<[f64; N]>
where
    Euler: LinePhysics<N>,
{
    let e = Euler(*params);
    if let Some((rho, p)) = e.inadmissible(u) {
        return Err(Error::Inadmissible {
            index: format!("{u:?}"),
            density: rho,
            pressure: p,
        });
    }
    Ok(e.flux(u, axis))
}

/// Eigenframe at the arithmetic mean of two conserved states.
pub fn characteristic_frame<const N: usize>(
    left: &[f64; N],
    right: &[f64; N],
    axis: Axis,
    params: &EulerParams,
) -> Result<CharacteristicFrame<N>>
where
    Euler: LinePhysics<N>,
{
    let e = Euler(*params);
    let mut avg = [0.0; N];
    for k in 0..N {
        avg[k] = 0.5 * (left[k] + right[k]);
    }
    if let Some((rho, p)) = e.inadmissible(&avg) {
        return Err(Error::Inadmissible {
            index: "interface average".into(),
            density: rho,
            pressure: p,
        });
    }
    e.frame(left, right, axis)
        .ok_or_else(|| Error::InvalidConfig("no eigenframe".into()))
}

/// Euler physics; implements [`LinePhysics`] for `N = 3` (1D) and `N = 4`
/// (2D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler(pub EulerParams);

impl Euler {
    pub fn gamma(&self) -> f64 {
        self.0.gas_gamma
    }
}

impl LinePhysics<3> for Euler {
    #[inline(always)]
    fn flux(&self, u: &[f64; 3], _axis: Axis) -> [f64; 3] {
        let vel = u[1] / u[0];
        let p = pressure_1d(u, &self.0);
        [u[1], u[1] * vel + p, vel * (u[2] + p)]
    }

    #[inline(always)]
    fn flux_jvp(&self, u: &[f64; 3], d: &[f64; 3], _axis: Axis) -> [f64; 3] {
        let g1 = self.gamma() - 1.0;
        let vel = u[1] / u[0];
        let p = g1 * (u[2] - 0.5 * u[1] * vel);
        let enth = (u[2] + p) / u[0];
        let dp = g1 * (d[2] - vel * d[1] + 0.5 * vel * vel * d[0]);
        [
            d[1],
            2.0 * vel * d[1] - vel * vel * d[0] + dp,
            enth * (d[1] - vel * d[0]) + vel * (d[2] + dp),
        ]
    }

    #[inline(always)]
    fn wave_speed(&self, u: &[f64; 3], _axis: Axis) -> f64 {
        let p = pressure_1d(u, &self.0);
        (u[1] / u[0]).abs() + (self.gamma() * p / u[0]).sqrt()
    }

    #[inline(always)]
    fn frame(&self, l: &[f64; 3], r: &[f64; 3], _axis: Axis) -> Option<CharacteristicFrame<3>> {
        let g1 = self.gamma() - 1.0;
        let rho = 0.5 * (l[0] + r[0]);
        let mom = 0.5 * (l[1] + r[1]);
        let en = 0.5 * (l[2] + r[2]);
        let vel = mom / rho;
        let p = g1 * (en - 0.5 * mom * vel);
        let c = (self.gamma() * p / rho).sqrt();
        let enth = (en + p) / rho;
        let b1 = g1 / (c * c);
        let b2 = 0.5 * vel * vel * b1;
        let ic = 1.0 / c;
        Some(CharacteristicFrame {
            left: [
                [0.5 * (b2 + vel * ic), -0.5 * (b1 * vel + ic), 0.5 * b1],
                [1.0 - b2, b1 * vel, -b1],
                [0.5 * (b2 - vel * ic), -0.5 * (b1 * vel - ic), 0.5 * b1],
            ],
            right: [
                [1.0, vel - c, enth - vel * c],
                [1.0, vel, 0.5 * vel * vel],
                [1.0, vel + c, enth + vel * c],
            ],
            eigenvalues: [vel - c, vel, vel + c],
        })
    }

    fn normal_momentum(&self, _axis: Axis) -> Option<usize> {
        Some(1)
    }

    #[inline]
    fn inadmissible(&self, u: &[f64; 3]) -> Option<(f64, f64)> {
        let p = if u[0] > 0.0 { pressure_1d(u, &self.0) } else { f64::NAN };
        admissibility(u[0], p).err().map(|_| (u[0], p))
    }
}

/// Normal and tangential momentum slots for a sweep direction.
#[inline(always)]
fn slots(axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 1),
    }
}

impl LinePhysics<4> for Euler {
    #[inline(always)]
    fn flux(&self, u: &[f64; 4], axis: Axis) -> [f64; 4] {
        let (n, t) = slots(axis);
        let vn = u[n] / u[0];
        let p = pressure_2d(u, &self.0);
        let mut f = [0.0; 4];
        f[0] = u[n];
        f[n] = u[n] * vn + p;
        f[t] = u[t] * vn;
        f[3] = vn * (u[3] + p);
        f
    }

    #[inline(always)]
    fn flux_jvp(&self, u: &[f64; 4], d: &[f64; 4], axis: Axis) -> [f64; 4] {
        let (n, t) = slots(axis);
        let g1 = self.gamma() - 1.0;
        let irho = 1.0 / u[0];
        let vn = u[n] * irho;
        let vt = u[t] * irho;
        let q2 = vn * vn + vt * vt;
        let p = g1 * (u[3] - 0.5 * u[0] * q2);
        let enth = (u[3] + p) * irho;
        let dp = g1 * (d[3] - vn * d[n] - vt * d[t] + 0.5 * q2 * d[0]);
        let mut out = [0.0; 4];
        out[0] = d[n];
        out[n] = 2.0 * vn * d[n] - vn * vn * d[0] + dp;
        out[t] = vt * d[n] + vn * d[t] - vn * vt * d[0];
        out[3] = enth * (d[n] - vn * d[0]) + vn * (d[3] + dp);
        out
    }

    #[inline(always)]
    fn wave_speed(&self, u: &[f64; 4], axis: Axis) -> f64 {
        let (n, _) = slots(axis);
        let p = pressure_2d(u, &self.0);
        (u[n] / u[0]).abs() + (self.gamma() * p / u[0]).sqrt()
    }

    #[inline(always)]
    fn frame(&self, l: &[f64; 4], r: &[f64; 4], axis: Axis) -> Option<CharacteristicFrame<4>> {
        let (n, t) = slots(axis);
        let g1 = self.gamma() - 1.0;
        let rho = 0.5 * (l[0] + r[0]);
        let irho = 1.0 / rho;
        let vn = 0.5 * (l[n] + r[n]) * irho;
        let vt = 0.5 * (l[t] + r[t]) * irho;
        let en = 0.5 * (l[3] + r[3]);
        let q2 = vn * vn + vt * vt;
        let p = g1 * (en - 0.5 * rho * q2);
        let c = (self.gamma() * p * irho).sqrt();
        let enth = (en + p) * irho;
        let b1 = g1 / (c * c);
        let b2 = 0.5 * q2 * b1;
        let ic = 1.0 / c;

        let mut left = [[0.0; 4]; 4];
        left[0][0] = 0.5 * (b2 + vn * ic);
        left[0][n] = -0.5 * (b1 * vn + ic);
        left[0][t] = -0.5 * b1 * vt;
        left[0][3] = 0.5 * b1;
        left[1][0] = 1.0 - b2;
        left[1][n] = b1 * vn;
        left[1][t] = b1 * vt;
        left[1][3] = -b1;
        left[2][0] = -vt;
        left[2][t] = 1.0;
        left[3][0] = 0.5 * (b2 - vn * ic);
        left[3][n] = -0.5 * (b1 * vn - ic);
        left[3][t] = -0.5 * b1 * vt;
        left[3][3] = 0.5 * b1;

        let mut right = [[0.0; 4]; 4];
        right[0][0] = 1.0;
        right[0][n] = vn - c;
        right[0][t] = vt;
        right[0][3] = enth - vn * c;
        right[1][0] = 1.0;
        right[1][n] = vn;
        right[1][t] = vt;
        right[1][3] = 0.5 * q2;
        right[2][t] = 1.0;
        right[2][3] = vt;
        right[3][0] = 1.0;
        right[3][n] = vn + c;
        right[3][t] = vt;
        right[3][3] = enth + vn * c;

        Some(CharacteristicFrame {
            left,
            right,
            eigenvalues: [vn - c, vn, vn, vn + c],
        })
    }

    fn normal_momentum(&self, axis: Axis) -> Option<usize> {
        Some(slots(axis).0)
    }

    #[inline]
    fn inadmissible(&self, u: &[f64; 4]) -> Option<(f64, f64)> {
        let p = if u[0] > 0.0 { pressure_2d(u, &self.0) } else { f64::NAN };
        admissibility(u[0], p).err().map(|_| (u[0], p))
    }
}
