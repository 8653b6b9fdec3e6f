//! Semi-discrete residuals and the limited SSP-RK3 integrator.
//!
//! Every spatial operator works on one grid line at a time. A line buffer
//! holds `n` interior nodes plus [`GHOST`] ghosts per side for the solution,
//! its derivative along the line (`vn`) and, in 2D, its derivative across
//! the line (`vt`). A sweep along a line produces
//!
//! * `du  = -(f̂_{k+1/2} - f̂_{k-1/2}) / h` from the nonlinear reconstruction,
//! * `dvn = -(ĥ_{k+1/2} - ĥ_{k-1/2}) / h` from the linear quintic derivative,
//! * `dvt = -(m̂_{k+1/2} - m̂_{k-1/2}) / h` from the unsplit mixed-derivative
//!   stencil applied to `f'(u) vt`.
//!
//! In 2D the x-sweeps feed `(u, v, w)` and the y-sweeps `(u, w, v)`.

use std::sync::Arc;

use crate::boundary::{apply_boundary_1d, apply_boundary_2d, fill_line_side, BoundaryCondition, BoundaryKind, LineGeometry, LineView, Side};
use crate::config::{LimiterMode, SchemeConfig};
use crate::error::{Error, Result};
use crate::euler::CharacteristicFrame;
use crate::grid::{Axis, Grid1D, Grid2D, GHOST};
use crate::limiter::modified_derivative;
use crate::physics::LinePhysics;
use crate::reconstruct::{quintic_derivative, quintic_derivative_minus, reconstruct_value_minus, reconstruct_value_plus};
use crate::state::{HermiteState1D, HermiteState2D};
use crate::timestep::{compute_dt_1d, compute_dt_2d};
use crate::weno::{weno5_reconstruct, weno5_reconstruct_minus};

/// Fourth-order interface value `(-q_{j-1} + 7q_j + 7q_{j+1} - q_{j+2}) / 12`.
#[inline(always)]
pub fn mixed_flux(q: [f64; 4]) -> f64 {
    (-q[0] + 7.0 * q[1] + 7.0 * q[2] - q[3]) / 12.0
}

/// Per-sweep constants.
#[derive(Debug, Clone, Copy)]
pub struct SweepParams<'a> {
    pub axis: Axis,
    pub h: f64,
    pub alpha: f64,
    pub config: &'a SchemeConfig,
}

/// Reusable buffers for [`sweep_line`]. Outputs are read back from `du`,
/// `dvn`, `dvt` and `limited`, each holding one entry per interior node.
#[derive(Debug, Clone)]
pub struct LineScratch<const N: usize> {
    // Lax-Friedrichs split `½(f ± αu)` and `½(f'(u)v ± αv)` per node.
    fp: Vec<[f64; N]>,
    fm: Vec<[f64; N]>,
    hp: Vec<[f64; N]>,
    hm: Vec<[f64; N]>,
    xi: Vec<[f64; N]>,
    fhat: Vec<[f64; N]>,
    hhat: Vec<[f64; N]>,
    mhat: Vec<[f64; N]>,
    pub du: Vec<[f64; N]>,
    pub dvn: Vec<[f64; N]>,
    pub dvt: Vec<[f64; N]>,
    pub limited: Vec<[f64; N]>,
}

impl<const N: usize> Default for LineScratch<N> {
    fn default() -> Self {
        Self {
            fp: Vec::new(),
            fm: Vec::new(),
            hp: Vec::new(),
            hm: Vec::new(),
            xi: Vec::new(),
            fhat: Vec::new(),
            hhat: Vec::new(),
            mhat: Vec::new(),
            du: Vec::new(),
            dvn: Vec::new(),
            dvt: Vec::new(),
            limited: Vec::new(),
        }
    }
}

#[inline(always)]
fn maybe_project<const N: usize>(frame: &Option<CharacteristicFrame<N>>, q: &[f64; N]) -> [f64; N] {
    match frame {
        Some(fr) => fr.project(q),
        None => *q,
    }
}

#[inline(always)]
fn split<const N: usize>(f: &[f64; N], u: &[f64; N], alpha: f64) -> ([f64; N], [f64; N]) {
    let mut plus = [0.0; N];
    let mut minus = [0.0; N];
    for c in 0..N {
        plus[c] = 0.5 * (f[c] + alpha * u[c]);
        minus[c] = 0.5 * (f[c] - alpha * u[c]);
    }
    (plus, minus)
}

/// Nonlinear L-HWENO flux `f̂` at the interface right of buffer node `b`.
#[inline(always)]
fn hweno_flux<const N: usize>(s: &LineScratch<N>, b: usize, frame: &Option<CharacteristicFrame<N>>, p: &SweepParams) -> [f64; N] {
    // Node-major so that the loops over components vectorize.
    let mut fp = [[0.0; N]; 3];
    let mut fm = [[0.0; N]; 3];
    let mut hp = [[0.0; N]; 3];
    let mut hm = [[0.0; N]; 3];
    for m in 0..3 {
        fp[m] = maybe_project(frame, &s.fp[b + m - 1]);
        hp[m] = maybe_project(frame, &s.hp[b + m - 1]);
        fm[m] = maybe_project(frame, &s.fm[b + m]);
        hm[m] = maybe_project(frame, &s.hm[b + m]);
    }
    let g = &p.config.gamma_weights;
    let eps = p.config.epsilon;
    let mut out = [0.0; N];
    for c in 0..N {
        out[c] = reconstruct_value_plus([fp[0][c], fp[1][c], fp[2][c]], [hp[0][c], hp[1][c], hp[2][c]], p.h, g, eps)
            + reconstruct_value_minus([fm[0][c], fm[1][c], fm[2][c]], [hm[0][c], hm[1][c], hm[2][c]], p.h, g, eps);
    }
    match frame {
        Some(fr) => fr.unproject(&out),
        None => out,
    }
}

/// Linear derivative flux `ĥ`, always component-wise.
#[inline(always)]
fn hweno_derivative_flux<const N: usize>(s: &LineScratch<N>, b: usize, h: f64) -> [f64; N] {
    let mut out = [0.0; N];
    for c in 0..N {
        out[c] = quintic_derivative([s.fp[b - 1][c], s.fp[b][c], s.fp[b + 1][c]], [s.hp[b - 1][c], s.hp[b][c], s.hp[b + 1][c]], h)
            + quintic_derivative_minus([s.fm[b][c], s.fm[b + 1][c], s.fm[b + 2][c]], [s.hm[b][c], s.hm[b + 1][c], s.hm[b + 2][c]], h);
    }
    out
}

/// WENO-JS flux at the interface right of buffer node `b`.
#[inline(always)]
fn weno_flux<const N: usize>(s: &LineScratch<N>, b: usize, frame: &Option<CharacteristicFrame<N>>) -> [f64; N] {
    let mut fp = [[0.0; N]; 5];
    let mut fm = [[0.0; N]; 5];
    for m in 0..5 {
        fp[m] = maybe_project(frame, &s.fp[b + m - 2]);
        fm[m] = maybe_project(frame, &s.fm[b + m - 1]);
    }
    let mut out = [0.0; N];
    for c in 0..N {
        let plus = weno5_reconstruct(&[fp[0][c], fp[1][c], fp[2][c], fp[3][c], fp[4][c]]);
        let minus = weno5_reconstruct_minus(&[fm[0][c], fm[1][c], fm[2][c], fm[3][c], fm[4][c]]);
        out[c] = plus + minus;
    }
    match frame {
        Some(fr) => fr.unproject(&out),
        None => out,
    }
}

fn check_interfaces<const N: usize>(vals: &[[f64; N]], field: &'static str, axis: Axis) -> Result<()> {
    for (k, q) in vals.iter().enumerate() {
        for (c, x) in q.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite {
                    field,
                    component: c,
                    index: format!("interface {k} of a {axis:?} line"),
                    context: "flux reconstruction".into(),
                });
            }
        }
    }
    Ok(())
}

/// Residual contributions of one line.
///
/// `u`, `vn` and (if given) `vt` include the ghost margin. `vn` is ignored
/// by the WENO-JS scheme. With `limit` set, the modified derivative of `vn`
/// is written to `scratch.limited`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_line<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    p: &SweepParams,
    u: &[[f64; N]],
    vn: &[[f64; N]],
    vt: Option<&[[f64; N]]>,
    limit: bool,
    s: &mut LineScratch<N>,
) -> Result<()> {
    let len = u.len();
    debug_assert!(len > 2 * GHOST);
    let n = len - 2 * GHOST;
    let axis = p.axis;
    let hermite = p.config.scheme.evolves_derivatives();

    s.fp.clear();
    s.fm.clear();
    for q in u {
        let (plus, minus) = split(&phys.flux(q, axis), q, p.alpha);
        s.fp.push(plus);
        s.fm.push(minus);
    }
    s.fhat.resize(n + 1, [0.0; N]);
    s.du.resize(n, [0.0; N]);

    if hermite {
        s.hp.clear();
        s.hm.clear();
        for (q, d) in u.iter().zip(vn) {
            let (plus, minus) = split(&phys.flux_jvp(q, d, axis), d, p.alpha);
            s.hp.push(plus);
            s.hm.push(minus);
        }
        s.hhat.resize(n + 1, [0.0; N]);
        s.dvn.resize(n, [0.0; N]);
        for k in 0..=n {
            let b = GHOST - 1 + k;
            let frame = phys.frame(&u[b], &u[b + 1], axis);
            s.fhat[k] = hweno_flux(s, b, &frame, p);
            s.hhat[k] = hweno_derivative_flux(s, b, p.h);
        }
        check_interfaces(&s.hhat, "derivative flux", axis)?;
    } else {
        for k in 0..=n {
            let b = GHOST - 1 + k;
            let frame = phys.frame(&u[b], &u[b + 1], axis);
            s.fhat[k] = weno_flux(s, b, &frame);
        }
    }
    check_interfaces(&s.fhat, "flux", axis)?;

    let ih = 1.0 / p.h;
    for k in 0..n {
        for c in 0..N {
            s.du[k][c] = -(s.fhat[k + 1][c] - s.fhat[k][c]) * ih;
        }
    }
    if hermite {
        for k in 0..n {
            for c in 0..N {
                s.dvn[k][c] = -(s.hhat[k + 1][c] - s.hhat[k][c]) * ih;
            }
        }
        if let Some(vt) = vt {
            s.xi.clear();
            s.xi.extend(u.iter().zip(vt).map(|(q, d)| phys.flux_jvp(q, d, axis)));
            s.mhat.resize(n + 1, [0.0; N]);
            for k in 0..=n {
                let b = GHOST - 1 + k;
                for c in 0..N {
                    s.mhat[k][c] = mixed_flux([s.xi[b - 1][c], s.xi[b][c], s.xi[b + 1][c], s.xi[b + 2][c]]);
                }
            }
            check_interfaces(&s.mhat, "mixed derivative flux", axis)?;
            s.dvt.resize(n, [0.0; N]);
            for k in 0..n {
                for c in 0..N {
                    s.dvt[k][c] = -(s.mhat[k + 1][c] - s.mhat[k][c]) * ih;
                }
            }
        }
        if limit {
            s.limited.resize(n, [0.0; N]);
            let d = &p.config.d_weights;
            for k in 0..n {
                let b = GHOST + k;
                for c in 0..N {
                    s.limited[k][c] = modified_derivative(
                        [u[b - 1][c], u[b][c], u[b + 1][c]],
                        [vn[b - 1][c], vn[b][c], vn[b + 1][c]],
                        p.h,
                        d,
                        p.config.epsilon,
                    );
                }
            }
        }
    }
    Ok(())
}

/// Interior residual, node-major without ghosts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Residual {
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    /// Empty in one dimension.
    pub dw: Vec<f64>,
}

fn as_nodes<const N: usize>(data: &[f64]) -> &[[f64; N]] {
    let (nodes, rest) = data.as_chunks::<N>();
    debug_assert!(rest.is_empty());
    nodes
}

fn check_ncomp<const N: usize>(ncomp: usize) -> Result<()> {
    if ncomp != N {
        return Err(Error::ExtentMismatch(format!(
            "state has {ncomp} components, physics expects {N}"
        )));
    }
    Ok(())
}

/// `L¹`, `L²` on a 1D state whose ghosts are already filled.
///
/// `limited`, when given, receives the modified derivatives `ṽ` of the same
/// state (interior, node-major).
pub fn residual_1d<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    state: &HermiteState1D,
    grid: &Grid1D,
    alpha: f64,
    config: &SchemeConfig,
    scratch: &mut LineScratch<N>,
    out: &mut Residual,
    limited: Option<&mut Vec<f64>>,
) -> Result<()> {
    check_ncomp::<N>(state.ncomp)?;
    let p = SweepParams {
        axis: Axis::X,
        h: grid.dx,
        alpha,
        config,
    };
    let u = as_nodes::<N>(&state.u);
    let v = as_nodes::<N>(&state.v);
    sweep_line(phys, &p, u, v, None, limited.is_some(), scratch)?;
    out.du.clear();
    out.du.extend(scratch.du.iter().flatten());
    out.dv.clear();
    if config.scheme.evolves_derivatives() {
        out.dv.extend(scratch.dvn.iter().flatten());
    }
    out.dw.clear();
    if let Some(lim) = limited {
        lim.clear();
        lim.extend(scratch.limited.iter().flatten());
    }
    Ok(())
}

/// Reusable storage for the 1D integrator.
#[derive(Debug, Clone)]
pub struct Workspace1D<const N: usize> {
    scratch: LineScratch<N>,
    res: Residual,
    lim: Vec<f64>,
    base_u: Vec<f64>,
    base_v: Vec<f64>,
}

impl<const N: usize> Default for Workspace1D<N> {
    fn default() -> Self {
        Self {
            scratch: LineScratch::default(),
            res: Residual::default(),
            lim: Vec::new(),
            base_u: Vec::new(),
            base_v: Vec::new(),
        }
    }
}

const STAGE_WEIGHTS: [(f64, f64); 3] = [(0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0)];
const STAGE_NAMES: [&str; 3] = ["stage 1", "stage 2", "stage 3"];

fn stage_times(t: f64, dt: f64) -> [f64; 3] {
    [t, t + dt, t + 0.5 * dt]
}

fn check_admissible<P: LinePhysics<N>, const N: usize>(phys: &P, u: &[f64], label: impl Fn(usize) -> String) -> Result<()> {
    for (k, q) in as_nodes::<N>(u).iter().enumerate() {
        if let Some((density, pressure)) = phys.inadmissible(q) {
            return Err(Error::Inadmissible {
                index: label(k),
                density,
                pressure,
            });
        }
    }
    Ok(())
}

/// One limited SSP-RK3 step of size `dt` from time `t`.
///
/// The flux operators always see the unmodified stage derivatives; the
/// modified derivative of each stage (or the derivative itself when the
/// limiter is off) only enters the convex combinations.
#[allow(clippy::too_many_arguments)]
pub fn rk3_step_1d<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    state: &mut HermiteState1D,
    grid: &Grid1D,
    bc: &BoundaryCondition,
    config: &SchemeConfig,
    alpha: f64,
    t: f64,
    dt: f64,
    ws: &mut Workspace1D<N>,
) -> Result<()> {
    check_ncomp::<N>(state.ncomp)?;
    let hermite = config.scheme.evolves_derivatives();
    let staged = hermite && config.limiter_mode == LimiterMode::Staged;
    let lo = GHOST * N;
    let hi = lo + state.nx * N;
    let nm = phys.normal_momentum(Axis::X);

    for (stage, &ts) in stage_times(t, dt).iter().enumerate() {
        apply_boundary_1d(state, grid, bc, nm, ts)?;
        let Workspace1D {
            scratch,
            res,
            lim,
            base_u,
            base_v,
        } = ws;
        residual_1d(phys, state, grid, alpha, config, scratch, res, staged.then_some(&mut *lim))?;
        let vtil: &[f64] = if staged { lim } else { &state.v[lo..hi] };
        if stage == 0 {
            base_u.clear();
            base_u.extend_from_slice(&state.u[lo..hi]);
            base_v.clear();
            base_v.extend_from_slice(vtil);
        }
        let (a, b) = STAGE_WEIGHTS[stage];
        if hermite {
            let new_v: Vec<f64> = (0..hi - lo)
                .map(|k| a * base_v[k] + b * (vtil[k] + dt * res.dv[k]))
                .collect();
            state.v[lo..hi].copy_from_slice(&new_v);
        }
        for (k, x) in state.u[lo..hi].iter_mut().enumerate() {
            *x = a * base_u[k] + b * (*x + dt * res.du[k]);
        }
        state.check_finite(STAGE_NAMES[stage])?;
        check_admissible::<P, N>(phys, &state.u[lo..hi], |k| format!("i={k}, {}", STAGE_NAMES[stage]))?;
    }
    Ok(())
}

/// Largest wave speed over the interior nodes.
pub fn max_speed_1d<P: LinePhysics<N>, const N: usize>(phys: &P, state: &HermiteState1D) -> f64 {
    let lo = GHOST * N;
    as_nodes::<N>(&state.u[lo..lo + state.nx * N])
        .iter()
        .map(|q| phys.wave_speed(q, Axis::X))
        .fold(0.0, f64::max)
}

/// A 1D run: physics, grid, boundary rules, configuration and state.
pub struct Simulation1D<P, const N: usize> {
    pub physics: P,
    pub grid: Grid1D,
    pub bc: BoundaryCondition,
    pub config: SchemeConfig,
    pub state: HermiteState1D,
    pub t: f64,
    pub steps: usize,
    /// Wave-speed bound held fixed for the whole run instead of the
    /// per-step maximum over the grid.
    pub fixed_alpha: Option<f64>,
    ws: Workspace1D<N>,
}

impl<P: LinePhysics<N>, const N: usize> Simulation1D<P, N> {
    pub fn new(physics: P, grid: Grid1D, bc: BoundaryCondition, config: SchemeConfig, state: HermiteState1D) -> Result<Self> {
        config.validate()?;
        bc.validate()?;
        check_ncomp::<N>(state.ncomp)?;
        if state.nx != grid.nx {
            return Err(Error::ExtentMismatch(format!("state has {} nodes, grid {}", state.nx, grid.nx)));
        }
        Ok(Self {
            physics,
            grid,
            bc,
            config,
            state,
            t: 0.0,
            steps: 0,
            fixed_alpha: None,
            ws: Workspace1D::default(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.fixed_alpha.unwrap_or_else(|| max_speed_1d(&self.physics, &self.state))
    }

    /// Residual of the current state at time `t` (fills ghosts first).
    pub fn residual(&mut self, t: f64) -> Result<Residual> {
        apply_boundary_1d(&mut self.state, &self.grid, &self.bc, self.physics.normal_momentum(Axis::X), t)?;
        let alpha = self.alpha();
        let mut out = Residual::default();
        residual_1d(&self.physics, &self.state, &self.grid, alpha, &self.config, &mut self.ws.scratch, &mut out, None)?;
        Ok(out)
    }

    /// Advances by one step of at most the admissible size; returns `dt`.
    pub fn step(&mut self, t_end: f64) -> Result<f64> {
        let alpha = self.alpha();
        let dt = compute_dt_1d(alpha, self.grid.dx, self.config.cfl, self.config.time_step, self.t, t_end)?;
        self.step_with(dt, alpha)?;
        if dt == t_end - self.t {
            self.t = t_end;
        } else {
            self.t += dt;
        }
        Ok(dt)
    }

    /// One step with an explicit `dt` and wave-speed bound.
    pub fn step_with(&mut self, dt: f64, alpha: f64) -> Result<()> {
        rk3_step_1d(&self.physics, &mut self.state, &self.grid, &self.bc, &self.config, alpha, self.t, dt, &mut self.ws)?;
        self.steps += 1;
        Ok(())
    }

    pub fn run(&mut self, t_end: f64) -> Result<()> {
        while self.t < t_end {
            self.step(t_end)?;
        }
        Ok(())
    }
}

/// Solid rectangle `i >= i0, j < j1` in the lower right of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Obstacle {
    pub i0: usize,
    pub j1: usize,
}

impl Obstacle {
    #[inline]
    pub fn is_solid(&self, i: usize, j: usize) -> bool {
        i >= self.i0 && j < self.j1
    }
}

/// Hook applied to the state after every completed step.
pub type PostStep = Arc<dyn Fn(&mut HermiteState2D) + Send + Sync>;

/// Reusable storage for the 2D integrator.
#[derive(Debug, Clone)]
pub struct Workspace2D<const N: usize> {
    scratch: LineScratch<N>,
    bu: Vec<[f64; N]>,
    bn: Vec<[f64; N]>,
    bt: Vec<[f64; N]>,
    res: Residual,
    lim_v: Vec<f64>,
    lim_w: Vec<f64>,
    base_u: Vec<f64>,
    base_v: Vec<f64>,
    base_w: Vec<f64>,
}

impl<const N: usize> Default for Workspace2D<N> {
    fn default() -> Self {
        Self {
            scratch: LineScratch::default(),
            bu: Vec::new(),
            bn: Vec::new(),
            bt: Vec::new(),
            res: Residual::default(),
            lim_v: Vec::new(),
            lim_w: Vec::new(),
            base_u: Vec::new(),
            base_v: Vec::new(),
            base_w: Vec::new(),
        }
    }
}

/// Interior extent `[a, b)` of line `line` along `axis`, and which end (if
/// any) is an obstacle wall.
fn segment(axis: Axis, line: usize, n: usize, obstacle: Option<&Obstacle>) -> (usize, usize, Option<Side>) {
    match (obstacle, axis) {
        (Some(o), Axis::X) if line < o.j1 => (0, o.i0, Some(Side::Hi)),
        (Some(o), Axis::Y) if line >= o.i0 => (o.j1, n, Some(Side::Lo)),
        _ => (0, n, None),
    }
}

/// 2D residual (and optionally the modified derivatives `ṽ`, `w̃`) of a
/// state whose edge ghosts are filled. Solid cells get a zero residual.
#[allow(clippy::too_many_arguments)]
pub fn residual_2d<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    state: &HermiteState2D,
    grid: &Grid2D,
    alpha: [f64; 2],
    config: &SchemeConfig,
    obstacle: Option<&Obstacle>,
    limit: bool,
    ws: &mut Workspace2D<N>,
) -> Result<()> {
    check_ncomp::<N>(state.ncomp)?;
    let (nx, ny) = (state.nx, state.ny);
    let hermite = config.scheme.evolves_derivatives();
    let limit = limit && hermite;
    let cells = nx * ny * N;
    let res = &mut ws.res;
    for a in [&mut res.du, &mut res.dv, &mut res.dw] {
        a.clear();
        a.resize(cells, 0.0);
    }
    if limit {
        ws.lim_v.clear();
        ws.lim_v.resize(cells, 0.0);
        ws.lim_w.clear();
        ws.lim_w.resize(cells, 0.0);
    }
    let rs = state.row_stride();

    for axis in [Axis::X, Axis::Y] {
        let (lines, n, h) = match axis {
            Axis::X => (ny, nx, grid.dx()),
            Axis::Y => (nx, ny, grid.dy()),
        };
        let (normal, transverse) = match axis {
            Axis::X => (&state.v, &state.w),
            Axis::Y => (&state.w, &state.v),
        };
        let p = SweepParams {
            axis,
            h,
            alpha: alpha[axis.index()],
            config,
        };
        let nm = phys.normal_momentum(axis);
        for line in 0..lines {
            let (a, b, wall) = segment(axis, line, n, obstacle);
            let len = b - a + 2 * GHOST;
            // Ghosted node offset of line position `k` (buffer index).
            let node = |k: usize| -> usize {
                let along = a + k; // already shifted by GHOST
                match axis {
                    Axis::X => ((line + GHOST) * rs + along) * N,
                    Axis::Y => (along * rs + line + GHOST) * N,
                }
            };
            ws.bu.clear();
            ws.bn.clear();
            ws.bt.clear();
            for k in 0..len {
                let o = node(k);
                ws.bu.push(state.u[o..o + N].try_into().unwrap());
                if hermite {
                    ws.bn.push(normal[o..o + N].try_into().unwrap());
                    ws.bt.push(transverse[o..o + N].try_into().unwrap());
                }
            }
            if let Some(side) = wall {
                let geom = LineGeometry {
                    axis,
                    origin: 0.0,
                    h,
                    transverse: 0.0,
                };
                let mut dummy_n = Vec::new();
                let mut dummy_t = Vec::new();
                let (bn, bt) = if hermite {
                    (ws.bn.as_flattened_mut(), ws.bt.as_flattened_mut())
                } else {
                    dummy_n.resize(len * N, 0.0);
                    dummy_t.resize(len * N, 0.0);
                    (&mut dummy_n[..], &mut dummy_t[..])
                };
                let mut view = LineView {
                    u: ws.bu.as_flattened_mut(),
                    normal: bn,
                    transverse: Some(bt),
                    base: GHOST,
                    stride: 1,
                    ncomp: N,
                    n: b - a,
                };
                fill_line_side(&mut view, side, &BoundaryKind::Reflective, nm, &geom, 0.0);
            }
            let vt = if hermite { Some(&ws.bt[..]) } else { None };
            sweep_line(phys, &p, &ws.bu, &ws.bn, vt, limit, &mut ws.scratch)?;

            let (dn, dtr, lim) = match axis {
                Axis::X => (&mut res.dv, &mut res.dw, &mut ws.lim_v),
                Axis::Y => (&mut res.dw, &mut res.dv, &mut ws.lim_w),
            };
            for k in 0..b - a {
                let (i, j) = match axis {
                    Axis::X => (a + k, line),
                    Axis::Y => (line, a + k),
                };
                let o = (j * nx + i) * N;
                for c in 0..N {
                    res.du[o + c] += ws.scratch.du[k][c];
                }
                if hermite {
                    for c in 0..N {
                        dn[o + c] += ws.scratch.dvn[k][c];
                        dtr[o + c] += ws.scratch.dvt[k][c];
                    }
                    if limit {
                        lim[o..o + N].copy_from_slice(&ws.scratch.limited[k]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// One limited SSP-RK3 step in 2D. The limiter acts on `v` along x-lines
/// and on `w` along y-lines. Solid cells are left untouched.
#[allow(clippy::too_many_arguments)]
pub fn rk3_step_2d<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    state: &mut HermiteState2D,
    grid: &Grid2D,
    bc: &BoundaryCondition,
    config: &SchemeConfig,
    obstacle: Option<&Obstacle>,
    alpha: [f64; 2],
    t: f64,
    dt: f64,
    ws: &mut Workspace2D<N>,
) -> Result<()> {
    check_ncomp::<N>(state.ncomp)?;
    let hermite = config.scheme.evolves_derivatives();
    let staged = hermite && config.limiter_mode == LimiterMode::Staged;
    let (nx, ny) = (state.nx, state.ny);
    let cells = nx * ny * N;
    let rs = state.row_stride();
    let ghosted = |i: usize, j: usize| ((j + GHOST) * rs + i + GHOST) * N;

    for (stage, &ts) in stage_times(t, dt).iter().enumerate() {
        apply_boundary_2d(state, grid, bc, |a| phys.normal_momentum(a), ts)?;
        residual_2d(phys, state, grid, alpha, config, obstacle, staged, ws)?;
        if stage == 0 {
            for base in [&mut ws.base_u, &mut ws.base_v, &mut ws.base_w] {
                base.clear();
                base.resize(cells, 0.0);
            }
            for j in 0..ny {
                for i in 0..nx {
                    let (o, g) = ((j * nx + i) * N, ghosted(i, j));
                    ws.base_u[o..o + N].copy_from_slice(&state.u[g..g + N]);
                    if staged {
                        ws.base_v[o..o + N].copy_from_slice(&ws.lim_v[o..o + N]);
                        ws.base_w[o..o + N].copy_from_slice(&ws.lim_w[o..o + N]);
                    } else {
                        ws.base_v[o..o + N].copy_from_slice(&state.v[g..g + N]);
                        ws.base_w[o..o + N].copy_from_slice(&state.w[g..g + N]);
                    }
                }
            }
        }
        let (a, b) = STAGE_WEIGHTS[stage];
        for j in 0..ny {
            for i in 0..nx {
                if obstacle.is_some_and(|o| o.is_solid(i, j)) {
                    continue;
                }
                let (o, g) = ((j * nx + i) * N, ghosted(i, j));
                for c in 0..N {
                    let (oc, gc) = (o + c, g + c);
                    state.u[gc] = a * ws.base_u[oc] + b * (state.u[gc] + dt * ws.res.du[oc]);
                    if hermite {
                        let (vt, wt) = if staged {
                            (ws.lim_v[oc], ws.lim_w[oc])
                        } else {
                            (state.v[gc], state.w[gc])
                        };
                        state.v[gc] = a * ws.base_v[oc] + b * (vt + dt * ws.res.dv[oc]);
                        state.w[gc] = a * ws.base_w[oc] + b * (wt + dt * ws.res.dw[oc]);
                    }
                }
            }
        }
        state.check_finite(STAGE_NAMES[stage])?;
        for j in 0..ny {
            let g = ghosted(0, j);
            check_admissible::<P, N>(phys, &state.u[g..g + nx * N], |i| {
                format!("i={i}, j={j}, {}", STAGE_NAMES[stage])
            })?;
        }
    }
    Ok(())
}

/// Largest wave speed per axis over the fluid nodes.
pub fn max_speed_2d<P: LinePhysics<N>, const N: usize>(
    phys: &P,
    state: &HermiteState2D,
    obstacle: Option<&Obstacle>,
) -> [f64; 2] {
    let mut out = [0.0f64; 2];
    for j in 0..state.ny {
        for i in 0..state.nx {
            if obstacle.is_some_and(|o| o.is_solid(i, j)) {
                continue;
            }
            let o = state.node(i as isize, j as isize);
            let q: &[f64; N] = state.u[o..o + N].try_into().unwrap();
            out[0] = out[0].max(phys.wave_speed(q, Axis::X));
            out[1] = out[1].max(phys.wave_speed(q, Axis::Y));
        }
    }
    out
}

/// A 2D run.
pub struct Simulation2D<P, const N: usize> {
    pub physics: P,
    pub grid: Grid2D,
    pub bc: BoundaryCondition,
    pub config: SchemeConfig,
    pub state: HermiteState2D,
    pub obstacle: Option<Obstacle>,
    pub post_step: Option<PostStep>,
    pub t: f64,
    pub steps: usize,
    pub fixed_alpha: Option<[f64; 2]>,
    ws: Workspace2D<N>,
}

impl<P: LinePhysics<N>, const N: usize> Simulation2D<P, N> {
    pub fn new(physics: P, grid: Grid2D, bc: BoundaryCondition, config: SchemeConfig, state: HermiteState2D) -> Result<Self> {
        config.validate()?;
        bc.validate()?;
        check_ncomp::<N>(state.ncomp)?;
        if state.nx != grid.nx() || state.ny != grid.ny() {
            return Err(Error::ExtentMismatch(format!(
                "state is {}x{}, grid {}x{}",
                state.nx,
                state.ny,
                grid.nx(),
                grid.ny()
            )));
        }
        Ok(Self {
            physics,
            grid,
            bc,
            config,
            state,
            obstacle: None,
            post_step: None,
            t: 0.0,
            steps: 0,
            fixed_alpha: None,
            ws: Workspace2D::default(),
        })
    }

    pub fn alpha(&self) -> [f64; 2] {
        self.fixed_alpha
            .unwrap_or_else(|| max_speed_2d(&self.physics, &self.state, self.obstacle.as_ref()))
    }

    /// Residual of the current state at time `t` (fills ghosts first).
    pub fn residual(&mut self, t: f64) -> Result<Residual> {
        let phys = &self.physics;
        apply_boundary_2d(&mut self.state, &self.grid, &self.bc, |a| phys.normal_momentum(a), t)?;
        let alpha = self.alpha();
        residual_2d(
            &self.physics,
            &self.state,
            &self.grid,
            alpha,
            &self.config,
            self.obstacle.as_ref(),
            false,
            &mut self.ws,
        )?;
        Ok(self.ws.res.clone())
    }

    pub fn step(&mut self, t_end: f64) -> Result<f64> {
        let alpha = self.alpha();
        let dt = compute_dt_2d(
            alpha,
            self.grid.dx(),
            self.grid.dy(),
            self.config.cfl,
            self.config.time_step,
            self.t,
            t_end,
        )?;
        self.step_with(dt, alpha)?;
        if dt == t_end - self.t {
            self.t = t_end;
        } else {
            self.t += dt;
        }
        Ok(dt)
    }

    pub fn step_with(&mut self, dt: f64, alpha: [f64; 2]) -> Result<()> {
        rk3_step_2d(
            &self.physics,
            &mut self.state,
            &self.grid,
            &self.bc,
            &self.config,
            self.obstacle.as_ref(),
            alpha,
            self.t,
            dt,
            &mut self.ws,
        )?;
        if let Some(hook) = &self.post_step {
            hook(&mut self.state);
        }
        self.steps += 1;
        Ok(())
    }

    pub fn run(&mut self, t_end: f64) -> Result<()> {
        while self.t < t_end {
            self.step(t_end)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scheme;
    use crate::physics::ScalarFlux;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn mixed_flux_examples() {
        assert_relative_eq!(mixed_flux([2.0; 4]), 2.0, epsilon = 1e-15);
        // Linear data y_j = j gives the midpoint between nodes 1 and 2.
        assert_relative_eq!(mixed_flux([0.0, 1.0, 2.0, 3.0]), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn mixed_flux_fourth_order() {
        // Flux differences of sin approximate its derivative at 4th order.
        let err = |n: usize| {
            let h = 2.0 * std::f64::consts::PI / n as f64;
            (0..n)
                .map(|j| {
                    let y = j as f64 * h;
                    let q = |s: f64| [(s - h).sin(), s.sin(), (s + h).sin(), (s + 2.0 * h).sin()];
                    let d = (mixed_flux(q(y)) - mixed_flux(q(y - h))) / h;
                    (d - y.cos()).abs()
                })
                .fold(0.0, f64::max)
        };
        let order = (err(40) / err(80)).log2();
        assert!((order - 4.0).abs() < 0.2, "order {order}");
    }

    proptest! {
        #[test]
        fn mixed_flux_exact_on_linears(a in -10.0..10.0f64, b in -10.0..10.0f64) {
            let q = [a - b, a, a + b, a + 2.0 * b];
            prop_assert!((mixed_flux(q) - (a + 0.5 * b)).abs() < 1e-12 * (1.0 + a.abs() + b.abs()));
        }
    }

    fn advection_sim(n: usize, scheme: Scheme) -> Simulation1D<ScalarFlux, 1> {
        let grid = Grid1D::new(0.0, 2.0, n).unwrap();
        let mut st = HermiteState1D::zeros(&grid, 1);
        for i in 0..n {
            let x = grid.x(i as isize);
            let k = st.at(i as isize, 0);
            st.u[k] = (std::f64::consts::PI * x).sin();
            st.v[k] = std::f64::consts::PI * (std::f64::consts::PI * x).cos();
        }
        let config = SchemeConfig {
            scheme,
            ..SchemeConfig::default()
        };
        Simulation1D::new(ScalarFlux::Linear { ax: 1.0, ay: 0.0 }, grid, BoundaryCondition::periodic(), config, st).unwrap()
    }

    #[test]
    fn constant_state_has_zero_residual() {
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let mut st = HermiteState1D::zeros(&grid, 1);
        st.u.fill(0.7);
        let mut sim = Simulation1D::new(ScalarFlux::Burgers, grid, BoundaryCondition::periodic(), SchemeConfig::default(), st).unwrap();
        let r = sim.residual(0.0).unwrap();
        assert!(r.du.iter().chain(&r.dv).all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn constant_state_is_a_fixed_point() {
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let mut st = HermiteState1D::zeros(&grid, 1);
        st.u.fill(0.7);
        let before = st.clone();
        let mut sim = Simulation1D::new(ScalarFlux::Burgers, grid, BoundaryCondition::periodic(), SchemeConfig::default(), st).unwrap();
        sim.step_with(0.01, 0.7).unwrap();
        assert_eq!(sim.state.component(0), before.component(0));
    }

    #[test]
    fn residual_matches_exact_derivatives() {
        let err = |n: usize| {
            let mut sim = advection_sim(n, Scheme::LHweno);
            let r = sim.residual(0.0).unwrap();
            let (mut eu, mut ev) = (0.0f64, 0.0f64);
            let pi = std::f64::consts::PI;
            for i in 0..n {
                let x = sim.grid.x(i as isize);
                eu = eu.max((r.du[i] + pi * (pi * x).cos()).abs());
                ev = ev.max((r.dv[i] - pi * pi * (pi * x).sin()).abs());
            }
            (eu, ev)
        };
        let (u1, v1) = err(40);
        let (u2, v2) = err(80);
        assert!((u1 / u2).log2() > 4.7, "u order {}", (u1 / u2).log2());
        assert!((v1 / v2).log2() > 3.8, "v order {}", (v1 / v2).log2());
    }

    #[test]
    fn forward_euler_conserves_sum() {
        let mut sim = advection_sim(32, Scheme::LHweno);
        let before = sim.state.totals()[0];
        let r = sim.residual(0.0).unwrap();
        let after: f64 = sim.state.component(0).iter().zip(&r.du).map(|(u, d)| u + 0.01 * d).sum();
        assert!((after - before).abs() < 1e-13);
    }

    #[test]
    fn limiter_mode_does_not_touch_residual() {
        let mut a = advection_sim(24, Scheme::LHweno);
        let mut b = advection_sim(24, Scheme::LHweno);
        b.config.limiter_mode = LimiterMode::Off;
        assert_eq!(a.residual(0.0).unwrap(), b.residual(0.0).unwrap());
    }

    #[test]
    fn weno_step_runs() {
        let mut sim = advection_sim(32, Scheme::WenoJs);
        sim.run(0.1).unwrap();
        assert!(sim.t == 0.1 && sim.steps > 0);
    }
}
