//! Runs a registered [`Problem`] on a chosen grid with a chosen scheme.

use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::euler::{Euler, EulerParams};
use crate::grid::{Grid1D, Grid2D, GHOST};
use crate::physics::LinePhysics;
use crate::problems::{Domain, Model, Problem};
use crate::solver::{Obstacle, PostStep, Simulation1D, Simulation2D};
use crate::state::{HermiteState1D, HermiteState2D};
use crate::SchemeConfig;

/// Final fields of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    OneD { grid: Grid1D, state: HermiteState1D },
    TwoD { grid: Grid2D, state: HermiteState2D },
}

impl Solution {
    /// Interior values of component `c` in row-major order.
    pub fn component(&self, c: usize) -> Vec<f64> {
        match self {
            Solution::OneD { state, .. } => state.component(c),
            Solution::TwoD { state, .. } => state.component(c),
        }
    }

    /// Cell-center coordinates matching [`Solution::component`].
    pub fn points(&self) -> Vec<(f64, f64)> {
        match self {
            Solution::OneD { grid, .. } => grid.centers().into_iter().map(|x| (x, 0.0)).collect(),
            Solution::TwoD { grid, .. } => {
                let mut pts = Vec::with_capacity(grid.cells());
                for j in 0..grid.ny() {
                    for i in 0..grid.nx() {
                        pts.push((grid.x.x(i as isize), grid.y.x(j as isize)));
                    }
                }
                pts
            }
        }
    }

    pub fn ncomp(&self) -> usize {
        match self {
            Solution::OneD { state, .. } => state.ncomp,
            Solution::TwoD { state, .. } => state.ncomp,
        }
    }

    pub fn dims(&self) -> usize {
        match self {
            Solution::OneD { .. } => 1,
            Solution::TwoD { .. } => 2,
        }
    }

    /// Mask of cells inside the flow (all true without an obstacle).
    pub fn fluid_mask(&self, obstacle: Option<&Obstacle>) -> Vec<bool> {
        match self {
            Solution::OneD { state, .. } => vec![true; state.nx],
            Solution::TwoD { state, .. } => {
                let mut m = Vec::with_capacity(state.nx * state.ny);
                for j in 0..state.ny {
                    for i in 0..state.nx {
                        m.push(!obstacle.is_some_and(|o| o.is_solid(i, j)));
                    }
                }
                m
            }
        }
    }
}

/// Output of [`run_problem`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub solution: Solution,
    pub t: f64,
    pub steps: usize,
    pub wall_seconds: f64,
    pub obstacle: Option<Obstacle>,
}

/// Initial 1D state sampled at the cell centers.
pub fn initial_state_1d(problem: &Problem, grid: &Grid1D) -> HermiteState1D {
    let nc = problem.components();
    let mut st = HermiteState1D::zeros(grid, nc);
    for i in 0..grid.nx {
        let d = (problem.initial)(grid.x(i as isize), 0.0);
        let o = st.at(i as isize, 0);
        st.u[o..o + nc].copy_from_slice(&d.u[..nc]);
        st.v[o..o + nc].copy_from_slice(&d.du_dx[..nc]);
    }
    st
}

pub fn initial_state_2d(problem: &Problem, grid: &Grid2D) -> HermiteState2D {
    let nc = problem.components();
    let mut st = HermiteState2D::zeros(grid, nc);
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let d = (problem.initial)(grid.x.x(i as isize), grid.y.x(j as isize));
            let o = st.node(i as isize, j as isize);
            st.u[o..o + nc].copy_from_slice(&d.u[..nc]);
            st.v[o..o + nc].copy_from_slice(&d.du_dx[..nc]);
            st.w[o..o + nc].copy_from_slice(&d.du_dy[..nc]);
        }
    }
    st
}

/// Obstacle cell indices for a step corner on `grid`.
pub fn obstacle_for(problem: &Problem, grid: &Grid2D) -> Result<Option<Obstacle>> {
    let Some(step) = problem.step else { return Ok(None) };
    let fi = (step.corner.0 - grid.x.x_min) / grid.dx();
    let fj = (step.corner.1 - grid.y.x_min) / grid.dy();
    let (i0, j1) = (fi.round(), fj.round());
    if (fi - i0).abs() > 1e-9 || (fj - j1).abs() > 1e-9 {
        return Err(Error::InvalidConfig(format!(
            "step corner {:?} does not fall on a cell face of a {}x{} grid",
            step.corner,
            grid.nx(),
            grid.ny()
        )));
    }
    let (i0, j1) = (i0 as usize, j1 as usize);
    if i0 == 0 || i0 + GHOST > grid.nx() || j1 == 0 || j1 + GHOST > grid.ny() {
        return Err(Error::InvalidConfig("step corner too close to the domain edge".into()));
    }
    Ok(Some(Obstacle { i0, j1 }))
}

/// Resets the two fluid cells touching the step corner from above so that
/// their entropy `p/ρ^γ` and total enthalpy match the cell just upstream of
/// the corner, keeping pressure and flow direction.
pub fn corner_fix(obstacle: Obstacle, params: EulerParams) -> PostStep {
    let g = params.gas_gamma;
    Arc::new(move |st: &mut HermiteState2D| {
        let read = |st: &HermiteState2D, i: usize, j: usize| {
            let o = st.node(i as isize, j as isize);
            let u = &st.u[o..o + 4];
            let rho = u[0];
            let (vx, vy) = (u[1] / rho, u[2] / rho);
            let p = (g - 1.0) * (u[3] - 0.5 * rho * (vx * vx + vy * vy));
            (rho, vx, vy, p)
        };
        let (i0, j1) = (obstacle.i0, obstacle.j1);
        let (r_ref, vx_ref, vy_ref, p_ref) = read(st, i0 - 1, j1 - 1);
        if !(r_ref > 0.0 && p_ref > 0.0) {
            return;
        }
        let entropy = p_ref / r_ref.powf(g);
        let enthalpy = g / (g - 1.0) * p_ref / r_ref + 0.5 * (vx_ref * vx_ref + vy_ref * vy_ref);
        for (i, j) in [(i0 - 1, j1), (i0, j1)] {
            let (_, vx, vy, p) = read(st, i, j);
            if !(p > 0.0) {
                continue;
            }
            let rho = (p / entropy).powf(1.0 / g);
            let q2 = (2.0 * (enthalpy - g / (g - 1.0) * p / rho)).max(0.0);
            let speed = (vx * vx + vy * vy).sqrt();
            let (ex, ey) = if speed > 0.0 { (vx / speed, vy / speed) } else { (1.0, 0.0) };
            let q = q2.sqrt();
            let (nx, ny) = (q * ex, q * ey);
            let o = st.node(i as isize, j as isize);
            st.u[o] = rho;
            st.u[o + 1] = rho * nx;
            st.u[o + 2] = rho * ny;
            st.u[o + 3] = p / (g - 1.0) + 0.5 * rho * q2;
        }
    })
}

fn run_1d<P: LinePhysics<N>, const N: usize>(
    physics: P,
    problem: &Problem,
    grid: Grid1D,
    config: &SchemeConfig,
    t_end: f64,
) -> Result<RunOutput> {
    let state = initial_state_1d(problem, &grid);
    let mut sim = Simulation1D::<P, N>::new(physics, grid, problem.bc.clone(), *config, state)?;
    sim.fixed_alpha = problem.fixed_alpha;
    let start = Instant::now();
    sim.run(t_end)?;
    Ok(RunOutput {
        t: sim.t,
        steps: sim.steps,
        wall_seconds: start.elapsed().as_secs_f64(),
        solution: Solution::OneD { grid, state: sim.state },
        obstacle: None,
    })
}

fn run_2d<P: LinePhysics<N>, const N: usize>(
    physics: P,
    problem: &Problem,
    grid: Grid2D,
    config: &SchemeConfig,
    t_end: f64,
    post_step: Option<PostStep>,
) -> Result<RunOutput> {
    let state = initial_state_2d(problem, &grid);
    let obstacle = obstacle_for(problem, &grid)?;
    let mut sim = Simulation2D::<P, N>::new(physics, grid, problem.bc.clone(), *config, state)?;
    sim.fixed_alpha = problem.fixed_alpha.map(|a| [a, a]);
    sim.obstacle = obstacle;
    sim.post_step = post_step;
    let start = Instant::now();
    sim.run(t_end)?;
    Ok(RunOutput {
        t: sim.t,
        steps: sim.steps,
        wall_seconds: start.elapsed().as_secs_f64(),
        solution: Solution::TwoD { grid, state: sim.state },
        obstacle,
    })
}

/// Runs `problem` to `t_end` (its own final time when `None`) on an
/// `nx` (× `ny`) grid.
pub fn run_problem(problem: &Problem, nx: usize, ny: usize, config: &SchemeConfig, t_end: Option<f64>) -> Result<RunOutput> {
    let t_end = t_end.unwrap_or(problem.t_end);
    match (problem.domain, problem.model) {
        (Domain::Line { x }, model) => {
            let grid = Grid1D::new(x.0, x.1, nx)?;
            match model {
                Model::Scalar(f) => run_1d::<_, 1>(f, problem, grid, config, t_end),
                Model::Euler(p) => run_1d::<_, 3>(Euler(p), problem, grid, config, t_end),
            }
        }
        (Domain::Rect { x, y }, model) => {
            let grid = Grid2D::new(Grid1D::new(x.0, x.1, nx)?, Grid1D::new(y.0, y.1, ny)?);
            match model {
                Model::Scalar(f) => run_2d::<_, 1>(f, problem, grid, config, t_end, None),
                Model::Euler(p) => {
                    let hook = obstacle_for(problem, &grid)?.map(|o| corner_fix(o, p));
                    run_2d::<_, 4>(Euler(p), problem, grid, config, t_end, hook)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_problem;

    #[test]
    fn forward_step_obstacle_indices() {
        let p = make_problem("forward-step").unwrap();
        let grid = Grid2D::new(Grid1D::new(0.0, 3.0, 240).unwrap(), Grid1D::new(0.0, 1.0, 80).unwrap());
        assert_eq!(obstacle_for(&p, &grid).unwrap(), Some(Obstacle { i0: 48, j1: 16 }));
        let bad = Grid2D::new(Grid1D::new(0.0, 3.0, 241).unwrap(), Grid1D::new(0.0, 1.0, 80).unwrap());
        assert!(obstacle_for(&p, &bad).is_err());
    }

    #[test]
    fn corner_fix_matches_reference_entropy() {
        let params = EulerParams::default();
        let p = make_problem("forward-step").unwrap();
        let grid = Grid2D::new(Grid1D::new(0.0, 3.0, 30).unwrap(), Grid1D::new(0.0, 1.0, 10).unwrap());
        let mut st = initial_state_2d(&p, &grid);
        let o = obstacle_for(&p, &grid).unwrap().unwrap();
        let k = st.node(o.i0 as isize, o.j1 as isize);
        // Same pressure and direction, wrong density and speed.
        let wrong = crate::euler::conserved_2d(2.1, 2.0, 0.0, 1.0, &params);
        st.u[k..k + 4].copy_from_slice(&wrong);
        corner_fix(o, params)(&mut st);
        let fixed = &st.u[k..k + 4];
        let r = st.node(o.i0 as isize - 1, o.j1 as isize - 1);
        let reference = &st.u[r..r + 4];
        for c in 0..4 {
            assert!((fixed[c] - reference[c]).abs() < 1e-12, "{c}");
        }
    }

    #[test]
    fn short_runs_complete() {
        let config = SchemeConfig::default();
        for (name, nx, ny) in [("burgers1d-smooth", 20, 1), ("lax", 40, 1), ("burgers2d-smooth", 12, 12), ("euler2d-smooth", 10, 10)] {
            let p = make_problem(name).unwrap();
            let out = run_problem(&p, nx, ny, &config, Some(0.02)).unwrap();
            assert_eq!(out.t, 0.02);
            assert!(out.steps > 0);
        }
    }
}
