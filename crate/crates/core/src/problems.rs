//! Benchmark problems: initial data, boundary rules, final times and exact
//! solutions or reference recipes.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::boundary::{BoundaryCondition, BoundaryKind, PointData, StateFn};
use crate::error::{Error, Result};
use crate::euler::{conserved_2d, EulerParams};
use crate::grid::Axis;
use crate::physics::ScalarFlux;

/// Flux model of a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Scalar(ScalarFlux),
    Euler(EulerParams),
}

impl Model {
    pub fn components(&self, dims: usize) -> usize {
        match self {
            Model::Scalar(_) => 1,
            Model::Euler(_) => dims + 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Line { x: (f64, f64) },
    Rect { x: (f64, f64), y: (f64, f64) },
}

impl Domain {
    pub fn dims(&self) -> usize {
        match self {
            Domain::Line { .. } => 1,
            Domain::Rect { .. } => 2,
        }
    }
}

/// Initial conserved state and its derivatives at `(x, y)`.
pub type InitialFn = Arc<dyn Fn(f64, f64) -> PointData + Send + Sync>;
/// Exact conserved state at `(x, y, t)`.
pub type ExactFn = Arc<dyn Fn(f64, f64, f64) -> [f64; 4] + Send + Sync>;

/// Reference solution computed by WENO-JS on a fine grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRecipe {
    pub nx: usize,
}

/// Solid block `x >= corner.0, y <= corner.1` with its corner treatment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub corner: (f64, f64),
}

#[derive(Clone)]
pub struct Problem {
    pub name: &'static str,
    pub title: &'static str,
    pub model: Model,
    pub domain: Domain,
    pub bc: BoundaryCondition,
    pub t_end: f64,
    pub initial: InitialFn,
    pub exact: Option<ExactFn>,
    pub reference: Option<ReferenceRecipe>,
    /// Wave-speed bound used for the whole run.
    pub fixed_alpha: Option<f64>,
    pub step: Option<Step>,
    /// Smooth accuracy test (errors are measured against `exact`).
    pub accuracy_test: bool,
    pub default_nx: usize,
    pub default_ny: usize,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("model", &self.model)
            .field("domain", &self.domain)
            .field("bc", &self.bc)
            .field("t_end", &self.t_end)
            .field("exact", &self.exact.is_some())
            .field("reference", &self.reference)
            .field("fixed_alpha", &self.fixed_alpha)
            .field("step", &self.step)
            .finish()
    }
}

impl Problem {
    pub fn dims(&self) -> usize {
        self.domain.dims()
    }

    pub fn components(&self) -> usize {
        self.model.components(self.dims())
    }
}

pub const PROBLEM_NAMES: [&str; 13] = [
    "burgers1d-smooth",
    "euler1d-smooth",
    "burgers1d-shock",
    "buckley-leverett",
    "lax",
    "shu-osher",
    "blast",
    "burgers2d-smooth",
    "euler2d-smooth",
    "burgers2d-shock",
    "double-mach",
    "forward-step",
    "advection1d",
];

pub fn make_problem(name: &str) -> Result<Problem> {
    let p = match name {
        "burgers1d-smooth" => burgers_1d("burgers1d-smooth", "Burgers 1D, smooth", 0.5 / PI, true),
        "burgers1d-shock" => burgers_1d("burgers1d-shock", "Burgers 1D, shock", 1.5 / PI, false),
        "euler1d-smooth" => euler_1d_smooth(),
        "buckley-leverett" => buckley_leverett(),
        "lax" => riemann_1d(
            "lax",
            "Lax shock tube",
            (-0.5, 0.5),
            0.16,
            200,
            Arc::new(|x| if x < 0.0 { (0.445, 0.698, 3.528) } else { (0.5, 0.0, 0.571) }),
            BoundaryKind::Outflow,
            BoundaryKind::Outflow,
        ),
        "shu-osher" => {
            let params = EulerParams::default();
            let left = prim_1d(3.857143, 2.629369, 10.333333, &params);
            let mut p = riemann_1d(
                "shu-osher",
                "Shu-Osher shock/entropy-wave interaction",
                (-5.0, 5.0),
                1.8,
                400,
                Arc::new(|x| {
                    if x < -4.0 {
                        (3.857143, 2.629369, 10.333333)
                    } else {
                        (1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
                    }
                }),
                BoundaryKind::Inflow(left.to_vec()),
                BoundaryKind::Outflow,
            );
            // The density wave is smooth; its derivative is part of the data.
            p.initial = Arc::new(move |x, _| {
                if x < -4.0 {
                    PointData::constant(&left)
                } else {
                    let rho = 1.0 + 0.2 * (5.0 * x).sin();
                    let drho = (5.0 * x).cos();
                    let mut d = PointData::constant(&prim_1d(rho, 0.0, 1.0, &params));
                    d.du_dx[0] = drho;
                    d
                }
            });
            p
        }
        "blast" => riemann_1d(
            "blast",
            "Interacting blast waves",
            (0.0, 1.0),
            0.038,
            800,
            Arc::new(|x| {
                if x < 0.1 {
                    (1.0, 0.0, 1e3)
                } else if x < 0.9 {
                    (1.0, 0.0, 1e-2)
                } else {
                    (1.0, 0.0, 1e2)
                }
            }),
            BoundaryKind::Reflective,
            BoundaryKind::Reflective,
        ),
        "burgers2d-smooth" => burgers_2d("burgers2d-smooth", "Burgers 2D, smooth", 0.5 / PI, true),
        "burgers2d-shock" => burgers_2d("burgers2d-shock", "Burgers 2D, shock", 1.5 / PI, false),
        "euler2d-smooth" => euler_2d_smooth(),
        "double-mach" => double_mach(),
        "forward-step" => forward_step(),
        "advection1d" => advection_1d(),
        _ => {
            return Err(Error::UnknownProblem {
                name: name.to_string(),
                valid: PROBLEM_NAMES.to_vec(),
            })
        }
    };
    Ok(p)
}

/// `u = 0.5 + sin(k s)` evolved by `u_t + (u²/2)_s = 0` to time `t`, via the
/// Lax-Oleinik minimization (exact also after shocks form).
pub fn burgers_sine_exact(s: f64, t: f64, k: f64) -> f64 {
    let u0 = |y: f64| 0.5 + (k * y).sin();
    if t == 0.0 {
        return u0(s);
    }
    // Foot points y solve y + t u0(y) = s, with y in [s - 1.5t, s + 0.5t].
    let g = |y: f64| y + t * u0(y) - s;
    let dg = |y: f64| 1.0 + t * k * (k * y).cos();
    let primitive = |y: f64| 0.5 * y - (k * y).cos() / k;
    let action = |y: f64| primitive(y) + (s - y) * (s - y) / (2.0 * t);
    let (lo, hi) = (s - 1.5 * t - 1e-12, s + 0.5 * t + 1e-12);
    let samples = 256;
    let h = (hi - lo) / samples as f64;
    let mut best: Option<(f64, f64)> = None;
    let mut a = lo;
    let mut ga = g(a);
    for m in 1..=samples {
        let b = if m == samples { hi } else { lo + m as f64 * h };
        let gb = g(b);
        if ga == 0.0 || ga.signum() != gb.signum() {
            let y = refine_root(&g, &dg, a, b);
            let val = action(y);
            if best.is_none_or(|(_, v)| val < v) {
                best = Some((y, val));
            }
        }
        a = b;
        ga = gb;
    }
    let y = best.map(|(y, _)| y).unwrap_or(s - t * u0(s));
    (s - y) / t
}

/// Safeguarded Newton iteration on a bracketing interval.
fn refine_root(g: &impl Fn(f64) -> f64, dg: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(a);
    if ga == 0.0 {
        return a;
    }
    let mut y = 0.5 * (a + b);
    for _ in 0..100 {
        let gy = g(y);
        if gy == 0.0 {
            return y;
        }
        if gy.signum() == ga.signum() {
            a = y;
        } else {
            b = y;
        }
        let d = dg(y);
        let newton = y - gy / d;
        let next = if d != 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - y).abs() <= 1e-16 * (1.0 + y.abs()) {
            return next;
        }
        y = next;
    }
    y
}

fn scalar_point(u: f64, ux: f64, uy: f64) -> PointData {
    let mut d = PointData::default();
    d.u[0] = u;
    d.du_dx[0] = ux;
    d.du_dy[0] = uy;
    d
}

fn burgers_1d(name: &'static str, title: &'static str, t_end: f64, smooth: bool) -> Problem {
    Problem {
        name,
        title,
        model: Model::Scalar(ScalarFlux::Burgers),
        domain: Domain::Line { x: (0.0, 2.0) },
        bc: BoundaryCondition::periodic(),
        t_end,
        initial: Arc::new(|x, _| scalar_point(0.5 + (PI * x).sin(), PI * (PI * x).cos(), 0.0)),
        exact: Some(Arc::new(|x, _, t| [burgers_sine_exact(x, t, PI), 0.0, 0.0, 0.0])),
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: smooth,
        default_nx: if smooth { 80 } else { 200 },
        default_ny: 1,
    }
}

fn burgers_2d(name: &'static str, title: &'static str, t_end: f64, smooth: bool) -> Problem {
    let k = PI / 2.0;
    Problem {
        name,
        title,
        model: Model::Scalar(ScalarFlux::Burgers),
        domain: Domain::Rect {
            x: (0.0, 4.0),
            y: (0.0, 4.0),
        },
        bc: BoundaryCondition::periodic(),
        t_end,
        initial: Arc::new(move |x, y| {
            let d = k * (k * (x + y)).cos();
            scalar_point(0.5 + (k * (x + y)).sin(), d, d)
        }),
        // u depends on s = x + y only and solves 1D Burgers in s at time 2t.
        exact: Some(Arc::new(move |x, y, t| [burgers_sine_exact(x + y, 2.0 * t, k), 0.0, 0.0, 0.0])),
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: smooth,
        default_nx: 80,
        default_ny: 80,
    }
}

fn advection_1d() -> Problem {
    Problem {
        name: "advection1d",
        title: "Linear advection 1D",
        model: Model::Scalar(ScalarFlux::Linear { ax: 1.0, ay: 0.0 }),
        domain: Domain::Line { x: (0.0, 2.0) },
        bc: BoundaryCondition::periodic(),
        t_end: 2.0,
        initial: Arc::new(|x, _| scalar_point((PI * x).sin(), PI * (PI * x).cos(), 0.0)),
        exact: Some(Arc::new(|x, _, t| [(PI * (x - t)).sin(), 0.0, 0.0, 0.0])),
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: true,
        default_nx: 80,
        default_ny: 1,
    }
}

fn buckley_leverett() -> Problem {
    let flux = ScalarFlux::BuckleyLeverett;
    Problem {
        name: "buckley-leverett",
        title: "Buckley-Leverett",
        model: Model::Scalar(flux),
        domain: Domain::Line { x: (-1.0, 1.0) },
        bc: BoundaryCondition::one_d(BoundaryKind::Outflow, BoundaryKind::Outflow),
        t_end: 0.4,
        initial: Arc::new(|x, _| scalar_point(if (-0.5..=0.0).contains(&x) { 1.0 } else { 0.0 }, 0.0, 0.0)),
        exact: None,
        reference: Some(ReferenceRecipe { nx: 2000 }),
        fixed_alpha: Some(flux.max_speed_on(0.0, 1.0, Axis::X)),
        step: None,
        accuracy_test: false,
        default_nx: 80,
        default_ny: 1,
    }
}

/// Conserved 1D state from `(ρ, μ, p)`.
pub fn prim_1d(rho: f64, vel: f64, p: f64, params: &EulerParams) -> [f64; 3] {
    crate::euler::conserved_1d(rho, vel, p, params)
}

type Primitive1D = Arc<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;

#[allow(clippy::too_many_arguments)]
fn riemann_1d(
    name: &'static str,
    title: &'static str,
    x: (f64, f64),
    t_end: f64,
    default_nx: usize,
    prim: Primitive1D,
    lo: BoundaryKind,
    hi: BoundaryKind,
) -> Problem {
    let params = EulerParams::default();
    Problem {
        name,
        title,
        model: Model::Euler(params),
        domain: Domain::Line { x },
        bc: BoundaryCondition::one_d(lo, hi),
        t_end,
        initial: Arc::new(move |x, _| {
            let (r, v, p) = prim(x);
            PointData::constant(&prim_1d(r, v, p, &params))
        }),
        exact: None,
        reference: Some(ReferenceRecipe { nx: 2000 }),
        fixed_alpha: None,
        step: None,
        accuracy_test: false,
        default_nx,
        default_ny: 1,
    }
}

fn euler_1d_smooth() -> Problem {
    let params = EulerParams::default();
    let g1 = params.gas_gamma - 1.0;
    // ρ = 1 + 0.2 sin(π(x - t)), μ = p = 1: U = (ρ, ρ, 1/(γ-1) + ρ/2).
    let state = move |rho: f64| [rho, rho, 1.0 / g1 + 0.5 * rho, 0.0];
    Problem {
        name: "euler1d-smooth",
        title: "Euler 1D, smooth density wave",
        model: Model::Euler(params),
        domain: Domain::Line { x: (0.0, 2.0) },
        bc: BoundaryCondition::periodic(),
        t_end: 2.0,
        initial: Arc::new(move |x, _| {
            let mut d = PointData::default();
            d.u = state(1.0 + 0.2 * (PI * x).sin());
            let dr = 0.2 * PI * (PI * x).cos();
            d.du_dx = [dr, dr, 0.5 * dr, 0.0];
            d
        }),
        exact: Some(Arc::new(move |x, _, t| state(1.0 + 0.2 * (PI * (x - t)).sin()))),
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: true,
        default_nx: 80,
        default_ny: 1,
    }
}

fn euler_2d_smooth() -> Problem {
    let params = EulerParams::default();
    let g1 = params.gas_gamma - 1.0;
    // ρ = 1 + 0.2 sin(π(x + y - 2t)), μ = ν = p = 1.
    let state = move |rho: f64| [rho, rho, rho, 1.0 / g1 + rho];
    Problem {
        name: "euler2d-smooth",
        title: "Euler 2D, smooth density wave",
        model: Model::Euler(params),
        domain: Domain::Rect {
            x: (0.0, 2.0),
            y: (0.0, 2.0),
        },
        bc: BoundaryCondition::periodic(),
        t_end: 2.0,
        initial: Arc::new(move |x, y| {
            let mut d = PointData::default();
            d.u = state(1.0 + 0.2 * (PI * (x + y)).sin());
            let dr = 0.2 * PI * (PI * (x + y)).cos();
            d.du_dx = [dr; 4];
            d.du_dy = [dr; 4];
            d
        }),
        exact: Some(Arc::new(move |x, y, t| state(1.0 + 0.2 * (PI * (x + y - 2.0 * t)).sin()))),
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: true,
        default_nx: 80,
        default_ny: 80,
    }
}

/// Primitive state `(ρ, μ, ν, p)` behind a normal shock of Mach number
/// `mach` moving into gas at rest with `(ρ, p)`, the shock normal pointing
/// along `angle` (radians from the x-axis).
pub fn post_shock_state(mach: f64, rho: f64, p: f64, angle: f64, params: &EulerParams) -> [f64; 4] {
    let g = params.gas_gamma;
    let m2 = mach * mach;
    let rho2 = rho * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    let p2 = p * (1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0));
    let c = (g * p / rho).sqrt();
    let speed = mach * c * (1.0 - rho / rho2);
    [rho2, speed * angle.cos(), speed * angle.sin(), p2]
}

fn double_mach() -> Problem {
    let params = EulerParams::default();
    let post = post_shock_state(10.0, 1.4, 1.0, -PI / 6.0, &params);
    let post_u = conserved_2d(post[0], post[1], post[2], post[3], &params);
    let pre_u = conserved_2d(1.4, 0.0, 0.0, 1.0, &params);
    let sqrt3 = 3f64.sqrt();
    let x0 = 1.0 / 6.0;
    let top: StateFn = Arc::new(move |x, y, t| {
        let shock = x0 + (y + 20.0 * t) / sqrt3;
        PointData::constant(if x < shock { &post_u } else { &pre_u })
    });
    Problem {
        name: "double-mach",
        title: "Double Mach reflection",
        model: Model::Euler(params),
        domain: Domain::Rect {
            x: (0.0, 4.0),
            y: (0.0, 1.0),
        },
        bc: BoundaryCondition {
            x_lo: BoundaryKind::Inflow(post_u.to_vec()),
            x_hi: BoundaryKind::Outflow,
            y_lo: BoundaryKind::Split {
                at: x0,
                before: Box::new(BoundaryKind::Inflow(post_u.to_vec())),
                after: Box::new(BoundaryKind::Reflective),
            },
            y_hi: BoundaryKind::Prescribed(top),
        },
        t_end: 0.2,
        initial: Arc::new(move |x, y| PointData::constant(if x < x0 + y / sqrt3 { &post_u } else { &pre_u })),
        exact: None,
        reference: None,
        fixed_alpha: None,
        step: None,
        accuracy_test: false,
        default_nx: 480,
        default_ny: 120,
    }
}

fn forward_step() -> Problem {
    let params = EulerParams::default();
    let inflow = conserved_2d(1.4, 3.0, 0.0, 1.0, &params);
    Problem {
        name: "forward-step",
        title: "Mach 3 forward-facing step",
        model: Model::Euler(params),
        domain: Domain::Rect {
            x: (0.0, 3.0),
            y: (0.0, 1.0),
        },
        bc: BoundaryCondition {
            x_lo: BoundaryKind::Inflow(inflow.to_vec()),
            x_hi: BoundaryKind::Outflow,
            y_lo: BoundaryKind::Reflective,
            y_hi: BoundaryKind::Reflective,
        },
        t_end: 4.0,
        initial: Arc::new(move |_, _| PointData::constant(&inflow)),
        exact: None,
        reference: None,
        fixed_alpha: None,
        step: Some(Step { corner: (0.6, 0.2) }),
        accuracy_test: false,
        default_nx: 240,
        default_ny: 80,
    }
}
