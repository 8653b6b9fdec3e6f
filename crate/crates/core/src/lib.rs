//! Fifth-order finite-difference Hermite WENO scheme with a derivative
//! limiter (L-HWENO) for one- and two-dimensional conservation laws.

pub mod analysis;
pub mod boundary;
pub mod config;
pub mod driver;
pub mod error;
pub mod euler;
pub mod grid;
pub mod io;
pub mod limiter;
pub mod physics;
pub mod problems;
pub mod reconstruct;
pub mod solver;
pub mod state;
pub mod timestep;
pub mod weno;

pub use boundary::{BoundaryCondition, BoundaryKind, PointData};
pub use config::{LimiterMode, Scheme, SchemeConfig, TimeStepRule};
pub use error::{Error, Result};
pub use euler::{Euler, EulerParams};
pub use grid::{Axis, Grid1D, Grid2D, GHOST};
pub use physics::{LinePhysics, ScalarFlux};
pub use state::{HermiteState1D, HermiteState2D};
pub use solver::{Obstacle, Residual, Simulation1D, Simulation2D};
pub use driver::{run_problem, RunOutput, Solution};
pub use problems::{make_problem, Problem};
pub use analysis::{convergence_order, error_norms, RunReport};
pub use io::ReferenceField;
