//! Benchmark fixtures. The benches live in `benches/`.

use hweno_core::driver::{initial_state_1d, initial_state_2d};
use hweno_core::problems::{Domain, Model};
use hweno_core::{make_problem, Euler, Grid1D, Grid2D, SchemeConfig, Simulation1D, Simulation2D};

/// Euler 1D smooth density wave on `n` cells.
pub fn euler_1d(n: usize) -> Simulation1D<Euler, 3> {
    let p = make_problem("euler1d-smooth").expect("registered problem");
    let (Domain::Line { x }, Model::Euler(e)) = (p.domain, p.model) else {
        unreachable!("euler1d-smooth is a 1D Euler problem")
    };
    let grid = Grid1D::new(x.0, x.1, n).expect("valid grid");
    let state = initial_state_1d(&p, &grid);
    Simulation1D::new(Euler(e), grid, p.bc.clone(), SchemeConfig::default(), state).expect("valid setup")
}

/// Euler 2D smooth density wave on `n` x `n` cells.
pub fn euler_2d(n: usize) -> Simulation2D<Euler, 4> {
    let p = make_problem("euler2d-smooth").expect("registered problem");
    let (Domain::Rect { x, y }, Model::Euler(e)) = (p.domain, p.model) else {
        unreachable!("euler2d-smooth is a 2D Euler problem")
    };
    let grid = Grid2D::new(Grid1D::new(x.0, x.1, n).expect("valid grid"), Grid1D::new(y.0, y.1, n).expect("valid grid"));
    let state = initial_state_2d(&p, &grid);
    Simulation2D::new(Euler(e), grid, p.bc.clone(), SchemeConfig::default(), state).expect("valid setup")
}
