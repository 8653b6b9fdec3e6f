//! Point values of the solution and its derivatives, stored node-major with
//! a ghost margin of [`GHOST`] nodes per side per axis.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, Grid2D, GHOST};

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteState1D {
    pub ncomp: usize,
    pub nx: usize,
    /// Solution values, `(i + GHOST) * ncomp + c`.
    pub u: Vec<f64>,
    /// x-derivative values, same layout.
    pub v: Vec<f64>,
}

impl HermiteState1D {
    pub fn zeros(grid: &Grid1D, ncomp: usize) -> Self {
        let len = (grid.nx + 2 * GHOST) * ncomp;
        Self {
            ncomp,
            nx: grid.nx,
            u: vec![0.0; len],
            v: vec![0.0; len],
        }
    }

    #[inline(always)]
    pub fn at(&self, i: isize, c: usize) -> usize {
        (i + GHOST as isize) as usize * self.ncomp + c
    }

    pub fn u_at(&self, i: isize, c: usize) -> f64 {
        self.u[self.at(i, c)]
    }

    pub fn v_at(&self, i: isize, c: usize) -> f64 {
        self.v[self.at(i, c)]
    }

    /// Interior values of component `c`.
    pub fn component(&self, c: usize) -> Vec<f64> {
        (0..self.nx as isize).map(|i| self.u_at(i, c)).collect()
    }

    /// Sum of interior values per component.
    pub fn totals(&self) -> Vec<f64> {
        (0..self.ncomp)
            .map(|c| (0..self.nx as isize).map(|i| self.u_at(i, c)).sum())
            .collect()
    }

    pub fn check_finite(&self, context: &str) -> Result<()> {
        for (field, data) in [("u", &self.u), ("v", &self.v)] {
            for i in 0..self.nx {
                for c in 0..self.ncomp {
                    let k = (i + GHOST) * self.ncomp + c;
                    if !data[k].is_finite() {
                        return Err(Error::NonFinite {
                            field,
                            component: c,
                            index: format!("i={i}"),
                            context: context.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteState2D {
    pub ncomp: usize,
    pub nx: usize,
    pub ny: usize,
    /// Solution values, `((j + GHOST) * (nx + 2 GHOST) + i + GHOST) * ncomp + c`.
    pub u: Vec<f64>,
    /// x-derivative values.
    pub v: Vec<f64>,
    /// y-derivative values.
    pub w: Vec<f64>,
}

impl HermiteState2D {
    pub fn zeros(grid: &Grid2D, ncomp: usize) -> Self {
        let len = (grid.nx() + 2 * GHOST) * (grid.ny() + 2 * GHOST) * ncomp;
        Self {
            ncomp,
            nx: grid.nx(),
            ny: grid.ny(),
            u: vec![0.0; len],
            v: vec![0.0; len],
            w: vec![0.0; len],
        }
    }

    #[inline(always)]
    pub fn row_stride(&self) -> usize {
        self.nx + 2 * GHOST
    }

    /// Offset of node `(i, j)` (ghost indices allowed).
    #[inline(always)]
    pub fn node(&self, i: isize, j: isize) -> usize {
        ((j + GHOST as isize) as usize * self.row_stride() + (i + GHOST as isize) as usize) * self.ncomp
    }

    pub fn u_at(&self, i: isize, j: isize, c: usize) -> f64 {
        self.u[self.node(i, j) + c]
    }

    pub fn component(&self, c: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny as isize {
            for i in 0..self.nx as isize {
                out.push(self.u_at(i, j, c));
            }
        }
        out
    }

    pub fn totals(&self) -> Vec<f64> {
        let mut t = vec![0.0; self.ncomp];
        for j in 0..self.ny as isize {
            for i in 0..self.nx as isize {
                let k = self.node(i, j);
                for (c, acc) in t.iter_mut().enumerate() {
                    *acc += self.u[k + c];
                }
            }
        }
        t
    }

    pub fn check_finite(&self, context: &str) -> Result<()> {
        for (field, data) in [("u", &self.u), ("v", &self.v), ("w", &self.w)] {
            for j in 0..self.ny as isize {
                for i in 0..self.nx as isize {
                    let k = self.node(i, j);
                    for c in 0..self.ncomp {
                        if !data[k + c].is_finite() {
                            return Err(Error::NonFinite {
                                field,
                                component: c,
                                index: format!("i={i}, j={j}"),
                                context: context.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
