//! Uniform cell-centered grids.

use crate::error::{Error, Result};

/// Number of ghost points stored on each side of every axis.
pub const GHOST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// `0` for x, `1` for y.
    #[inline(always)]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, nx: usize) -> Result<Self> {
        if nx < 6 {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least 6 cells, got {nx}"
            )));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "grid extent [{x_min}, {x_max}] is empty"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            nx,
            dx: (x_max - x_min) / nx as f64,
        })
    }

    /// Center of cell `i`, 0-based; negative and `>= nx` indices give ghost
    /// locations.
    #[inline]
    pub fn x(&self, i: isize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.nx as isize).map(|i| self.x(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn nx(&self) -> usize {
        self.x.nx
    }

    pub fn ny(&self) -> usize {
        self.y.nx
    }

    pub fn dx(&self) -> f64 {
        self.x.dx
    }

    pub fn dy(&self) -> f64 {
        self.y.dx
    }

    pub fn axis(&self, axis: Axis) -> &Grid1D {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn cells(&self) -> usize {
        self.x.nx * self.y.nx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_are_offset_by_half_spacing() {
        let g = Grid1D::new(0.0, 2.0, 10).unwrap();
        assert_eq!(g.dx, 0.2);
        assert!((g.x(0) - 0.1).abs() < 1e-15);
        assert!((g.x(9) - 1.9).abs() < 1e-15);
        assert!((g.x(-1) + 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_or_empty_grids() {
        assert!(Grid1D::new(0.0, 1.0, 5).is_err());
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(0.0, f64::NAN, 10).is_err());
    }
}
