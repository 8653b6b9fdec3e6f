//! Ghost-layer filling.
//!
//! Every rule works on a single grid line: the interior nodes `0..n` of the
//! line plus [`GHOST`] ghost nodes on each side, for the solution, the
//! derivative along the line (normal) and optionally the derivative across
//! it (transverse). Parities under reflection:
//!
//! | quantity              | parity                                       |
//! |-----------------------|----------------------------------------------|
//! | solution component    | odd for the wall-normal momentum, else even  |
//! | normal derivative     | opposite of its solution component           |
//! | transverse derivative | same as its solution component               |

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Axis, Grid1D, Grid2D, GHOST};
use crate::state::{HermiteState1D, HermiteState2D};

pub const MAX_COMPONENTS: usize = 4;

/// Solution and derivative values at one point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PointData {
    pub u: [f64; MAX_COMPONENTS],
    pub du_dx: [f64; MAX_COMPONENTS],
    pub du_dy: [f64; MAX_COMPONENTS],
}

impl PointData {
    pub fn constant(u: &[f64]) -> Self {
        let mut g = Self::default();
        g.u[..u.len()].copy_from_slice(u);
        g
    }
}

/// Time-dependent ghost state `(x, y, t) -> value`.
pub type StateFn = Arc<dyn Fn(f64, f64, f64) -> PointData + Send + Sync>;

#[derive(Clone)]
pub enum BoundaryKind {
    Periodic,
    Reflective,
    /// Zeroth-order extrapolation of all fields.
    Outflow,
    /// Fixed conserved state with zero derivatives.
    Inflow(Vec<f64>),
    Prescribed(StateFn),
    /// `before` applies where the coordinate along the side is below `at`,
    /// `after` elsewhere.
    Split {
        at: f64,
        before: Box<BoundaryKind>,
        after: Box<BoundaryKind>,
    },
}

impl fmt::Debug for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryKind::Periodic => f.write_str("Periodic"),
            BoundaryKind::Reflective => f.write_str("Reflective"),
            BoundaryKind::Outflow => f.write_str("Outflow"),
            BoundaryKind::Inflow(s) => f.debug_tuple("Inflow").field(s).finish(),
            BoundaryKind::Prescribed(_) => f.write_str("Prescribed(..)"),
            BoundaryKind::Split { at, before, after } => f
                .debug_struct("Split")
                .field("at", at)
                .field("before", before)
                .field("after", after)
                .finish(),
        }
    }
}

impl BoundaryKind {
    /// The rule in effect at coordinate `s` along the side.
    pub fn resolve(&self, s: f64) -> &BoundaryKind {
        match self {
            BoundaryKind::Split { at, before, after } => {
                if s < *at {
                    before.resolve(s)
                } else {
                    after.resolve(s)
                }
            }
            other => other,
        }
    }

    fn is_periodic(&self) -> bool {
        matches!(self, BoundaryKind::Periodic)
    }

    fn has_periodic_part(&self) -> bool {
        match self {
            BoundaryKind::Periodic => true,
            BoundaryKind::Split { before, after, .. } => {
                before.has_periodic_part() || after.has_periodic_part()
            }
            _ => false,
        }
    }
}

/// Per-side rules. `y_lo`/`y_hi` are ignored in one dimension.
#[derive(Debug, Clone)]
pub struct BoundaryCondition {
    pub x_lo: BoundaryKind,
    pub x_hi: BoundaryKind,
    pub y_lo: BoundaryKind,
    pub y_hi: BoundaryKind,
}

impl BoundaryCondition {
    pub fn periodic() -> Self {
        Self::uniform(BoundaryKind::Periodic)
    }

    pub fn uniform(kind: BoundaryKind) -> Self {
        Self {
            x_lo: kind.clone(),
            x_hi: kind.clone(),
            y_lo: kind.clone(),
            y_hi: kind,
        }
    }

    pub fn one_d(lo: BoundaryKind, hi: BoundaryKind) -> Self {
        Self {
            x_lo: lo,
            x_hi: hi,
            y_lo: BoundaryKind::Periodic,
            y_hi: BoundaryKind::Periodic,
        }
    }

    pub fn side(&self, axis: Axis) -> (&BoundaryKind, &BoundaryKind) {
        match axis {
            Axis::X => (&self.x_lo, &self.x_hi),
            Axis::Y => (&self.y_lo, &self.y_hi),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (axis, (lo, hi)) in [(Axis::X, self.side(Axis::X)), (Axis::Y, self.side(Axis::Y))] {
            if (lo.has_periodic_part() || hi.has_periodic_part())
                && !(lo.is_periodic() && hi.is_periodic()) {
                    return Err(Error::InvalidConfig(format!(
                        "periodic boundary on {axis:?} must be paired on both sides"
                    )));
                }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lo,
    Hi,
}

/// Location information for evaluating prescribed data on a line.
#[derive(Debug, Clone, Copy)]
pub struct LineGeometry {
    pub axis: Axis,
    /// Coordinate of node `k` along the line is `origin + (k + 0.5) * h`.
    pub origin: f64,
    pub h: f64,
    /// Coordinate of the line in the other direction.
    pub transverse: f64,
}

impl LineGeometry {
    fn point(&self, k: isize) -> (f64, f64) {
        let s = self.origin + (k as f64 + 0.5) * self.h;
        match self.axis {
            Axis::X => (s, self.transverse),
            Axis::Y => (self.transverse, s),
        }
    }
}

/// Mutable view of one line in node-major storage.
pub struct LineView<'a> {
    pub u: &'a mut [f64],
    pub normal: &'a mut [f64],
    pub transverse: Option<&'a mut [f64]>,
    /// Offset of interior node 0, in nodes.
    pub base: usize,
    /// Distance between consecutive line nodes, in nodes.
    pub stride: usize,
    pub ncomp: usize,
    /// Number of interior nodes.
    pub n: usize,
}

impl LineView<'_> {
    #[inline(always)]
    fn off(&self, k: isize) -> usize {
        ((self.base as isize + k * self.stride as isize) as usize) * self.ncomp
    }
}

/// Fills the [`GHOST`] ghost nodes on one side of a line.
pub fn fill_line_side(
    line: &mut LineView<'_>,
    side: Side,
    kind: &BoundaryKind,
    normal_momentum: Option<usize>,
    geom: &LineGeometry,
    t: f64,
) {
    let n = line.n as isize;
    let nc = line.ncomp;
    let kind = kind.resolve(geom.transverse);
    for g in 1..=GHOST as isize {
        let ghost = match side {
            Side::Lo => -g,
            Side::Hi => n - 1 + g,
        };
        let dst = line.off(ghost);
        match kind {
            BoundaryKind::Periodic => {
                let src = line.off(if ghost < 0 { ghost + n } else { ghost - n });
                copy_node(line, src, dst, nc, [1.0; MAX_COMPONENTS], [1.0; MAX_COMPONENTS], [1.0; MAX_COMPONENTS]);
            }
            BoundaryKind::Outflow => {
                let src = line.off(if ghost < 0 { 0 } else { n - 1 });
                copy_node(line, src, dst, nc, [1.0; MAX_COMPONENTS], [1.0; MAX_COMPONENTS], [1.0; MAX_COMPONENTS]);
            }
            BoundaryKind::Reflective => {
                let src = line.off(if ghost < 0 { g - 1 } else { n - g });
                let mut pu = [1.0; MAX_COMPONENTS];
                if let Some(m) = normal_momentum {
                    pu[m] = -1.0;
                }
                let pn = pu.map(|p| -p);
                copy_node(line, src, dst, nc, pu, pn, pu);
            }
            BoundaryKind::Inflow(state) => {
                line.u[dst..dst + nc].copy_from_slice(&state[..nc]);
                line.normal[dst..dst + nc].fill(0.0);
                if let Some(t) = line.transverse.as_deref_mut() {
                    t[dst..dst + nc].fill(0.0);
                }
            }
            BoundaryKind::Prescribed(f) => {
                let (x, y) = geom.point(ghost);
                let gv = f(x, y, t);
                let (dn, dt) = match geom.axis {
                    Axis::X => (gv.du_dx, gv.du_dy),
                    Axis::Y => (gv.du_dy, gv.du_dx),
                };
                line.u[dst..dst + nc].copy_from_slice(&gv.u[..nc]);
                line.normal[dst..dst + nc].copy_from_slice(&dn[..nc]);
                if let Some(tr) = line.transverse.as_deref_mut() {
                    tr[dst..dst + nc].copy_from_slice(&dt[..nc]);
                }
            }
            BoundaryKind::Split { .. } => unreachable!("resolved above"),
        }
    }
}

#[inline(always)]
fn copy_node(
    line: &mut LineView<'_>,
    src: usize,
    dst: usize,
    nc: usize,
    pu: [f64; MAX_COMPONENTS],
    pn: [f64; MAX_COMPONENTS],
    pt: [f64; MAX_COMPONENTS],
) {
    for c in 0..nc {
        line.u[dst + c] = pu[c] * line.u[src + c];
        line.normal[dst + c] = pn[c] * line.normal[src + c];
        if let Some(t) = line.transverse.as_deref_mut() {
            t[dst + c] = pt[c] * t[src + c];
        }
    }
}

fn check_interior<L: FnOnce() -> String>(
    data: &[f64],
    ncomp: usize,
    offsets: impl Iterator<Item = (usize, L)>,
    field: &'static str,
) -> Result<()> {
    for (off, label) in offsets {
        for c in 0..ncomp {
            if !data[off + c].is_finite() {
                return Err(Error::NonFinite {
                    field,
                    component: c,
                    index: label(),
                    context: "boundary fill".into(),
                });
            }
        }
    }
    Ok(())
}

/// Fills both ghost layers of a 1D state at time `t`.
pub fn apply_boundary_1d(
    state: &mut HermiteState1D,
    grid: &Grid1D,
    bc: &BoundaryCondition,
    normal_momentum: Option<usize>,
    t: f64,
) -> Result<()> {
    let nc = state.ncomp;
    for (field, data) in [("u", &state.u), ("v", &state.v)] {
        check_interior(data, nc, (0..state.nx).map(|i| ((i + GHOST) * nc, move || format!("i={i}"))), field)?;
    }
    let geom = LineGeometry {
        axis: Axis::X,
        origin: grid.x_min,
        h: grid.dx,
        transverse: 0.0,
    };
    let mut line = LineView {
        u: &mut state.u,
        normal: &mut state.v,
        transverse: None,
        base: GHOST,
        stride: 1,
        ncomp: nc,
        n: state.nx,
    };
    fill_line_side(&mut line, Side::Lo, &bc.x_lo, normal_momentum, &geom, t);
    fill_line_side(&mut line, Side::Hi, &bc.x_hi, normal_momentum, &geom, t);
    Ok(())
}

/// Fills the edge ghost layers of a 2D state (corners are never read).
pub fn apply_boundary_2d(
    state: &mut HermiteState2D,
    grid: &Grid2D,
    bc: &BoundaryCondition,
    normal_momentum: impl Fn(Axis) -> Option<usize>,
    t: f64,
) -> Result<()> {
    let (nx, ny, nc) = (state.nx, state.ny, state.ncomp);
    let rs = state.row_stride();
    let interior = || {
        (0..ny).flat_map(move |j| {
            (0..nx).map(move |i| (((j + GHOST) * rs + i + GHOST) * nc, move || format!("i={i}, j={j}")))
        })
    };
    check_interior(&state.u, nc, interior(), "u")?;
    check_interior(&state.v, nc, interior(), "v")?;
    check_interior(&state.w, nc, interior(), "w")?;

    let mx = normal_momentum(Axis::X);
    for j in 0..ny {
        let geom = LineGeometry {
            axis: Axis::X,
            origin: grid.x.x_min,
            h: grid.dx(),
            transverse: grid.y.x(j as isize),
        };
        let mut line = LineView {
            u: &mut state.u,
            normal: &mut state.v,
            transverse: Some(&mut state.w),
            base: (j + GHOST) * rs + GHOST,
            stride: 1,
            ncomp: nc,
            n: nx,
        };
        fill_line_side(&mut line, Side::Lo, &bc.x_lo, mx, &geom, t);
        fill_line_side(&mut line, Side::Hi, &bc.x_hi, mx, &geom, t);
    }
    let my = normal_momentum(Axis::Y);
    for i in 0..nx {
        let geom = LineGeometry {
            axis: Axis::Y,
            origin: grid.y.x_min,
            h: grid.dy(),
            transverse: grid.x.x(i as isize),
        };
        let mut line = LineView {
            u: &mut state.u,
            normal: &mut state.w,
            transverse: Some(&mut state.v),
            base: GHOST * rs + i + GHOST,
            stride: rs,
            ncomp: nc,
            n: ny,
        };
        fill_line_side(&mut line, Side::Lo, &bc.y_lo, my, &geom, t);
        fill_line_side(&mut line, Side::Hi, &bc.y_hi, my, &geom, t);
    }
    Ok(())
}
