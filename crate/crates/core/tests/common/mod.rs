//! Exact-rational interpolation and integration oracle for the stencil
//! kernels. Polynomials are built from their defining conditions by solving
//! the linear system over the rationals, then evaluated, differentiated and
//! integrated exactly. Everything is in the cell coordinate `ξ = (x - x_i)/dx`.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite input")
}

pub fn qi(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients `c[k]` of `Σ c[k] ξ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn integral(&self, a: &Q, b: &Q) -> Q {
        let anti = Poly(
            std::iter::once(Q::zero())
                .chain(
                    self.0
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c / Q::from_integer(BigInt::from(k + 1))),
                )
                .collect(),
        );
        anti.eval(b) - anti.eval(a)
    }

    /// `Σ_{α≥1} ∫_{-1/2}^{1/2} (p^{(α)})² dξ`.
    pub fn smoothness(&self) -> Q {
        let (lo, hi) = (qi(-1, 2), qi(1, 2));
        let mut d = self.derivative();
        let mut total = Q::zero();
        while !d.0.is_empty() {
            total += d.mul(&d).integral(&lo, &hi);
            d = d.derivative();
        }
        total
    }
}

/// Row `[ξ^0, ξ^1, …]` of the functional `p ↦ p(x)`.
fn point_row(x: &Q, deg: usize) -> Vec<Q> {
    let mut row = Vec::with_capacity(deg + 1);
    let mut p = Q::one();
    for _ in 0..=deg {
        row.push(p.clone());
        p = &p * x;
    }
    row
}

fn derivative_row(x: &Q, deg: usize) -> Vec<Q> {
    let mut row = vec![Q::zero()];
    let mut p = Q::one();
    for k in 1..=deg {
        row.push(&p * Q::from_integer(BigInt::from(k)));
        p = &p * x;
    }
    row
}

/// Row of the functional `p ↦ ∫_{c-1/2}^{c+1/2} p`.
fn average_row(c: &Q, deg: usize) -> Vec<Q> {
    let (a, b) = (c - qi(1, 2), c + qi(1, 2));
    (0..=deg)
        .map(|k| {
            let mut coeffs = vec![Q::zero(); k + 1];
            coeffs[k] = Q::one();
            Poly(coeffs).integral(&a, &b)
        })
        .collect()
}

/// Row of `p ↦ ∫_{c-1/2}^{c+1/2} p' = p(c+1/2) - p(c-1/2)`.
fn derivative_average_row(c: &Q, deg: usize) -> Vec<Q> {
    let hi = point_row(&(c + qi(1, 2)), deg);
    let lo = point_row(&(c - qi(1, 2)), deg);
    hi.into_iter().zip(lo).map(|(a, b)| a - b).collect()
}

/// Gauss-Jordan elimination over the rationals.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular system");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in col..n {
                    let t = &factor * &a[col][k];
                    a[r][k] -= t;
                }
                let t = &factor * &b[col];
                b[r] -= t;
            }
        }
    }
    b
}

fn fit(rows: Vec<Vec<Q>>, rhs: Vec<Q>) -> Poly {
    Poly(solve(rows, rhs))
}

/// Flux candidates from node averages `f` and scaled derivative averages
/// `g = dx·h` on cells `-1, 0, 1`.
pub struct FluxOracle {
    pub p0: Poly,
    pub p1: Poly,
    pub p2: Poly,
}

impl FluxOracle {
    pub fn new(f: &[Q; 3], g: &[Q; 3]) -> Self {
        let c = [qi(-1, 1), qi(0, 1), qi(1, 1)];
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..3 {
            rows.push(average_row(&c[k], 5));
            rhs.push(f[k].clone());
            rows.push(derivative_average_row(&c[k], 5));
            rhs.push(g[k].clone());
        }
        let p0 = fit(rows, rhs);
        let p1 = fit(
            vec![average_row(&c[0], 2), average_row(&c[1], 2), derivative_average_row(&c[1], 2)],
            vec![f[0].clone(), f[1].clone(), g[1].clone()],
        );
        let p2 = fit(
            vec![average_row(&c[1], 2), average_row(&c[2], 2), derivative_average_row(&c[1], 2)],
            vec![f[1].clone(), f[2].clone(), g[1].clone()],
        );
        Self { p0, p1, p2 }
    }

    /// `(p0, p1, p2, p0')` at the right face, the derivative in `ξ` units.
    pub fn face_values(&self) -> [Q; 4] {
        let x = qi(1, 2);
        [
            self.p0.eval(&x),
            self.p1.eval(&x),
            self.p2.eval(&x),
            self.p0.derivative().eval(&x),
        ]
    }

    pub fn smoothness(&self) -> [Q; 3] {
        [self.p0.smoothness(), self.p1.smoothness(), self.p2.smoothness()]
    }
}

/// Limiter candidates from point values `u` at nodes `-1, 0, 1` and scaled
/// derivatives `w = dx·v` at nodes `-1, 1`.
pub struct LimiterOracle {
    pub q0: Poly,
    pub q1: Poly,
    pub q2: Poly,
}

impl LimiterOracle {
    pub fn new(u: &[Q; 3], w_left: &Q, w_right: &Q) -> Self {
        let x = [qi(-1, 1), qi(0, 1), qi(1, 1)];
        let q0 = fit(
            vec![
                point_row(&x[0], 4),
                point_row(&x[1], 4),
                point_row(&x[2], 4),
                derivative_row(&x[0], 4),
                derivative_row(&x[2], 4),
            ],
            vec![u[0].clone(), u[1].clone(), u[2].clone(), w_left.clone(), w_right.clone()],
        );
        let q1 = fit(
            vec![point_row(&x[0], 1), point_row(&x[1], 1)],
            vec![u[0].clone(), u[1].clone()],
        );
        let q2 = fit(
            vec![point_row(&x[1], 1), point_row(&x[2], 1)],
            vec![u[1].clone(), u[2].clone()],
        );
        Self { q0, q1, q2 }
    }

    /// Derivatives at the center node in `ξ` units.
    pub fn center_slopes(&self) -> [Q; 3] {
        let z = Q::zero();
        [
            self.q0.derivative().eval(&z),
            self.q1.derivative().eval(&z),
            self.q2.derivative().eval(&z),
        ]
    }

    pub fn smoothness(&self) -> [Q; 3] {
        [self.q0.smoothness(), self.q1.smoothness(), self.q2.smoothness()]
    }
}

/// `|computed - exact| / max(|exact|, scale)`, evaluated exactly.
pub fn rel_err(computed: f64, exact: &Q, scale: f64) -> f64 {
    let diff = (q(computed) - exact).abs();
    let denom = exact.abs().max(q(scale));
    (diff / denom).to_f64().unwrap_or(f64::INFINITY)
}
