//! Error norms, convergence tables and comparison with reference solutions.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::{Scheme, SchemeConfig};
use crate::driver::{run_problem, RunOutput, Solution};
use crate::error::{Error, Result};
use crate::io::{fmt_f64, ReferenceField};
use crate::problems::Problem;

/// Mean absolute error and maximum error over paired samples.
pub fn error_norms(numeric: &[f64], exact: &[f64]) -> Result<(f64, f64)> {
    if numeric.len() != exact.len() {
        return Err(Error::ExtentMismatch(format!(
            "numeric field has {} values, exact field {}",
            numeric.len(),
            exact.len()
        )));
    }
    if numeric.is_empty() {
        return Err(Error::ExtentMismatch("empty fields".into()));
    }
    let (sum, max) = numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).abs())
        .fold((0.0, 0.0f64), |(s, m), e| (s + e, m.max(e)));
    Ok((sum / numeric.len() as f64, max))
}

/// `log2(e_{k-1} / e_k)` for successive grids halving the spacing.
pub fn convergence_order(errors: &[f64]) -> Result<Vec<f64>> {
    if let Some(&bad) = errors.iter().find(|e| !(**e > 0.0)) {
        return Err(Error::NonPositiveError(bad, bad));
    }
    Ok(errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect())
}

/// Errors of a run with an exact solution, measured on component 0 over
/// the fluid cells.
pub fn exact_errors(problem: &Problem, out: &RunOutput) -> Result<(f64, f64)> {
    let exact = problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::MissingReference(format!("{} has no exact solution", problem.name)))?;
    let numeric = out.solution.component(0);
    let exact_vals: Vec<f64> = out.solution.points().into_iter().map(|(x, y)| exact(x, y, out.t)[0]).collect();
    error_norms(&numeric, &exact_vals)
}

/// How a reference value was matched to a coarse node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Every coarse node coincides with a reference node.
    Exact,
    /// At least one coarse node uses the nearest reference node (the mean
    /// of the two nearest when they are equidistant).
    Nearest,
}

impl Sampling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sampling::Exact => "exact",
            Sampling::Nearest => "nearest",
        }
    }
}

/// Reference values of component `c` at the coarse `points`.
pub fn sample_reference(reference: &ReferenceField, points: &[f64], c: usize) -> Result<(Vec<f64>, Sampling)> {
    let xs = &reference.x;
    if xs.len() < 2 {
        return Err(Error::MissingReference("reference has fewer than two nodes".into()));
    }
    let vals = reference
        .components
        .get(c)
        .ok_or_else(|| Error::ExtentMismatch(format!("reference has no component {c}")))?;
    let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    let tol = 1e-9 * h;
    let mut sampling = Sampling::Exact;
    let mut out = Vec::with_capacity(points.len());
    for &x in points {
        let k = xs.partition_point(|&r| r < x);
        let right = k.min(xs.len() - 1);
        let left = k.saturating_sub(1);
        let (dl, dr) = ((x - xs[left]).abs(), (xs[right] - x).abs());
        let value = if dr <= tol {
            vals[right]
        } else if dl <= tol {
            vals[left]
        } else {
            sampling = Sampling::Nearest;
            if (dl - dr).abs() <= tol {
                0.5 * (vals[left] + vals[right])
            } else if dl < dr {
                vals[left]
            } else {
                vals[right]
            }
        };
        out.push(value);
    }
    Ok((out, sampling))
}

/// Distance of a 1D run to a reference field, on component 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub l1: f64,
    pub linf: f64,
    pub sampling: Sampling,
}

pub fn compare_to_reference(solution: &Solution, reference: &ReferenceField) -> Result<Comparison> {
    if solution.dims() != 1 {
        return Err(Error::InvalidConfig("reference comparison is one-dimensional".into()));
    }
    let xs: Vec<f64> = solution.points().into_iter().map(|(x, _)| x).collect();
    let (refv, sampling) = sample_reference(reference, &xs, 0)?;
    let (l1, linf) = error_norms(&solution.component(0), &refv)?;
    Ok(Comparison { l1, linf, sampling })
}

/// Cache location `out_dir/refs/<problem>-<nx>.csv`.
pub fn reference_path(out_dir: &Path, problem: &str, nx: usize) -> PathBuf {
    out_dir.join("refs").join(format!("{problem}-{nx}.csv"))
}

/// Loads the cached reference of `problem`, computing and caching it with
/// WENO-JS when absent and `generate` is set.
pub fn load_or_generate_reference(problem: &Problem, out_dir: &Path, generate: bool) -> Result<ReferenceField> {
    let recipe = problem
        .reference
        .ok_or_else(|| Error::MissingReference(format!("{} has no reference recipe", problem.name)))?;
    let path = reference_path(out_dir, problem.name, recipe.nx);
    if path.exists() {
        return ReferenceField::read_csv(&path);
    }
    if !generate {
        return Err(Error::MissingReference(format!(
            "{} not found and generation disabled",
            path.display()
        )));
    }
    let out = run_problem(problem, recipe.nx, 1, &SchemeConfig::weno_js(), None)?;
    let field = ReferenceField::from_solution(&out.solution)?;
    field.write_csv(&path)?;
    Ok(field)
}

/// One grid of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub nx: usize,
    pub ny: usize,
    pub l1: f64,
    pub linf: f64,
    pub steps: usize,
    pub wall_seconds: f64,
    pub sampling: Option<Sampling>,
}

/// Errors per grid and orders between consecutive grids.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub problem: String,
    pub scheme: Scheme,
    pub limiter: String,
    pub rows: Vec<GridResult>,
}

impl RunReport {
    pub fn new(problem: &str, config: &SchemeConfig) -> Self {
        Self {
            problem: problem.to_string(),
            scheme: config.scheme,
            limiter: config.limiter_mode.as_str().to_string(),
            rows: Vec::new(),
        }
    }

    /// Orders between consecutive rows; `None` when the grids do not halve
    /// the spacing or an error is not positive.
    pub fn orders(&self) -> Vec<(Option<f64>, Option<f64>)> {
        let mut out = vec![(None, None)];
        for w in self.rows.windows(2) {
            if w[1].nx != 2 * w[0].nx {
                out.push((None, None));
                continue;
            }
            let ord = |a: f64, b: f64| convergence_order(&[a, b]).ok().map(|o| o[0]);
            out.push((ord(w[0].l1, w[1].l1), ord(w[0].linf, w[1].linf)));
        }
        out
    }

    /// CSV with one row per grid. A single-grid report has no order
    /// columns.
    pub fn to_csv(&self) -> String {
        let with_orders = self.rows.len() > 1;
        let mut s = if with_orders {
            String::from("problem,scheme,limiter,nx,ny,l1,l1_order,linf,linf_order,steps,wall_seconds,sampling\n")
        } else {
            String::from("problem,scheme,limiter,nx,ny,l1,linf,steps,wall_seconds,sampling\n")
        };
        let opt = |o: Option<f64>| o.map(fmt_f64).unwrap_or_default();
        for (row, (o1, oi)) in self.rows.iter().zip(self.orders()) {
            let (o1, oi) = if with_orders { (format!("{},", opt(o1)), format!("{},", opt(oi))) } else { (String::new(), String::new()) };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{o1}{},{oi}{},{},{}",
                self.problem,
                self.scheme.as_str(),
                self.limiter,
                row.nx,
                row.ny,
                fmt_f64(row.l1),
                fmt_f64(row.linf),
                row.steps,
                fmt_f64(row.wall_seconds),
                match (row.sampling, row.l1.is_nan()) {
                    (Some(m), _) => m.as_str(),
                    (None, true) => "none",
                    (None, false) => "exact-solution",
                },
            );
        }
        s
    }

    /// Aligned table `N  L1  order  Linf  order`, without the order
    /// columns for a single grid.
    pub fn to_text_table(&self) -> String {
        let with_orders = self.rows.len() > 1;
        let mut s = format!("{} ({}, limiter {})\n", self.problem, self.scheme.as_str(), self.limiter);
        if with_orders {
            let _ = writeln!(s, "{:>9}  {:>10}  {:>6}  {:>10}  {:>6}", "N", "L1 error", "order", "Linf error", "order");
        } else {
            let _ = writeln!(s, "{:>9}  {:>10}  {:>10}", "N", "L1 error", "Linf error");
        }
        let opt = |o: Option<f64>| o.map(|x| format!("{x:6.2}")).unwrap_or_else(|| " ".repeat(6));
        for (row, (o1, oi)) in self.rows.iter().zip(self.orders()) {
            let n = if row.ny > 1 { format!("{}x{}", row.nx, row.ny) } else { row.nx.to_string() };
            if with_orders {
                let _ = writeln!(s, "{:>9}  {:>10.2E}  {}  {:>10.2E}  {}", n, row.l1, opt(o1), row.linf, opt(oi));
            } else {
                let _ = writeln!(s, "{:>9}  {:>10.2E}  {:>10.2E}", n, row.l1, row.linf);
            }
        }
        s
    }
}

/// Runs `problem` on each grid and measures errors against the exact
/// solution, or against the cached reference when there is none.
pub fn convergence_study(
    problem: &Problem,
    grids: &[(usize, usize)],
    config: &SchemeConfig,
    out_dir: Option<&Path>,
) -> Result<RunReport> {
    let mut report = RunReport::new(problem.name, config);
    let reference = match (&problem.exact, problem.reference, out_dir) {
        (None, Some(_), Some(dir)) => Some(load_or_generate_reference(problem, dir, true)?),
        (None, _, _) => {
            return Err(Error::MissingReference(format!(
                "{} has no exact solution; an output directory for the reference is required",
                problem.name
            )))
        }
        _ => None,
    };
    for &(nx, ny) in grids {
        let out = run_problem(problem, nx, ny, config, None)?;
        let (l1, linf, sampling) = match &reference {
            Some(r) => {
                let c = compare_to_reference(&out.solution, r)?;
                (c.l1, c.linf, Some(c.sampling))
            }
            None => {
                let (a, b) = exact_errors(problem, &out)?;
                (a, b, None)
            }
        };
        report.rows.push(GridResult {
            nx,
            ny,
            l1,
            linf,
            steps: out.steps,
            wall_seconds: out.wall_seconds,
            sampling,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn norm_examples() {
        assert_eq!(error_norms(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), (0.0, 0.0));
        assert_eq!(error_norms(&[1.0, -1.0], &[0.0, 0.0]).unwrap(), (1.0, 1.0));
        assert!(error_norms(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn order_examples() {
        assert_relative_eq!(convergence_order(&[1e-2, 3.125e-4]).unwrap()[0], 5.0, epsilon = 1e-12);
        let o = convergence_order(&[4.83e-7, 1.53e-8]).unwrap()[0];
        assert!((o - 4.98).abs() < 0.005, "{o}");
        assert_eq!(convergence_order(&[2.0, 2.0]).unwrap()[0], 0.0);
        assert!(convergence_order(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn sampling_modes() {
        let reference = ReferenceField {
            x: vec![0.125, 0.375, 0.625, 0.875],
            components: vec![vec![1.0, 2.0, 3.0, 4.0]],
        };
        let (v, s) = sample_reference(&reference, &[0.375, 0.875], 0).unwrap();
        assert_eq!((v, s), (vec![2.0, 4.0], Sampling::Exact));
        let (v, s) = sample_reference(&reference, &[0.25, 0.7], 0).unwrap();
        assert_eq!((v, s), (vec![1.5, 3.0], Sampling::Nearest));
    }

    #[test]
    fn single_grid_table_has_no_order() {
        let mut r = RunReport::new("x", &SchemeConfig::default());
        r.rows.push(GridResult {
            nx: 10,
            ny: 1,
            l1: 1e-3,
            linf: 2e-3,
            steps: 3,
            wall_seconds: 0.0,
            sampling: None,
        });
        assert_eq!(r.orders(), vec![(None, None)]);
        assert!(!r.to_csv().contains("order"));
        assert!(!r.to_text_table().contains("order"));
        r.rows.push(GridResult { nx: 20, l1: 1e-3 / 32.0, ..r.rows[0].clone() });
        assert!(r.to_text_table().contains("  5.00"));
        assert!(r.to_csv().lines().nth(1).unwrap().contains(",,"));
    }

    proptest! {
        #[test]
        fn norms_homogeneous(e in prop::collection::vec(-1.0..1.0f64, 1..50), c in -10.0..10.0f64) {
            let zeros = vec![0.0; e.len()];
            let (l1, li) = error_norms(&e, &zeros).unwrap();
            let scaled: Vec<f64> = e.iter().map(|x| c * x).collect();
            let (s1, si) = error_norms(&scaled, &zeros).unwrap();
            prop_assert!((s1 - c.abs() * l1).abs() <= 1e-12 * (1.0 + s1));
            prop_assert!((si - c.abs() * li).abs() <= 1e-12 * (1.0 + si));
        }

        #[test]
        fn orders_scale_invariant(e in prop::collection::vec(1e-12..1.0f64, 2..6), c in 1e-3..1e3f64) {
            let a = convergence_order(&e).unwrap();
            let b = convergence_order(&e.iter().map(|x| c * x).collect::<Vec<_>>()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }
}
