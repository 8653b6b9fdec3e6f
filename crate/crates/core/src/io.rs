//! CSV output of fields and reference solutions.
//!
//! Floats are written with 17 significant digits so that a write/read cycle
//! reproduces every value bit for bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::driver::Solution;
use crate::error::{Error, Result};

/// Formats `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column names for a field with `ncomp` components.
pub fn component_names(ncomp: usize) -> Vec<&'static str> {
    match ncomp {
        1 => vec!["u"],
        3 => vec!["rho", "rho_u", "energy"],
        4 => vec!["rho", "rho_u", "rho_v", "energy"],
        _ => (0..ncomp).map(|_| "q").collect(),
    }
}

/// Writes `x[,y]` followed by every conserved component.
pub fn write_solution_csv(path: &Path, solution: &Solution) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    let nc = solution.ncomp();
    let mut header = vec!["x"];
    if solution.dims() == 2 {
        header.push("y");
    }
    header.extend(component_names(nc));
    writeln!(out, "{}", header.join(","))?;
    let comps: Vec<Vec<f64>> = (0..nc).map(|c| solution.component(c)).collect();
    for (k, (x, y)) in solution.points().into_iter().enumerate() {
        let mut row = vec![fmt_f64(x)];
        if solution.dims() == 2 {
            row.push(fmt_f64(y));
        }
        row.extend(comps.iter().map(|c| fmt_f64(c[k])));
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// A 1D field sampled at cell centers: one coordinate column and one
/// column per component.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceField {
    pub x: Vec<f64>,
    pub components: Vec<Vec<f64>>,
}

impl ReferenceField {
    pub fn from_solution(solution: &Solution) -> Result<Self> {
        if solution.dims() != 1 {
            return Err(Error::InvalidConfig("reference fields are one-dimensional".into()));
        }
        Ok(Self {
            x: solution.points().into_iter().map(|(x, _)| x).collect(),
            components: (0..solution.ncomp()).map(|c| solution.component(c)).collect(),
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        let mut header = vec!["x"];
        header.extend(component_names(self.components.len()));
        writeln!(out, "{}", header.join(","))?;
        for (k, x) in self.x.iter().enumerate() {
            let mut row = vec![fmt_f64(*x)];
            row.extend(self.components.iter().map(|c| fmt_f64(c[k])));
            writeln!(out, "{}", row.join(","))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Csv(format!("{}: empty file", path.display())))?;
        let ncomp = header.split(',').count().saturating_sub(1);
        if ncomp == 0 {
            return Err(Error::Csv(format!("{}: no component columns", path.display())));
        }
        let mut x = Vec::new();
        let mut components = vec![Vec::new(); ncomp];
        for (n, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Csv(format!("{} line {}: {e}", path.display(), n + 2)))?;
            if vals.len() != ncomp + 1 {
                return Err(Error::Csv(format!(
                    "{} line {}: expected {} columns, found {}",
                    path.display(),
                    n + 2,
                    ncomp + 1,
                    vals.len()
                )));
            }
            x.push(vals[0]);
            for (c, v) in vals[1..].iter().enumerate() {
                components[c].push(*v);
            }
        }
        Ok(Self { x, components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn reference_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("refs/r.csv");
        let f = ReferenceField {
            x: vec![0.05, 0.15, 0.25],
            components: vec![vec![1.0 / 3.0, 2.0, 3.0], vec![0.1, 0.2, 0.7]],
        };
        f.write_csv(&path).unwrap();
        assert_eq!(ReferenceField::read_csv(&path).unwrap(), f);
    }

    #[test]
    fn malformed_csv_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        fs::write(&path, "x,u\n0.1,abc\n").unwrap();
        assert!(ReferenceField::read_csv(&path).is_err());
        fs::write(&path, "x,u\n0.1,1.0,2.0\n").unwrap();
        assert!(ReferenceField::read_csv(&path).is_err());
    }
}
