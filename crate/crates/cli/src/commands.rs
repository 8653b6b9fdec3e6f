use std::fs;
use std::path::PathBuf;

use hweno_core::analysis::{compare_to_reference, convergence_study, exact_errors, load_or_generate_reference, reference_path, GridResult, RunReport};
use hweno_core::io::write_solution_csv;
use hweno_core::problems::{Domain, PROBLEM_NAMES};
use hweno_core::{make_problem, run_problem, Problem};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Files written by a command.
#[derive(Debug, Clone)]
pub struct Written {
    pub report: RunReport,
    pub files: Vec<PathBuf>,
}

fn is_2d(p: &Problem) -> bool {
    matches!(p.domain, Domain::Rect { .. })
}

fn grid_for(p: &Problem, nx: Option<usize>, ny: Option<usize>) -> (usize, usize) {
    let nx = nx.unwrap_or(p.default_nx);
    let ny = if is_2d(p) {
        ny.unwrap_or(if nx == p.default_nx { p.default_ny } else { (nx * p.default_ny / p.default_nx).max(1) })
    } else {
        1
    };
    (nx, ny)
}

fn stem(p: &Problem, cfg: &RunConfig, nx: usize, ny: usize) -> String {
    let grid = if is_2d(p) { format!("{nx}x{ny}") } else { nx.to_string() };
    format!("{}-{}-{grid}", p.name, cfg.scheme.scheme.as_str())
}

fn write(path: PathBuf, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

/// Runs one problem, writes the final field, the report row and the
/// effective configuration.
pub fn run(cfg: &RunConfig) -> Result<Written> {
    cfg.validate()?;
    let p = make_problem(cfg.problem()?)?;
    let (nx, ny) = grid_for(&p, cfg.nx, cfg.ny);
    let out = run_problem(&p, nx, ny, &cfg.scheme, None)?;

    let (l1, linf, sampling) = if p.exact.is_some() {
        let (a, b) = exact_errors(&p, &out)?;
        (a, b, None)
    } else if p.reference.is_some() && !is_2d(&p) {
        let r = load_or_generate_reference(&p, &cfg.out_dir, true)?;
        let c = compare_to_reference(&out.solution, &r)?;
        (c.l1, c.linf, Some(c.sampling))
    } else {
        (f64::NAN, f64::NAN, None)
    };

    let mut report = RunReport::new(p.name, &cfg.scheme);
    report.rows.push(GridResult {
        nx,
        ny,
        l1,
        linf,
        steps: out.steps,
        wall_seconds: out.wall_seconds,
        sampling,
    });

    let base = stem(&p, cfg, nx, ny);
    let mut files = Vec::new();
    if cfg.emit_fields {
        let path = cfg.out_dir.join(format!("{base}.csv"));
        write_solution_csv(&path, &out.solution)?;
        files.push(path);
    }
    let mut effective = cfg.clone();
    effective.problem = Some(p.name.to_string());
    effective.nx = Some(nx);
    effective.ny = Some(ny);
    write(cfg.out_dir.join(format!("{base}-report.csv")), &report.to_csv(), &mut files)?;
    write(cfg.out_dir.join(format!("{base}.cfg")), &effective.to_text(), &mut files)?;
    Ok(Written { report, files })
}

/// Grid refinement study; each grid must halve the previous spacing.
pub fn convergence(cfg: &RunConfig, grids: &[usize]) -> Result<Written> {
    cfg.validate()?;
    if grids.is_empty() || grids.contains(&0) || grids.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(CliError::GridsNotHalving(grids.to_vec()));
    }
    let p = make_problem(cfg.problem()?)?;
    let pairs: Vec<(usize, usize)> = grids.iter().map(|&n| grid_for(&p, Some(n), None)).collect();
    let report = convergence_study(&p, &pairs, &cfg.scheme, Some(&cfg.out_dir))?;
    let base = format!(
        "{}-{}-limiter-{}-convergence",
        p.name,
        cfg.scheme.scheme.as_str(),
        cfg.scheme.limiter_mode.as_str()
    );
    let mut files = Vec::new();
    write(cfg.out_dir.join(format!("{base}.csv")), &report.to_csv(), &mut files)?;
    write(cfg.out_dir.join(format!("{base}.txt")), &report.to_text_table(), &mut files)?;
    Ok(Written { report, files })
}

/// Makes sure the cached reference of a problem exists.
pub fn reference(cfg: &RunConfig) -> Result<PathBuf> {
    let p = make_problem(cfg.problem()?)?;
    let recipe = p.reference.ok_or_else(|| {
        hweno_core::Error::MissingReference(format!("{} has no reference recipe", p.name))
    })?;
    load_or_generate_reference(&p, &cfg.out_dir, true)?;
    Ok(reference_path(&cfg.out_dir, p.name, recipe.nx))
}

pub fn list() -> String {
    let mut s = String::new();
    for name in PROBLEM_NAMES {
        let p = make_problem(name).expect("registered problem");
        let (nx, ny) = grid_for(&p, None, None);
        let grid = if is_2d(&p) { format!("{nx}x{ny}") } else { nx.to_string() };
        s.push_str(&format!("{name:<18} {grid:>8}  T={:<8.4} {}\n", p.t_end, p.title));
    }
    s
}

