use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hweno_cli::commands;
use hweno_cli::config::RunConfig;
use hweno_cli::error::Result;

#[derive(Parser)]
#[command(name = "hweno", version, about = "Hermite WENO solver for 1D/2D conservation laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem and write the final field and an error report
    Run {
        #[command(flatten)]
        opts: Opts,
        /// Also write the effective configuration to this file
        #[arg(long, value_name = "FILE")]
        save_config: Option<PathBuf>,
    },
    /// Grid refinement study with observed orders
    Convergence {
        #[command(flatten)]
        opts: Opts,
        /// Comma-separated cell counts, each double the previous
        #[arg(long, value_delimiter = ',', required = true)]
        grids: Vec<usize>,
    },
    /// Generate (or reuse) the cached reference solution of a problem
    Reference {
        #[command(flatten)]
        opts: Opts,
    },
    /// List the built-in problems
    List,
}

#[derive(Args)]
struct Opts {
    /// `key = value` configuration file; flags below override it
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// l-hweno or weno-js
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    nx: Option<String>,
    #[arg(long)]
    ny: Option<String>,
    #[arg(long)]
    cfl: Option<String>,
    #[arg(long)]
    gamma0: Option<String>,
    #[arg(long)]
    gamma1: Option<String>,
    #[arg(long)]
    gamma2: Option<String>,
    #[arg(long)]
    d0: Option<String>,
    #[arg(long)]
    d1: Option<String>,
    #[arg(long)]
    d2: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    /// staged or off
    #[arg(long)]
    limiter_mode: Option<String>,
    /// cfl or accuracy
    #[arg(long)]
    time_step: Option<String>,
    #[arg(long)]
    out_dir: Option<String>,
    /// Skip writing the solution field
    #[arg(long)]
    no_fields: bool,
}

impl Opts {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = [
            ("problem", &self.problem),
            ("scheme", &self.scheme),
            ("nx", &self.nx),
            ("ny", &self.ny),
            ("cfl", &self.cfl),
            ("gamma0", &self.gamma0),
            ("gamma1", &self.gamma1),
            ("gamma2", &self.gamma2),
            ("d0", &self.d0),
            ("d1", &self.d1),
            ("d2", &self.d2),
            ("epsilon", &self.epsilon),
            ("limiter_mode", &self.limiter_mode),
            ("time_step", &self.time_step),
            ("out_dir", &self.out_dir),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if self.no_fields {
            cfg.emit_fields = false;
        }
        Ok(cfg)
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { opts, save_config } => {
            let cfg = opts.resolve()?;
            let w = commands::run(&cfg)?;
            print!("{}", w.report.to_text_table());
            if let Some(path) = save_config {
                std::fs::write(&path, cfg.to_text())?;
                println!("config: {}", path.display());
            }
            for f in &w.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Convergence { opts, grids } => {
            let cfg = opts.resolve()?;
            let w = commands::convergence(&cfg, &grids)?;
            print!("{}", w.report.to_text_table());
            for f in &w.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Reference { opts } => {
            let cfg = opts.resolve()?;
            println!("{}", commands::reference(&cfg)?.display());
        }
        Command::List => print!("{}", commands::list()),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
