mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

/// Failure classes and their exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// A check ran and failed; its report was still written.
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gaq", version, about = "Lie algebra checks, truncated group laws, invariant geometry and particle dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity and cocycle checks for an algebra.
    AlgebraCheck(AlgebraArgs),
    /// Truncated group law of an algebra, with its axiom check.
    Exponentiate(LawArgs),
    /// Law, invariant fields, quantization form, its differential, kernel and Noether invariants.
    Derive(LawArgs),
    /// Integrate one trajectory and monitor its invariants.
    Simulate(SimArgs),
    /// Sweep the mixing constant kappa.
    Scan(ScanArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Run configuration file (TOML); flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Constants as `m=1,q=1/137,...` or a TOML file of them. `g` defaults to `m c`.
    #[arg(long)]
    pub constants: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct AlgebraSource {
    /// Catalog algebra: galilei_extended, GE_electromagnetic (GE), PEG_electrograv (PEG), galilei_1p1_gauged, abelian.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Algebra file in the text format.
    #[arg(long, conflicts_with = "catalog")]
    pub algebra: Option<PathBuf>,
    /// Mixing constant, exact.
    #[arg(long)]
    pub kappa: Option<String>,
    /// Gravitational extension constant, exact or `mc`.
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Seed for the random cocycle trials.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct LawArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Truncation degree.
    #[arg(long)]
    pub order: Option<u32>,
    /// Use the closed-form electromagnetic law (GE only).
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Motion {
    /// Field spec file (TOML); vacuum when absent.
    #[arg(long)]
    pub fields: Option<PathBuf>,
    /// Field parameter override `name=value`, repeatable.
    #[arg(long = "param", value_parser = config::parse_param)]
    pub params: Vec<(String, f64)>,
    /// Mixing constant, exact.
    #[arg(long)]
    pub kappa: Option<String>,
    /// Gravitational extension constant, exact or `mc`.
    #[arg(long)]
    pub g: Option<String>,
    /// lorentz, newtonian_gravity_1p1 or electrograv.
    #[arg(long)]
    pub mode: Option<String>,
    /// Lines of the mixed force law to switch on: `1,2,3,5`, `all` or `none`.
    #[arg(long)]
    pub toggles: Option<String>,
    /// Sign reading of line 4: printed or distributed.
    #[arg(long)]
    pub line4: Option<String>,
    /// rk4 or euler.
    #[arg(long)]
    pub method: Option<String>,
    /// Initial position `x1,x2,x3`.
    #[arg(long, value_parser = config::parse_vec3, allow_hyphen_values = true)]
    pub x: Option<[f64; 3]>,
    /// Initial velocity `v1,v2,v3`.
    #[arg(long, value_parser = config::parse_vec3, allow_hyphen_values = true)]
    pub v: Option<[f64; 3]>,
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Step; by default 1000 steps per radian of the fastest rate at the start.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Largest |v|/c in the mixed law; 0 lifts the cap.
    #[arg(long)]
    pub speed_cap: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub motion: Motion,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub motion: Motion,
    /// Comma-separated kappa values.
    #[arg(long, value_parser = config::parse_list, allow_hyphen_values = true)]
    pub kappas: Option<config::List>,
}

/// Writes every file or none: all contents are staged next to their
/// targets first and renamed once all writes succeeded.
pub fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    let io = |e: std::io::Error, p: &Path| CliError::Usage(format!("writing {}: {e}", p.display()));
    std::fs::create_dir_all(dir).map_err(|e| io(e, dir))?;
    let mut staged = Vec::new();
    for (name, text) in files {
        let tmp = dir.join(format!(".{name}.partial"));
        if let Err(e) = std::fs::write(&tmp, text) {
            for (t, _) in &staged {
                let _ = std::fs::remove_file(t);
            }
            return Err(io(e, &tmp));
        }
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, target) in staged {
        std::fs::rename(&tmp, &target).map_err(|e| io(e, &target))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::AlgebraCheck(a) => commands::algebra_check(a),
        Command::Exponentiate(a) => commands::exponentiate(a),
        Command::Derive(a) => commands::derive(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Scan(a) => commands::scan(a),
    };
    match result {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
