use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Clone, Parser)]
#[command(name = "iwdefect", version, about = "Local invariants, defects and signed λ predictions for supersingular elliptic curves")]
pub struct Cli {
    /// Print the report envelope as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Never contact the LMFDB; labels must resolve from the cache or fixtures.
    #[arg(long, global = true)]
    pub offline: bool,
    /// Extra directory of curve records, searched after the cache.
    #[arg(long = "fixtures", value_name = "DIR", global = true)]
    pub fixtures: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Curve-level data.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// F_p-dimension of E[p] over Q_ℓ or its first cyclotomic layer.
    Torsion(TorsionArgs),
    /// Number of primes above ℓ in the cyclotomic Z_p-extension.
    Split(SplitArgs),
    /// The defect δ(E) with per-prime contributions.
    Defect(CurveArgs),
    /// λ± = ρ± + δ(E) for given ρ±.
    Lambda(LambdaArgs),
    /// Family-level runs.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Look up a curve record by label.
    Fetch(FetchArgs),
}

#[derive(Debug, Clone, Subcommand)]
pub enum CurveCommand {
    /// Invariants, minimal model, conductor, Tate data, a_p and the hypothesis check.
    Report(CurveArgs),
}

#[derive(Debug, Clone, Subcommand)]
pub enum FamilyCommand {
    /// Calibrate on the reference member and predict λ± for every member.
    Run(FamilyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// a-invariants like "[0,0,0,-1,0]" (or "[a4,a6]"), or a curve label.
    #[arg(long)]
    pub curve: String,
    #[arg(long)]
    pub p: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayerArg {
    Base,
    First,
}

#[derive(Debug, Clone, Args)]
pub struct TorsionArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, value_parser = parse_big)]
    pub ell: BigInt,
    #[arg(long, value_enum, default_value = "base")]
    pub layer: LayerArg,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[arg(long, value_parser = parse_big)]
    pub ell: BigInt,
    #[arg(long)]
    pub p: u32,
    /// Also count primes layer by layer up to this layer (at most 12).
    #[arg(long, value_name = "N")]
    pub oracle_layers: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub rho_plus: u64,
    #[arg(long)]
    pub rho_minus: u64,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub fixture: PathBuf,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FetchArgs {
    #[arg(long)]
    pub label: String,
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    arith_core::parse_int(s).ok_or_else(|| format!("not an integer: {s}"))
}
