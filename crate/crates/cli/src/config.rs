use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mapspace_core::{Example62Reading, Field, Grading, SpaceSpec, Variant};

use crate::failure::Failure;

#[derive(Parser, Debug)]
#[command(name = "mapspace", version, about = "Homology of L²ℙⁿ and Hol(n) from the E² page")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print Betti tables and optionally Poincaré series.
    Compute(ComputeArgs),
    /// Run verification checks; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Write a Betti table to a file as CSV or JSON.
    Export(ComputeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Loop,
    Hol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradingArg {
    Ordinary,
    Regraded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Collapse,
    Periodicity,
    Dichotomy,
    Unit,
    Example62,
    Injectivity,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    pub n: u32,
    /// `q` or `f<p>` with `p` prime.
    #[arg(long, default_value = "q")]
    pub field: String,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "components")]
    pub component: Option<i64>,
    /// Inclusive range `a..b` or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    pub components: Option<String>,
    /// Ordinary degree cutoff.
    #[arg(long, default_value_t = 30)]
    pub cutoff: i64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub space: SpaceArg,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "ordinary")]
    pub grading: GradingArg,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also report Poincaré series.
    #[arg(long)]
    pub series: bool,
    /// Report E² dimensions instead of homology.
    #[arg(long)]
    pub e2: bool,
    /// Leave out generators above this degree; tables past what the
    /// remaining generators determine are refused.
    #[arg(long)]
    pub max_generator_degree: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: CheckArg,
    #[command(flatten)]
    pub common: Common,
    /// Component shift for periodicity, power of ι for the unit check.
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Print per-component detail lines.
    #[arg(long)]
    pub details: bool,
    /// Which monomials the counting formula places in the top `c` block.
    #[arg(long, value_enum, default_value = "as-printed")]
    pub reading: ReadingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    AsPrinted,
    WithUnitBlock,
}

impl From<ReadingArg> for Example62Reading {
    fn from(r: ReadingArg) -> Example62Reading {
        match r {
            ReadingArg::AsPrinted => Example62Reading::AsPrinted,
            ReadingArg::WithUnitBlock => Example62Reading::WithUnitBlock,
        }
    }
}

/// Strict `q` / `f<p>` grammar.
pub fn parse_field(spec: &str) -> Result<Field, Failure> {
    let s = spec.trim();
    if s == "q" {
        return Ok(Field::Rational);
    }
    match s.strip_prefix('f').map(str::parse::<u64>) {
        Some(Ok(p)) => Field::prime(p).map_err(Failure::from),
        _ => Err(Failure::config(
            "InvalidFieldSpec",
            format!("invalid field spec `{spec}` (expected `q` or `f<p>`)"),
        )),
    }
}

pub fn parse_components(common: &Common, default: &[i64]) -> Result<Vec<i64>, Failure> {
    if let Some(k) = common.component {
        return Ok(vec![k]);
    }
    let Some(spec) = &common.components else {
        return Ok(default.to_vec());
    };
    let bad = || Failure::config("InvalidComponents", format!("cannot parse components `{spec}`"));
    let spec = spec.trim();
    let ks: Vec<i64> = if let Some((a, b)) = spec.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (i64, i64) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        );
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        spec.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if ks.is_empty() || ks.len() > 10_000 {
        return Err(bad());
    }
    Ok(ks)
}

pub fn check_cutoff(cutoff: i64) -> Result<(), Failure> {
    if (0..=10_000).contains(&cutoff) {
        Ok(())
    } else {
        Err(Failure::config(
            "InvalidParameter",
            format!("cutoff {cutoff} outside 0..=10000"),
        ))
    }
}

impl ComputeArgs {
    pub fn space(&self) -> Result<SpaceSpec, Failure> {
        let variant = match self.space {
            SpaceArg::Loop => Variant::Loop,
            SpaceArg::Hol => Variant::Hol,
        };
        Ok(SpaceSpec::new(
            self.common.n,
            parse_field(&self.common.field)?,
            variant,
        )?)
    }

    pub fn grading(&self) -> Grading {
        match self.grading {
            GradingArg::Ordinary => Grading::Ordinary,
            GradingArg::Regraded => Grading::Regraded,
        }
    }
}
