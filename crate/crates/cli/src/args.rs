//! Command-line definitions.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tricorr_core::aggregate::MeasureKind;
use tricorr_core::catstates::{CatConfig, SweepQuantity};
use tricorr_core::oracle::ORACLE_GATE;
use tricorr_core::{OverlapConfig, Parity};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "tricorr",
    version,
    about = "Pairwise and global quantum correlations of tripartite nonorthogonal states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every measure on each bipartition, read from both ends
    Pairwise {
        #[command(flatten)]
        state: StateArgs,
        /// Add brute-force numeric columns and |closed - numeric| deltas
        #[arg(long)]
        oracle: bool,
        /// Oracle refinement tolerance (bits)
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Report geometric discord doubled
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Global averages, monogamy residuals and conservation residuals
    Global {
        #[command(flatten)]
        state: StateArgs,
        /// Measure to aggregate (repeatable; default: all)
        #[arg(long = "kind", value_name = "KIND", value_parser = parse_kind)]
        kinds: Vec<MeasureKind>,
        /// Report geometric discord doubled
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate symmetric cat-state quantities over a grid of overlaps
    Sweep(SweepArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Overlaps <psi_i|phi_i> of the three modes
    #[arg(
        long = "p",
        num_args = 3,
        value_names = ["P1", "P2", "P3"],
        allow_negative_numbers = true,
        conflicts_with = "alpha",
        required_unless_present = "alpha"
    )]
    pub p: Option<Vec<f64>>,
    /// Coherent amplitude |alpha| of a symmetric cat state (p = exp(-2 alpha^2))
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum)]
    pub parity: ParityArg,
}

impl StateArgs {
    pub fn config(&self) -> Result<OverlapConfig> {
        let parity = Parity::from(self.parity);
        match (&self.p, self.alpha) {
            (Some(p), _) => OverlapConfig::new(p[0], p[1], p[2], parity).with_context(|| {
                format!("invalid state --p {} {} {} --parity {parity}", p[0], p[1], p[2])
            }),
            (None, Some(a)) => {
                let cat = CatConfig::from_alpha(a, parity)
                    .with_context(|| format!("invalid state --alpha {a} --parity {parity}"))?;
                Ok(OverlapConfig::symmetric(cat.p(), parity)?)
            }
            (None, None) => bail!("one of --p or --alpha is required"),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Regenerate the data of figure 1, 2 or 3
    #[arg(long, conflicts_with_all = ["parity", "kinds", "p_min", "p_max", "steps"])]
    pub figure: Option<u8>,
    #[arg(long, value_enum, required_unless_present = "figure")]
    pub parity: Option<ParityArg>,
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    /// Upper end (default 1 for even, 1 - 1e-6 for odd)
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Column to tabulate (repeatable; default: all), e.g. E_residual, Dg_global
    #[arg(long = "kind", value_name = "COLUMN", value_parser = parse_quantity)]
    pub kinds: Vec<SweepQuantity>,
    /// Report geometric discord doubled
    #[arg(long)]
    pub normalized: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Pass threshold for the brute-force discord checks (bits)
    #[arg(long, default_value_t = ORACLE_GATE)]
    pub tol: f64,
    /// Leave out a check by name (repeatable)
    #[arg(long = "skip", value_name = "CHECK")]
    pub skip: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_kind(s: &str) -> std::result::Result<MeasureKind, String> {
    s.parse().map_err(|e: tricorr_core::aggregate::UnknownMeasure| e.to_string())
}

fn parse_quantity(s: &str) -> std::result::Result<SweepQuantity, String> {
    SweepQuantity::ALL
        .into_iter()
        .find(|q| q.column(false) == s || q.column(true) == s)
        .ok_or_else(|| {
            let names: Vec<String> = SweepQuantity::ALL.iter().map(|q| q.column(false)).collect();
            format!("unknown column `{s}` (expected one of {})", names.join(", "))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_state_sources() {
        let cli = Cli::try_parse_from(["tricorr", "pairwise", "--p", "0.1", "0.2", "0.3", "--parity", "odd"]).unwrap();
        let Command::Pairwise { state, .. } = cli.command else { panic!() };
        assert_eq!(state.config().unwrap().overlaps(), [0.1, 0.2, 0.3]);

        let cli = Cli::try_parse_from(["tricorr", "global", "--alpha", "0", "--parity", "even"]).unwrap();
        let Command::Global { state, kinds, .. } = cli.command else { panic!() };
        assert_eq!(state.config().unwrap().overlaps(), [1.0; 3]);
        assert!(kinds.is_empty());
    }

    #[test]
    fn rejects_conflicting_sources() {
        assert!(Cli::try_parse_from([
            "tricorr", "global", "--p", "0", "0", "0", "--alpha", "1", "--parity", "even"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["tricorr", "global", "--parity", "even"]).is_err());
        assert!(Cli::try_parse_from(["tricorr", "global", "--p", "0", "0", "0", "--parity", "even", "--kind", "tangle"]).is_err());
    }

    #[test]
    fn singular_state_names_parameters() {
        let cli = Cli::try_parse_from(["tricorr", "pairwise", "--p", "1", "1", "1", "--parity", "odd"]).unwrap();
        let Command::Pairwise { state, .. } = cli.command else { panic!() };
        let msg = format!("{:#}", state.config().unwrap_err());
        assert!(msg.contains("--p 1 1 1"), "{msg}");
        assert!(msg.contains("singular normalization"), "{msg}");
    }

    #[test]
    fn sweep_columns_parse() {
        let cli = Cli::try_parse_from([
            "tricorr", "sweep", "--parity", "odd", "--kind", "E_residual", "--kind", "2Dg_global",
        ])
        .unwrap();
        let Command::Sweep(args) = cli.command else { panic!() };
        assert_eq!(args.kinds, [SweepQuantity::EResidual, SweepQuantity::DgGlobal]);
        assert!(Cli::try_parse_from(["tricorr", "sweep", "--figure", "1", "--parity", "odd"]).is_err());
    }
}
