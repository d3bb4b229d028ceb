use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use tricorr::args::{Cli, Command, OutputArgs};
use tricorr::commands::{global, pairwise, sweep_table, SweepRequest};
use tricorr::output::Table;
use tricorr::verify::{run, summary_table, VerifySettings};
use tricorr_core::Parity;

fn emit(table: &Table, output: &OutputArgs) -> Result<()> {
    match &output.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("--out {}: cannot create", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write(output.format, &mut w)?;
            w.flush().with_context(|| format!("--out {}", path.display()))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(output.format, &mut w)?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Pairwise {
            state,
            oracle,
            tol,
            normalized,
            output,
        } => {
            let cfg = state.config()?;
            emit(&pairwise(&cfg, normalized, oracle.then_some(tol))?, &output)?;
        }
        Command::Global {
            state,
            kinds,
            normalized,
            output,
        } => {
            let cfg = state.config()?;
            emit(&global(&cfg, &kinds, normalized), &output)?;
        }
        Command::Sweep(args) => {
            let req = SweepRequest {
                figure: args.figure,
                parity: args.parity.map(Parity::from).unwrap_or(Parity::Even),
                p_min: args.p_min,
                p_max: args.p_max,
                steps: args.steps,
                kinds: args.kinds,
                normalized: args.normalized,
            };
            emit(&sweep_table(&req)?, &args.output)?;
        }
        Command::Verify(args) => {
            let settings = VerifySettings {
                seed: args.seed,
                oracle_tol: args.tol,
                skip: args.skip,
                ..Default::default()
            };
            let checks = run(&settings)?;
            emit(&summary_table(&checks), &args.output)?;
            return Ok(checks.iter().all(|c| c.passed != Some(false)));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
