//! Table builders behind each subcommand.

use anyhow::{Context, Result};
use tricorr_core::aggregate::{global_measure_scaled, MeasureKind, OrderedTerm};
use tricorr_core::catstates::{sweep, Figure, SweepQuantity, SweepTable, ODD_PARITY_P_CAP};
use tricorr_core::measures::{
    bipartition_density, geometric_discord, pairwise_report, wootters_concurrence,
};
use tricorr_core::oracle::{discord_projective_oracle, DiscordOracleSettings};
use tricorr_core::{Bipartition, OverlapConfig, Parity, Side};

use crate::output::{Cell, Table};

fn side_name(side: Side) -> &'static str {
    match side {
        Side::First => "first",
        Side::Second => "second",
    }
}

/// One row per bipartition and measured side.
pub fn pairwise(cfg: &OverlapConfig, normalized: bool, oracle: Option<f64>) -> Result<Table> {
    let mut columns = vec![
        "bipartition",
        "term",
        "side",
        "concurrence",
        "eof",
        "discord",
        "geometric_discord",
        "normalized",
    ];
    if oracle.is_some() {
        columns.extend([
            "oracle_concurrence",
            "concurrence_delta",
            "oracle_discord",
            "discord_delta",
            "oracle_geometric_discord",
            "geometric_discord_delta",
            "oracle_converged",
        ]);
    }
    let mut table = Table::new(columns);
    let settings = oracle.map(|tolerance| DiscordOracleSettings {
        tolerance,
        ..Default::default()
    });
    let scale = if normalized { 2.0 } else { 1.0 };
    for b in Bipartition::all() {
        let report = pairwise_report(cfg, b, normalized);
        let rho = bipartition_density(cfg, b)?;
        for side in Side::BOTH {
            let (discord, dg) = match side {
                Side::First => (report.discord_forward, report.geometric_discord_forward),
                Side::Second => (report.discord_backward, report.geometric_discord_backward),
            };
            let term = OrderedTerm {
                bipartition: b,
                side,
                value: 0.0,
            };
            let mut row: Vec<Cell> = vec![
                b.label().into(),
                term.label().into(),
                side_name(side).into(),
                report.concurrence.into(),
                report.eof.into(),
                discord.into(),
                dg.into(),
                normalized.into(),
            ];
            if let Some(settings) = &settings {
                let c = wootters_concurrence(&rho)?;
                let d = discord_projective_oracle(&rho, side, settings)
                    .with_context(|| format!("--tol {}", settings.tolerance))?;
                let g = scale * geometric_discord(&rho, side)?;
                row.extend([
                    c.into(),
                    (report.concurrence - c).abs().into(),
                    d.value.into(),
                    (discord - d.value).abs().into(),
                    g.into(),
                    (dg - g).abs().into(),
                    d.converged.into(),
                ]);
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// One row per measure kind.
pub fn global(cfg: &OverlapConfig, kinds: &[MeasureKind], normalized: bool) -> Table {
    let kinds = if kinds.is_empty() { &MeasureKind::ALL[..] } else { kinds };
    let mut columns: Vec<String> = [
        "kind",
        "value",
        "normalized",
        "monogamy_1",
        "monogamy_2",
        "monogamy_3",
        "conservation_residual",
        "delta_plus_residual",
        "delta_minus_residual",
    ]
    .map(String::from)
    .to_vec();
    let mut table = Table::default();
    for (n, &kind) in kinds.iter().enumerate() {
        let report = global_measure_scaled(cfg, kind, normalized);
        if n == 0 {
            columns.extend(report.terms.iter().map(|t| format!("term_{}", t.label())));
            table = Table::new(columns.clone());
        }
        let mut row: Vec<Cell> = vec![
            kind.name().into(),
            report.value.into(),
            normalized.into(),
            report.monogamy[0].into(),
            report.monogamy[1].into(),
            report.monogamy[2].into(),
            report.conservation.conservation.into(),
            report.conservation.delta_plus.into(),
            report.conservation.delta_minus.into(),
        ];
        row.extend(report.terms.iter().map(|t| Cell::Num(t.value)));
        table.push(row);
    }
    table
}

/// A figure preset or a custom uniform sweep.
pub struct SweepRequest {
    pub figure: Option<u8>,
    pub parity: Parity,
    pub p_min: f64,
    pub p_max: Option<f64>,
    pub steps: usize,
    pub kinds: Vec<SweepQuantity>,
    pub normalized: bool,
}

pub fn sweep_table(req: &SweepRequest) -> Result<Table> {
    let table = match req.figure {
        Some(n) => Figure::from_number(n)
            .with_context(|| format!("--figure {n} (expected 1, 2 or 3)"))?
            .table()?,
        None => {
            let p_max = req.p_max.unwrap_or(match req.parity {
                Parity::Even => 1.0,
                Parity::Odd => ODD_PARITY_P_CAP,
            });
            let kinds = if req.kinds.is_empty() {
                &SweepQuantity::ALL[..]
            } else {
                &req.kinds[..]
            };
            sweep(req.parity, req.p_min, p_max, req.steps, kinds, req.normalized).with_context(|| {
                format!(
                    "--p-min {} --p-max {p_max} --steps {} --parity {}",
                    req.p_min, req.steps, req.parity
                )
            })?
        }
    };
    Ok(from_sweep(table))
}

fn from_sweep(s: SweepTable) -> Table {
    let mut t = Table::new(s.columns);
    for row in s.rows {
        t.push(row.into_iter().map(Cell::Num).collect());
    }
    t
}
