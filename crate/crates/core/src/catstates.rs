//! Three-mode Schrödinger cat states `N(|a,a,a> + e^{i m pi} |-a,-a,-a>)`.
//!
//! Every mode has the same overlap `p = <a|-a> = exp(-2|a|^2)`, so the state
//! is the symmetric case `(p, p, p)` of [`OverlapConfig`]. This module holds
//! the symmetric closed forms (written out independently of the general
//! routines so the two can be cross-checked), the bisection for the EoF
//! monogamy crossover, and uniform sweeps that regenerate the figure data.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::aggregate::{global_measure, global_measure_scaled, monogamy_residual, MeasureKind};
use crate::error::{Error, Result};
use crate::linalg::binary_entropy;
use crate::mapping::{Bipartition, Mode, OverlapConfig, Parity};
use crate::math;
use crate::measures::{concurrence_closed, eof_closed, geometric_discord_closed, Side};

/// Default upper end of odd-parity sweeps; odd cats are singular at `p = 1`.
pub const ODD_PARITY_P_CAP: f64 = 1.0 - 1e-6;

/// Points per figure preset.
pub const FIGURE_STEPS: usize = 200;

/// Overlap of `|a>` and `|-a>`.
pub fn overlap_from_alpha(alpha_abs: f64) -> f64 {
    math::exp(-2.0 * alpha_abs * alpha_abs)
}

/// A symmetric cat state, parametrized by its overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatConfig {
    p: f64,
    parity: Parity,
}

impl CatConfig {
    /// From the coherent amplitude `|a|`.
    pub fn from_alpha(alpha_abs: f64, parity: Parity) -> Result<Self> {
        if !alpha_abs.is_finite() || alpha_abs < 0.0 {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha_abs,
            });
        }
        Self::from_overlap(overlap_from_alpha(alpha_abs), parity)
    }

    /// From the overlap `p`. `p = 0` is accepted as the large-amplitude limit.
    pub fn from_overlap(p: f64, parity: Parity) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange { name: "p", value: p });
        }
        // rejects the odd vacuum and anything numerically next to it
        OverlapConfig::symmetric(p, parity)?;
        Ok(Self { p, parity })
    }

    /// Overlap.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Parity.
    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// The symmetric overlap configuration `(p, p, p)`.
pub fn cat_overlap_config(cat: &CatConfig) -> Result<OverlapConfig> {
    OverlapConfig::symmetric(cat.p, cat.parity)
}

/// Symmetric closed forms of every measure, raw geometric-discord scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatClosedForms {
    /// Concurrence of each one-vs-two split.
    pub c_pure: f64,
    /// Concurrence of each pair.
    pub c_pair: f64,
    /// Three-tangle.
    pub tangle: f64,
    /// Global squared concurrence.
    pub c2_global: f64,
    /// EoF of each split.
    pub e_pure: f64,
    /// EoF of each pair.
    pub e_pair: f64,
    /// `E_pure - 2 E_pair`.
    pub e_residual: f64,
    /// Global EoF (equal to global discord).
    pub e_global: f64,
    /// Geometric discord of each split.
    pub dg_pure: f64,
    /// Geometric discord of each pair.
    pub dg_pair: f64,
    /// `Dg_pure - 2 Dg_pair`.
    pub dg_residual: f64,
    /// Global geometric discord.
    pub dg_global: f64,
}

/// Even-parity pair geometric discord switches branch at this overlap.
pub fn even_branch_point() -> f64 {
    core::f64::consts::SQRT_2 - 1.0
}

/// The two candidate pair geometric-discord expressions `(l2 + l3)/4` and
/// `(l1 + l3)/4`; the smaller one is the value.
pub fn dg_pair_branches(p: f64, parity: Parity) -> (f64, f64) {
    let c = parity.sign();
    let d = 1.0 + p * p * p * c;
    let l1 = p * p * ((1.0 + p * c) * (1.0 + p * c) + (p + c) * (p + c)) / (d * d);
    let l2 = (1.0 - p * p) * (1.0 - p * p) / (d * d);
    let l3 = p * p * l2;
    (0.25 * (l2 + l3), 0.25 * (l1 + l3))
}

/// Evaluates the symmetric closed forms.
pub fn cat_closed_forms(cat: &CatConfig) -> CatClosedForms {
    let p = cat.p;
    let c = cat.parity.sign();
    let d = 1.0 + p * p * p * c;
    let h = |x: f64| binary_entropy(x.clamp(0.0, 1.0)).unwrap_or(0.0);
    let om = 1.0 - p * p;

    let c_pure = math::sqrt(om * (1.0 - p * p * p * p)) / d;
    let c_pair = p * om / d;
    let tangle = om * om * om / (d * d);
    let c2_global = 0.5 * (1.0 + 2.0 * p * p) * om * om / (d * d);

    let e_pure = h(0.5 + 0.5 * (p + p * p * c) / d);
    let e_pair = h(0.5 + 0.5 * math::sqrt((1.0 - c_pair * c_pair).max(0.0)));

    let dg_pure = 0.5 * c_pure * c_pure;
    let (upper, lower) = dg_pair_branches(p, cat.parity);
    let dg_pair = upper.min(lower);

    CatClosedForms {
        c_pure,
        c_pair,
        tangle,
        c2_global,
        e_pure,
        e_pair,
        e_residual: e_pure - 2.0 * e_pair,
        e_global: 0.5 * (e_pure + e_pair),
        dg_pure,
        dg_pair,
        dg_residual: dg_pure - 2.0 * dg_pair,
        dg_global: 0.5 * (dg_pure + dg_pair),
    }
}

/// A quantity a sweep can tabulate; values come from the general routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepQuantity {
    /// Split concurrence.
    CPure,
    /// Pair concurrence.
    CPair,
    /// Three-tangle.
    Tangle,
    /// Global squared concurrence.
    C2Global,
    /// Split EoF.
    EPure,
    /// Pair EoF.
    EPair,
    /// EoF monogamy residual.
    EResidual,
    /// Global EoF.
    EGlobal,
    /// Global discord.
    DGlobal,
    /// Split geometric discord.
    DgPure,
    /// Pair geometric discord.
    DgPair,
    /// Geometric-discord monogamy residual.
    DgResidual,
    /// Global geometric discord.
    DgGlobal,
}

impl SweepQuantity {
    /// Every quantity in column order.
    pub const ALL: [SweepQuantity; 13] = [
        SweepQuantity::CPure,
        SweepQuantity::CPair,
        SweepQuantity::Tangle,
        SweepQuantity::C2Global,
        SweepQuantity::EPure,
        SweepQuantity::EPair,
        SweepQuantity::EResidual,
        SweepQuantity::EGlobal,
        SweepQuantity::DGlobal,
        SweepQuantity::DgPure,
        SweepQuantity::DgPair,
        SweepQuantity::DgResidual,
        SweepQuantity::DgGlobal,
    ];

    /// Column name; geometric-discord columns get a `2` prefix when doubled.
    pub fn column(self, normalized: bool) -> String {
        let base = match self {
            SweepQuantity::CPure => "C_pure",
            SweepQuantity::CPair => "C_pair",
            SweepQuantity::Tangle => "tau",
            SweepQuantity::C2Global => "C2_global",
            SweepQuantity::EPure => "E_pure",
            SweepQuantity::EPair => "E_pair",
            SweepQuantity::EResidual => "E_residual",
            SweepQuantity::EGlobal => "E_global",
            SweepQuantity::DGlobal => "D_global",
            SweepQuantity::DgPure => "Dg_pure",
            SweepQuantity::DgPair => "Dg_pair",
            SweepQuantity::DgResidual => "Dg_residual",
            SweepQuantity::DgGlobal => "Dg_global",
        };
        if normalized && self.is_geometric() {
            format!("2{base}")
        } else {
            base.into()
        }
    }

    fn is_geometric(self) -> bool {
        matches!(
            self,
            SweepQuantity::DgPure | SweepQuantity::DgPair | SweepQuantity::DgResidual | SweepQuantity::DgGlobal
        )
    }

    /// Value at `cfg` from the general (non-symmetric) routines.
    pub fn evaluate(self, cfg: &OverlapConfig, normalized: bool) -> f64 {
        let split = Bipartition::PureSplit(Mode::ONE);
        let pair = Bipartition::MixedPair(Mode::ONE, Mode::TWO);
        let g = if normalized { 2.0 } else { 1.0 };
        match self {
            SweepQuantity::CPure => concurrence_closed(cfg, split),
            SweepQuantity::CPair => concurrence_closed(cfg, pair),
            SweepQuantity::Tangle => monogamy_residual(cfg, MeasureKind::SquaredConcurrence, Mode::ONE),
            SweepQuantity::C2Global => global_measure(cfg, MeasureKind::SquaredConcurrence).value,
            SweepQuantity::EPure => eof_closed(cfg, split),
            SweepQuantity::EPair => eof_closed(cfg, pair),
            SweepQuantity::EResidual => monogamy_residual(cfg, MeasureKind::Eof, Mode::ONE),
            SweepQuantity::EGlobal => global_measure(cfg, MeasureKind::Eof).value,
            SweepQuantity::DGlobal => global_measure(cfg, MeasureKind::Discord).value,
            SweepQuantity::DgPure => g * geometric_discord_closed(cfg, split, Side::First),
            SweepQuantity::DgPair => g * geometric_discord_closed(cfg, pair, Side::First),
            SweepQuantity::DgResidual => g * monogamy_residual(cfg, MeasureKind::GeometricDiscord, Mode::ONE),
            SweepQuantity::DgGlobal => {
                global_measure_scaled(cfg, MeasureKind::GeometricDiscord, normalized).value
            }
        }
    }
}

/// A table with `p` in the first column.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Header, starting with `"p"`.
    pub columns: Vec<String>,
    /// One row per grid point, `p` strictly increasing.
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    /// Index of a column by name.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Uniform grid of `steps` points from `p_min` to `p_max` inclusive.
pub fn grid(parity: Parity, p_min: f64, p_max: f64, steps: usize) -> Result<Vec<f64>> {
    let bad = || Error::InvalidRange {
        min: p_min,
        max: p_max,
        steps,
    };
    if !(p_min.is_finite() && p_max.is_finite()) || steps < 2 || p_min < 0.0 || p_max > 1.0 || p_min >= p_max {
        return Err(bad());
    }
    if parity == Parity::Odd && p_max >= 1.0 {
        return Err(bad());
    }
    let span = p_max - p_min;
    Ok((0..steps)
        .map(|n| {
            if n + 1 == steps {
                p_max
            } else {
                p_min + span * n as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

/// Tabulates `quantities` over a uniform grid for one parity.
pub fn sweep(
    parity: Parity,
    p_min: f64,
    p_max: f64,
    steps: usize,
    quantities: &[SweepQuantity],
    normalized: bool,
) -> Result<SweepTable> {
    let ps = grid(parity, p_min, p_max, steps)?;
    let mut columns = Vec::with_capacity(quantities.len() + 1);
    columns.push(String::from("p"));
    columns.extend(quantities.iter().map(|q| q.column(normalized)));
    let mut rows = Vec::with_capacity(ps.len());
    for p in ps {
        let cfg = OverlapConfig::symmetric(p, parity)?;
        let mut row = Vec::with_capacity(columns.len());
        row.push(p);
        row.extend(quantities.iter().map(|q| q.evaluate(&cfg, normalized)));
        rows.push(row);
    }
    Ok(SweepTable { columns, rows })
}

/// Data behind each published figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// EoF monogamy residual, both parities.
    EofResidual,
    /// Even-parity global measures.
    GlobalEven,
    /// Odd-parity global measures.
    GlobalOdd,
}

impl Figure {
    /// Figure by number 1, 2 or 3.
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Figure::EofResidual),
            2 => Ok(Figure::GlobalEven),
            3 => Ok(Figure::GlobalOdd),
            _ => Err(Error::OutOfRange {
                name: "figure",
                value: n as f64,
            }),
        }
    }

    /// Regenerates the figure's table on [`FIGURE_STEPS`] points. Geometric
    /// discord is doubled.
    pub fn table(self) -> Result<SweepTable> {
        let globals = [
            SweepQuantity::C2Global,
            SweepQuantity::DGlobal,
            SweepQuantity::EGlobal,
            SweepQuantity::DgGlobal,
        ];
        match self {
            Figure::EofResidual => {
                let ps = grid(Parity::Odd, 0.0, ODD_PARITY_P_CAP, FIGURE_STEPS)?;
                let mut rows = Vec::with_capacity(ps.len());
                for p in ps {
                    let even = OverlapConfig::symmetric(p, Parity::Even)?;
                    let odd = OverlapConfig::symmetric(p, Parity::Odd)?;
                    rows.push(alloc::vec![
                        p,
                        SweepQuantity::EResidual.evaluate(&even, true),
                        SweepQuantity::EResidual.evaluate(&odd, true),
                    ]);
                }
                Ok(SweepTable {
                    columns: ["p", "E_residual_even", "E_residual_odd"].map(String::from).to_vec(),
                    rows,
                })
            }
            Figure::GlobalEven => sweep(Parity::Even, 0.0, 1.0, FIGURE_STEPS, &globals, true),
            Figure::GlobalOdd => sweep(Parity::Odd, 0.0, ODD_PARITY_P_CAP, FIGURE_STEPS, &globals, true),
        }
    }
}

/// Sign changes of the EoF monogamy residual on `[0, ODD_PARITY_P_CAP]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EofCrossover {
    /// Sign changes seen on the scan grid.
    pub sign_changes: usize,
    /// Bisected location of the first sign change.
    pub root: Option<f64>,
    /// Smallest residual seen on the scan grid.
    pub min_residual: f64,
}

/// Scans the symmetric EoF residual on `scan` points and bisects the first
/// sign change to `1e-12`.
pub fn eof_crossover(parity: Parity, scan: usize) -> Result<EofCrossover> {
    let residual = |p: f64| -> Result<f64> {
        Ok(monogamy_residual(&OverlapConfig::symmetric(p, parity)?, MeasureKind::Eof, Mode::ONE))
    };
    let ps = grid(Parity::Odd, 0.0, ODD_PARITY_P_CAP, scan)?;
    let mut values = Vec::with_capacity(ps.len());
    for &p in &ps {
        values.push(residual(p)?);
    }
    let min_residual = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut sign_changes = 0;
    let mut bracket = None;
    for n in 1..values.len() {
        if (values[n - 1] >= 0.0) != (values[n] >= 0.0) {
            sign_changes += 1;
            bracket.get_or_insert((ps[n - 1], ps[n]));
        }
    }
    let root = match bracket {
        None => None,
        Some((mut lo, mut hi)) => {
            let lo_sign = residual(lo)? >= 0.0;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if (residual(mid)? >= 0.0) == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(0.5 * (lo + hi))
        }
    };
    Ok(EofCrossover {
        sign_changes,
        root,
        min_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::full_state_qubits;
    use approx::assert_abs_diff_eq;

    fn cat(p: f64, parity: Parity) -> CatConfig {
        CatConfig::from_overlap(p, parity).unwrap()
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap_from_alpha(0.0), 1.0);
        assert!(overlap_from_alpha(10.0) < 1e-80);
        let a = math::sqrt(core::f64::consts::LN_2 / 2.0);
        assert_abs_diff_eq!(overlap_from_alpha(a), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn config_validation() {
        let c = cat_overlap_config(&cat(0.5, Parity::Even)).unwrap();
        assert_eq!(c.overlaps(), [0.5; 3]);
        assert!(matches!(
            CatConfig::from_alpha(0.0, Parity::Odd),
            Err(Error::SingularNormalization(_))
        ));
        assert!(CatConfig::from_alpha(0.0, Parity::Even).is_ok());
        assert!(CatConfig::from_alpha(-1.0, Parity::Even).is_err());
        assert!(CatConfig::from_overlap(1.5, Parity::Even).is_err());
    }

    #[test]
    fn large_amplitude_is_ghz() {
        for parity in [Parity::Even, Parity::Odd] {
            let cfg = cat_overlap_config(&CatConfig::from_alpha(8.0, parity).unwrap()).unwrap();
            let cf = cat_closed_forms(&CatConfig::from_alpha(8.0, parity).unwrap());
            assert_abs_diff_eq!(cf.c_pure, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(cf.c_pair, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(full_state_qubits(&cfg).iter().map(|a| a.norm_sqr()).sum::<f64>(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn w_limit() {
        let cf = cat_closed_forms(&cat(ODD_PARITY_P_CAP, Parity::Odd));
        assert_abs_diff_eq!(cf.c_pair, 2.0 / 3.0, epsilon = 1e-4);
        assert_abs_diff_eq!(cf.tangle, 0.0, epsilon = 1e-4);
    }

    fn assert_closed_forms_match(p: f64, parity: Parity, tol: f64) {
        let cf = cat_closed_forms(&cat(p, parity));
        let cfg = OverlapConfig::symmetric(p, parity).unwrap();
        let pairs = [
            (cf.c_pure, SweepQuantity::CPure),
            (cf.c_pair, SweepQuantity::CPair),
            (cf.tangle, SweepQuantity::Tangle),
            (cf.c2_global, SweepQuantity::C2Global),
            (cf.e_pure, SweepQuantity::EPure),
            (cf.e_pair, SweepQuantity::EPair),
            (cf.e_residual, SweepQuantity::EResidual),
            (cf.e_global, SweepQuantity::EGlobal),
            (cf.e_global, SweepQuantity::DGlobal),
            (cf.dg_pure, SweepQuantity::DgPure),
            (cf.dg_pair, SweepQuantity::DgPair),
            (cf.dg_residual, SweepQuantity::DgResidual),
            (cf.dg_global, SweepQuantity::DgGlobal),
        ];
        for (closed, q) in pairs {
            let general = q.evaluate(&cfg, false);
            assert!(
                (closed - general).abs() < tol,
                "{parity} p={p} {}: {closed} vs {general}",
                q.column(false)
            );
        }
    }

    #[test]
    fn closed_forms_match_general_routines() {
        for n in 0..=1000 {
            assert_closed_forms_match(n as f64 / 1000.0, Parity::Even, 1e-12);
        }
        for n in 0..1000 {
            assert_closed_forms_match(n as f64 / 1000.0, Parity::Odd, 1e-12);
        }
        // 1 - p^3 ~ 3e-6 here, so cancellations lose ~5 digits
        assert_closed_forms_match(ODD_PARITY_P_CAP, Parity::Odd, 1e-9);
    }

    #[test]
    fn odd_dg_residual_formula() {
        for n in 0..1000 {
            let p = n as f64 / 1000.0;
            let cf = cat_closed_forms(&cat(p, Parity::Odd));
            let expect = 0.5 * (1.0 + 2.0 * p - p * p) / (1.0 + p + p * p).powi(2);
            assert_abs_diff_eq!(cf.dg_residual, expect, epsilon = 1e-12);
            assert!(cf.dg_residual > 0.0);
        }
    }

    #[test]
    fn even_branches_meet_at_branch_point() {
        let (a, b) = dg_pair_branches(even_branch_point(), Parity::Even);
        assert!((a - b).abs() < 1e-12);
        let global = |p: f64| cat_closed_forms(&cat(p, Parity::Even)).dg_global;
        let x = even_branch_point();
        assert!((global(x - 1e-12) - global(x + 1e-12)).abs() < 1e-10);
    }

    #[test]
    fn even_global_dg_branch_expressions() {
        let dg = |p: f64| cat_closed_forms(&cat(p, Parity::Even)).dg_global;
        // below the branch point: (1 + p)^2 [(1 - p)^2 (2 + 3 p^2) + 2 p^2] / (8 d^2)
        for p in [0.0f64, 0.1, 0.2, 0.4] {
            let d = 1.0 + p * p * p;
            let expect = (1.0 + p).powi(2) * ((1.0 - p).powi(2) * (2.0 + 3.0 * p * p) + 2.0 * p * p) / (8.0 * d * d);
            assert_abs_diff_eq!(dg(p), expect, epsilon = 1e-12);
        }
        // above: 3 (1 + p^2)(1 - p^2)^2 / (8 d^2)
        for p in [0.5f64, 0.7, 0.9, 1.0] {
            let d = 1.0 + p * p * p;
            let expect = 3.0 * (1.0 + p * p) * (1.0 - p * p).powi(2) / (8.0 * d * d);
            assert_abs_diff_eq!(dg(p), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn eof_crossover_band() {
        let odd = eof_crossover(Parity::Odd, 1000).unwrap();
        assert_eq!(odd.sign_changes, 1);
        let root = odd.root.unwrap();
        assert!((0.75..=0.85).contains(&root), "{root}");
        // the even residual turns slightly negative close to p = 1
        let even = eof_crossover(Parity::Even, 1000).unwrap();
        assert_eq!(even.sign_changes, 1);
        assert_abs_diff_eq!(even.root.unwrap(), 0.888_259_231, epsilon = 1e-8);
        assert!(even.min_residual > -8e-4);
    }

    #[test]
    fn sweep_examples() {
        let t = sweep(Parity::Odd, 0.0, 0.99, 100, &[SweepQuantity::EResidual], false).unwrap();
        let col = t.column("E_residual").unwrap();
        assert_eq!(col.windows(2).filter(|w| (w[0] >= 0.0) != (w[1] >= 0.0)).count(), 1);

        let t = sweep(Parity::Even, 0.0, 1.0, 50, &[SweepQuantity::EResidual], false).unwrap();
        for row in &t.rows {
            if row[0] <= 0.888 {
                assert!(row[1] >= -1e-10);
            }
        }

        let t = sweep(Parity::Even, 0.0, 1.0, 11, &SweepQuantity::ALL, true).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert!(t.rows.iter().flatten().all(|v| v.is_finite()));
        let (d, e) = (t.column("D_global").unwrap(), t.column("E_global").unwrap());
        for (x, y) in d.iter().zip(&e) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!(t.column_index("2Dg_global").is_some());
        assert!(t.rows.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        for (parity, lo, hi, steps) in [
            (Parity::Even, 0.5, 0.5, 10),
            (Parity::Even, 0.0, 1.0, 1),
            (Parity::Odd, 0.0, 1.0, 10),
            (Parity::Even, -0.1, 0.5, 10),
            (Parity::Even, 0.0, 1.1, 10),
        ] {
            assert!(matches!(sweep(parity, lo, hi, steps, &[SweepQuantity::CPair], false), Err(Error::InvalidRange { .. })));
        }
    }

    #[test]
    fn figures() {
        let f1 = Figure::from_number(1).unwrap().table().unwrap();
        assert_eq!(f1.columns, ["p", "E_residual_even", "E_residual_odd"]);
        assert_eq!(f1.rows.len(), FIGURE_STEPS);
        let f3 = Figure::GlobalOdd.table().unwrap();
        assert_eq!(f3.rows.last().unwrap()[0], ODD_PARITY_P_CAP);
        assert_eq!(f3.columns, ["p", "C2_global", "D_global", "E_global", "2Dg_global"]);
        assert!(Figure::from_number(4).is_err());

        // global discord dominates near the W end
        let cfg = OverlapConfig::symmetric(0.95, Parity::Odd).unwrap();
        let e = SweepQuantity::EGlobal.evaluate(&cfg, true);
        assert!(e > SweepQuantity::C2Global.evaluate(&cfg, true));
        assert!(e > SweepQuantity::DgGlobal.evaluate(&cfg, true));
    }
}
