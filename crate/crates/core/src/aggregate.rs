//! Global measures, monogamy residuals and conservation identities.
//!
//! The global value of a measure `Q` averages the twelve ordered bipartite
//! terms of a three-party state: each of the three pairs read from both
//! ends, and each of the three one-vs-two splits read from both ends,
//!
//! ```text
//! Q_(1,2,3) = 1/12 (Q_12 + Q_21 + Q_13 + Q_31 + Q_23 + Q_32
//!                   + Q_1(23) + Q_(23)1 + Q_2(13) + Q_(13)2 + Q_3(12) + Q_(12)3)
//! ```

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::mapping::{Bipartition, Mode, OverlapConfig};
use crate::measures::{
    concurrence_closed, delta_pm, discord_closed, eof_closed, geometric_discord_closed, Side,
};

/// A correlation measure that can be aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// Squared concurrence `C^2`.
    SquaredConcurrence,
    /// Entanglement of formation (bits).
    Eof,
    /// Entropic discord (bits).
    Discord,
    /// Geometric discord, raw or x2 normalized.
    GeometricDiscord,
}

impl MeasureKind {
    /// Every kind, in a fixed order.
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::SquaredConcurrence,
        MeasureKind::Eof,
        MeasureKind::Discord,
        MeasureKind::GeometricDiscord,
    ];

    /// Snake-case name, as accepted by [`FromStr`].
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::SquaredConcurrence => "squared_concurrence",
            MeasureKind::Eof => "eof",
            MeasureKind::Discord => "discord",
            MeasureKind::GeometricDiscord => "geometric_discord",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error for an unknown measure name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMeasure(pub String);

impl fmt::Display for UnknownMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown measure kind `{}` (expected squared_concurrence, eof, discord or geometric_discord)",
            self.0
        )
    }
}

impl FromStr for MeasureKind {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownMeasure(s.into()))
    }
}

/// One of the twelve ordered terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedTerm {
    /// The cut.
    pub bipartition: Bipartition,
    /// Which end is the reference (measured) party.
    pub side: Side,
    /// Term value.
    pub value: f64,
}

impl OrderedTerm {
    /// `"12"`, `"21"`, `"1(23)"`, `"(23)1"`, ...
    pub fn label(&self) -> String {
        match (self.bipartition, self.side) {
            (Bipartition::MixedPair(i, j), Side::First) => format!("{i}{j}"),
            (Bipartition::MixedPair(i, j), Side::Second) => format!("{j}{i}"),
            (Bipartition::PureSplit(k), Side::First) => {
                let (i, j) = k.others();
                format!("{k}({i}{j})")
            }
            (Bipartition::PureSplit(k), Side::Second) => {
                let (i, j) = k.others();
                format!("({i}{j}){k}")
            }
        }
    }
}

/// Residuals of the discord/EoF conservation identities (bits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationResiduals {
    /// `|sum D-> - sum E|` over the cyclic pairs 12, 23, 31.
    pub conservation: f64,
    /// `|sum Delta+ - sum E|`.
    pub delta_plus: f64,
    /// `|sum Delta-|`.
    pub delta_minus: f64,
}

impl ConservationResiduals {
    /// Largest of the three residuals.
    pub fn max(&self) -> f64 {
        self.conservation.max(self.delta_plus).max(self.delta_minus)
    }
}

/// Global value of one measure with its breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalReport {
    /// The measure.
    pub kind: MeasureKind,
    /// `(1/12) * sum(terms)`.
    pub value: f64,
    /// Pairs 12, 13, 23 then splits 1, 2, 3; each read from both ends.
    pub terms: [OrderedTerm; 12],
    /// Monogamy residuals with modes 1, 2, 3 as pivot.
    pub monogamy: [f64; 3],
    /// Conservation identity residuals (independent of `kind`).
    pub conservation: ConservationResiduals,
    /// Whether geometric discord carries the x2 normalization.
    pub normalized: bool,
}

/// Which end of a pair is measured in a monogamy residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonogamyConvention {
    /// The pivot is the measured party on every term.
    #[default]
    PivotMeasured,
    /// The pivot's partners are measured on the pair terms.
    PartnerMeasured,
}

/// A single ordered term.
pub fn term(cfg: &OverlapConfig, kind: MeasureKind, b: Bipartition, side: Side, normalized: bool) -> f64 {
    match kind {
        MeasureKind::SquaredConcurrence => {
            let c = concurrence_closed(cfg, b);
            c * c
        }
        MeasureKind::Eof => eof_closed(cfg, b),
        MeasureKind::Discord => discord_closed(cfg, b, side),
        MeasureKind::GeometricDiscord => {
            let g = geometric_discord_closed(cfg, b, side);
            if normalized {
                2.0 * g
            } else {
                g
            }
        }
    }
}

/// Global measure on the raw scale.
pub fn global_measure(cfg: &OverlapConfig, kind: MeasureKind) -> GlobalReport {
    global_measure_scaled(cfg, kind, false)
}

/// Global measure; `normalized` doubles geometric-discord terms.
pub fn global_measure_scaled(cfg: &OverlapConfig, kind: MeasureKind, normalized: bool) -> GlobalReport {
    let cuts = Bipartition::all();
    let terms: [OrderedTerm; 12] = core::array::from_fn(|n| {
        let bipartition = cuts[n / 2];
        let side = Side::BOTH[n % 2];
        OrderedTerm {
            bipartition,
            side,
            value: term(cfg, kind, bipartition, side, normalized),
        }
    });
    let value = terms.iter().map(|t| t.value).sum::<f64>() / 12.0;
    let monogamy = Mode::ALL.map(|m| monogamy_residual_with(cfg, kind, m, MonogamyConvention::PivotMeasured, normalized));
    GlobalReport {
        kind,
        value,
        terms,
        monogamy,
        conservation: conservation_check(cfg),
        normalized,
    }
}

/// `Q_pivot(rest) - Q_pivot,b - Q_pivot,c` with the pivot measured; raw scale.
pub fn monogamy_residual(cfg: &OverlapConfig, kind: MeasureKind, pivot: Mode) -> f64 {
    monogamy_residual_with(cfg, kind, pivot, MonogamyConvention::PivotMeasured, false)
}

/// [`monogamy_residual`] with an explicit side convention and scale.
pub fn monogamy_residual_with(
    cfg: &OverlapConfig,
    kind: MeasureKind,
    pivot: Mode,
    convention: MonogamyConvention,
    normalized: bool,
) -> f64 {
    let side = match convention {
        MonogamyConvention::PivotMeasured => Side::First,
        MonogamyConvention::PartnerMeasured => Side::Second,
    };
    let (b, c) = pivot.others();
    term(cfg, kind, Bipartition::PureSplit(pivot), Side::First, normalized)
        - term(cfg, kind, Bipartition::MixedPair(pivot, b), side, normalized)
        - term(cfg, kind, Bipartition::MixedPair(pivot, c), side, normalized)
}

/// Three-tangle `C^2_pivot(rest) - C^2_pivot,b - C^2_pivot,c`.
pub fn tangle(cfg: &OverlapConfig, pivot: Mode) -> f64 {
    monogamy_residual(cfg, MeasureKind::SquaredConcurrence, pivot)
}

/// Residuals of `sum D-> = sum E`, `sum Delta+ = sum E` and `sum Delta- = 0`
/// over the pairs (1,2), (2,3), (3,1).
pub fn conservation_check(cfg: &OverlapConfig) -> ConservationResiduals {
    let cyclic = [
        (Mode::ONE, Mode::TWO),
        (Mode::TWO, Mode::THREE),
        (Mode::THREE, Mode::ONE),
    ];
    let (mut d, mut e, mut plus, mut minus) = (0.0, 0.0, 0.0, 0.0);
    for (i, j) in cyclic {
        let b = Bipartition::MixedPair(i, j);
        d += discord_closed(cfg, b, Side::First);
        e += eof_closed(cfg, b);
        let (dp, dm) = delta_pm(cfg, i, j);
        plus += dp;
        minus += dm;
    }
    ConservationResiduals {
        conservation: (d - e).abs(),
        delta_plus: (plus - e).abs(),
        delta_minus: minus.abs(),
    }
}

/// Validates a monogamy pivot given as a mode number.
pub fn pivot(number: u8) -> Result<Mode> {
    Mode::new(number).map_err(|_| Error::OutOfRange {
        name: "pivot",
        value: number as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::Parity;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn sym(p: f64, parity: Parity) -> OverlapConfig {
        OverlapConfig::symmetric(p, parity).unwrap()
    }

    #[test]
    fn global_squared_concurrence_examples() {
        let ghz = sym(0.0, Parity::Even);
        assert_abs_diff_eq!(global_measure(&ghz, MeasureKind::SquaredConcurrence).value, 0.5, epsilon = 1e-15);
        let half = sym(0.5, Parity::Even);
        let g = global_measure(&half, MeasureKind::SquaredConcurrence);
        assert_abs_diff_eq!(g.value, 1.0 / 3.0, epsilon = 1e-12);
        let p = 0.5f64;
        let printed = 0.5 * (1.0 + 2.0 * p * p) * (1.0 - p * p).powi(2) / (1.0 + p * p * p).powi(2);
        assert_abs_diff_eq!(g.value, printed, epsilon = 1e-12);
    }

    #[test]
    fn global_geometric_discord_of_ghz() {
        let ghz = sym(0.0, Parity::Even);
        let g = global_measure(&ghz, MeasureKind::GeometricDiscord);
        assert_abs_diff_eq!(g.value, 0.25, epsilon = 1e-15);
        let n = global_measure_scaled(&ghz, MeasureKind::GeometricDiscord, true);
        assert_abs_diff_eq!(n.value, 0.5, epsilon = 1e-15);
        assert!(n.normalized);
    }

    #[test]
    fn term_labels_and_order() {
        let g = global_measure(&sym(0.3, Parity::Odd), MeasureKind::Eof);
        let labels: alloc::vec::Vec<String> = g.terms.iter().map(|t| t.label()).collect();
        assert_eq!(
            labels,
            ["12", "21", "13", "31", "23", "32", "1(23)", "(23)1", "2(13)", "(13)2", "3(12)", "(12)3"]
        );
        let sum: f64 = g.terms.iter().map(|t| t.value).sum();
        assert_eq!(g.value, sum / 12.0);
    }

    #[test]
    fn tangle_examples() {
        assert_abs_diff_eq!(tangle(&sym(0.0, Parity::Even), Mode::ONE), 1.0, epsilon = 1e-15);
        // (1 - p^2)^3 / d^2 = 0.421875 / 1.265625
        assert_abs_diff_eq!(tangle(&sym(0.5, Parity::Even), Mode::ONE), 1.0 / 3.0, epsilon = 1e-12);
        let near_w = sym(1.0 - 1e-6, Parity::Odd);
        assert!(tangle(&near_w, Mode::TWO).abs() < 1e-4);
    }

    #[test]
    fn symmetric_tangle_formula() {
        for parity in [Parity::Even, Parity::Odd] {
            for n in 0..100 {
                let p = n as f64 / 100.0;
                let c = parity.sign();
                let expect = (1.0 - p * p).powi(3) / (1.0 + p * p * p * c).powi(2);
                assert_abs_diff_eq!(tangle(&sym(p, parity), Mode::THREE), expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn odd_geometric_discord_residual() {
        for n in 0..100 {
            let p = n as f64 / 100.0;
            let r = monogamy_residual(&sym(p, Parity::Odd), MeasureKind::GeometricDiscord, Mode::ONE);
            let expect = 0.5 * (1.0 + 2.0 * p - p * p) / (1.0 + p + p * p).powi(2);
            assert_abs_diff_eq!(r, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn odd_eof_residual_changes_sign_once() {
        let r = |p: f64| monogamy_residual(&sym(p, Parity::Odd), MeasureKind::Eof, Mode::ONE);
        let signs: alloc::vec::Vec<bool> = (0..100).map(|n| r(n as f64 * 0.99 / 99.0) >= 0.0).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1);
        assert!(r(0.75) > 0.0 && r(0.85) < 0.0);
    }

    #[test]
    fn even_eof_residual_dips_below_zero_near_one() {
        // E_pure - 2 E_pair at p = 0.9, matching an independent full-state evaluation
        let r = monogamy_residual(&sym(0.9, Parity::Even), MeasureKind::Eof, Mode::ONE);
        assert_abs_diff_eq!(r, -4.252382206e-4, epsilon = 1e-12);
        assert!(monogamy_residual(&sym(0.88, Parity::Even), MeasureKind::Eof, Mode::ONE) > 0.0);
        assert_eq!(monogamy_residual(&sym(1.0, Parity::Even), MeasureKind::Eof, Mode::ONE), 0.0);
    }

    #[test]
    fn conservation_examples() {
        let z = conservation_check(&sym(0.0, Parity::Even));
        assert!(z.max() < 1e-15);
        for cfg in [
            OverlapConfig::new(0.3, 0.6, 0.9, Parity::Even).unwrap(),
            OverlapConfig::new(0.2, 0.5, 0.8, Parity::Odd).unwrap(),
        ] {
            assert!(conservation_check(&cfg).max() < 1e-9);
        }
    }

    #[test]
    fn partner_convention_differs_for_discord() {
        let cfg = OverlapConfig::new(0.2, 0.5, 0.8, Parity::Even).unwrap();
        let a = monogamy_residual_with(&cfg, MeasureKind::Discord, Mode::ONE, MonogamyConvention::PivotMeasured, false);
        let b = monogamy_residual_with(&cfg, MeasureKind::Discord, Mode::ONE, MonogamyConvention::PartnerMeasured, false);
        assert!((a - b).abs() > 1e-6);
        assert_eq!(a, monogamy_residual(&cfg, MeasureKind::Discord, Mode::ONE));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in MeasureKind::ALL {
            assert_eq!(k.name().parse::<MeasureKind>().unwrap(), k);
        }
        assert!("tangle".parse::<MeasureKind>().is_err());
        assert!(pivot(4).is_err());
    }

    fn config() -> impl Strategy<Value = OverlapConfig> {
        (0.0..=0.95f64, 0.0..=0.95f64, 0.0..=0.95f64, any::<bool>()).prop_map(|(a, b, c, odd)| {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            OverlapConfig::new(a, b, c, parity).unwrap()
        })
    }

    proptest! {
        #[test]
        fn discord_global_equals_eof_global(cfg in config()) {
            let d = global_measure(&cfg, MeasureKind::Discord).value;
            let e = global_measure(&cfg, MeasureKind::Eof).value;
            prop_assert!((d - e).abs() < 1e-10);
        }

        #[test]
        fn conservation_holds(cfg in config()) {
            prop_assert!(conservation_check(&cfg).max() < 1e-9);
        }

        #[test]
        fn tangle_nonnegative(
            a in 0.0..=1.0f64, b in 0.0..=1.0f64, c in 0.0..=1.0f64, odd in any::<bool>()
        ) {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            if let Ok(cfg) = OverlapConfig::new(a, b, c, parity) {
                for m in Mode::ALL {
                    prop_assert!(tangle(&cfg, m) >= -1e-10);
                }
            }
        }

        #[test]
        fn symmetric_monogamy(p in 0.0..0.999f64, odd in any::<bool>()) {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            let cfg = sym(p, parity);
            prop_assert!(monogamy_residual(&cfg, MeasureKind::GeometricDiscord, Mode::ONE) >= -1e-10);
            if !odd && p <= 0.888 {
                prop_assert!(monogamy_residual(&cfg, MeasureKind::Eof, Mode::ONE) >= -1e-10);
            }
        }
    }
}
