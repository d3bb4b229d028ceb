//! The tripartite state `N(|psi_1 psi_2 psi_3> + e^{i m pi} |phi_1 phi_2 phi_3>)`
//! and its qubit encodings.
//!
//! Every mode is encoded in the orthonormal basis in which
//! `|psi_i> = a_i|0> + b_i|1>` and `|phi_i> = a_i|0> - b_i|1>`, with
//! `a_i = sqrt((1+p_i)/2)` and `b_i = sqrt((1-p_i)/2)`; `|0>` carries the
//! symmetric combination. Two-qubit bases are ordered `|00>, |01>, |10>, |11>`
//! with the first-named mode as the most significant qubit.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, C64};
use crate::math;

/// Smallest admissible value of `1 + p1 p2 p3 cos(m pi)`.
pub const NORMALIZATION_EPS: f64 = 1e-9;

/// Sign of `cos(m pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `m` even, `cos(m pi) = +1`.
    Even,
    /// `m` odd, `cos(m pi) = -1`.
    Odd,
}

impl Parity {
    /// `cos(m pi)` as a float.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    /// Lower-case name, as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the three modes, numbered 1 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode(u8);

impl Mode {
    /// Mode 1.
    pub const ONE: Mode = Mode(1);
    /// Mode 2.
    pub const TWO: Mode = Mode(2);
    /// Mode 3.
    pub const THREE: Mode = Mode(3);
    /// All modes in order.
    pub const ALL: [Mode; 3] = [Mode::ONE, Mode::TWO, Mode::THREE];

    /// Validates a 1-based mode number.
    pub fn new(number: u8) -> Result<Self> {
        if (1..=3).contains(&number) {
            Ok(Mode(number))
        } else {
            Err(Error::InvalidBipartition)
        }
    }

    /// 1-based number.
    pub fn number(self) -> u8 {
        self.0
    }

    /// 0-based index.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    /// The two other modes, in increasing order.
    pub fn others(self) -> (Mode, Mode) {
        match self.0 {
            1 => (Mode(2), Mode(3)),
            2 => (Mode(1), Mode(3)),
            _ => (Mode(1), Mode(2)),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The mode not in `{i, j}`; `i != j` is assumed.
pub fn spectator(i: Mode, j: Mode) -> Mode {
    Mode(6 - i.0 - j.0)
}

/// A cut of the three modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bipartition {
    /// Mode `k` against the other two; the joint state stays pure.
    PureSplit(Mode),
    /// The ordered pair `(i, j)` with the third mode traced out.
    MixedPair(Mode, Mode),
}

impl Bipartition {
    /// Validated mixed pair.
    pub fn pair(i: Mode, j: Mode) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidBipartition);
        }
        Ok(Bipartition::MixedPair(i, j))
    }

    /// The three pure splits followed by the three pairs (1,2), (1,3), (2,3).
    pub fn all() -> [Bipartition; 6] {
        use Bipartition::*;
        [
            MixedPair(Mode::ONE, Mode::TWO),
            MixedPair(Mode::ONE, Mode::THREE),
            MixedPair(Mode::TWO, Mode::THREE),
            PureSplit(Mode::ONE),
            PureSplit(Mode::TWO),
            PureSplit(Mode::THREE),
        ]
    }

    /// Short label: `12` for a pair, `1(23)` for a split.
    pub fn label(self) -> alloc::string::String {
        match self {
            Bipartition::MixedPair(i, j) => alloc::format!("{i}{j}"),
            Bipartition::PureSplit(k) => {
                let (i, j) = k.others();
                alloc::format!("{k}({i}{j})")
            }
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Overlaps `p_i = <psi_i|phi_i>` and parity of the tripartite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapConfig {
    p: [f64; 3],
    parity: Parity,
}

impl OverlapConfig {
    /// Validates overlaps in `[0, 1]` and a normalizable state.
    pub fn new(p1: f64, p2: f64, p3: f64, parity: Parity) -> Result<Self> {
        for (value, name) in [(p1, "p1"), (p2, "p2"), (p3, "p3")] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange { name, value });
            }
        }
        let cfg = Self {
            p: [p1, p2, p3],
            parity,
        };
        let denom = cfg.denominator();
        if denom < NORMALIZATION_EPS {
            return Err(Error::SingularNormalization(denom));
        }
        Ok(cfg)
    }

    /// Symmetric configuration `(p, p, p)`.
    pub fn symmetric(p: f64, parity: Parity) -> Result<Self> {
        Self::new(p, p, p, parity)
    }

    /// Overlap of a mode.
    pub fn p(&self, mode: Mode) -> f64 {
        self.p[mode.index()]
    }

    /// All three overlaps.
    pub fn overlaps(&self) -> [f64; 3] {
        self.p
    }

    /// Parity of the superposition.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `cos(m pi)`.
    pub fn cos_m_pi(&self) -> f64 {
        self.parity.sign()
    }

    /// `p1 p2 p3`.
    pub fn product(&self) -> f64 {
        self.p[0] * self.p[1] * self.p[2]
    }

    /// `1 + p1 p2 p3 cos(m pi)`, the denominator of every closed form.
    pub fn denominator(&self) -> f64 {
        1.0 + self.product() * self.cos_m_pi()
    }

    /// `q_ij = p1 p2 p3 / (p_i p_j)`, i.e. the overlap of the spectator.
    pub fn q(&self, i: Mode, j: Mode) -> f64 {
        self.p(spectator(i, j))
    }

    /// `a_i = sqrt((1 + p_i)/2)`.
    pub fn a(&self, mode: Mode) -> f64 {
        math::sqrt(0.5 * (1.0 + self.p(mode)))
    }

    /// `b_i = sqrt((1 - p_i)/2)`.
    pub fn b(&self, mode: Mode) -> f64 {
        math::sqrt(0.5 * (1.0 - self.p(mode)))
    }
}

/// `N = [2 + 2 p1 p2 p3 cos(m pi)]^(-1/2)`.
pub fn normalization(cfg: &OverlapConfig) -> f64 {
    1.0 / math::sqrt(2.0 * cfg.denominator())
}

/// Amplitudes of the state written on the qubit pair (mode k, modes ij).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure {
    /// `C_00, C_01, C_10, C_11`.
    pub amplitudes: [f64; 4],
}

impl TwoQubitPure {
    /// Amplitudes as a complex vector.
    pub fn to_vector(&self) -> Vec<C64> {
        self.amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    /// `|Psi><Psi|`.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(&self.to_vector())
    }

    /// Sum of squared amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|x| x * x).sum()
    }
}

/// Mode `k` against the pair `ij`, encoded on two qubits. The pair qubit uses
/// `|0>_ij ~ |psi_i psi_j> + |phi_i phi_j>` and `|1>_ij ~ |psi_i psi_j> - |phi_i phi_j>`.
pub fn pure_split_state(cfg: &OverlapConfig, k: Mode) -> TwoQubitPure {
    let (i, j) = k.others();
    let n = normalization(cfg);
    let e = cfg.cos_m_pi();
    let pk = cfg.p(k);
    let pij = cfg.p(i) * cfg.p(j);
    let ck_plus = math::sqrt(0.5 * (1.0 + pk));
    let ck_minus = math::sqrt(0.5 * (1.0 - pk));
    let cij_plus = math::sqrt(0.5 * (1.0 + pij));
    let cij_minus = math::sqrt(0.5 * (1.0 - pij));
    TwoQubitPure {
        amplitudes: [
            n * (1.0 + e) * ck_plus * cij_plus,
            n * (1.0 - e) * ck_plus * cij_minus,
            n * (1.0 - e) * ck_minus * cij_plus,
            n * (1.0 + e) * ck_minus * cij_minus,
        ],
    }
}

fn mode_vectors(cfg: &OverlapConfig, mode: Mode) -> ([f64; 2], [f64; 2]) {
    let (a, b) = (cfg.a(mode), cfg.b(mode));
    ([a, b], [a, -b])
}

/// Reduced density of the ordered pair `(i, j)` after tracing out the third
/// mode: `N^2 (|psi psi><psi psi| + |phi phi><phi phi| + cos(m pi) q_ij (|phi phi><psi psi| + h.c.))`.
pub fn mixed_reduced_density(cfg: &OverlapConfig, i: Mode, j: Mode) -> Result<DensityMatrix> {
    if i == j {
        return Err(Error::InvalidBipartition);
    }
    let n = normalization(cfg);
    let n2 = n * n;
    let coherence = cfg.cos_m_pi() * cfg.q(i, j);
    let (psi_i, phi_i) = mode_vectors(cfg, i);
    let (psi_j, phi_j) = mode_vectors(cfg, j);
    let psi: [f64; 4] = core::array::from_fn(|r| psi_i[r / 2] * psi_j[r % 2]);
    let phi: [f64; 4] = core::array::from_fn(|r| phi_i[r / 2] * phi_j[r % 2]);
    let m = ComplexMatrix::from_fn(4, |r, c| {
        let v = psi[r] * psi[c] + phi[r] * phi[c] + coherence * (phi[r] * psi[c] + psi[r] * phi[c]);
        C64::new(n2 * v, 0.0)
    })?;
    DensityMatrix::new(m)
}

/// The full state on three qubits with the modes laid out in `order`
/// (first entry most significant).
pub fn full_state_in_order(cfg: &OverlapConfig, order: [Mode; 3]) -> Result<Vec<C64>> {
    let distinct = order[0] != order[1] && order[1] != order[2] && order[0] != order[2];
    if !distinct {
        return Err(Error::InvalidBipartition);
    }
    let n = normalization(cfg);
    let e = cfg.cos_m_pi();
    let vecs = order.map(|m| mode_vectors(cfg, m));
    Ok((0..8)
        .map(|idx| {
            let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            let psi: f64 = (0..3).map(|s| vecs[s].0[bits[s]]).product();
            let phi: f64 = (0..3).map(|s| vecs[s].1[bits[s]]).product();
            C64::new(n * (psi + e * phi), 0.0)
        })
        .collect())
}

/// The full state on three qubits, modes ordered 1, 2, 3.
pub fn full_state_qubits(cfg: &OverlapConfig) -> Vec<C64> {
    full_state_in_order(cfg, Mode::ALL).expect("canonical order is distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{
        binary_entropy, partial_trace, pauli, tensor, von_neumann_entropy, Subsystem,
    };
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_1_SQRT_2;
    use proptest::prelude::*;

    fn cfg(p1: f64, p2: f64, p3: f64, parity: Parity) -> OverlapConfig {
        OverlapConfig::new(p1, p2, p3, parity).unwrap()
    }

    fn hadamard() -> ComplexMatrix {
        (&pauli(1) + &pauli(3)).scale(FRAC_1_SQRT_2)
    }

    #[test]
    fn normalization_values() {
        assert_abs_diff_eq!(
            normalization(&cfg(0.0, 0.0, 0.0, Parity::Even)),
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(normalization(&cfg(1.0, 1.0, 1.0, Parity::Even)), 0.5, epsilon = 1e-15);
        assert!(matches!(
            OverlapConfig::new(1.0, 1.0, 1.0, Parity::Odd),
            Err(Error::SingularNormalization(_))
        ));
    }

    #[test]
    fn config_rejects_out_of_range() {
        assert!(matches!(
            OverlapConfig::new(-0.1, 0.5, 0.5, Parity::Even),
            Err(Error::OutOfRange { name: "p1", .. })
        ));
        assert!(OverlapConfig::new(0.5, f64::NAN, 0.5, Parity::Even).is_err());
        assert!(Mode::new(0).is_err());
        assert!(Mode::new(4).is_err());
        assert!(Bipartition::pair(Mode::ONE, Mode::ONE).is_err());
    }

    #[test]
    fn spectator_and_labels() {
        assert_eq!(spectator(Mode::ONE, Mode::TWO), Mode::THREE);
        assert_eq!(spectator(Mode::THREE, Mode::ONE), Mode::TWO);
        assert_eq!(Bipartition::PureSplit(Mode::TWO).label(), "2(13)");
        assert_eq!(Bipartition::MixedPair(Mode::THREE, Mode::ONE).label(), "31");
    }

    #[test]
    fn orthogonal_components_give_bell_split() {
        let s = pure_split_state(&cfg(0.0, 0.0, 0.0, Parity::Even), Mode::ONE);
        let expected = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, b) in s.amplitudes.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn odd_parity_zeroes_diagonal_amplitudes() {
        for k in Mode::ALL {
            let s = pure_split_state(&cfg(0.4, 0.4, 0.4, Parity::Odd), k);
            assert_eq!(s.amplitudes[0], 0.0);
            assert_eq!(s.amplitudes[3], 0.0);
            assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn ghz_pair_reduction_in_hadamard_frame() {
        // at p = 0 the encoding basis is the Hadamard image of {psi, phi}
        let rho = mixed_reduced_density(&cfg(0.0, 0.0, 0.0, Parity::Even), Mode::ONE, Mode::TWO)
            .unwrap();
        let hh = tensor(&hadamard(), &hadamard()).unwrap();
        let rotated = &(&hh * rho.matrix()) * &hh;
        let expected = ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(rotated.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn ghz_full_state_in_hadamard_frame() {
        for (parity, sign) in [(Parity::Even, 1.0), (Parity::Odd, -1.0)] {
            let psi = full_state_qubits(&cfg(0.0, 0.0, 0.0, parity));
            let h = hadamard();
            let hhh = tensor(&tensor(&h, &h).unwrap(), &h).unwrap();
            let out = hhh.apply(&psi).unwrap();
            let mut expected = vec![C64::new(0.0, 0.0); 8];
            expected[0] = C64::new(FRAC_1_SQRT_2, 0.0);
            expected[7] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
            for (a, b) in out.iter().zip(&expected) {
                assert!((a - b).norm() < 1e-15, "{parity}: {out:?}");
            }
        }
    }

    #[test]
    fn odd_parity_approaches_w_state_as_overlap_tends_to_one() {
        let psi = full_state_qubits(&cfg(1.0 - 1e-8, 1.0 - 1e-8, 1.0 - 1e-8, Parity::Odd));
        let w = 1.0 / math::sqrt(3.0);
        for (idx, amp) in psi.iter().enumerate() {
            let expected = if matches!(idx, 1 | 2 | 4) { w } else { 0.0 };
            assert!((amp.re - expected).abs() < 1e-4, "index {idx}: {}", amp.re);
        }
    }

    #[test]
    fn reduced_pair_is_rank_two() {
        let c = cfg(0.3, 0.6, 0.9, Parity::Odd);
        let rho = mixed_reduced_density(&c, Mode::ONE, Mode::THREE).unwrap();
        let eig = rho.eigenvalues().unwrap();
        assert!(eig.iter().filter(|&&v| v > 1e-10).count() <= 2);
        // N^2 (1 + p_i p_j)(1 + c p_k) and N^2 (1 - p_i p_j)(1 - c p_k)
        let n2 = normalization(&c) * normalization(&c);
        let (s, q) = (0.3 * 0.9, -0.6);
        let mut w = [n2 * (1.0 + s) * (1.0 + q), n2 * (1.0 - s) * (1.0 - q)];
        w.sort_by(|a, b| b.total_cmp(a));
        assert_abs_diff_eq!(eig[0], w[0], epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1], w[1], epsilon = 1e-12);
    }

    #[test]
    fn boundary_overlap_one_is_well_defined() {
        let c = cfg(1.0, 0.3, 0.5, Parity::Odd);
        let rho = mixed_reduced_density(&c, Mode::ONE, Mode::TWO).unwrap();
        assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-14);
        let s = pure_split_state(&c, Mode::ONE);
        assert_eq!(s.amplitudes[2], 0.0);
        assert_eq!(s.amplitudes[3], 0.0);
    }

    fn pair_from_full(c: &OverlapConfig, i: Mode, j: Mode) -> DensityMatrix {
        let k = spectator(i, j);
        let psi = full_state_in_order(c, [i, j, k]).unwrap();
        let full = DensityMatrix::from_pure(&psi).unwrap();
        partial_trace(&full, Subsystem::Second, 4, 2).unwrap()
    }

    fn overlap() -> impl Strategy<Value = f64> {
        0.0..=1.0f64
    }

    fn any_cfg() -> impl Strategy<Value = OverlapConfig> {
        (overlap(), overlap(), overlap(), any::<bool>()).prop_filter_map(
            "normalizable",
            |(a, b, c, odd)| {
                let parity = if odd { Parity::Odd } else { Parity::Even };
                OverlapConfig::new(a, b, c, parity)
                    .ok()
                    .filter(|cfg| cfg.denominator() > 1e-3)
            },
        )
    }

    proptest! {
        #[test]
        fn full_state_is_unit(c in any_cfg()) {
            let psi = full_state_qubits(&c);
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
        }

        #[test]
        fn pure_split_is_unit(c in any_cfg()) {
            for k in Mode::ALL {
                prop_assert!((pure_split_state(&c, k).norm_sqr() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn pair_density_matches_partial_trace(c in any_cfg()) {
            for (i, j) in [(Mode::ONE, Mode::TWO), (Mode::TWO, Mode::ONE), (Mode::ONE, Mode::THREE), (Mode::THREE, Mode::TWO)] {
                let direct = mixed_reduced_density(&c, i, j).unwrap();
                let traced = pair_from_full(&c, i, j);
                prop_assert!(direct.matrix().max_abs_diff(traced.matrix()) < 1e-10);
            }
        }

        #[test]
        fn pair_and_spectator_entropies_agree(c in any_cfg()) {
            let psi = full_state_qubits(&c);
            let full = DensityMatrix::from_pure(&psi).unwrap();
            // S(rho_23) = S(rho_1)
            let rho1 = partial_trace(&full, Subsystem::Second, 2, 4).unwrap();
            let rho23 = partial_trace(&full, Subsystem::First, 2, 4).unwrap();
            let s1 = von_neumann_entropy(&rho1).unwrap();
            let s23 = von_neumann_entropy(&rho23).unwrap();
            prop_assert!((s1 - s23).abs() < 1e-10);
        }

        #[test]
        fn split_marginal_entropy_is_eof_argument(c in any_cfg()) {
            for k in Mode::ALL {
                let (i, j) = k.others();
                let rho = pure_split_state(&c, k).density().unwrap();
                let marginal = partial_trace(&rho, Subsystem::Second, 2, 2).unwrap();
                let s = von_neumann_entropy(&marginal).unwrap();
                let arg = 0.5 + 0.5 * (c.p(k) + c.p(i) * c.p(j) * c.cos_m_pi()) / c.denominator();
                prop_assert!((s - binary_entropy(arg).unwrap()).abs() < 1e-9);
            }
        }
    }
}
