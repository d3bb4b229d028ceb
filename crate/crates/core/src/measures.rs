//! Bipartite correlation measures.
//!
//! Each measure comes in two flavours: a closed form evaluated directly from
//! an [`OverlapConfig`], and a generic numeric routine acting on a two-qubit
//! [`DensityMatrix`]. The two are independent routes to the same number and
//! the test suite pins them against each other.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{
    binary_entropy, hermitian_eigen, hermitian_eigenvalues, pauli, singular_values, tensor,
    ComplexMatrix, DensityMatrix, C64,
};
use crate::mapping::{spectator, Bipartition, Mode, OverlapConfig};
use crate::math;

/// Eigenvalues of a two-qubit density at or below this are treated as rank noise.
const RANK_CUTOFF: f64 = 1e-13;

/// Which half of an ordered pair is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Measure the first-named subsystem (`D->`).
    First,
    /// Measure the second-named subsystem (`D<-`).
    Second,
}

impl Side {
    /// Both sides, first then second.
    pub const BOTH: [Side; 2] = [Side::First, Side::Second];
}

/// `H` on an argument that is a probability up to rounding.
fn h(x: f64) -> f64 {
    binary_entropy(x.clamp(0.0, 1.0)).unwrap_or(0.0)
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Wootters concurrence of a two-qubit density.
///
/// With `rho = sum_k |w_k><w_k|` (subnormalized eigenvectors), the spin-flip
/// spectrum `sqrt(eig(rho (sy x sy) rho* (sy x sy)))` equals the singular
/// values of `tau_kl = w_k^T (sy x sy) w_l`. Working with `tau` keeps full
/// absolute precision on rank-deficient inputs.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let yy = tensor(&pauli(2), &pauli(2))?;
    let support: Vec<Vec<C64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > RANK_CUTOFF)
        .map(|(k, &v)| {
            let w = math::sqrt(v);
            eig.vector(k).into_iter().map(|z| z * w).collect()
        })
        .collect();
    let r = support.len();
    if r == 0 {
        return Ok(0.0);
    }
    let flipped: Vec<Vec<C64>> = support
        .iter()
        .map(|w| yy.apply(w))
        .collect::<Result<_>>()?;
    let mut tau = Vec::with_capacity(r * r);
    for wk in &support {
        for fl in &flipped {
            tau.push(wk.iter().zip(fl).map(|(a, b)| a * b).sum::<C64>());
        }
    }
    let sv = singular_values(r, &tau)?;
    let c = sv[0] - sv[1..].iter().sum::<f64>();
    Ok(c.max(0.0))
}

/// `E = H(1/2 + sqrt(1 - C^2)/2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    const SLACK: f64 = 1e-10;
    if !(-SLACK..=1.0 + SLACK).contains(&c) {
        return Err(Error::OutOfRange {
            name: "concurrence",
            value: c,
        });
    }
    let c = c.clamp(0.0, 1.0);
    Ok(h(0.5 + 0.5 * math::sqrt(1.0 - c * c)))
}

/// Closed-form concurrence of a split or pair.
pub fn concurrence_closed(cfg: &OverlapConfig, b: Bipartition) -> f64 {
    let d = cfg.denominator();
    match b {
        Bipartition::PureSplit(k) => {
            let (i, j) = k.others();
            let pk = cfg.p(k);
            let pij = cfg.p(i) * cfg.p(j);
            math::sqrt((1.0 - pk * pk) * (1.0 - pij * pij)) / d
        }
        Bipartition::MixedPair(i, j) => {
            let (pi, pj) = (cfg.p(i), cfg.p(j));
            cfg.q(i, j) * math::sqrt((1.0 - pi * pi) * (1.0 - pj * pj)) / d
        }
    }
}

/// Entropy of the single-mode marginal `rho_i`.
pub fn single_mode_entropy(cfg: &OverlapConfig, i: Mode) -> f64 {
    let (j, k) = i.others();
    let arg = (1.0 + cfg.p(i)) * (1.0 + cfg.p(j) * cfg.p(k) * cfg.cos_m_pi())
        / (2.0 * cfg.denominator());
    h(arg)
}

/// Entropy of the pair marginal `rho_ij`.
pub fn pair_entropy(cfg: &OverlapConfig, i: Mode, j: Mode) -> f64 {
    let arg = (1.0 + cfg.p(i) * cfg.p(j) * cfg.cos_m_pi()) * (1.0 + cfg.q(i, j))
        / (2.0 * cfg.denominator());
    h(arg)
}

/// Closed-form entanglement of formation.
pub fn eof_closed(cfg: &OverlapConfig, b: Bipartition) -> f64 {
    let d = cfg.denominator();
    match b {
        Bipartition::PureSplit(k) => {
            let (i, j) = k.others();
            let shift = (cfg.p(k) + cfg.p(i) * cfg.p(j) * cfg.cos_m_pi()) / d;
            h(0.5 + 0.5 * shift)
        }
        Bipartition::MixedPair(i, j) => {
            let k = spectator(i, j);
            let (pi, pj) = (cfg.p(i), cfg.p(j));
            let c2 = cfg.p(k) * cfg.p(k) * (1.0 - pi * pi) * (1.0 - pj * pj) / (d * d);
            h(0.5 + 0.5 * math::sqrt((1.0 - c2).max(0.0)))
        }
    }
}

/// Closed-form entropic discord. For a pair `(i, j)` measured on `i`:
/// `S_i - S_ij + E_jk`; measured on `j`: `S_j - S_ij + E_ik`. On a pure split
/// discord equals the entanglement of formation.
pub fn discord_closed(cfg: &OverlapConfig, b: Bipartition, side: Side) -> f64 {
    match b {
        Bipartition::PureSplit(_) => eof_closed(cfg, b),
        Bipartition::MixedPair(i, j) => {
            let (measured, other) = match side {
                Side::First => (i, j),
                Side::Second => (j, i),
            };
            let k = spectator(i, j);
            single_mode_entropy(cfg, measured) - pair_entropy(cfg, i, j)
                + eof_closed(cfg, Bipartition::MixedPair(other, k))
        }
    }
}

/// `(Delta+, Delta-) = ((D-> + D<-)/2, (D-> - D<-)/2)` for the pair `(i, j)`.
pub fn delta_pm(cfg: &OverlapConfig, i: Mode, j: Mode) -> (f64, f64) {
    let b = Bipartition::MixedPair(i, j);
    let fwd = discord_closed(cfg, b, Side::First);
    let bwd = discord_closed(cfg, b, Side::Second);
    (0.5 * (fwd + bwd), 0.5 * (fwd - bwd))
}

/// Local Bloch vectors and correlation tensor of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    /// `x_i = Tr rho (sigma_i x 1)`.
    pub x: [f64; 3],
    /// `y_i = Tr rho (1 x sigma_i)`.
    pub y: [f64; 3],
    /// `R_ij = Tr rho (sigma_i x sigma_j)`.
    pub r: [[f64; 3]; 3],
}

impl BlochForm {
    /// `(1/4)[1 + x.sigma x 1 + 1 x y.sigma + sum R_ij sigma_i x sigma_j]`.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let mut acc = tensor(&pauli(0), &pauli(0))?;
        for a in 0..3 {
            acc = &acc + &tensor(&pauli(a + 1), &pauli(0))?.scale(self.x[a]);
            acc = &acc + &tensor(&pauli(0), &pauli(a + 1))?.scale(self.y[a]);
            for b in 0..3 {
                acc = &acc + &tensor(&pauli(a + 1), &pauli(b + 1))?.scale(self.r[a][b]);
            }
        }
        Ok(acc.scale(0.25))
    }

    /// `K = v v^T + R R^T` for the measured side, with `(v, R) = (x, R)` when
    /// the first qubit is measured and `(y, R^T)` for the second.
    pub fn k_matrix(&self, side: Side) -> [[f64; 3]; 3] {
        let (v, r) = match side {
            Side::First => (self.x, self.r),
            Side::Second => {
                let rt = core::array::from_fn(|a| core::array::from_fn(|b| self.r[b][a]));
                (self.y, rt)
            }
        };
        core::array::from_fn(|a| {
            core::array::from_fn(|b| v[a] * v[b] + (0..3).map(|c| r[a][c] * r[b][c]).sum::<f64>())
        })
    }
}

/// Decomposes a two-qubit density on the Pauli basis.
pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochForm> {
    require_two_qubit(rho)?;
    let expect = |a: usize, b: usize| -> Result<f64> {
        let op = tensor(&pauli(a), &pauli(b))?;
        Ok((rho.matrix() * &op).trace().re)
    };
    let mut form = BlochForm {
        x: [0.0; 3],
        y: [0.0; 3],
        r: [[0.0; 3]; 3],
    };
    for a in 0..3 {
        form.x[a] = expect(a + 1, 0)?;
        form.y[a] = expect(0, a + 1)?;
        for b in 0..3 {
            form.r[a][b] = expect(a + 1, b + 1)?;
        }
    }
    Ok(form)
}

/// Eigenvalues (descending) of the `K` matrix of `rho` for the measured side.
pub fn k_eigenvalues(rho: &DensityMatrix, side: Side) -> Result<[f64; 3]> {
    let k = bloch_decompose(rho)?.k_matrix(side);
    let flat: Vec<f64> = k.iter().flatten().copied().collect();
    let values = hermitian_eigenvalues(&ComplexMatrix::from_real(3, &flat)?)?;
    Ok([values[0], values[1], values[2]])
}

/// Geometric discord on the raw scale (at most 1/2 for two qubits): a quarter
/// of the sum of the two smallest eigenvalues of `K`.
pub fn geometric_discord(rho: &DensityMatrix, side: Side) -> Result<f64> {
    let l = k_eigenvalues(rho, side)?;
    Ok(0.25 * (l[1] + l[2]))
}

/// Geometric discord rescaled by 2 so that its maximum is 1.
pub fn geometric_discord_normalized(rho: &DensityMatrix, side: Side) -> Result<f64> {
    Ok(2.0 * geometric_discord(rho, side)?)
}

/// Closed-form `K` eigenvalues of the pair `(i, j)`:
/// `[lambda_K1, lambda_K2, lambda_K3]` with `lambda_K1 = K_33` of the measured
/// side, `lambda_K2 = 4N^4 (1-p_i^2)(1-p_j^2)` and `lambda_K3 = lambda_K2 p_k^2`.
pub fn pair_k_eigenvalues_closed(cfg: &OverlapConfig, i: Mode, j: Mode, side: Side) -> [f64; 3] {
    let k = spectator(i, j);
    let (measured, other) = match side {
        Side::First => (i, j),
        Side::Second => (j, i),
    };
    let d = cfg.denominator();
    let scale = 1.0 / (d * d); // 4 N^4
    let c = cfg.cos_m_pi();
    let (pa, pb, pk) = (cfg.p(measured), cfg.p(other), cfg.p(k));
    let local = pa + pb * pk * c;
    let corr = pa * pb + pk * c;
    let l1 = scale * (local * local + corr * corr);
    let (pi, pj) = (cfg.p(i), cfg.p(j));
    let l2 = scale * (1.0 - pi * pi) * (1.0 - pj * pj);
    let l3 = l2 * pk * pk;
    [l1, l2, l3]
}

/// Closed-form geometric discord (raw scale). Pure splits are side
/// independent and equal `C^2 / 2`; pairs take `min(l1 + l3, l2 + l3) / 4`.
pub fn geometric_discord_closed(cfg: &OverlapConfig, b: Bipartition, side: Side) -> f64 {
    match b {
        Bipartition::PureSplit(k) => {
            let (i, j) = k.others();
            let pk = cfg.p(k);
            let pij = cfg.p(i) * cfg.p(j);
            let d = cfg.denominator();
            0.5 * (1.0 - pk * pk) * (1.0 - pij * pij) / (d * d)
        }
        Bipartition::MixedPair(i, j) => {
            let [l1, l2, l3] = pair_k_eigenvalues_closed(cfg, i, j, side);
            if l1 > l2 {
                0.25 * (l2 + l3)
            } else {
                0.25 * (l1 + l3)
            }
        }
    }
}

/// All closed-form measures of one bipartition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseReport {
    /// The cut.
    pub bipartition: Bipartition,
    /// Wootters concurrence.
    pub concurrence: f64,
    /// Entanglement of formation (bits).
    pub eof: f64,
    /// Discord measured on the first-named side (bits).
    pub discord_forward: f64,
    /// Discord measured on the second-named side (bits).
    pub discord_backward: f64,
    /// Geometric discord, first side measured.
    pub geometric_discord_forward: f64,
    /// Geometric discord, second side measured.
    pub geometric_discord_backward: f64,
    /// Whether geometric discord carries the x2 normalization.
    pub normalized: bool,
}

/// Evaluates every closed form on one bipartition.
pub fn pairwise_report(cfg: &OverlapConfig, b: Bipartition, normalized: bool) -> PairwiseReport {
    let g = if normalized { 2.0 } else { 1.0 };
    PairwiseReport {
        bipartition: b,
        concurrence: concurrence_closed(cfg, b),
        eof: eof_closed(cfg, b),
        discord_forward: discord_closed(cfg, b, Side::First),
        discord_backward: discord_closed(cfg, b, Side::Second),
        geometric_discord_forward: g * geometric_discord_closed(cfg, b, Side::First),
        geometric_discord_backward: g * geometric_discord_closed(cfg, b, Side::Second),
        normalized,
    }
}

/// The two-qubit density a bipartition is evaluated on: the projector of the
/// pure split, or the reduced pair density.
pub fn bipartition_density(cfg: &OverlapConfig, b: Bipartition) -> Result<DensityMatrix> {
    match b {
        Bipartition::PureSplit(k) => crate::mapping::pure_split_state(cfg, k).density(),
        Bipartition::MixedPair(i, j) => crate::mapping::mixed_reduced_density(cfg, i, j),
    }
}
