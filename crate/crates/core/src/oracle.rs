//! Brute-force verifiers for the closed forms.
//!
//! * [`discord_projective_oracle`] minimizes the post-measurement conditional
//!   entropy over rank-1 projective measurements on one qubit: a coarse
//!   `(theta, phi)` grid followed by Nelder-Mead refinement.
//! * [`kmax_direction_oracle`] maximizes `e^T K e` over unit vectors with a
//!   golden-spiral sample of the sphere and the same refinement.
//! * [`koashi_winter_check`] compares the minimized conditional entropy of a
//!   pair with the closed-form entanglement of formation of its complement.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{von_neumann_entropy, partial_trace, DensityMatrix, Subsystem, C64};
use crate::mapping::{mixed_reduced_density, spectator, Bipartition, Mode, OverlapConfig};
use crate::math;
use crate::measures::{bloch_decompose, eof_closed, Side};

/// Default pass threshold for oracle-vs-closed-form comparisons (bits).
pub const ORACLE_GATE: f64 = 1e-4;

/// Smallest tolerance the discord oracle accepts.
pub const MIN_TOLERANCE: f64 = 1e-8;

/// Projective measurement along `(sin t cos f, sin t sin f, cos t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    /// Polar angle in `[0, pi]`.
    pub theta: f64,
    /// Azimuth in `[0, 2 pi)`.
    pub phi: f64,
}

impl MeasurementAngles {
    /// Wraps arbitrary angles into the canonical ranges without changing the
    /// direction they describe.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let [x, y, z] = direction(theta, phi);
        Self::from_direction([x, y, z])
    }

    /// Angles of a unit vector.
    pub fn from_direction(n: [f64; 3]) -> Self {
        let theta = libm::acos(n[2].clamp(-1.0, 1.0));
        let mut phi = libm::atan2(n[1], n[0]);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// Unit Bloch direction.
    pub fn direction(&self) -> [f64; 3] {
        direction(self.theta, self.phi)
    }
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let s = math::sin(theta);
    [s * math::cos(phi), s * math::sin(phi), math::cos(theta)]
}

/// Outcome of an oracle search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    /// Optimized quantity (bits for discord / conditional entropy).
    pub value: f64,
    /// Optimal measurement angles.
    pub angles: MeasurementAngles,
    /// The same optimum as a unit vector.
    pub direction: [f64; 3],
    /// Number of coarse samples evaluated.
    pub grid_points: usize,
    /// Simplex iterations spent in refinement (summed over starts).
    pub refinement_iterations: usize,
    /// Spread of the objective over the final simplex.
    pub achieved_tolerance: f64,
    /// Whether refinement met its tolerance within the iteration cap.
    pub converged: bool,
}

/// Search parameters for [`discord_projective_oracle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOracleSettings {
    /// Polar grid points over `[0, pi]`.
    pub theta_steps: usize,
    /// Azimuthal grid points over `[0, 2 pi)`.
    pub phi_steps: usize,
    /// Number of best grid points refined.
    pub starts: usize,
    /// Nelder-Mead iteration cap per start.
    pub max_iterations: usize,
    /// Target spread of the objective over the simplex (bits).
    pub tolerance: f64,
}

impl Default for DiscordOracleSettings {
    fn default() -> Self {
        Self {
            theta_steps: 64,
            phi_steps: 128,
            starts: 3,
            max_iterations: 200,
            tolerance: 1e-6,
        }
    }
}

/// Search parameters for [`kmax_direction_oracle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmaxOracleSettings {
    /// Golden-spiral sample size.
    pub samples: usize,
    /// Nelder-Mead iteration cap.
    pub max_iterations: usize,
}

impl Default for KmaxOracleSettings {
    fn default() -> Self {
        Self {
            samples: 4096,
            max_iterations: 1000,
        }
    }
}

/// Conditional entropy `sum_k p_k S(rho_k)` of the unmeasured qubit after a
/// projective measurement of `side` along `angles`.
pub fn conditional_entropy(
    rho: &DensityMatrix,
    side: Side,
    angles: MeasurementAngles,
) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(conditional_entropy_along(rho, side, angles.direction()))
}

fn conditional_entropy_along(rho: &DensityMatrix, side: Side, n: [f64; 3]) -> f64 {
    let m = rho.matrix();
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        // projector (1 + sign n.sigma) / 2
        let proj = [
            [
                C64::new(0.5 * (1.0 + sign * n[2]), 0.0),
                C64::new(0.5 * sign * n[0], -0.5 * sign * n[1]),
            ],
            [
                C64::new(0.5 * sign * n[0], 0.5 * sign * n[1]),
                C64::new(0.5 * (1.0 - sign * n[2]), 0.0),
            ],
        ];
        // unnormalized post-measurement state of the other qubit
        let mut cond = [[C64::new(0.0, 0.0); 2]; 2];
        for (r, row) in cond.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        acc += match side {
                            // Tr_A[(P x 1) rho]_{rc} = sum P_ab rho_{(b r),(a c)}
                            Side::First => proj[a][b] * m[(2 * b + r, 2 * a + c)],
                            // Tr_B[(1 x P) rho]_{rc} = sum P_ab rho_{(r b),(c a)}
                            Side::Second => proj[a][b] * m[(2 * r + b, 2 * c + a)],
                        };
                    }
                }
                *entry = acc;
            }
        }
        let prob = cond[0][0].re + cond[1][1].re;
        if prob <= 1e-15 {
            continue;
        }
        let diff = cond[0][0].re - cond[1][1].re;
        let radius = (math::hypot(diff, 2.0 * cond[0][1].norm()) / prob).min(1.0);
        total += prob * crate::linalg::binary_entropy(0.5 * (1.0 + radius)).unwrap_or(0.0);
    }
    total
}

struct SimplexOutcome {
    point: [f64; 2],
    value: f64,
    iterations: usize,
    spread: f64,
    converged: bool,
}

/// Nelder-Mead on `(theta, phi)`. The size test uses chordal distances of the
/// vertex directions, so a simplex straddling a pole still counts as small.
fn nelder_mead(
    f: &dyn Fn([f64; 2]) -> f64,
    start: [f64; 2],
    step: f64,
    ftol: f64,
    chord_tol: f64,
    max_iterations: usize,
) -> SimplexOutcome {
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut values = simplex.map(f);
    let chord = |a: [f64; 2], b: [f64; 2]| {
        let (u, v) = (direction(a[0], a[1]), direction(b[0], b[1]));
        math::sqrt((0..3).map(|i| (u[i] - v[i]) * (u[i] - v[i])).sum())
    };
    let mut iterations = 0;
    let mut converged = false;
    loop {
        // order best .. worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        let spread = values[2] - values[0];
        let size = chord(simplex[0], simplex[1]).max(chord(simplex[0], simplex[2]));
        if spread <= ftol && size <= chord_tol {
            converged = true;
            break;
        }
        if iterations >= max_iterations {
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let p = along(-0.5);
                (p, f(p))
            } else {
                let p = along(0.5);
                (p, f(p))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for v in 1..3 {
                    simplex[v] = [
                        0.5 * (simplex[0][0] + simplex[v][0]),
                        0.5 * (simplex[0][1] + simplex[v][1]),
                    ];
                    values[v] = f(simplex[v]);
                }
            }
        }
    }
    let mut best = 0;
    for v in 1..3 {
        if values[v] < values[best] {
            best = v;
        }
    }
    let spread = values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().copied().fold(f64::INFINITY, f64::min);
    SimplexOutcome {
        point: simplex[best],
        value: values[best],
        iterations,
        spread,
        converged,
    }
}

/// Minimizes the conditional entropy of the unmeasured qubit over projective
/// measurements on `side`. `value` is the minimum, in bits.
pub fn min_conditional_entropy(
    rho: &DensityMatrix,
    side: Side,
    settings: &DiscordOracleSettings,
) -> Result<OracleResult> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    if settings.tolerance.is_nan() || settings.tolerance < MIN_TOLERANCE {
        return Err(Error::OutOfRange {
            name: "oracle tolerance",
            value: settings.tolerance,
        });
    }
    if settings.theta_steps < 2 || settings.phi_steps < 1 || settings.starts == 0 {
        return Err(Error::OutOfRange {
            name: "oracle grid",
            value: (settings.theta_steps * settings.phi_steps) as f64,
        });
    }
    let objective = |x: [f64; 2]| conditional_entropy_along(rho, side, direction(x[0], x[1]));

    let mut grid: Vec<([f64; 2], f64)> =
        Vec::with_capacity(settings.theta_steps * settings.phi_steps);
    for it in 0..settings.theta_steps {
        let theta = PI * it as f64 / (settings.theta_steps - 1) as f64;
        for ip in 0..settings.phi_steps {
            let phi = 2.0 * PI * ip as f64 / settings.phi_steps as f64;
            let x = [theta, phi];
            grid.push((x, objective(x)));
        }
    }
    let grid_points = grid.len();
    grid.sort_by(|a, b| a.1.total_cmp(&b.1));
    let step = PI / settings.theta_steps as f64;

    let (mut best_x, mut best_value) = grid[0];
    let mut iterations = 0;
    let mut spread = f64::INFINITY;
    let mut converged = false;
    for &(x0, _) in grid.iter().take(settings.starts) {
        let out = nelder_mead(&objective, x0, step, settings.tolerance, 1e-5, settings.max_iterations);
        iterations += out.iterations;
        if out.value <= best_value {
            best_value = out.value;
            best_x = out.point;
            spread = out.spread;
            converged = out.converged;
        }
    }
    if spread.is_infinite() {
        // no refinement improved on the grid; the grid point stands
        spread = 0.0;
        converged = true;
    }
    let angles = MeasurementAngles::canonical(best_x[0], best_x[1]);
    Ok(OracleResult {
        value: best_value,
        angles,
        direction: angles.direction(),
        grid_points,
        refinement_iterations: iterations,
        achieved_tolerance: spread,
        converged,
    })
}

/// Entropic discord `S_measured + min S~ - S_joint` by direct search over
/// projective measurements.
pub fn discord_projective_oracle(
    rho: &DensityMatrix,
    side: Side,
    settings: &DiscordOracleSettings,
) -> Result<OracleResult> {
    let search = min_conditional_entropy(rho, side, settings)?;
    let traced = match side {
        Side::First => Subsystem::Second,
        Side::Second => Subsystem::First,
    };
    let measured = partial_trace(rho, traced, 2, 2)?;
    let s_measured = von_neumann_entropy(&measured)?;
    let s_joint = von_neumann_entropy(rho)?;
    Ok(OracleResult {
        value: s_measured + search.value - s_joint,
        ..search
    })
}

/// Largest eigenvalue of `K` for the measured side found by direct
/// maximization of `e^T K e` over the unit sphere.
pub fn kmax_direction_oracle(
    rho: &DensityMatrix,
    side: Side,
    settings: &KmaxOracleSettings,
) -> Result<OracleResult> {
    let k = bloch_decompose(rho)?.k_matrix(side);
    Ok(maximize_quadratic_form(&k, settings))
}

/// Maximizes `e^T K e` over unit `e` for a symmetric 3x3 `K`.
pub fn maximize_quadratic_form(k: &[[f64; 3]; 3], settings: &KmaxOracleSettings) -> OracleResult {
    let form = |e: [f64; 3]| -> f64 {
        (0..3)
            .map(|a| (0..3).map(|b| e[a] * k[a][b] * e[b]).sum::<f64>())
            .sum()
    };
    let samples = settings.samples.max(1);
    let golden = PI * (3.0 - math::sqrt(5.0));
    let mut best_e = [0.0, 0.0, 1.0];
    let mut best = f64::NEG_INFINITY;
    for i in 0..samples {
        let z = 1.0 - (2 * i + 1) as f64 / samples as f64;
        let r = math::sqrt((1.0 - z * z).max(0.0));
        let phi = golden * i as f64;
        let e = [r * math::cos(phi), r * math::sin(phi), z];
        let v = form(e);
        if v > best {
            best = v;
            best_e = e;
        }
    }
    let start = MeasurementAngles::from_direction(best_e);
    let scale = k.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    let negated = |x: [f64; 2]| -form(direction(x[0], x[1]));
    let step = 4.0 * math::sqrt(4.0 * PI / samples as f64);
    let out = nelder_mead(
        &negated,
        [start.theta, start.phi],
        step,
        1e-15 * scale,
        1e-7,
        settings.max_iterations,
    );
    let (point, value) = if -out.value >= best {
        (out.point, -out.value)
    } else {
        ([start.theta, start.phi], best)
    };
    let angles = MeasurementAngles::canonical(point[0], point[1]);
    OracleResult {
        value,
        angles,
        direction: angles.direction(),
        grid_points: samples,
        refinement_iterations: out.iterations,
        achieved_tolerance: out.spread,
        converged: out.converged,
    }
}

/// Parts of a Koashi-Winter comparison for the pair `(i, j)` measured on `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KoashiWinterCheck {
    /// Oracle minimum of the conditional entropy of `j` (bits).
    pub conditional_entropy_min: f64,
    /// Closed-form entanglement of formation of `(j, k)` (bits).
    pub eof_complement: f64,
    /// `|conditional_entropy_min - eof_complement|`.
    pub residual: f64,
}

impl KoashiWinterCheck {
    /// Residual below [`ORACLE_GATE`].
    pub fn passed(&self) -> bool {
        self.residual < ORACLE_GATE
    }
}

/// Checks that measuring `i` on `rho_ij` leaves at least `E_jk` bits of
/// conditional entropy, with equality at the optimum.
pub fn koashi_winter_check(
    cfg: &OverlapConfig,
    i: Mode,
    j: Mode,
    settings: &DiscordOracleSettings,
) -> Result<KoashiWinterCheck> {
    let rho = mixed_reduced_density(cfg, i, j)?;
    let search = min_conditional_entropy(&rho, Side::First, settings)?;
    let eof = eof_closed(cfg, Bipartition::MixedPair(j, spectator(i, j)));
    Ok(KoashiWinterCheck {
        conditional_entropy_min: search.value,
        eof_complement: eof,
        residual: (search.value - eof).abs(),
    })
}
