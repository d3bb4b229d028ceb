//! Dense complex linear algebra for the small dimensions this crate needs
//! (2, 3, 4 and 8): Kronecker products, partial traces, Hermitian
//! eigensolves and entropies.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Complex scalar used for every matrix entry.
pub type C64 = Complex64;

/// Dimensions a [`ComplexMatrix`] may take.
pub const SUPPORTED_DIMS: [usize; 4] = [2, 3, 4, 8];

/// Default Hermiticity / trace / positivity tolerance of [`DensityMatrix`].
pub const DEFAULT_DENSITY_TOL: f64 = 1e-10;

/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are treated as zero; anything lower
/// is an invalid density.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;

fn check_dim(dim: usize) -> Result<()> {
    if SUPPORTED_DIMS.contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self::new(dim, data)
    }

    /// All-zero matrix.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![C64::new(0.0, 0.0); dim * dim])
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |r, c| C64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |r, c| {
            C64::new(if r == c { values[r] } else { 0.0 }, 0.0)
        })
    }

    /// Projector `|v><v|` (no normalization applied).
    pub fn outer(v: &[C64]) -> Result<Self> {
        Self::from_fn(v.len(), |r, c| v[r] * v[c].conj())
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = self.data.clone();
        for r in 0..n {
            for c in 0..n {
                data[r * n + c] = self.data[c * n + r].conj();
            }
        }
        Self { dim: n, data }
    }

    /// Entrywise complex conjugate (in the computational basis).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = self.data.clone();
        for r in 0..n {
            for c in 0..n {
                data[r * n + c] = self.data[c * n + r];
            }
        }
        Self { dim: n, data }
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Multiplies every entry by a real factor.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|r| (0..n).map(|c| self.data[r * n + c] * v[c]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|` over all entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    fn product(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        Self { dim: n, data }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched dimensions.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.product(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Pauli matrix `sigma_i`; `i = 0` is the identity.
///
/// # Panics
/// If `i > 3`.
pub fn pauli(i: usize) -> ComplexMatrix {
    let (z, o, im) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    let data = match i {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, -im, im, z],
        3 => vec![o, z, z, -o],
        _ => panic!("pauli index {i} out of range"),
    };
    ComplexMatrix { dim: 2, data }
}

/// Kronecker product `a (x) b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    check_dim(n)?;
    ComplexMatrix::from_fn(n, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)])
}

/// Which factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// Left tensor factor.
    First,
    /// Right tensor factor.
    Second,
}

/// Traces out `traced` from an operator on a `dim_a * dim_b` space. Works on
/// unnormalized operators too.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    traced: Subsystem,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix> {
    if dim_a * dim_b != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: dim_a * dim_b,
        });
    }
    match traced {
        Subsystem::Second => ComplexMatrix::from_fn(dim_a, |r, c| {
            (0..dim_b).map(|k| m[(r * dim_b + k, c * dim_b + k)]).sum()
        }),
        Subsystem::First => ComplexMatrix::from_fn(dim_b, |r, c| {
            (0..dim_a).map(|k| m[(k * dim_b + r, k * dim_b + c)]).sum()
        }),
    }
}

/// Reduced density of the subsystem that is kept after tracing out `traced`.
pub fn partial_trace(
    rho: &DensityMatrix,
    traced: Subsystem,
    dim_a: usize,
    dim_b: usize,
) -> Result<DensityMatrix> {
    let reduced = partial_trace_matrix(rho.matrix(), traced, dim_a, dim_b)?;
    DensityMatrix::with_tolerance(reduced, rho.tolerance())
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unit eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim).map(|r| self.vectors[(r, k)]).collect()
    }
}

fn require_hermitian(m: &ComplexMatrix) -> Result<()> {
    let scale = m.data.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let dev = m.hermitian_deviation();
    if dev > 1e-10 * scale {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Cyclic complex Jacobi rotations; returns the (unsorted) diagonal and the
/// accumulated unitary.
fn jacobi(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim;
    let zero = C64::new(0.0, 0.0);
    // work on the exactly Hermitian part
    let mut a = m.data.clone();
    for r in 0..n {
        a[r * n + r] = C64::new(m.data[r * n + r].re, 0.0);
        for c in (r + 1)..n {
            let h = (m.data[r * n + c] + m.data[c * n + r].conj()) * 0.5;
            a[r * n + c] = h;
            a[c * n + r] = h.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n)?.data;

    let off_and_total = |a: &[C64]| {
        let mut off = 0.0;
        let mut total = 0.0;
        for r in 0..n {
            for c in 0..n {
                let s = a[r * n + c].norm_sqr();
                total += s;
                if r != c {
                    off += s;
                }
            }
        }
        (off, total)
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let (off, total) = off_and_total(&a);
        if off <= 1e-32 * total || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    math::sign(theta) / (theta.abs() + math::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                // J restricted to (p, q): [[c, s], [-s e*, c e*]]
                let j_pp = C64::new(c, 0.0);
                let j_pq = C64::new(s, 0.0);
                let j_qp = -phase.conj() * s;
                let j_qq = phase.conj() * c;
                for r in 0..n {
                    let (x, y) = (a[r * n + p], a[r * n + q]);
                    a[r * n + p] = x * j_pp + y * j_qp;
                    a[r * n + q] = x * j_pq + y * j_qq;
                }
                for r in 0..n {
                    let (x, y) = (a[p * n + r], a[q * n + r]);
                    a[p * n + r] = x * j_pp.conj() + y * j_qp.conj();
                    a[q * n + r] = x * j_pq.conj() + y * j_qq.conj();
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for r in 0..n {
                    let (x, y) = (v[r * n + p], v[r * n + q]);
                    v[r * n + p] = x * j_pp + y * j_qp;
                    v[r * n + q] = x * j_pq + y * j_qq;
                }
            }
        }
    }
    if !converged {
        let (off, total) = off_and_total(&a);
        // residual target 1e-12 relative
        if off > 1e-24 * total {
            return Err(Error::NoConvergence);
        }
    }
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok((values, ComplexMatrix { dim: n, data: v }))
}

/// Eigenvalues and eigenvectors of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    require_hermitian(m)?;
    let (values, vectors) = jacobi(m)?;
    let n = m.dim;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, |r, c| vectors[(r, order[c])])?;
    Ok(HermitianEigen {
        values: sorted_values,
        vectors: sorted_vectors,
    })
}

/// Real eigenvalues of a Hermitian matrix in descending order. Dimension 2 is
/// solved in closed form, larger dimensions by Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    require_hermitian(m)?;
    if m.dim == 2 {
        let (a, d, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
        let mean = 0.5 * (a + d);
        let radius = math::hypot(0.5 * (a - d), b.norm());
        return Ok(vec![mean + radius, mean - radius]);
    }
    let (mut values, _) = jacobi(m)?;
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Singular values (descending) of an `n x n` row-major matrix by one-sided
/// Jacobi orthogonalization of its columns. Small singular values keep
/// absolute accuracy near machine epsilon times the norm.
pub(crate) fn singular_values(n: usize, data: &[C64]) -> Result<Vec<f64>> {
    debug_assert_eq!(data.len(), n * n);
    // column-major copy
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|c| (0..n).map(|r| data[r * n + c]).collect())
        .collect();
    let dot = |x: &[C64], y: &[C64]| -> C64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    let floor = 1e-32 * data.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        converged = true;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma = dot(&cols[i], &cols[j]);
                let g = gamma.norm();
                if g <= floor || g <= 1e-15 * math::sqrt(alpha * beta) {
                    continue;
                }
                converged = false;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = math::sign(zeta) / (zeta.abs() + math::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                #[allow(clippy::needless_range_loop)] // rotates two columns of `cols` in place
                for r in 0..n {
                    let x = cols[i][r];
                    let y = cols[j][r] * phase.conj();
                    cols[i][r] = x * c - y * s;
                    cols[j][r] = x * s + y * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|col| math::sqrt(col.iter().map(|z| z.norm_sqr()).sum()))
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Finite-dimensional density operator: Hermitian, unit trace, positive
/// semidefinite, each up to `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    tolerance: f64,
}

impl DensityMatrix {
    /// Validates `matrix` with [`DEFAULT_DENSITY_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_DENSITY_TOL)
    }

    /// Validates `matrix` against an explicit tolerance.
    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::OutOfRange {
                name: "tolerance",
                value: tolerance,
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > tolerance {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tolerance || tr.im.abs() > tolerance {
            return Err(Error::InvalidTrace(tr.re));
        }
        let lowest = hermitian_eigenvalues(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if lowest < -tolerance {
            return Err(Error::NegativeEigenvalue(lowest));
        }
        Ok(Self { matrix, tolerance })
    }

    /// Projector onto a pure state; the vector is normalized first.
    pub fn from_pure(state: &[C64]) -> Result<Self> {
        let norm = math::sqrt(state.iter().map(|z| z.norm_sqr()).sum());
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::OutOfRange {
                name: "state norm",
                value: norm,
            });
        }
        let unit: Vec<C64> = state.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit)?)
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Validation tolerance.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// Spectrum with values in `[-NEGATIVE_CLAMP, 0)` clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)?
            .into_iter()
            .map(clamp_eigenvalue)
            .collect()
    }
}

fn clamp_eigenvalue(x: f64) -> Result<f64> {
    if x < -NEGATIVE_CLAMP {
        Err(Error::NegativeEigenvalue(x))
    } else {
        Ok(x.max(0.0))
    }
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&x) {
        return Err(Error::OutOfRange {
            name: "probability",
            value: x,
        });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(xlog2x(x) + xlog2x(1.0 - x))
}

#[inline]
fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * math::log2(x)
    }
}

/// Shannon entropy (bits) of a spectrum, clamping tiny negative values.
pub fn spectrum_entropy(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &v in values {
        s += xlog2x(clamp_eigenvalue(v)?);
    }
    Ok(s)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&hermitian_eigenvalues(rho.matrix())?)
}
