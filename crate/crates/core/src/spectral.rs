//! Hermitian spectral decomposition and the matrix functions built on it.
//!
//! All state-level computation reduces to eigendecompositions of Hermitian
//! matrices. Matrix functions (`fractional powers`, `log`, support projector)
//! act only on the part of the spectrum above the support cutoff, which
//! implements the `0^t := 0` and `0 log 0 := 0` conventions. Singular values
//! of a general square matrix come from a bidiagonal SVD; Hermitian inputs
//! short-circuit to `|eigenvalues|`, which is both faster and exact on the
//! kernel.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// A validated Hermitian matrix.
///
/// Construction symmetrizes the entries (`(m + m^dagger) / 2`) after checking
/// the deviation, so stored matrices are Hermitian to the bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: CMatrix,
}

/// Largest entrywise deviation from Hermitian symmetry.
fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

impl HermitianMatrix {
    /// Validate and wrap a square complex matrix.
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        Self::from_matrix_with_tol(mat, tol::TOL_HERM)
    }

    /// Validate with a caller-chosen Hermiticity tolerance.
    pub fn from_matrix_with_tol(mat: CMatrix, tol_herm: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NonSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        if mat.nrows() == 0 {
            return Err(Error::ParamOutOfRange {
                name: "dim",
                value: 0.0,
                expected: ">= 1",
            });
        }
        let deviation = hermitian_deviation(&mat);
        if deviation > tol_herm {
            return Err(Error::NonHermitianInput {
                deviation,
                tol: tol_herm,
            });
        }
        let n = mat.nrows();
        let sym = CMatrix::from_fn(n, n, |i, j| (mat[(i, j)] + mat[(j, i)].conj()) * 0.5);
        Ok(Self { mat: sym })
    }

    /// Wrap a matrix that is Hermitian by construction (internal fast path).
    pub(crate) fn from_trusted(mat: CMatrix) -> Self {
        debug_assert!(hermitian_deviation(&mat) == 0.0);
        Self { mat }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            mat: CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(diag[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Trace (real by Hermiticity).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// Multiply by a real scalar.
    pub fn scale(&self, k: f64) -> Self {
        Self {
            mat: self.mat.map(|z| z * k),
        }
    }

    /// Entrywise difference; the result is Hermitian exactly.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            mat: &self.mat - &other.mat,
        })
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as matrix columns, ordered like the eigenvalues.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Spectral radius `max |lambda|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()))
    }

    /// Support cutoff for this spectrum (see [`tol::support_cutoff`]).
    pub fn support_cutoff(&self) -> f64 {
        tol::support_cutoff(self.dim(), self.spectral_radius())
    }

    /// Number of eigenvalues above the support cutoff.
    pub fn rank(&self) -> usize {
        let cut = self.support_cutoff();
        self.eigenvalues.iter().filter(|&&l| l > cut).count()
    }

    /// Return a decomposition of the same eigenvectors with scaled eigenvalues.
    pub(crate) fn scaled(&self, k: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|&l| l * k).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }

    /// Return a copy with eigenvalues in `[-clip, 0]` set to zero.
    pub(crate) fn clipped_nonnegative(&self, clip: f64) -> Self {
        Self {
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|&l| if l < 0.0 && l >= -clip { 0.0 } else { l })
                .collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }

    /// Assemble `sum_i f(lambda_i) v_i v_i^dagger`.
    ///
    /// The product `(V f(Lambda)) V^dagger` is Hermitian only up to rounding,
    /// so the upper triangle is mirrored onto the lower and the diagonal
    /// imaginary parts (pure rounding noise) are dropped; the result is then
    /// Hermitian to the bit.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let diag = DVector::from_iterator(n, self.eigenvalues.iter().map(|&l| f(l)));
        let mut scaled = self.eigenvectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            let fk = diag[k];
            for z in col.iter_mut() {
                *z *= fk;
            }
        }
        let mut mat = &scaled * self.eigenvectors.adjoint();
        for i in 0..n {
            mat[(i, i)].im = 0.0;
            for j in (i + 1)..n {
                mat[(j, i)] = mat[(i, j)].conj();
            }
        }
        HermitianMatrix::from_trusted(mat)
    }

    /// Rebuild the original matrix from the factors.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.apply(|l| l)
    }
}

/// Iteration cap for the symmetric QR sweep; generous for the target sizes.
fn eigen_iteration_cap(dim: usize) -> usize {
    200 + 30 * dim
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out in descending order, eigenvector columns permuted to
/// match.
pub fn spectral_decompose(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let se =
        nalgebra::SymmetricEigen::try_new(h.matrix().clone(), f64::EPSILON, eigen_iteration_cap(n))
            .ok_or(Error::NumericalFailure(
                "symmetric eigensolver did not converge",
            ))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].total_cmp(&se.eigenvalues[i]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Check PSD-ness and return the decomposition with sub-zero noise clipped.
fn psd_decomposition(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let d = spectral_decompose(h)?;
    let min = d.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -tol::TOL_PSD {
        return Err(Error::NegativeEigenvalue {
            lambda: min,
            tol: tol::TOL_PSD,
        });
    }
    Ok(d.clipped_nonnegative(tol::TOL_PSD))
}

/// Fractional power `P^t` of a PSD matrix, `0 < t <= 2`, on the support.
///
/// Eigenvalues at or below the support cutoff contribute zero (`0^t := 0`).
pub fn fractional_power(p: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    let d = psd_decomposition(p)?;
    fractional_power_with_cutoff(&d, t, d.support_cutoff())
}

/// Fractional power from an existing decomposition with an explicit cutoff.
pub fn fractional_power_with_cutoff(
    d: &SpectralDecomposition,
    t: f64,
    cutoff: f64,
) -> Result<HermitianMatrix> {
    if !(t > 0.0 && t <= 2.0) || t.is_nan() {
        return Err(Error::InvalidExponent {
            value: t,
            expected: "0 < t <= 2",
        });
    }
    Ok(d.apply(|l| if l > cutoff { l.powf(t) } else { 0.0 }))
}

/// Matrix logarithm restricted to the support: `sum_{lambda > cutoff} log(lambda) v v^dagger`.
pub fn log_on_support(p: &HermitianMatrix) -> Result<HermitianMatrix> {
    let d = psd_decomposition(p)?;
    let cut = d.support_cutoff();
    Ok(d.apply(|l| if l > cut { l.ln() } else { 0.0 }))
}

/// Orthogonal projector onto the support (eigenvalues above the cutoff).
pub fn support_projector(p: &HermitianMatrix) -> Result<HermitianMatrix> {
    let d = psd_decomposition(p)?;
    let cut = d.support_cutoff();
    Ok(d.apply(|l| if l > cut { 1.0 } else { 0.0 }))
}

/// Jordan decomposition `H = H_+ - H_-` with `H_+, H_- >= 0` and orthogonal
/// supports: `H_+` collects the positive eigenvalues, `H_-` the negated
/// negative ones.
pub fn jordan_parts(h: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let d = spectral_decompose(h)?;
    let pos = d.apply(|l| if l > 0.0 { l } else { 0.0 });
    let neg = d.apply(|l| if l < 0.0 { -l } else { 0.0 });
    Ok((pos, neg))
}

/// Singular values of a general square complex matrix, descending.
///
/// Hermitian inputs (within `tol_herm`) use `|eigenvalues|`; everything else
/// goes through a bidiagonal SVD, which keeps absolute errors at machine
/// scale even on the kernel.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if hermitian_deviation(m) <= tol::TOL_HERM {
        let h = HermitianMatrix::from_matrix(m.clone())?;
        let d = spectral_decompose(&h)?;
        let mut sv: Vec<f64> = d.eigenvalues().iter().map(|l| l.abs()).collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        return Ok(sv);
    }
    let svd = nalgebra::SVD::try_new(
        m.clone(),
        false,
        false,
        f64::EPSILON,
        eigen_iteration_cap(m.nrows()),
    )
    .ok_or(Error::NumericalFailure("SVD did not converge"))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().map(|&s| s.max(0.0)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Schatten q-norm `(sum_i sigma_i^q)^(1/q)` for `q > 0`.
///
/// For `q < 1` this is the usual quasi-norm (no triangle inequality).
pub fn schatten_norm(m: &CMatrix, q: f64) -> Result<f64> {
    if q <= 0.0 || !q.is_finite() {
        return Err(Error::InvalidExponent {
            value: q,
            expected: "q > 0",
        });
    }
    let sv = singular_values(m)?;
    if q == 1.0 {
        return Ok(sv.iter().sum());
    }
    if q == 2.0 {
        return Ok(sv.iter().map(|s| s * s).sum::<f64>().sqrt());
    }
    let sum: f64 = sv.iter().filter(|&&s| s > 0.0).map(|&s| s.powf(q)).sum();
    Ok(sum.powf(1.0 / q))
}

/// `tr(XY)` for Hermitian `X`, `Y`; always real.
///
/// Uses `tr(XY) = sum_ij X_ij conj(Y_ij)`, whose imaginary part cancels.
pub fn trace_product(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.matrix()
        .iter()
        .zip(y.matrix().iter())
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_square() {
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(
            HermitianMatrix::from_matrix(m),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        assert!(matches!(
            HermitianMatrix::from_matrix(m),
            Err(Error::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn diagonal_spectrum_is_exact() {
        let h = HermitianMatrix::from_diagonal(&[0.25, 0.75, 0.0]);
        let d = spectral_decompose(&h).unwrap();
        assert_eq!(d.eigenvalues(), &[0.75, 0.25, 0.0]);
    }

    #[test]
    fn eigenvalues_sorted_descending() {
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = c(1.0, 0.0);
        m[(0, 1)] = c(0.0, 0.5);
        m[(1, 0)] = c(0.0, -0.5);
        m[(1, 1)] = c(-1.0, 0.0);
        m[(2, 2)] = c(0.3, 0.0);
        let h = HermitianMatrix::from_matrix(m).unwrap();
        let d = spectral_decompose(&h).unwrap();
        for w in d.eigenvalues().windows(2) {
            assert!(w[0] >= w[1]);
        }
        let err = (d.reconstruct().matrix() - h.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        assert!(err <= tol::reconstruction_tol(3), "recon err {err}");
    }

    #[test]
    fn fractional_power_identity_on_projector() {
        let p = HermitianMatrix::from_diagonal(&[1.0, 1.0, 0.0, 0.0]);
        for t in [0.3, 0.5, 1.0, 2.0] {
            let pt = fractional_power(&p, t).unwrap();
            let err = (pt.matrix() - p.matrix())
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            assert!(err <= 1e-14, "t = {t}, err {err}");
        }
    }

    #[test]
    fn fractional_power_rejects_bad_exponent_and_negative_input() {
        let p = HermitianMatrix::from_diagonal(&[1.0, 0.5]);
        assert!(matches!(
            fractional_power(&p, 0.0),
            Err(Error::InvalidExponent { .. })
        ));
        assert!(matches!(
            fractional_power(&p, 2.5),
            Err(Error::InvalidExponent { .. })
        ));
        let neg = HermitianMatrix::from_diagonal(&[1.0, -0.5]);
        assert!(matches!(
            fractional_power(&neg, 0.5),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn fractional_power_clips_psd_noise() {
        // An eigenvalue in [-tol_psd, 0] counts as zero rather than an error.
        let p = HermitianMatrix::from_diagonal(&[1.0, -5e-11]);
        let sqrt = fractional_power(&p, 0.5).unwrap();
        assert_eq!(sqrt.matrix()[(1, 1)], c(0.0, 0.0));
        assert_abs_diff_eq!(sqrt.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn log_on_support_diagonal() {
        let p = HermitianMatrix::from_diagonal(&[1.0, std::f64::consts::E, 0.0]);
        let lg = log_on_support(&p).unwrap();
        assert_abs_diff_eq!(lg.matrix()[(0, 0)].re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lg.matrix()[(1, 1)].re, 1.0, epsilon = 1e-15);
        assert_eq!(lg.matrix()[(2, 2)], c(0.0, 0.0));
    }

    #[test]
    fn jordan_parts_diagonal() {
        let h = HermitianMatrix::from_diagonal(&[3.0, -4.0]);
        let (pos, neg) = jordan_parts(&h).unwrap();
        assert_abs_diff_eq!(pos.matrix()[(0, 0)].re, 3.0, epsilon = 1e-15);
        assert_eq!(pos.matrix()[(1, 1)], c(0.0, 0.0));
        assert_abs_diff_eq!(neg.matrix()[(1, 1)].re, 4.0, epsilon = 1e-15);
        assert_eq!(neg.matrix()[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn singular_values_hermitian_are_abs_eigenvalues() {
        let h = HermitianMatrix::from_diagonal(&[3.0, -4.0, 0.0]);
        let sv = singular_values(h.matrix()).unwrap();
        assert_eq!(sv, vec![4.0, 3.0, 0.0]);
    }

    #[test]
    fn schatten_quasi_norm_example() {
        let h = HermitianMatrix::from_diagonal(&[3.0, -4.0, 0.0]);
        let n = schatten_norm(h.matrix(), 0.5).unwrap();
        let expected = (2.0 + 3.0f64.sqrt()).powi(2);
        assert_abs_diff_eq!(n, expected, epsilon = 1e-12);
        assert!((expected - 13.9282).abs() < 1e-4);
    }

    #[test]
    fn schatten_rejects_nonpositive_exponent() {
        let h = HermitianMatrix::from_diagonal(&[1.0]);
        assert!(matches!(
            schatten_norm(h.matrix(), 0.0),
            Err(Error::InvalidExponent { .. })
        ));
        assert!(matches!(
            schatten_norm(h.matrix(), -1.0),
            Err(Error::InvalidExponent { .. })
        ));
    }

    #[test]
    fn schatten_of_zero_matrix_is_zero() {
        let z = CMatrix::zeros(3, 3);
        for q in [0.5, 1.0, 2.0, 7.0] {
            assert_eq!(schatten_norm(&z, q).unwrap(), 0.0);
        }
    }

    #[test]
    fn trace_norm_of_difference_is_symmetric_under_swap() {
        let a = HermitianMatrix::from_diagonal(&[0.7, 0.3]);
        let b = HermitianMatrix::from_diagonal(&[0.2, 0.8]);
        let d1 = schatten_norm(a.sub(&b).unwrap().matrix(), 1.0).unwrap();
        let d2 = schatten_norm(b.sub(&a).unwrap().matrix(), 1.0).unwrap();
        assert_eq!(d1, d2);
        assert_abs_diff_eq!(d1, 1.0, epsilon = 1e-15);
    }
}
