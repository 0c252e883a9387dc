//! Density operators, weighted state pairs and reference state families.
//!
//! A [`DensityOperator`] is a Hermitian, positive semidefinite, unit-trace
//! matrix; validation clips eigenvalue noise in `[-tol_psd, 0]` to zero and
//! caches the spectral decomposition, which every measure then reuses.
//!
//! A [`WeightedStatePair`] holds `(rho, sigma, p)` together with the weighted
//! operators `A = p rho` and `B = (1 - p) sigma`. The four closed-form
//! families ([`Family`]) provide states whose measures are known exactly;
//! [`family_point`] returns both the states and the expected values.
//!
//! Random states are generated from a seeded, platform-independent stream
//! (ChaCha12): pure states from normalized complex Gaussian vectors, mixed
//! states as `G G^dagger / tr(G G^dagger)` with `G` a `dim x rank` complex
//! Gaussian matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;
use crate::spectral::{spectral_decompose, CMatrix, HermitianMatrix, SpectralDecomposition};
use crate::tol;

/// A validated density operator with its cached spectral decomposition.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: HermitianMatrix,
    decomp: SpectralDecomposition,
}

impl DensityOperator {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Eigenvalues descending, clipped at zero.
    pub fn eigenvalues(&self) -> &[f64] {
        self.decomp.eigenvalues()
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomp
    }

    /// Number of eigenvalues above the support cutoff.
    pub fn rank(&self) -> usize {
        self.decomp.rank()
    }

    /// Bitwise equality of the stored matrices.
    pub fn same_matrix(&self, other: &DensityOperator) -> bool {
        self.matrix.matrix() == other.matrix.matrix()
    }
}

/// Validate a Hermitian matrix as a density operator.
///
/// Rejects eigenvalues below `-tol_psd` and traces off unity by more than
/// `tol_trace`; eigenvalues in `[-tol_psd, 0]` are clipped to zero (the
/// stored matrix is rebuilt from the clipped spectrum when clipping fires).
pub fn validate_density(matrix: HermitianMatrix) -> Result<DensityOperator> {
    let trace = matrix.trace();
    if (trace - 1.0).abs() > tol::TOL_TRACE {
        return Err(Error::TraceNotOne {
            trace,
            tol: tol::TOL_TRACE,
        });
    }
    let decomp = spectral_decompose(&matrix)?;
    let min = decomp.eigenvalues().last().copied().unwrap_or(0.0);
    if min < -tol::TOL_PSD {
        return Err(Error::NotPositive { lambda: min });
    }
    if min < 0.0 {
        let clipped = decomp.clipped_nonnegative(tol::TOL_PSD);
        let matrix = clipped.reconstruct();
        return Ok(DensityOperator {
            matrix,
            decomp: clipped,
        });
    }
    Ok(DensityOperator { matrix, decomp })
}

/// A pair of states with prior weights: `A = p rho`, `B = (1 - p) sigma`.
#[derive(Debug, Clone)]
pub struct WeightedStatePair {
    rho: DensityOperator,
    sigma: DensityOperator,
    prior: f64,
    a: HermitianMatrix,
    b: HermitianMatrix,
    a_decomp: SpectralDecomposition,
    b_decomp: SpectralDecomposition,
}

impl WeightedStatePair {
    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn sigma(&self) -> &DensityOperator {
        &self.sigma
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// `A = p rho`.
    pub fn weighted_a(&self) -> &HermitianMatrix {
        &self.a
    }

    /// `B = (1 - p) sigma`.
    pub fn weighted_b(&self) -> &HermitianMatrix {
        &self.b
    }

    /// Decomposition of `A` (shared eigenvectors with `rho`, scaled spectrum).
    pub fn a_decomposition(&self) -> &SpectralDecomposition {
        &self.a_decomp
    }

    /// Decomposition of `B`.
    pub fn b_decomposition(&self) -> &SpectralDecomposition {
        &self.b_decomp
    }

    /// The same states re-paired at `p = 1/2` (normalized semantics).
    pub fn normalized(&self) -> WeightedStatePair {
        make_weighted_pair(self.rho.clone(), self.sigma.clone(), 0.5)
            .expect("re-pairing validated states at p = 1/2 cannot fail")
    }

    /// Swap the roles of the two states (prior goes to `1 - p`).
    pub fn swapped(&self) -> WeightedStatePair {
        make_weighted_pair(self.sigma.clone(), self.rho.clone(), 1.0 - self.prior)
            .expect("swapping a validated pair cannot fail")
    }
}

/// Combine two states and a prior into a weighted pair.
pub fn make_weighted_pair(
    rho: DensityOperator,
    sigma: DensityOperator,
    prior: f64,
) -> Result<WeightedStatePair> {
    if !prior.is_finite() || !(0.0..=1.0).contains(&prior) {
        return Err(Error::InvalidPrior(prior));
    }
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let a = rho.matrix().scale(prior);
    let b = sigma.matrix().scale(1.0 - prior);
    debug_assert!((a.trace() + b.trace() - 1.0).abs() <= tol::TOL_TRACE);
    let a_decomp = rho.decomposition().scaled(prior);
    let b_decomp = sigma.decomposition().scaled(1.0 - prior);
    Ok(WeightedStatePair {
        rho,
        sigma,
        prior,
        a,
        b,
        a_decomp,
        b_decomp,
    })
}

/// The four closed-form equality families.
///
/// | id | states | parameter |
/// |----|--------|-----------|
/// | a  | `diag(1,0)` vs `diag(t, 1-t)` | `t in [0,1]` |
/// | b  | two pure states with squared overlap `t` | `t in [0,1]` |
/// | c  | `diag(1-t, t, 0)` vs `diag(1-t, 0, t)` | `t in [0,1]` |
/// | d  | `diag(1-t, t)` vs `diag(t, 1-t)` | `t in [0,1]` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    pub fn id(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }

    pub fn from_id(id: char) -> Option<Family> {
        match id {
            'a' => Some(Family::A),
            'b' => Some(Family::B),
            'c' => Some(Family::C),
            'd' => Some(Family::D),
            _ => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Closed-form measure values for a family point (at `p = 1/2`).
///
/// `s_star` is `None` where the Renyi overlap is constant in `s` and the
/// minimizer is not unique.
#[derive(Debug, Clone, Copy)]
pub struct ExpectedMeasures {
    pub l: f64,
    pub t: f64,
    pub f: f64,
    pub q: f64,
    pub q_min: f64,
    pub c: ExtendedReal,
    pub s: ExtendedReal,
    pub s_star: Option<f64>,
}

/// A family member: the two states plus their expected measures.
#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub family: Family,
    pub t: f64,
    pub rho: DensityOperator,
    pub sigma: DensityOperator,
    pub expected: ExpectedMeasures,
}

/// `-log t` as an extended real (`+inf` at `t = 0`).
fn neg_log_ext(t: f64) -> ExtendedReal {
    if t == 0.0 {
        ExtendedReal::Infinity
    } else {
        ExtendedReal::Finite(-t.ln())
    }
}

fn density_from_diagonal(diag: &[f64]) -> DensityOperator {
    validate_density(HermitianMatrix::from_diagonal(diag))
        .expect("family diagonals are valid states")
}

/// Construct the family member at parameter `t` with its expected measures.
pub fn family_point(family: Family, t: f64) -> Result<FamilyPoint> {
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::ParamOutOfRange {
            name: "t",
            value: t,
            expected: "0 <= t <= 1",
        });
    }
    let (rho, sigma, expected) = match family {
        Family::A => {
            let rho = density_from_diagonal(&[1.0, 0.0]);
            let sigma = density_from_diagonal(&[t, 1.0 - t]);
            let expected = ExpectedMeasures {
                l: t,
                t: 1.0 - t,
                f: t.sqrt(),
                q: t.sqrt(),
                q_min: t,
                c: neg_log_ext(t),
                s: neg_log_ext(t),
                s_star: if t > 0.0 && t < 1.0 { Some(0.0) } else { None },
            };
            (rho, sigma, expected)
        }
        Family::B => {
            // |0> vs cos(theta)|0> + sin(theta)|1> with cos^2(theta) = t.
            let rho = density_from_diagonal(&[1.0, 0.0]);
            let (ct, st) = (t.sqrt(), (1.0 - t).sqrt());
            let v = [Complex64::new(ct, 0.0), Complex64::new(st, 0.0)];
            let outer = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj());
            let sigma = validate_density(HermitianMatrix::from_matrix(outer)?)?;
            let expected = ExpectedMeasures {
                l: t,
                t: (1.0 - t).sqrt(),
                f: t.sqrt(),
                q: t,
                q_min: t,
                c: neg_log_ext(t),
                s: if t == 1.0 {
                    ExtendedReal::Finite(0.0)
                } else {
                    ExtendedReal::Infinity
                },
                s_star: None,
            };
            (rho, sigma, expected)
        }
        Family::C => {
            let rho = density_from_diagonal(&[1.0 - t, t, 0.0]);
            let sigma = density_from_diagonal(&[1.0 - t, 0.0, t]);
            let expected = ExpectedMeasures {
                l: (1.0 - t) * (1.0 - t),
                t,
                f: 1.0 - t,
                q: 1.0 - t,
                q_min: 1.0 - t,
                c: neg_log_ext(1.0 - t),
                s: if t == 0.0 {
                    ExtendedReal::Finite(0.0)
                } else {
                    ExtendedReal::Infinity
                },
                s_star: None,
            };
            (rho, sigma, expected)
        }
        Family::D => {
            let rho = density_from_diagonal(&[1.0 - t, t]);
            let sigma = density_from_diagonal(&[t, 1.0 - t]);
            let fq = 2.0 * (t * (1.0 - t)).sqrt();
            let s = if t == 0.0 || t == 1.0 {
                ExtendedReal::Infinity
            } else {
                ExtendedReal::Finite((2.0 * t - 1.0) * (t / (1.0 - t)).ln())
            };
            let expected = ExpectedMeasures {
                l: 2.0 * t * (1.0 - t),
                t: (1.0 - 2.0 * t).abs(),
                f: fq,
                q: fq,
                q_min: fq,
                c: neg_log_ext(fq),
                s,
                s_star: if t == 0.5 { None } else { Some(0.5) },
            };
            (rho, sigma, expected)
        }
    };
    Ok(FamilyPoint {
        family,
        t,
        rho,
        sigma,
        expected,
    })
}

fn gaussian_complex(rng: &mut ChaCha12Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Random pure state `v v^dagger` from a seeded normalized Gaussian vector.
pub fn random_pure(dim: usize, seed: u64) -> Result<DensityOperator> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange {
            name: "dim",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(&mut rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
    let outer = CMatrix::from_fn(dim, dim, |i, j| v[i] * v[j].conj());
    validate_density(HermitianMatrix::from_matrix(outer)?)
}

/// Random mixed state `G G^dagger / tr(G G^dagger)`, `G` complex Gaussian
/// `dim x rank`.
pub fn random_mixed(dim: usize, rank: usize, seed: u64) -> Result<DensityOperator> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange {
            name: "dim",
            value: 0.0,
            expected: ">= 1",
        });
    }
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(dim, rank, |_, _| gaussian_complex(&mut rng));
    let gg = &g * g.adjoint();
    let trace: f64 = (0..dim).map(|i| gg[(i, i)].re).sum();
    let normalized = gg.map(|z| z / trace);
    validate_density(HermitianMatrix::from_matrix(normalized)?)
}

/// Draw a state for randomized sweeps: rank-deficient with probability 1/4.
///
/// Ranks below `dim` (down to pure) are uniform; seeds for the actual draw
/// come from the supplied stream so that a single `u64` reproduces the state.
pub fn random_sweep_state(dim: usize, rng: &mut ChaCha12Rng) -> Result<DensityOperator> {
    let deficient = dim >= 2 && rng.random::<f64>() < 0.25;
    let rank = if deficient {
        rng.random_range(1..dim)
    } else {
        dim
    };
    let seed = rng.random::<u64>();
    random_mixed(dim, rank, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validate_rejects_bad_trace_and_negativity() {
        let bad_trace = HermitianMatrix::from_diagonal(&[0.5, 0.4]);
        assert!(matches!(
            validate_density(bad_trace),
            Err(Error::TraceNotOne { .. })
        ));
        let not_psd = HermitianMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            validate_density(not_psd),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn validate_clips_eigenvalue_noise() {
        let noisy = HermitianMatrix::from_diagonal(&[1.0, -5e-11]);
        let rho = validate_density(noisy).unwrap();
        assert_eq!(rho.eigenvalues(), &[1.0, 0.0]);
        assert_eq!(rho.rank(), 1);
    }

    #[test]
    fn make_weighted_pair_validates_prior_and_dims() {
        let rho = density_from_diagonal(&[1.0, 0.0]);
        let sigma = density_from_diagonal(&[0.5, 0.5]);
        assert!(matches!(
            make_weighted_pair(rho.clone(), sigma.clone(), 1.5),
            Err(Error::InvalidPrior(_))
        ));
        let sigma3 = density_from_diagonal(&[0.5, 0.5, 0.0]);
        assert!(matches!(
            make_weighted_pair(rho.clone(), sigma3, 0.5),
            Err(Error::DimensionMismatch { .. })
        ));
        let pair = make_weighted_pair(rho, sigma, 0.25).unwrap();
        assert_abs_diff_eq!(
            pair.weighted_a().trace() + pair.weighted_b().trace(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn family_point_rejects_out_of_range_t() {
        assert!(matches!(
            family_point(Family::A, -0.1),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            family_point(Family::D, 1.1),
            Err(Error::ParamOutOfRange { .. })
        ));
    }

    #[test]
    fn family_b_overlap_matches_parameter() {
        let fp = family_point(Family::B, 0.25).unwrap();
        // tr(rho sigma) should equal t for pure states with overlap t.
        let prod = fp.rho.matrix().matrix() * fp.sigma.matrix().matrix();
        let overlap: f64 = (0..2).map(|i| prod[(i, i)].re).sum();
        assert_abs_diff_eq!(overlap, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn family_coincidence_points() {
        // (a) at t = 1, (c) at t = 0 and (d) at t = 1/2 are coincident pairs.
        for (fam, t) in [(Family::A, 1.0), (Family::C, 0.0), (Family::D, 0.5)] {
            let fp = family_point(fam, t).unwrap();
            assert_eq!(fp.expected.t, 0.0);
            assert_eq!(fp.expected.s, ExtendedReal::Finite(0.0));
        }
    }

    #[test]
    fn random_pure_is_seed_deterministic_and_rank_one() {
        let r1 = random_pure(4, 9).unwrap();
        let r2 = random_pure(4, 9).unwrap();
        assert!(r1.same_matrix(&r2));
        assert_eq!(r1.rank(), 1);
        // Purity: rho^2 = rho.
        let sq = r1.matrix().matrix() * r1.matrix().matrix();
        let err = (&sq - r1.matrix().matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        assert!(err <= 1e-12, "purity defect {err}");
    }

    #[test]
    fn random_pure_dim_one_is_unity() {
        let r = random_pure(1, 3).unwrap();
        assert_abs_diff_eq!(r.matrix().matrix()[(0, 0)].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn random_mixed_has_requested_rank() {
        for (dim, rank) in [(4, 4), (4, 2), (6, 1), (3, 2)] {
            let rho = random_mixed(dim, rank, 17).unwrap();
            assert_eq!(rho.rank(), rank, "dim {dim} rank {rank}");
            assert_abs_diff_eq!(rho.matrix().trace(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_mixed_rejects_bad_rank() {
        assert!(matches!(
            random_mixed(3, 0, 1),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            random_mixed(3, 4, 1),
            Err(Error::InvalidRank { .. })
        ));
    }

    #[test]
    fn different_seeds_differ() {
        let a = random_mixed(3, 3, 1).unwrap();
        let b = random_mixed(3, 3, 2).unwrap();
        assert!(!a.same_matrix(&b));
    }
}
