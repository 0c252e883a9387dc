//! Distinguishability measures for weighted state pairs.
//!
//! With `A = p rho` and `B = (1-p) sigma` (see [`WeightedStatePair`]):
//!
//! | measure | definition | domain |
//! |---------|------------|--------|
//! | `L`     | `4 tr(AB)` | weighted |
//! | `T`     | `\|\|A - B\|\|_1` | weighted |
//! | `F`     | `2 \|\|A^{1/2} B^{1/2}\|\|_1` | weighted |
//! | `Q_s`   | `2 tr(A^s B^{1-s})`, `s in [0,1]` | weighted |
//! | `Q`     | `Q_{1/2}` | weighted |
//! | `Q_min` | `min_s Q_s` | weighted |
//! | `C`     | `-log min_s tr(rho^s sigma^{1-s})` | normalized |
//! | `S`     | `tr rho (log rho - log sigma)` | normalized |
//!
//! At `p = 1/2` the weighted forms reduce to the usual normalized ones
//! (`T` to half the trace-norm distance, `F` to the root fidelity, `Q_s` to
//! `tr(rho^s sigma^{1-s})`).
//!
//! All spectral measures share one device: with `A = U diag(a) U^+` and
//! `B = V diag(b) V^+`, the overlap matrix `M = U^+ V` yields
//! `tr(A^s B^{1-s}) = sum_ij a_i^s b_j^{1-s} |M_ij|^2`, so the entire curve
//! `s -> Q_s` costs one matrix product up front and `O(dim^2)` per point.
//! Zero eigenvalues follow the support convention `0^t := 0`, making
//! `A^0` the support projector of `A`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;
use crate::optim::golden_section_min;
use crate::spectral::{schatten_norm, trace_product, CMatrix, SpectralDecomposition};
use crate::state::{DensityOperator, WeightedStatePair};

/// Width of the golden-section bracket when minimizing over `s`.
const S_SEARCH_WIDTH: f64 = 1e-8;

/// `x^t` under the support convention: eigenvalues at or below the cutoff
/// are treated as exact zeros, and `0^t := 0` for every `t` including 0.
fn supported_pow(x: f64, t: f64, cutoff: f64) -> f64 {
    if x > cutoff {
        x.powf(t)
    } else {
        0.0
    }
}

/// Shared spectral data for a pair of positive semidefinite operators.
struct PairSpectrum {
    a: Vec<f64>,
    b: Vec<f64>,
    /// `M = U^+ V`, the eigenbasis change between the two operators.
    m: CMatrix,
    /// `|M|^2` entrywise: `w[(i, j)] = |<u_i|v_j>|^2`.
    w: DMatrix<f64>,
    a_cut: f64,
    b_cut: f64,
}

impl PairSpectrum {
    fn new(a: &SpectralDecomposition, b: &SpectralDecomposition) -> PairSpectrum {
        let m = a.eigenvectors().adjoint() * b.eigenvectors();
        let w = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].norm_sqr());
        PairSpectrum {
            a: a.eigenvalues().to_vec(),
            b: b.eigenvalues().to_vec(),
            m,
            w,
            a_cut: a.support_cutoff(),
            b_cut: b.support_cutoff(),
        }
    }

    fn dim(&self) -> usize {
        self.a.len()
    }

    /// `tr(A^s B^{1-s})` with the support convention at both ends.
    fn overlap_trace(&self, s: f64) -> f64 {
        let pa: Vec<f64> = self
            .a
            .iter()
            .map(|&x| supported_pow(x, s, self.a_cut))
            .collect();
        let pb: Vec<f64> = self
            .b
            .iter()
            .map(|&x| supported_pow(x, 1.0 - s, self.b_cut))
            .collect();
        let mut sum = 0.0;
        for (j, &bj) in pb.iter().enumerate() {
            if bj == 0.0 {
                continue;
            }
            for (i, &ai) in pa.iter().enumerate() {
                sum += ai * bj * self.w[(i, j)];
            }
        }
        sum
    }

    /// True when the supports are numerically orthogonal: every overlap
    /// between support eigenvectors is at the eigensolver noise floor.
    fn orthogonal_supports(&self) -> bool {
        let noise = 64.0 * self.dim() as f64 * f64::EPSILON;
        let threshold = noise * noise;
        for i in 0..self.dim() {
            if self.a[i] <= self.a_cut {
                continue;
            }
            for j in 0..self.dim() {
                if self.b[j] <= self.b_cut {
                    continue;
                }
                if self.w[(i, j)] > threshold {
                    return false;
                }
            }
        }
        true
    }

    /// Minimize `s -> tr(A^s B^{1-s})` over `[0, 1]`.
    ///
    /// Minimizes the convex `log` of the overlap by golden-section search and
    /// compares against both endpoints, preferring an endpoint on ties so
    /// that boundary minima come out exact. Orthogonal supports short-circuit
    /// to `(1/2, 0)` by convention.
    fn min_overlap(&self) -> (f64, f64) {
        if self.orthogonal_supports() {
            return (0.5, 0.0);
        }
        let log_overlap = |s: f64| self.overlap_trace(s).ln();
        let at_zero = log_overlap(0.0);
        let at_one = log_overlap(1.0);
        let (interior, at_interior) = golden_section_min(0.0, 1.0, S_SEARCH_WIDTH, log_overlap);
        let s_star = if at_zero <= at_interior.min(at_one) {
            0.0
        } else if at_one <= at_interior {
            1.0
        } else {
            interior
        };
        (s_star, self.overlap_trace(s_star))
    }

    /// `tr(P_ker(B) A)`: total weight of `A` leaking outside `B`'s support.
    fn kernel_leak(&self) -> f64 {
        let mut leak = 0.0;
        for i in 0..self.dim() {
            if self.a[i] <= self.a_cut {
                continue;
            }
            for j in 0..self.dim() {
                if self.b[j] <= self.b_cut {
                    leak += self.a[i] * self.w[(i, j)];
                }
            }
        }
        leak
    }
}

fn weighted_spectrum(pair: &WeightedStatePair) -> PairSpectrum {
    PairSpectrum::new(pair.a_decomposition(), pair.b_decomposition())
}

fn state_spectrum(rho: &DensityOperator, sigma: &DensityOperator) -> Result<PairSpectrum> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    Ok(PairSpectrum::new(
        rho.decomposition(),
        sigma.decomposition(),
    ))
}

/// The linear overlap `L = 4 tr(AB)`; `tr(rho sigma)` at `p = 1/2`.
pub fn overlap_l(pair: &WeightedStatePair) -> f64 {
    4.0 * trace_product(pair.weighted_a(), pair.weighted_b())
        .expect("pair operators share a dimension")
}

/// The trace-norm distance `T = ||A - B||_1`; `||rho - sigma||_1 / 2` at
/// `p = 1/2`.
pub fn trace_distance_t(pair: &WeightedStatePair) -> Result<f64> {
    let diff = pair.weighted_a().sub(pair.weighted_b())?;
    schatten_norm(diff.matrix(), 1.0)
}

/// The fidelity `F = 2 ||A^{1/2} B^{1/2}||_1`; the root fidelity at
/// `p = 1/2`.
///
/// Works on the shared spectral data: the unitary outer factors drop out of
/// the singular values, leaving `diag(a)^{1/2} M diag(b)^{1/2}`.
pub fn fidelity_f(pair: &WeightedStatePair) -> Result<f64> {
    let ps = weighted_spectrum(pair);
    let ra: Vec<f64> =
        ps.a.iter()
            .map(|&x| supported_pow(x, 0.5, ps.a_cut))
            .collect();
    let rb: Vec<f64> =
        ps.b.iter()
            .map(|&x| supported_pow(x, 0.5, ps.b_cut))
            .collect();
    let k = CMatrix::from_fn(ps.dim(), ps.dim(), |i, j| {
        ps.m[(i, j)] * Complex64::new(ra[i] * rb[j], 0.0)
    });
    Ok(2.0 * schatten_norm(&k, 1.0)?)
}

/// The s-overlap `Q_s = 2 tr(A^s B^{1-s})` for `s in [0, 1]`.
///
/// At the endpoints the zero-eigenvalue convention makes `A^0` (resp. `B^0`)
/// the support projector.
pub fn renyi_q_s(pair: &WeightedStatePair, s: f64) -> Result<f64> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::ParamOutOfRange {
            name: "s",
            value: s,
            expected: "0 <= s <= 1",
        });
    }
    Ok(2.0 * weighted_spectrum(pair).overlap_trace(s))
}

/// `Q_s` on a batch of `s` values, reusing one spectral factorization.
pub fn renyi_q_grid(pair: &WeightedStatePair, s_values: &[f64]) -> Result<Vec<f64>> {
    for &s in s_values {
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(Error::ParamOutOfRange {
                name: "s",
                value: s,
                expected: "0 <= s <= 1",
            });
        }
    }
    let ps = weighted_spectrum(pair);
    Ok(s_values
        .iter()
        .map(|&s| 2.0 * ps.overlap_trace(s))
        .collect())
}

/// The Hellinger-type overlap `Q = Q_{1/2} = 2 tr(A^{1/2} B^{1/2})`.
pub fn hellinger_q(pair: &WeightedStatePair) -> Result<f64> {
    renyi_q_s(pair, 0.5)
}

/// Result of minimizing `Q_s` over `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMin {
    /// The minimum value `Q_{min} = min_s Q_s`.
    pub value: f64,
    /// The minimizer; `1/2` by convention when `Q_s` vanishes identically.
    pub s_star: f64,
}

/// Minimize `Q_s` over `s in [0, 1]`.
///
/// Golden-section search on the convex `log tr(A^s B^{1-s})` to an
/// `s`-interval of `1e-8`, with explicit endpoint comparison; endpoint
/// minima are returned exactly. Orthogonal supports give `value = 0`,
/// `s_star = 1/2`.
pub fn q_min(pair: &WeightedStatePair) -> Result<QMin> {
    let (s_star, overlap) = weighted_spectrum(pair).min_overlap();
    Ok(QMin {
        value: 2.0 * overlap,
        s_star,
    })
}

/// The symmetric discrimination exponent
/// `C = -log min_s tr(rho^s sigma^{1-s})`, a normalized-only measure.
///
/// `+inf` when the supports are orthogonal; exactly `0` when the two states
/// are the same matrix bit for bit.
pub fn chernoff_c(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedReal> {
    let ps = state_spectrum(rho, sigma)?;
    if rho.same_matrix(sigma) {
        return Ok(ExtendedReal::Finite(0.0));
    }
    let (_, overlap) = ps.min_overlap();
    if overlap <= 0.0 {
        return Ok(ExtendedReal::Infinity);
    }
    Ok(ExtendedReal::Finite((-overlap.ln()).max(0.0)))
}

/// The relative entropy `S = tr rho (log rho - log sigma)`, a
/// normalized-only measure.
///
/// `+inf` when the support of `rho` leaks outside the support of `sigma`
/// beyond the spectral noise floor; exactly `0` for bitwise-equal states;
/// logarithms are taken on the supports (`0 log 0 := 0`).
pub fn relative_entropy_s(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedReal> {
    let ps = state_spectrum(rho, sigma)?;
    if rho.same_matrix(sigma) {
        return Ok(ExtendedReal::Finite(0.0));
    }
    let leak_tolerance = sigma.decomposition().support_cutoff() * rho.dim() as f64;
    if ps.kernel_leak() > leak_tolerance {
        return Ok(ExtendedReal::Infinity);
    }
    let mut entropy = 0.0;
    for i in 0..ps.dim() {
        let r = ps.a[i];
        if r <= ps.a_cut {
            continue;
        }
        let mut cross = 0.0;
        for j in 0..ps.dim() {
            let q = ps.b[j];
            if q > ps.b_cut {
                cross += ps.w[(i, j)] * q.ln();
            }
        }
        entropy += r * (r.ln() - cross);
    }
    Ok(ExtendedReal::Finite(entropy))
}

/// `psi(s) = log tr(rho^s sigma^{1-s})` for normalized states; convex in
/// `s`, with `-inf` when the overlap trace vanishes.
pub fn psi(rho: &DensityOperator, sigma: &DensityOperator, s: f64) -> Result<ExtendedReal> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::ParamOutOfRange {
            name: "s",
            value: s,
            expected: "0 <= s <= 1",
        });
    }
    let ps = state_spectrum(rho, sigma)?;
    let overlap = ps.overlap_trace(s);
    if overlap <= 0.0 {
        return Ok(ExtendedReal::NegInfinity);
    }
    Ok(ExtendedReal::Finite(overlap.ln()))
}

/// `||A^{1/2} - B^{1/2}||_2^2`, the squared Frobenius distance of the
/// operator square roots.
pub fn root_half_distance_sq(pair: &WeightedStatePair) -> Result<f64> {
    let half = |d: &SpectralDecomposition| {
        let cut = d.support_cutoff();
        d.apply(|l| if l > cut { l.sqrt() } else { 0.0 })
    };
    let diff = half(pair.a_decomposition()).sub(&half(pair.b_decomposition()))?;
    Ok(diff.matrix().iter().map(|z| z.norm_sqr()).sum())
}

/// Every measure of one weighted pair; field names match the measure table.
#[derive(Debug, Clone, Copy)]
pub struct MeasureReport {
    pub l: f64,
    pub t: f64,
    pub f: f64,
    pub q: f64,
    pub q_min: f64,
    /// Argmin of `Q_s`; `1/2` by convention when the minimum is degenerate.
    pub s_star: f64,
    /// Normalized-only: computed from `(rho, sigma)` regardless of the prior.
    pub c: ExtendedReal,
    /// Normalized-only: computed from `(rho, sigma)` regardless of the prior.
    pub s: ExtendedReal,
}

/// Compute all measures of a pair in one call.
pub fn measure_report(pair: &WeightedStatePair) -> Result<MeasureReport> {
    let qm = q_min(pair)?;
    Ok(MeasureReport {
        l: overlap_l(pair),
        t: trace_distance_t(pair)?,
        f: fidelity_f(pair)?,
        q: hellinger_q(pair)?,
        q_min: qm.value,
        s_star: qm.s_star,
        c: chernoff_c(pair.rho(), pair.sigma())?,
        s: relative_entropy_s(pair.rho(), pair.sigma())?,
    })
}
