//! The scalar envelope `s(x)`: the least relative entropy attainable by a
//! pair of binary distributions at total-variation distance `x`, together
//! with its small-`x` series and two closed-form envelopes.
//!
//! `hot_s(x)` minimizes `KL(r - x, 1 - r + x || r, 1 - r)` over `r in (x, 1)`
//! by golden-section search. It is increasing on `[0, 1)`, diverges as
//! `x -> 1`, and is sandwiched between `pinsker_lower(x) = 2x^2` and
//! `hot_upper(x) = -log(1 - x)`. `hot_s_inverse` inverts it by bisection.

use crate::error::{Error, Result};
use crate::optim::golden_section_min;

/// Guard distance keeping the search strictly inside the open interval.
const R_GUARD: f64 = 1e-12;

/// Largest argument handled by the inverse (the function diverges at 1).
const X_CAP: f64 = 1.0 - 1e-12;

fn check_unit_interval(x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..1.0).contains(&x) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "0 <= x < 1",
        });
    }
    Ok(())
}

/// Unchecked binary KL divergence; callers guarantee `p` in [0,1], `q` in (0,1).
fn kl_raw(p: f64, q: f64) -> f64 {
    let head = if p == 0.0 { 0.0 } else { p * (p / q).ln() };
    let tail = if p == 1.0 {
        0.0
    } else {
        (1.0 - p) * ((1.0 - p) / (1.0 - q)).ln()
    };
    head + tail
}

/// Relative entropy between the binary distributions `(p, 1-p)` and
/// `(q, 1-q)`, with the `0 log 0 := 0` convention.
pub fn binary_kl(p: f64, q: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p,
            expected: "0 <= p <= 1",
        });
    }
    if !q.is_finite() || q <= 0.0 || q >= 1.0 {
        return Err(Error::ParamOutOfRange {
            name: "q",
            value: q,
            expected: "0 < q < 1",
        });
    }
    Ok(kl_raw(p, q))
}

/// The envelope value together with the minimizing reference weight `r`.
///
/// The minimizer `r* - x` collapses toward 0 as `x -> 1`, so the search runs
/// over `u = log(r - x)`, where the objective stays unimodal at every `x`.
/// The one-sided limit at `r -> x` equals `-log(1 - x)` and bounds the
/// infimum from above; it caps the result when the interior dip falls below
/// floating-point resolution.
pub fn hot_s_with_argmin(x: f64) -> Result<(f64, f64)> {
    check_unit_interval(x)?;
    if x == 0.0 {
        return Ok((0.0, 0.5));
    }
    let delta_max = (1.0 - x) * (1.0 - 1e-9);
    let delta_min = R_GUARD.min(0.5 * delta_max);
    let objective = |u: f64| {
        let delta = u.exp();
        kl_raw(delta, x + delta)
    };
    let (u_star, value) = golden_section_min(delta_min.ln(), delta_max.ln(), 1e-6, objective);
    let edge_limit = -(-x).ln_1p();
    if edge_limit < value {
        return Ok((edge_limit, x + delta_min));
    }
    Ok((value, x + u_star.exp()))
}

/// The envelope `s(x) = min_{x < r < 1} KL(r - x, 1 - r + x || r, 1 - r)`.
pub fn hot_s(x: f64) -> Result<f64> {
    hot_s_with_argmin(x).map(|(value, _)| value)
}

/// Inverse of the envelope: the `x` with `hot_s(x) = y`, by bisection.
///
/// Arguments beyond the numeric range of the envelope return the cap
/// `1 - 1e-12`.
pub fn hot_s_inverse(y: f64) -> Result<f64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "y",
            value: y,
            expected: ">= 0",
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = X_CAP;
    if hot_s(hi)? <= y {
        return Ok(hi);
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if hot_s(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sixth-order series of the envelope around 0.
pub fn hot_series(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok(2.0 * x.powi(2) + (4.0 / 9.0) * x.powi(4) + (32.0 / 135.0) * x.powi(6))
}

/// The quadratic lower envelope `2x^2`.
pub fn pinsker_lower(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok(2.0 * x * x)
}

/// The logarithmic upper envelope `-log(1 - x)`.
pub fn hot_upper(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok(-(-x).ln_1p())
}
