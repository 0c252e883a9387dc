//! Extended real values for possibly-divergent quantities.

use std::cmp::Ordering;
use std::fmt;

/// A real value extended with the two infinities.
///
/// Relative entropy, the Chernoff exponent and several derived bounds diverge
/// on states with mismatched supports. Carrying the divergence as an explicit
/// variant keeps comparisons exact and keeps `inf - inf` out of slack
/// arithmetic. `Finite` values are never NaN or infinite by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    /// Wrap an `f64`, mapping IEEE infinities to the matching variant.
    ///
    /// NaN inputs are a caller bug; they are rejected loudly rather than
    /// silently ordered.
    pub fn from_f64(v: f64) -> Self {
        assert!(!v.is_nan(), "ExtendedReal cannot hold NaN");
        if v == f64::INFINITY {
            ExtendedReal::Infinity
        } else if v == f64::NEG_INFINITY {
            ExtendedReal::NegInfinity
        } else {
            ExtendedReal::Finite(v)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    /// The value as `f64`, using IEEE infinities for the infinite variants.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Finite(v) => v,
            ExtendedReal::Infinity => f64::INFINITY,
        }
    }

    /// Finite payload, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Total order: `-inf < finite < +inf`, finite values by magnitude.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        use ExtendedReal::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (Infinity, Infinity) => Ordering::Equal,
            (NegInfinity, _) | (_, Infinity) => Ordering::Less,
            (_, NegInfinity) | (Infinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.total_cmp(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    /// `exp(-x)` with the divergent case mapped to exact zero.
    pub fn exp_neg(self) -> ExtendedReal {
        match self {
            ExtendedReal::NegInfinity => ExtendedReal::Infinity,
            ExtendedReal::Infinity => ExtendedReal::Finite(0.0),
            ExtendedReal::Finite(v) => ExtendedReal::from_f64((-v).exp()),
        }
    }

    /// Scale by a positive finite constant.
    pub fn scale(self, k: f64) -> ExtendedReal {
        debug_assert!(k.is_finite() && k > 0.0);
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(v * k),
            inf => inf,
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInfinity => write!(f, "-inf"),
            ExtendedReal::Infinity => write!(f, "inf"),
            ExtendedReal::Finite(v) => write!(f, "{v}"),
        }
    }
}
