//! Golden-section minimization for unimodal scalar functions.

/// `1/phi`, the golden-section interval contraction ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Hard cap on iterations; the interval shrinks geometrically, so this is
/// never reached for the widths used in this crate.
const MAX_ITER: usize = 200;

/// Minimize a unimodal function on `[lo, hi]`.
///
/// Contracts the bracket until its width is at most `width`, then returns the
/// midpoint and the function value there. The minimizer is accurate to about
/// `width / 2`.
pub(crate) fn golden_section_min(
    mut lo: f64,
    mut hi: f64,
    width: f64,
    f: impl Fn(f64) -> f64,
) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITER {
        if hi - lo <= width {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
