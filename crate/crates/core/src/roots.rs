//! Bracketing root finder for monotone gap polynomials.

use crate::error::{GhaError, Result};
use crate::scalar::Real;

const BISECTION_STEPS: usize = 80;
const NEWTON_STEPS: usize = 8;

/// Positive root of an increasing function with `f(0⁺) < 0`.
///
/// `f` returns `(value, derivative)`. The bracket starts at `[1e-8, 1]`; the
/// upper end doubles until the residual turns positive, then bisection and a
/// Newton polish that only accepts steps which shrink the residual.
pub(crate) fn increasing_positive_root<T, F>(f: F, what: &str) -> Result<T>
where
    T: Real,
    F: Fn(T) -> (T, T),
{
    let two = T::lit(2.0);
    let mut lo = T::lit(1e-8);
    while f(lo).0 >= T::zero() {
        lo = lo / two;
        if lo < T::min_positive_value() * T::lit(1e4) {
            return Err(GhaError::NoPhysicalRoot(format!("{what}: no sign change near zero")));
        }
    }
    let mut hi = T::one().max(lo * two);
    loop {
        let v = f(hi).0;
        if v.is_nan() {
            return Err(GhaError::NoPhysicalRoot(format!("{what}: residual is NaN at {hi}")));
        }
        if v > T::zero() {
            break;
        }
        lo = hi;
        hi = hi * two;
        if !hi.is_finite() || hi > T::max_value() / T::lit(4.0) {
            return Err(GhaError::NoPhysicalRoot(format!("{what}: bracket diverged")));
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid).0 > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = (lo + hi) / two;
    let (mut fx, mut dfx) = f(x);
    for _ in 0..NEWTON_STEPS {
        if fx == T::zero() || dfx == T::zero() {
            break;
        }
        let cand = x - fx / dfx;
        if !(cand > T::zero()) || !cand.is_finite() {
            break;
        }
        let (fc, dfc) = f(cand);
        if fc.abs() >= fx.abs() {
            break;
        }
        x = cand;
        fx = fc;
        dfx = dfc;
    }
    Ok(x)
}
