//! Modified Bessel function `K₁` from its integral representation.

use crate::error::{GhaError, Result};
use crate::quadrature::integrate_panels;

pub const MIN_ARGUMENT: f64 = 1e-3;
pub const MAX_ARGUMENT: f64 = 700.0;

/// `K₁(x) = ∫₀^∞ e^{−x cosh t} cosh t dt` on `[1e-3, 700]`.
///
/// Evaluated as `e^{−x} ∫ e^{−x(cosh t − 1)} cosh t dt` so the integrand
/// stays of order one, truncated where the exponent reaches `−45`.
pub fn bessel_k1(x: f64) -> Result<f64> {
    if !(MIN_ARGUMENT..=MAX_ARGUMENT).contains(&x) {
        return Err(GhaError::Domain(format!("K1 argument must lie in [{MIN_ARGUMENT}, {MAX_ARGUMENT}], got {x}")));
    }
    let t_max = (1.0 + 45.0 / x).acosh();
    let scaled = |t: f64| (-x * (t.cosh() - 1.0)).exp() * t.cosh();
    let rough = 1.0 / x + 1.0;
    Ok((-x).exp() * integrate_panels(scaled, 0.0, t_max, 8, 1e-14 * rough))
}
