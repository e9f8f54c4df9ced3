//! Structure of the Hartree vacuum relative to the free one.
//!
//! The Hartree and free ladder operators are related by a Bogoliubov
//! transformation with parameter `α = ½ ln(1/ω)`. Only scalar observables of
//! that transformation are exposed.

use serde::Serialize;

use crate::error::{GhaError, Result};
use crate::hartree::{solve_level, Anharmonicity, OscillatorModel};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VacuumStructure<T> {
    /// Bogoliubov parameter.
    pub alpha: T,
    /// Free-particle number density in the Hartree vacuum.
    pub n0: T,
    /// Structure parameter in `(−1, 1)`.
    pub u: T,
}

pub fn vacuum_structure<T: Real>(omega: T) -> Result<VacuumStructure<T>> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(GhaError::Domain(format!("frequency must be positive, got {omega}")));
    }
    let half = T::lit(0.5);
    let one = T::one();
    Ok(VacuumStructure {
        alpha: half * omega.recip().ln(),
        n0: T::lit(0.25) * (omega + omega.recip() - T::lit(2.0)),
        u: (one - omega) / (one + omega),
    })
}

/// Ground-state `n₀` of the quartic oscillator at each coupling.
///
/// `model` supplies `g`; its coupling is replaced by each entry of `lambdas`.
pub fn strong_coupling_scaling<T: Real>(model: &OscillatorModel<T>, lambdas: &[T]) -> Result<Vec<(T, T)>> {
    if model.anharmonicity != Anharmonicity::Quartic || !(model.g > T::zero()) {
        return Err(GhaError::InvalidModel("strong-coupling scaling needs the quartic anharmonic oscillator".into()));
    }
    lambdas
        .iter()
        .map(|&lambda| {
            if !(lambda >= T::lit(100.0)) {
                return Err(GhaError::Domain(format!("strong-coupling samples need lambda >= 100, got {lambda}")));
            }
            let m = OscillatorModel::quartic(model.g, lambda)?;
            let omega = solve_level(&m, 0)?.omega;
            Ok((lambda, vacuum_structure(omega)?.n0))
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope<T: Real>(samples: &[(T, T)]) -> Result<T> {
    if samples.len() < 2 {
        return Err(GhaError::Domain("slope fit needs at least two samples".into()));
    }
    if samples.iter().any(|&(x, y)| !(x > T::zero() && y > T::zero())) {
        return Err(GhaError::Domain("slope fit needs positive samples".into()));
    }
    let n = T::from_usize_lossy(samples.len());
    let (sx, sy) = samples.iter().fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = samples.iter().fold((T::zero(), T::zero()), |(a, b), &(x, y)| {
        let dx = x.ln() - mx;
        (a + dx * (y.ln() - my), b + dx * dx)
    });
    Ok(sxy / sxx)
}

/// `count` points evenly spaced in `ln λ` over `[lo, hi]`.
pub fn log_grid<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    let steps = T::from_usize_lossy(count.max(2) - 1);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count.max(2)).map(|i| (a + (b - a) * T::from_usize_lossy(i) / steps).exp()).collect()
}
