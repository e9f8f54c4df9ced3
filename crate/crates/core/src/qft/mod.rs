//! λφ⁴ field theory in the Hartree vacuum, regulated by a sharp momentum
//! cutoff `Λ`.
//!
//! The vacuum is an effectively free Klein–Gordon field of mass `M`, fixed
//! by the gap equation `M² = m² + 12λσ² + 12λI₀(M²)` where
//!
//! ```text
//! I_n(M²) = (1/4π²) ∫₀^Λ k² (k² + M²)^{n − 1/2} dk
//! ```

mod bessel;

pub use bessel::{bessel_k1, MAX_ARGUMENT as K1_MAX_ARGUMENT, MIN_ARGUMENT as K1_MIN_ARGUMENT};

use serde::Serialize;

use crate::error::{GhaError, Result};
use crate::quadrature::{fourier_cosine, integrate_panels};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldTheory<T> {
    /// Bare mass squared.
    pub m2: T,
    pub lambda: T,
    pub cutoff: T,
}

impl<T: Real> FieldTheory<T> {
    pub fn new(m2: T, lambda: T, cutoff: T) -> Result<Self> {
        if !(m2 > T::zero()) || !m2.is_finite() {
            return Err(GhaError::InvalidModel(format!("bare mass squared must be positive, got {m2}")));
        }
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(GhaError::InvalidModel(format!("coupling must be non-negative, got {lambda}")));
        }
        if !(cutoff > T::zero()) || !cutoff.is_finite() {
            return Err(GhaError::InvalidModel(format!("cutoff must be positive, got {cutoff}")));
        }
        Ok(Self { m2, lambda, cutoff })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapState<T> {
    pub sigma: T,
    #[serde(rename = "M2")]
    pub m2_gap: T,
    pub i0: T,
    pub i1: T,
    pub im1: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenormalizedParams<T> {
    #[serde(rename = "mR2")]
    pub m_r2: T,
    #[serde(rename = "lambdaR")]
    pub lambda_r: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VevBranch<T> {
    pub sigma: T,
    #[serde(rename = "M2")]
    pub m2_gap: T,
    pub physical: bool,
}

fn four_pi2<T: Real>() -> T {
    T::lit(4.0) * T::PI() * T::PI()
}

fn check_stevenson_args<T: Real>(n: i32, m2: T, cutoff: T) -> Result<()> {
    if !(-1..=1).contains(&n) {
        return Err(GhaError::Domain(format!("Stevenson integral index must be -1, 0 or 1, got {n}")));
    }
    if !(m2 > T::zero()) {
        return Err(GhaError::Domain(format!("mass squared must be positive, got {m2}")));
    }
    if !(cutoff > T::zero()) {
        return Err(GhaError::Domain(format!("cutoff must be positive, got {cutoff}")));
    }
    Ok(())
}

/// `I_n(M²)` for `n ∈ {−1, 0, 1}` in closed form.
pub fn stevenson<T: Real>(n: i32, m2: T, cutoff: T) -> Result<T> {
    check_stevenson_args(n, m2, cutoff)?;
    let lam = cutoff;
    let m = m2.sqrt();
    let s = (lam * lam + m2).sqrt();
    let log = (lam / m).asinh();
    let eighth = T::lit(0.125);
    let raw = match n {
        -1 => log - lam / s,
        0 => T::lit(0.5) * (lam * s - m2 * log),
        _ => eighth * lam * (T::lit(2.0) * lam * lam + m2) * s - eighth * m2 * m2 * log,
    };
    Ok(raw / four_pi2())
}

/// `I_n(M²)` by direct quadrature; an independent check on [`stevenson`].
pub fn stevenson_quadrature<T: Real>(n: i32, m2: T, cutoff: T) -> Result<T> {
    check_stevenson_args(n, m2, cutoff)?;
    let (m2, lam) = (m2.to_f64().expect("finite"), cutoff.to_f64().expect("finite"));
    let p = n as f64 - 0.5;
    let f = |k: f64| k * k * (k * k + m2).powf(p);
    let scale = lam.powi(3) * (lam * lam + m2).powf(p).max(m2.powf(p));
    let v = integrate_panels(f, 0.0, lam, 4, 1e-14 * scale) / (4.0 * std::f64::consts::PI.powi(2));
    Ok(T::lit(v))
}

fn gap_state<T: Real>(theory: &FieldTheory<T>, sigma: T, m2_gap: T) -> Result<GapState<T>> {
    Ok(GapState {
        sigma,
        m2_gap,
        i0: stevenson(0, m2_gap, theory.cutoff)?,
        i1: stevenson(1, m2_gap, theory.cutoff)?,
        im1: stevenson(-1, m2_gap, theory.cutoff)?,
    })
}

/// `M² − m² − 12λσ² − 12λI₀(M²)`.
pub fn gap_residual<T: Real>(theory: &FieldTheory<T>, sigma: T, m2_gap: T) -> Result<T> {
    let twelve_l = T::lit(12.0) * theory.lambda;
    Ok(m2_gap - theory.m2 - twelve_l * sigma * sigma - twelve_l * stevenson(0, m2_gap, theory.cutoff)?)
}

/// Unique root of the mass-gap equation at fixed `σ`.
///
/// The residual is increasing in `M²` with slope `1 + 6λI₋₁`, negative at
/// `m²` and non-negative at `m² + 12λ(σ² + I₀(m²))`. Newton steps are taken
/// inside that bracket, falling back to bisection.
pub fn solve_mass_gap<T: Real>(theory: &FieldTheory<T>, sigma: T) -> Result<GapState<T>> {
    const MAX_STEPS: usize = 200;
    if !(theory.cutoff > T::zero()) {
        return Err(GhaError::NoPhysicalRoot("mass gap needs a positive cutoff".into()));
    }
    let twelve_l = T::lit(12.0) * theory.lambda;
    let mut lo = theory.m2;
    let mut hi = theory.m2 + twelve_l * (sigma * sigma + stevenson(0, theory.m2, theory.cutoff)?);
    if hi == lo {
        return gap_state(theory, sigma, lo);
    }
    let stop = T::tol(1e-13);
    let mut x = lo;
    for _ in 0..MAX_STEPS {
        let f = gap_residual(theory, sigma, x)?;
        if f.abs() <= stop * x {
            break;
        }
        if f < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let slope = T::one() + T::lit(6.0) * theory.lambda * stevenson(-1, x, theory.cutoff)?;
        let newton = x - f / slope;
        x = if newton > lo && newton < hi { newton } else { T::lit(0.5) * (lo + hi) };
        if hi - lo <= T::epsilon() * hi {
            break;
        }
    }
    let residual = gap_residual(theory, sigma, x)?;
    if residual.abs() >= T::tol(1e-10) * x {
        return Err(GhaError::NonConvergence { iterations: MAX_STEPS });
    }
    gap_state(theory, sigma, x)
}

/// Solutions of the vacuum condition `σ[M² − 8λσ²] = 0`.
///
/// The `σ = 0` branch is always present and marked physical. A `σ ≠ 0`
/// branch needs `M² = 8λσ²` together with the gap equation, that is
/// `−M²/2 − m² − 12λI₀(M²) = 0`, which is scanned for sign changes.
pub fn vev_branches<T: Real>(theory: &FieldTheory<T>) -> Result<Vec<VevBranch<T>>> {
    let symmetric = solve_mass_gap(theory, T::zero())?;
    let mut branches = vec![VevBranch { sigma: T::zero(), m2_gap: symmetric.m2_gap, physical: true }];
    if theory.lambda == T::zero() {
        return Ok(branches);
    }
    let condition = |m2_gap: T| -> Result<T> {
        Ok(-T::lit(0.5) * m2_gap - theory.m2 - T::lit(12.0) * theory.lambda * stevenson(0, m2_gap, theory.cutoff)?)
    };
    let scale = theory.m2.abs().max(theory.cutoff * theory.cutoff);
    let grid = crate::vacuum::log_grid(scale * T::lit(1e-12), scale * T::lit(1e4), 400);
    let mut prev = (grid[0], condition(grid[0])?);
    for &x in &grid[1..] {
        let fx = condition(x)?;
        if (prev.1 < T::zero()) != (fx < T::zero()) {
            let (mut a, mut b) = (prev.0, x);
            let fa_neg = prev.1 < T::zero();
            for _ in 0..200 {
                let mid = T::lit(0.5) * (a + b);
                if (condition(mid)? < T::zero()) == fa_neg {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let m2_gap = T::lit(0.5) * (a + b);
            let sigma = (m2_gap / (T::lit(8.0) * theory.lambda)).sqrt();
            branches.push(VevBranch { sigma, m2_gap, physical: false });
            branches.push(VevBranch { sigma: -sigma, m2_gap, physical: false });
        }
        prev = (x, fx);
    }
    Ok(branches)
}

/// `U(σ) = I₁ − 3λI₀² + ½m²σ² + λσ⁴` with `I_n` at the gap mass `M²(σ)`.
pub fn effective_potential<T: Real>(theory: &FieldTheory<T>, sigma: T) -> Result<T> {
    let st = solve_mass_gap(theory, sigma)?;
    let s2 = sigma * sigma;
    Ok(st.i1 - T::lit(3.0) * theory.lambda * st.i0 * st.i0 + T::lit(0.5) * theory.m2 * s2 + theory.lambda * s2 * s2)
}

/// `m_R² = m² + 12λI₀(M̄²)` and `λ_R = λ(1 − 12λI₋₁)/(1 + 6λI₋₁)`.
pub fn renormalized<T: Real>(theory: &FieldTheory<T>) -> Result<RenormalizedParams<T>> {
    let st = solve_mass_gap(theory, T::zero())?;
    let l = theory.lambda;
    Ok(RenormalizedParams {
        m_r2: theory.m2 + T::lit(12.0) * l * st.i0,
        lambda_r: l * (T::one() - T::lit(12.0) * l * st.im1) / (T::one() + T::lit(6.0) * l * st.im1),
    })
}

/// Second and fourth central differences of `U` at `σ = 0` with step `h`,
/// giving `(d²U/dσ², (1/4!) d⁴U/dσ⁴)`.
pub fn renormalized_finite_difference<T: Real>(theory: &FieldTheory<T>, h: T) -> Result<RenormalizedParams<T>> {
    let u = |s: T| effective_potential(theory, s);
    let two = T::lit(2.0);
    let (u0, u1, u2) = (u(T::zero())?, u(h)?, u(two * h)?);
    // U is even, so U(−σ) = U(σ)
    let d2 = (two * u1 - two * u0) / (h * h);
    let d4 = (two * u2 - T::lit(8.0) * u1 + T::lit(6.0) * u0) / (h * h * h * h);
    Ok(RenormalizedParams { m_r2: d2, lambda_r: d4 / T::lit(24.0) })
}

/// `u(k) = √((k² + m²)/(k² + M²))`.
pub fn structure_function<T: Real>(k: T, m2: T, m2_gap: T) -> Result<T> {
    if !(k >= T::zero()) || !(m2 > T::zero()) || !(m2_gap > T::zero()) {
        return Err(GhaError::Domain("structure function needs k >= 0 and positive masses".into()));
    }
    Ok(((k * k + m2) / (k * k + m2_gap)).sqrt())
}

/// `ρ(k) = (1 + k²/m_R²)^{−1/2}`.
pub fn density_ratio<T: Real>(k: T, m_r2: T) -> Result<T> {
    if !(k >= T::zero()) || !(m_r2 > T::zero()) {
        return Err(GhaError::Domain("density ratio needs k >= 0 and a positive mass".into()));
    }
    Ok((T::one() + k * k / m_r2).sqrt().recip())
}

/// `n(0) = (m/m_R)/(32π³)`.
pub fn peak_density<T: Real>(m2: T, m_r2: T) -> Result<T> {
    if !(m2 > T::zero()) || !(m_r2 > T::zero()) {
        return Err(GhaError::Domain("peak density needs positive masses".into()));
    }
    Ok((m2 / m_r2).sqrt() / (T::lit(32.0) * T::PI().powi(3)))
}

/// Finite-cutoff pair density `sinh²β(k)` with `β(k) = ½ ln u(k)`.
pub fn finite_cutoff_density<T: Real>(k: T, m2: T, m2_gap: T) -> Result<T> {
    let u = structure_function(k, m2, m2_gap)?;
    Ok(T::lit(0.25) * (u + u.recip() - T::lit(2.0)))
}

fn check_static_args(r: f64, m_r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(GhaError::Domain(format!("separation must be positive, got {r}")));
    }
    if !(m_r > 0.0) || !m_r.is_finite() {
        return Err(GhaError::Domain(format!("mass must be positive, got {m_r}")));
    }
    Ok(())
}

/// `U(r) = m_R K₁(m_R r)/(4π² r)`.
pub fn static_potential<T: Real>(r: T, m_r: T) -> Result<T> {
    let (r, m) = (r.to_f64().unwrap_or(f64::NAN), m_r.to_f64().unwrap_or(f64::NAN));
    check_static_args(r, m)?;
    Ok(T::lit(m * bessel_k1(m * r)? / (4.0 * std::f64::consts::PI.powi(2) * r)))
}

/// `U(r)` from its momentum-space form `∫ d³k e^{ik·r} / ((2π)³ 2ω_k)`.
///
/// After the angular integral this is a radial sine integral; one
/// integration by parts turns it into the absolutely convergent
/// `U = m² ∫₀^∞ cos(kr)(k² + m²)^{−3/2} dk / (4π² r²)`.
pub fn static_potential_fourier<T: Real>(r: T, m_r: T) -> Result<T> {
    let (r, m) = (r.to_f64().unwrap_or(f64::NAN), m_r.to_f64().unwrap_or(f64::NAN));
    check_static_args(r, m)?;
    let m2 = m * m;
    let weight = |k: f64| (k * k + m2).powf(-1.5);
    let j = fourier_cosine(weight, r, 1e-15 / (m2 * m))?;
    Ok(T::lit(m2 * j / (4.0 * std::f64::consts::PI.powi(2) * r * r)))
}

/// `d ln U / dr` by a central difference with relative step `1e-4`.
pub fn static_log_slope<T: Real>(r: T, m_r: T) -> Result<T> {
    let h = r * T::lit(1e-4);
    let up = static_potential(r + h, m_r)?.ln();
    let down = static_potential(r - h, m_r)?.ln();
    Ok((up - down) / (T::lit(2.0) * h))
}

/// Exponential decay rate of `U` once the `r^{−3/2}` prefactor is removed:
/// `d/dr [ln U + (3/2) ln r]`.
pub fn static_decay_rate<T: Real>(r: T, m_r: T) -> Result<T> {
    Ok(static_log_slope(r, m_r)? + T::lit(1.5) / r)
}
