//! Integration helpers: tanh-sinh on finite intervals and Fourier-cosine
//! integrals on the half-line with epsilon-algorithm tail acceleration.

use quadrature::double_exponential;

use crate::error::{GhaError, Result};

/// `∫_a^b f` by double-exponential quadrature to an absolute target.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    double_exponential::integrate(f, a, b, abs_tol).integral
}

/// `∫_a^b f` split into `pieces` equal panels, which keeps tanh-sinh honest
/// when the integrand has structure well inside the interval.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, abs_tol: f64) -> f64 {
    let pieces = pieces.max(1);
    let h = (b - a) / pieces as f64;
    let per = abs_tol / pieces as f64;
    (0..pieces).map(|i| integrate(&f, a + h * i as f64, a + h * (i + 1) as f64, per)).sum()
}

/// Limit of a slowly converging sequence by Wynn's epsilon algorithm.
pub fn wynn_epsilon(sequence: &[f64]) -> f64 {
    let n = sequence.len();
    if n < 3 {
        return sequence.last().copied().unwrap_or(0.0);
    }
    // eps[k] holds column k of the epsilon table, updated in place
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut curr: Vec<f64> = sequence.to_vec();
    let mut best = sequence[n - 1];
    let mut best_delta = f64::INFINITY;
    for col in 1..n {
        let len = n - col;
        let mut next = vec![0.0; len];
        for i in 0..len {
            let diff = curr[i + 1] - curr[i];
            if diff == 0.0 {
                return curr[i + 1];
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        // even columns approximate the limit
        if col % 2 == 0 && len >= 2 {
            let delta = (next[len - 1] - next[len - 2]).abs();
            if delta < best_delta && next[len - 1].is_finite() {
                best_delta = delta;
                best = next[len - 1];
            }
        }
        prev = curr;
        curr = next;
    }
    best
}

/// `∫_0^∞ cos(ωk) g(k) dk` for a smooth `g` decaying to zero.
///
/// The half-line is cut at the zeros of the cosine; partial sums over
/// half-periods are accelerated with the epsilon algorithm.
pub fn fourier_cosine<F: Fn(f64) -> f64>(g: F, omega: f64, abs_tol: f64) -> Result<f64> {
    const HALF_PERIODS: usize = 60;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(GhaError::Domain(format!("frequency must be positive, got {omega}")));
    }
    let integrand = |k: f64| (omega * k).cos() * g(k);
    let half = std::f64::consts::PI / omega;
    let piece_tol = abs_tol / HALF_PERIODS as f64;
    let mut a = 0.0;
    let mut b = 0.5 * half;
    let mut total = 0.0;
    let mut sums = Vec::with_capacity(HALF_PERIODS);
    for _ in 0..HALF_PERIODS {
        total += integrate(integrand, a, b, piece_tol);
        sums.push(total);
        a = b;
        b += half;
    }
    Ok(wynn_epsilon(&sums))
}
