//! Second-order Hartree-improved perturbation theory.
//!
//! The perturbation is `λH′ = λ(φ^{2k} − V)`. Its diagonal element vanishes by
//! construction of `C`, so the first correction is second order:
//!
//! ```text
//! ΔE⁽²⁾_n = Σ_{m≠n} |⟨m|λH′|n⟩|² / (E_n − E_m)
//! ```
//!
//! Numerators are taken in the level-`n` Hartree mode. Each denominator uses
//! the zeroth-order GHA energy of level `m` solved with its own gap equation.

use serde::Serialize;

use crate::error::Result;
use crate::hartree::{solve_level, HartreeSolution, OscillatorModel};
use crate::ladder::{field_power, NormalOrderedPolynomial};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contribution<T> {
    pub m: usize,
    /// `⟨m|λH′|n⟩`.
    pub numerator: T,
    /// `E_n − E_m`.
    pub denominator: T,
}

impl<T: Real> Contribution<T> {
    pub fn shift(&self) -> T {
        self.numerator * self.numerator / self.denominator
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport<T> {
    pub n: usize,
    pub e0: T,
    pub delta_e2: T,
    pub e2: T,
    /// `⟨n|λH′|n⟩`; zero up to rounding.
    pub first_order: T,
    pub contributions: Vec<Contribution<T>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HiptOptions {
    /// Keep only even `m − n`, as in the published quartic remark.
    pub strict_paper: bool,
}

/// `H′ = φ^{2k} − (Aφ² − Bφ + C)` in the solution's mode.
pub fn build_h_prime<T: Real>(model: &OscillatorModel<T>, sol: &HartreeSolution<T>) -> NormalOrderedPolynomial<T> {
    let interaction = field_power(model.power(), sol.mode());
    &interaction - &sol.hartree_potential()
}

pub fn second_order<T: Real>(model: &OscillatorModel<T>, n: usize) -> Result<PerturbationReport<T>> {
    second_order_with(model, n, HiptOptions::default())
}

pub fn second_order_with<T: Real>(
    model: &OscillatorModel<T>,
    n: usize,
    options: HiptOptions,
) -> Result<PerturbationReport<T>> {
    let sol = solve_level(model, n)?;
    let h_prime = build_h_prime(model, &sol).scaled(model.lambda);
    let band = h_prime.bandwidth() as usize;

    let candidates: Vec<(usize, T)> = (n.saturating_sub(band)..=n + band)
        .filter(|&m| m != n)
        .filter(|&m| !options.strict_paper || (m.abs_diff(n)) % 2 == 0)
        .map(|m| (m, h_prime.matrix_element(m, n)))
        .collect();
    let largest = candidates.iter().fold(T::zero(), |acc, &(_, v)| acc.max(v.abs()));
    // analytic cancellations leave rounding-level residue
    let cutoff = T::tol(1e-12) * largest.max(T::min_positive_value());

    let mut contributions = Vec::new();
    for (m, numerator) in candidates {
        if numerator.abs() <= cutoff {
            continue;
        }
        let em = solve_level(model, m)?.energy;
        contributions.push(Contribution { m, numerator, denominator: sol.energy - em });
    }
    let delta_e2 = contributions.iter().fold(T::zero(), |acc, c| acc + c.shift());
    Ok(PerturbationReport {
        n,
        e0: sol.energy,
        delta_e2,
        e2: sol.energy + delta_e2,
        first_order: h_prime.expectation(n),
        contributions,
    })
}
