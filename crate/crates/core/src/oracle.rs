//! Exact spectra by dense diagonalization in a truncated oscillator basis.
//!
//! The Hamiltonian is built with the ladder algebra at `σ = 0` and a chosen
//! basis frequency. Parity is conserved, so even and odd sectors are
//! diagonalized separately.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GhaError, Result};
use crate::hartree::{solve_level, OscillatorModel};
use crate::ladder::{ModeParameters, NormalOrderedPolynomial};
use crate::scalar::Real;

pub const MIN_DIMENSION: usize = 16;
pub const START_DIMENSION: usize = 64;
pub const MAX_DIMENSION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedBasis<T> {
    pub dimension: usize,
    pub basis_frequency: T,
}

impl<T: Real> TruncatedBasis<T> {
    pub fn new(dimension: usize, basis_frequency: T) -> Result<Self> {
        if dimension < MIN_DIMENSION {
            return Err(GhaError::Domain(format!("basis dimension must be at least {MIN_DIMENSION}, got {dimension}")));
        }
        if !(basis_frequency > T::zero()) || !basis_frequency.is_finite() {
            return Err(GhaError::Domain(format!("basis frequency must be positive, got {basis_frequency}")));
        }
        Ok(Self { dimension, basis_frequency })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEstimate<T> {
    /// Ascending levels `0..=n_max`.
    pub levels: Vec<T>,
    pub dimension_used: usize,
    /// `|E_i(N) − E_i(N/2)|` per level.
    pub convergence_error: Vec<T>,
    pub basis_frequency: T,
}

fn hamiltonian_polynomial<T: Real>(model: &OscillatorModel<T>, basis_frequency: T) -> NormalOrderedPolynomial<T> {
    model.hamiltonian(ModeParameters { omega: basis_frequency, sigma: T::zero() })
}

/// Dense `N×N` Hamiltonian matrix in the basis of the given frequency.
///
/// The model fields are used as-is, so `λ = 0` gives the free oscillator.
pub fn hamiltonian_matrix<T: Real>(model: &OscillatorModel<T>, basis: &TruncatedBasis<T>) -> DMatrix<T> {
    let h = hamiltonian_polynomial(model, basis.basis_frequency);
    let n = basis.dimension;
    let band = h.bandwidth() as usize;
    let mut m = DMatrix::from_element(n, n, T::zero());
    for j in 0..n {
        for i in j..=(j + band).min(n - 1) {
            let v = h.matrix_element(i, j);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn eigenvalues<T: Real>(matrix: &DMatrix<T>) -> Result<Vec<T>> {
    let work = matrix.map(|v| v.to_f64().expect("finite matrix element"));
    let mut values: Vec<f64> = symmetric_eigen(work)?.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values.into_iter().map(T::lit).collect())
}

fn symmetric_eigen(matrix: DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    const MAX_ITERATIONS: usize = 10_000;
    if matrix.is_empty() {
        return Ok(SymmetricEigen::new(matrix));
    }
    SymmetricEigen::try_new(matrix, f64::EPSILON, MAX_ITERATIONS)
        .ok_or(GhaError::NonConvergence { iterations: MAX_ITERATIONS })
}

/// Largest `‖Hv − Ev‖ / ‖H‖` over all eigenpairs.
pub fn backward_error(matrix: &DMatrix<f64>) -> Result<f64> {
    let eig = symmetric_eigen(matrix.clone())?;
    let norm = matrix.norm().max(f64::MIN_POSITIVE);
    let worst = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let v = eig.eigenvectors.column(k);
            (matrix * v - v * e).norm()
        })
        .fold(0.0, f64::max);
    Ok(worst / norm)
}

/// Eigenvalues of the parity sector `parity` (0 even, 1 odd) in `0..dimension`.
fn sector_eigenvalues(h: &NormalOrderedPolynomial<f64>, dimension: usize, parity: usize) -> Result<Vec<f64>> {
    let states: Vec<usize> = (parity..dimension).step_by(2).collect();
    let band = h.bandwidth() as usize;
    let size = states.len();
    let mut m = DMatrix::zeros(size, size);
    for (j, &sj) in states.iter().enumerate() {
        for (i, &si) in states.iter().enumerate().skip(j) {
            if si - sj <= band {
                let v = h.matrix_element(si, sj);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
    }
    Ok(symmetric_eigen(m)?.eigenvalues.iter().copied().collect())
}

/// The full spectrum in a truncated basis, using the parity split.
pub fn spectrum<T: Real>(model: &OscillatorModel<T>, basis: &TruncatedBasis<T>) -> Result<Vec<T>> {
    let h = to_f64_polynomial(&hamiltonian_polynomial(model, basis.basis_frequency));
    let sectors: Vec<Result<Vec<f64>>> =
        [0usize, 1].par_iter().map(|&p| sector_eigenvalues(&h, basis.dimension, p)).collect();
    let mut all = Vec::with_capacity(basis.dimension);
    for s in sectors {
        all.extend(s?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all.into_iter().map(T::lit).collect())
}

fn to_f64_polynomial<T: Real>(p: &NormalOrderedPolynomial<T>) -> NormalOrderedPolynomial<f64> {
    p.terms().fold(NormalOrderedPolynomial::zero(), |acc, ((i, j), c)| {
        &acc + &NormalOrderedPolynomial::monomial(i, j, c.to_f64().expect("finite coefficient"))
    })
}

/// Levels `0..=n_max` converged under basis doubling, with the basis
/// frequency set to the Hartree frequency of level `n_max`.
pub fn converged_levels<T: Real>(model: &OscillatorModel<T>, n_max: usize, tol: T) -> Result<SpectrumEstimate<T>> {
    let omega = solve_level(model, n_max)?.omega;
    converged_levels_with(model, n_max, tol, omega)
}

pub fn converged_levels_with<T: Real>(
    model: &OscillatorModel<T>,
    n_max: usize,
    tol: T,
    basis_frequency: T,
) -> Result<SpectrumEstimate<T>> {
    if !(tol >= T::lit(1e-10)) {
        return Err(GhaError::Domain(format!("tolerance must be at least 1e-10, got {tol}")));
    }
    let mut dimension = START_DIMENSION;
    while dimension < 2 * (n_max + 1) {
        dimension *= 2;
    }
    let mut previous = spectrum(model, &TruncatedBasis::new(dimension, basis_frequency)?)?;
    loop {
        let next = dimension * 2;
        if next > MAX_DIMENSION {
            return Err(GhaError::BudgetExceeded { dimension: next, limit: MAX_DIMENSION });
        }
        let current = spectrum(model, &TruncatedBasis::new(next, basis_frequency)?)?;
        let errors: Vec<T> = (0..=n_max).map(|i| (current[i] - previous[i]).abs()).collect();
        if errors.iter().all(|&e| e < tol) {
            return Ok(SpectrumEstimate {
                levels: current[..=n_max].to_vec(),
                dimension_used: next,
                convergence_error: errors,
                basis_frequency,
            });
        }
        dimension = next;
        previous = current;
    }
}
