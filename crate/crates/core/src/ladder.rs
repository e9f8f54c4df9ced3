//! Normal-ordered polynomials in a single pair of bosonic ladder operators.
//!
//! A polynomial is stored as a map `(i, j) -> c` standing for `c · (b†)ⁱ bʲ`.
//! Products are re-ordered with the commutator `[b, b†] = 1`, so every value
//! of [`NormalOrderedPolynomial`] is canonical and its matrix elements between
//! number states are exact up to floating-point rounding.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{GhaError, Result};
use crate::scalar::Real;

/// Hartree mode: `φ = σ + (b + b†)/√(2ω)`, `p = i√(ω/2)(b† − b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeParameters<T> {
    pub omega: T,
    pub sigma: T,
}

impl<T: Real> ModeParameters<T> {
    pub fn new(omega: T, sigma: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(GhaError::Domain(format!("mode frequency must be positive, got {omega}")));
        }
        Ok(Self { omega, sigma })
    }

    /// Unshifted mode (`σ = 0`).
    pub fn centered(omega: T) -> Result<Self> {
        Self::new(omega, T::zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalOrderedPolynomial<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Real> Default for NormalOrderedPolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> NormalOrderedPolynomial<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c · (b†)^dagger_power b^lower_power`.
    pub fn monomial(dagger_power: u32, lower_power: u32, c: T) -> Self {
        let mut p = Self::zero();
        p.accumulate((dagger_power, lower_power), c);
        p
    }

    /// The annihilation operator `b`.
    pub fn annihilation() -> Self {
        Self::monomial(0, 1, T::one())
    }

    /// The creation operator `b†`.
    pub fn creation() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum of `i + j` over stored terms (0 for constants and for zero).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    /// Largest `|i − j|`: matrix elements vanish beyond this band.
    pub fn bandwidth(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i.abs_diff(j)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, dagger_power: u32, lower_power: u32) -> T {
        self.terms.get(&(dagger_power, lower_power)).copied().unwrap_or_else(T::zero)
    }

    /// Canonical terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), T)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: (u32, u32), c: T) {
        let entry = self.terms.entry(key).or_insert_with(T::zero);
        *entry = *entry + c;
        if negligible(*entry) {
            self.terms.remove(&key);
        }
    }

    pub fn scaled(&self, s: T) -> Self {
        let mut out = Self::zero();
        for (&k, &c) in &self.terms {
            out.accumulate(k, c * s);
        }
        out
    }

    /// Hermitian conjugate: `(b†)ⁱ bʲ ↦ (b†)ʲ bⁱ` (coefficients are real).
    pub fn adjoint(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect() }
    }

    /// Normal-ordered product `self · rhs`.
    ///
    /// Uses `bʲ (b†)ᵏ = Σ_r C(j,r) C(k,r) r! (b†)^{k−r} b^{j−r}`.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), &c1) in &self.terms {
            for (&(k, l), &c2) in &rhs.terms {
                let mut weight = 1.0_f64;
                for r in 0..=j.min(k) {
                    if r > 0 {
                        // C(j,r)C(k,r)r! from the r−1 value
                        weight *= f64::from(j - r + 1) * f64::from(k - r + 1) / f64::from(r);
                    }
                    out.accumulate((i + k - r, j + l - r), c1 * c2 * T::lit(weight));
                }
            }
        }
        out
    }

    /// Exact `⟨m| poly |n⟩` in the number basis of the mode.
    pub fn matrix_element(&self, m: usize, n: usize) -> T {
        if m.abs_diff(n) > self.bandwidth() as usize {
            return T::zero();
        }
        let mut acc = T::zero();
        for (&(i, j), &c) in &self.terms {
            let (i, j) = (i as usize, j as usize);
            if j > n || i > m || m - i != n - j {
                continue;
            }
            acc = acc + c * sqrt_falling::<T>(n, j) * sqrt_falling::<T>(m, i);
        }
        acc
    }

    /// Quantum average `⟨n| poly |n⟩`.
    pub fn expectation(&self, n: usize) -> T {
        self.matrix_element(n, n)
    }
}

/// `√(n!/(n−k)!)` accumulated factor by factor.
fn sqrt_falling<T: Real>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, t| acc * T::from_usize_lossy(n - t).sqrt())
}

fn negligible<T: Real>(c: T) -> bool {
    c == T::zero() || c.abs() < T::lit(1e-300)
}

impl<T: Real> Add for &NormalOrderedPolynomial<T> {
    type Output = NormalOrderedPolynomial<T>;
    fn add(self, rhs: Self) -> Self::Output {
        let mut out = self.clone();
        for (&k, &c) in &rhs.terms {
            out.accumulate(k, c);
        }
        out
    }
}

impl<T: Real> Sub for &NormalOrderedPolynomial<T> {
    type Output = NormalOrderedPolynomial<T>;
    fn sub(self, rhs: Self) -> Self::Output {
        let mut out = self.clone();
        for (&k, &c) in &rhs.terms {
            out.accumulate(k, -c);
        }
        out
    }
}

impl<T: Real> Mul for &NormalOrderedPolynomial<T> {
    type Output = NormalOrderedPolynomial<T>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.multiply(rhs)
    }
}

impl<T: Real> Neg for &NormalOrderedPolynomial<T> {
    type Output = NormalOrderedPolynomial<T>;
    fn neg(self) -> Self::Output {
        self.scaled(-T::one())
    }
}

/// The field operator `φ = σ + (b + b†)/√(2ω)`.
pub fn field<T: Real>(mode: ModeParameters<T>) -> NormalOrderedPolynomial<T> {
    let amp = (T::lit(2.0) * mode.omega).sqrt().recip();
    let mut phi = NormalOrderedPolynomial::constant(mode.sigma);
    phi.accumulate((1, 0), amp);
    phi.accumulate((0, 1), amp);
    phi
}

/// Normal-ordered expansion of `φᵖ`.
pub fn field_power<T: Real>(p: u32, mode: ModeParameters<T>) -> NormalOrderedPolynomial<T> {
    let phi = field(mode);
    (0..p).fold(NormalOrderedPolynomial::one(), |acc, _| acc.multiply(&phi))
}

/// `p² = −(ω/2)(b† − b)² = −(ω/2)(b†² − 2b†b − 1 + b²)`.
pub fn momentum_squared<T: Real>(mode: ModeParameters<T>) -> NormalOrderedPolynomial<T> {
    let w = mode.omega;
    let half = w / T::lit(2.0);
    let mut p2 = NormalOrderedPolynomial::zero();
    p2.accumulate((2, 0), -half);
    p2.accumulate((1, 1), w);
    p2.accumulate((0, 0), half);
    p2.accumulate((0, 2), -half);
    p2
}

/// Free-function form of [`NormalOrderedPolynomial::multiply`].
pub fn multiply<T: Real>(
    lhs: &NormalOrderedPolynomial<T>,
    rhs: &NormalOrderedPolynomial<T>,
) -> NormalOrderedPolynomial<T> {
    lhs.multiply(rhs)
}

pub fn matrix_element<T: Real>(poly: &NormalOrderedPolynomial<T>, m: usize, n: usize) -> T {
    poly.matrix_element(m, n)
}

pub fn expectation<T: Real>(poly: &NormalOrderedPolynomial<T>, n: usize) -> T {
    poly.expectation(n)
}
