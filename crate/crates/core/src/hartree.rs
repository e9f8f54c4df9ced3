//! Hartree potentials, gap equations and zeroth-order spectra.
//!
//! The interaction `λφ^{2k}` is replaced by `λV = λ(Aφ² − Bφ + C)` with the
//! constant `C` fixed so that `⟨n|V|n⟩ = ⟨n|φ^{2k}|n⟩`. Requiring the
//! resulting quadratic Hamiltonian to be diagonal in the same `(ω, σ)` mode
//! gives the gap equation for `ω` and the ground-state equation for `σ`.

use serde::Serialize;

use crate::error::{GhaError, Result};
use crate::ladder::{field_power, momentum_squared, ModeParameters, NormalOrderedPolynomial};
use crate::roots::increasing_positive_root;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Anharmonicity {
    Quartic,
    Sextic,
    Octic,
}

impl Anharmonicity {
    pub fn from_power(power: u32) -> Result<Self> {
        match power {
            4 => Ok(Self::Quartic),
            6 => Ok(Self::Sextic),
            8 => Ok(Self::Octic),
            _ => Err(GhaError::InvalidModel(format!("anharmonic power must be 4, 6 or 8, got {power}"))),
        }
    }

    /// The exponent `2k` of `φ^{2k}`.
    pub fn power(self) -> u32 {
        match self {
            Self::Quartic => 4,
            Self::Sextic => 6,
            Self::Octic => 8,
        }
    }
}

/// `H = p²/2 + gφ²/2 + λφ^{2k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorModel<T> {
    pub anharmonicity: Anharmonicity,
    pub g: T,
    pub lambda: T,
}

impl<T: Real> OscillatorModel<T> {
    pub fn new(power: u32, g: T, lambda: T) -> Result<Self> {
        let anharmonicity = Anharmonicity::from_power(power)?;
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(GhaError::InvalidModel(format!("coupling must be positive, got {lambda}")));
        }
        if g == T::zero() || !g.is_finite() {
            return Err(GhaError::InvalidModel(format!("quadratic coefficient must be nonzero, got {g}")));
        }
        Ok(Self { anharmonicity, g, lambda })
    }

    pub fn quartic(g: T, lambda: T) -> Result<Self> {
        Self::new(4, g, lambda)
    }

    pub fn power(&self) -> u32 {
        self.anharmonicity.power()
    }

    pub fn is_double_well(&self) -> bool {
        self.g < T::zero()
    }

    /// The full Hamiltonian as a normal-ordered polynomial in the given mode.
    pub fn hamiltonian(&self, mode: ModeParameters<T>) -> NormalOrderedPolynomial<T> {
        let half = T::lit(0.5);
        let kinetic = momentum_squared(mode).scaled(half);
        let quadratic = field_power(2, mode).scaled(half * self.g);
        let interaction = field_power(self.power(), mode).scaled(self.lambda);
        &(&kinetic + &quadratic) + &interaction
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    #[serde(rename = "AHO")]
    Aho,
    /// Symmetry-restored double well (`σ = 0`).
    #[serde(rename = "DWO_SR")]
    DwoSr,
    /// Broken-symmetry double well (`σ ≠ 0`).
    #[serde(rename = "DWO_SSB")]
    DwoSsb,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Aho => "AHO",
            Phase::DwoSr => "DWO_SR",
            Phase::DwoSsb => "DWO_SSB",
        })
    }
}

/// `ξ = n + 1/2`.
pub fn xi<T: Real>(n: usize) -> T {
    T::from_usize_lossy(n) + T::lit(0.5)
}

/// `f(ξ) = ξ + 1/(4ξ)`.
pub fn f_xi<T: Real>(xi: T) -> T {
    xi + (T::lit(4.0) * xi).recip()
}

/// `p(ξ) = 5ξ − 1/(4ξ)`.
pub fn p_xi<T: Real>(xi: T) -> T {
    T::lit(5.0) * xi - (T::lit(4.0) * xi).recip()
}

/// `h(ξ) = ξ³ + 7ξ/2 + 9/(16ξ)`.
pub fn h_xi<T: Real>(xi: T) -> T {
    xi * xi * xi + T::lit(3.5) * xi + T::lit(9.0) / (T::lit(16.0) * xi)
}

/// Constant term `c` of the `σ = 0` gap polynomial `ω^{k+1} − gω^{k−1} − c`.
fn symmetric_gap_constant<T: Real>(model: &OscillatorModel<T>, xi: T) -> T {
    let l = model.lambda;
    let four_xi2 = T::lit(4.0) * xi * xi;
    match model.anharmonicity {
        Anharmonicity::Quartic => T::lit(6.0) * l * f_xi(xi),
        Anharmonicity::Sextic => T::lit(15.0 / 4.0) * l * (four_xi2 + T::lit(5.0)),
        Anharmonicity::Octic => T::lit(35.0) * l * h_xi(xi),
    }
}

/// `λ_c = (−2g/3)^{3/2} / (3 p(ξ))`.
pub fn critical_coupling<T: Real>(xi: T, g: T) -> Result<T> {
    if !(g < T::zero()) {
        return Err(GhaError::Domain(format!("critical coupling needs g < 0, got {g}")));
    }
    if !(xi >= T::lit(0.5)) {
        return Err(GhaError::Domain(format!("xi must be at least 1/2, got {xi}")));
    }
    let base = T::lit(-2.0) * g / T::lit(3.0);
    Ok(base * base.sqrt() / (T::lit(3.0) * p_xi(xi)))
}

fn check_phase<T: Real>(model: &OscillatorModel<T>, phase: Phase) -> Result<()> {
    let ok = match phase {
        Phase::Aho => model.g > T::zero(),
        Phase::DwoSr | Phase::DwoSsb => model.g < T::zero(),
    };
    if ok {
        Ok(())
    } else {
        Err(GhaError::PhaseUnavailable(format!("{phase} is inconsistent with g = {}", model.g)))
    }
}

/// Hartree frequency `ω` for level `n` in the requested phase.
pub fn solve_gap<T: Real>(model: &OscillatorModel<T>, n: usize, phase: Phase) -> Result<T> {
    check_phase(model, phase)?;
    let xi = xi::<T>(n);
    match phase {
        Phase::DwoSsb => ssb_frequency(model, xi),
        Phase::Aho | Phase::DwoSr => {
            let g = model.g;
            let c = symmetric_gap_constant(model, xi);
            let k = model.power() / 2;
            // ω^{k+1} − gω^{k−1} − c
            let poly = |w: T| {
                let wk1 = w.powi(k as i32 - 1);
                let val = wk1 * (w * w - g) - c;
                let kf = T::from_u32(k).unwrap();
                let der = (kf + T::one()) * wk1 * w - (kf - T::one()) * g * w.powi(k as i32 - 2);
                (val, der)
            };
            increasing_positive_root(poly, "symmetric gap equation")
        }
    }
}

/// Closed-form broken-symmetry root `ω_a = 2√(−2g/3) cos[π/6 + arcsin(λ/λ_c)/3]`.
fn ssb_frequency<T: Real>(model: &OscillatorModel<T>, xi: T) -> Result<T> {
    if model.anharmonicity != Anharmonicity::Quartic {
        return Err(GhaError::PhaseUnavailable(
            "broken-symmetry spectra are only available for the quartic oscillator".into(),
        ));
    }
    let lc = critical_coupling(xi, model.g)?;
    if model.lambda > lc {
        return Err(GhaError::PhaseUnavailable(format!(
            "lambda = {} exceeds the critical coupling {lc}",
            model.lambda
        )));
    }
    let three = T::lit(3.0);
    let amp = T::lit(2.0) * (T::lit(-2.0) * model.g / three).sqrt();
    let angle = T::PI() / T::lit(6.0) + (model.lambda / lc).min(T::one()).asin() / three;
    Ok(amp * angle.cos())
}

/// `σ² = −(g + 12λξ/ω)/(4λ)` on the broken-symmetry branch.
fn ssb_sigma_squared<T: Real>(model: &OscillatorModel<T>, xi: T, omega: T) -> T {
    let l = model.lambda;
    -(model.g + T::lit(12.0) * l * xi / omega) / (T::lit(4.0) * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HartreeCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Coefficients of `V = Aφ² − Bφ + C` for level `n` in the mode `(ω, σ)`.
///
/// `A` and `B` are the closed forms; `C` is always completed from the exact
/// quantum averages so the Hartree condition holds identically.
pub fn hartree_coefficients<T: Real>(
    model: &OscillatorModel<T>,
    n: usize,
    omega: T,
    sigma: T,
) -> Result<HartreeCoefficients<T>> {
    let mode = ModeParameters::new(omega, sigma)?;
    let xi = xi::<T>(n);
    let (g, l, w, s) = (model.g, model.lambda, omega, sigma);
    let s2 = s * s;
    let four_xi2 = T::lit(4.0) * xi * xi;
    let lit = T::lit;
    let (a, b) = match model.anharmonicity {
        Anharmonicity::Quartic => {
            let a = lit(6.0) * s2 + lit(3.0) * f_xi(xi) / w;
            let b = (T::one() + g) * s * w * w / l + lit(4.0) * w * w * s2 * s + lit(12.0) * w * s * xi;
            (a, b)
        }
        Anharmonicity::Sextic => {
            let a = lit(15.0) * s2 * s2
                + lit(45.0) * s2 * (four_xi2 + T::one()) / (lit(4.0) * xi * w)
                + lit(15.0) / (lit(8.0) * w * w) * (four_xi2 + lit(5.0));
            let b = s
                * ((T::one() + g) * w * w / l
                    + lit(6.0) * w * w * s2 * s2
                    + lit(60.0) * s2 * xi * w
                    + lit(45.0 / 4.0) * (four_xi2 + T::one()));
            (a, b)
        }
        Anharmonicity::Octic => {
            let a = lit(28.0) * s2 * s2 * s2
                + lit(105.0) * s2 * s2 * (four_xi2 + T::one()) / (lit(2.0) * xi * w)
                + lit(105.0) / (lit(2.0) * w * w) * s2 * (four_xi2 + lit(5.0))
                + lit(35.0) * h_xi(xi) / (lit(2.0) * w * w * w);
            let b = s
                * ((T::one() + g) * w * w / l
                    + lit(8.0) * w * w * s2 * s2 * s2
                    + lit(168.0) * s2 * s2 * xi * w
                    + lit(105.0) * s2 * (four_xi2 + T::one())
                    + lit(35.0) * xi * (four_xi2 + lit(5.0)) / w);
            (a, b)
        }
    };
    let interaction = field_power(model.power(), mode).expectation(n);
    let phi2 = field_power(2, mode).expectation(n);
    let phi1 = field_power(1, mode).expectation(n);
    let c = interaction - a * phi2 + b * phi1;
    Ok(HartreeCoefficients { a, b, c })
}

/// Closed-form zeroth-order energy of level `n` given its gap-equation root.
pub fn zeroth_energy<T: Real>(model: &OscillatorModel<T>, n: usize, omega: T, phase: Phase) -> T {
    let xi = xi::<T>(n);
    let (g, w) = (model.g, omega);
    let lit = T::lit;
    match (model.anharmonicity, phase) {
        (Anharmonicity::Quartic, Phase::DwoSsb) => {
            xi / lit(4.0) * (lit(3.0) * w - lit(2.0) * g / w) - g * g / (lit(16.0) * model.lambda)
        }
        (Anharmonicity::Quartic, _) => xi / lit(4.0) * (lit(3.0) * w + g / w),
        (Anharmonicity::Sextic, _) => xi / lit(3.0) * (lit(2.0) * w + g / w),
        (Anharmonicity::Octic, _) => xi / lit(8.0) * (lit(5.0) * w + lit(3.0) * g / w),
    }
}

/// One self-consistent branch considered while solving a level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Branch<T> {
    pub phase: Phase,
    pub omega: T,
    pub sigma: T,
    pub energy: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HartreeSolution<T> {
    pub n: usize,
    pub xi: T,
    pub omega: T,
    pub sigma: T,
    pub phase: Phase,
    pub a: T,
    pub b: T,
    pub c: T,
    pub h0: T,
    pub energy: T,
    /// Every branch that was solved, including the selected one.
    pub branches: Vec<Branch<T>>,
}

impl<T: Real> HartreeSolution<T> {
    pub fn mode(&self) -> ModeParameters<T> {
        ModeParameters { omega: self.omega, sigma: self.sigma }
    }

    /// `V = Aφ² − Bφ + C` in the solution's own mode.
    pub fn hartree_potential(&self) -> NormalOrderedPolynomial<T> {
        let mode = self.mode();
        let quad = field_power(2, mode).scaled(self.a);
        let lin = field_power(1, mode).scaled(self.b);
        &(&quad - &lin) + &NormalOrderedPolynomial::constant(self.c)
    }
}

fn build_solution<T: Real>(
    model: &OscillatorModel<T>,
    n: usize,
    phase: Phase,
    omega: T,
    sigma: T,
    branches: Vec<Branch<T>>,
) -> Result<HartreeSolution<T>> {
    let coeffs = hartree_coefficients(model, n, omega, sigma)?;
    let h0 = model.lambda * coeffs.c - omega * omega * sigma * sigma / T::lit(2.0);
    Ok(HartreeSolution {
        n,
        xi: xi(n),
        omega,
        sigma,
        phase,
        a: coeffs.a,
        b: coeffs.b,
        c: coeffs.c,
        h0,
        energy: zeroth_energy(model, n, omega, phase),
        branches,
    })
}

fn ssb_branch<T: Real>(model: &OscillatorModel<T>, n: usize) -> Result<Branch<T>> {
    let omega = solve_gap(model, n, Phase::DwoSsb)?;
    let s2 = ssb_sigma_squared(model, xi(n), omega);
    if !(s2 > T::zero()) {
        return Err(GhaError::PhaseUnavailable(format!("broken-symmetry branch has sigma^2 = {s2}")));
    }
    Ok(Branch { phase: Phase::DwoSsb, omega, sigma: s2.sqrt(), energy: zeroth_energy(model, n, omega, Phase::DwoSsb) })
}

/// Full GHA pipeline for one level: phase selection, gap solve, potential, energy.
pub fn solve_level<T: Real>(model: &OscillatorModel<T>, n: usize) -> Result<HartreeSolution<T>> {
    if model.g > T::zero() {
        let omega = solve_gap(model, n, Phase::Aho)?;
        let energy = zeroth_energy(model, n, omega, Phase::Aho);
        let branches = vec![Branch { phase: Phase::Aho, omega, sigma: T::zero(), energy }];
        return build_solution(model, n, Phase::Aho, omega, T::zero(), branches);
    }
    let omega_sr = solve_gap(model, n, Phase::DwoSr)?;
    let sr = Branch {
        phase: Phase::DwoSr,
        omega: omega_sr,
        sigma: T::zero(),
        energy: zeroth_energy(model, n, omega_sr, Phase::DwoSr),
    };
    let mut branches = vec![sr];
    if model.anharmonicity == Anharmonicity::Quartic {
        let lc = critical_coupling(xi(n), model.g)?;
        // at λ = λ_c the symmetry-restored branch is kept
        if model.lambda < lc {
            if let Ok(ssb) = ssb_branch(model, n) {
                branches.push(ssb);
            }
        }
    }
    let chosen = *branches
        .iter()
        .min_by(|x, y| x.energy.partial_cmp(&y.energy).unwrap_or(std::cmp::Ordering::Equal))
        .expect("at least one branch");
    build_solution(model, n, chosen.phase, chosen.omega, chosen.sigma, branches)
}

/// Residuals of the coupled `σ ≠ 0` gap equation and ground-state equation.
pub fn general_gap_residuals<T: Real>(model: &OscillatorModel<T>, n: usize, omega: T, sigma: T) -> (T, T) {
    let xi = xi::<T>(n);
    let (g, l, w, s) = (model.g, model.lambda, omega, sigma);
    let s2 = s * s;
    let four_xi2 = T::lit(4.0) * xi * xi;
    let lit = T::lit;
    match model.anharmonicity {
        Anharmonicity::Quartic => {
            let gap = w * w * w - w * (lit(12.0) * l * s2 + g) - lit(6.0) * l * f_xi(xi);
            let egs = s * (lit(4.0) * l * s2 + g + lit(12.0) * l * xi / w);
            (gap, egs)
        }
        Anharmonicity::Sextic => {
            let gap = w.powi(4)
                - w * w * (g + lit(30.0) * l * s2 * s2)
                - lit(45.0) * l * (s2 * w / (lit(2.0) * xi)) * (four_xi2 + T::one())
                - lit(15.0 / 4.0) * l * (four_xi2 + lit(5.0));
            let egs = s
                * (g + lit(6.0)
                    * l
                    * (s2 * s2 + lit(10.0) * xi * s2 / w + lit(15.0) * (four_xi2 + T::one()) / (lit(8.0) * w * w)));
            (gap, egs)
        }
        Anharmonicity::Octic => {
            let gap = w.powi(5)
                - w.powi(3) * (g + lit(56.0) * l * s2 * s2 * s2)
                - lit(105.0) * w * w * (l * s2 * s2 / xi) * (four_xi2 + T::one())
                - lit(105.0) * w * l * s2 * (four_xi2 + lit(5.0))
                - lit(35.0) * l * h_xi(xi);
            let egs = s
                * (g + l
                    * (lit(8.0) * s2 * s2 * s2
                        + lit(168.0) * s2 * s2 * (xi / w)
                        + lit(105.0) * s2 * (four_xi2 + T::one()) / (w * w)
                        + lit(35.0) * xi * (four_xi2 + lit(5.0)) / (w * w * w)));
            (gap, egs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic(g: f64, l: f64) -> OscillatorModel<f64> {
        OscillatorModel::quartic(g, l).unwrap()
    }

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn integer_root_of_quartic_gap() {
        let w = solve_gap(&quartic(1.0, 1.0), 0, Phase::Aho).unwrap();
        assert_eq!(w, 2.0);
    }

    #[test]
    fn symmetric_roots_match_bisection() {
        let w = solve_gap(&quartic(-1.0, 1.0), 0, Phase::DwoSr).unwrap();
        let expect = bisect(|w| w * w * w + w - 6.0, 0.0, 10.0);
        assert!((w - expect).abs() < 1e-13);
        assert!((w - 1.63437).abs() < 1e-5);

        let sext = OscillatorModel::<f64>::new(6, 1.0, 1.0).unwrap();
        let w = solve_gap(&sext, 0, Phase::Aho).unwrap();
        let closed = ((1.0 + 91.0_f64.sqrt()) / 2.0).sqrt();
        assert!((w - closed).abs() < 1e-13);
        assert!((w - 2.29558).abs() < 1e-5);

        let oct = OscillatorModel::new(8, 1.0, 0.5).unwrap();
        let w = solve_gap(&oct, 0, Phase::Aho).unwrap();
        let expect = bisect(|w| w.powi(5) - w.powi(3) - 52.5, 0.0, 10.0);
        assert!((w - expect).abs() < 1e-13);
        assert!((w - 2.30244).abs() < 1e-5);
    }

    #[test]
    fn phase_consistency_is_enforced() {
        assert!(matches!(solve_gap(&quartic(1.0, 1.0), 0, Phase::DwoSr), Err(GhaError::PhaseUnavailable(_))));
        assert!(matches!(solve_gap(&quartic(-1.0, 1.0), 0, Phase::Aho), Err(GhaError::PhaseUnavailable(_))));
        assert!(matches!(solve_gap(&quartic(-1.0, 0.5), 0, Phase::DwoSsb), Err(GhaError::PhaseUnavailable(_))));
        let sext = OscillatorModel::new(6, -1.0, 0.01).unwrap();
        assert!(matches!(solve_gap(&sext, 0, Phase::DwoSsb), Err(GhaError::PhaseUnavailable(_))));
    }

    #[test]
    fn critical_coupling_values() {
        let lc = critical_coupling(0.5, -1.0).unwrap();
        assert!((lc - (2.0_f64 / 3.0).powf(1.5) / 6.0).abs() < 1e-15);
        assert!((lc - 0.0907218).abs() < 1e-7);
        let lc4 = critical_coupling(0.5, -4.0).unwrap();
        assert!((lc4 - 8.0 * lc).abs() < 1e-14);
        let mut prev = lc;
        for n in 1..50 {
            let next = critical_coupling(xi::<f64>(n), -1.0).unwrap();
            assert!(next < prev);
            prev = next;
        }
        assert!(prev < 1e-3);
        assert!(matches!(critical_coupling(0.5, 1.0), Err(GhaError::Domain(_))));
        assert!(matches!(critical_coupling(0.5, 0.0), Err(GhaError::Domain(_))));
    }

    #[test]
    fn coefficient_examples() {
        let c = hartree_coefficients(&quartic(1.0, 1.0), 0, 2.0, 0.0).unwrap();
        assert_eq!(c.a, 1.5);
        assert_eq!(c.b, 0.0);
        assert!((c.c + 0.1875).abs() < 1e-15);

        let c = hartree_coefficients(&quartic(1.0, 1.0), 0, 1.0, 1.0).unwrap();
        assert_eq!(c.a, 9.0);
        assert_eq!(c.b, 12.0);

        for power in [4, 6, 8] {
            let m = OscillatorModel::new(power, 0.7, 0.3).unwrap();
            assert_eq!(hartree_coefficients(&m, 3, 1.7, 0.0).unwrap().b, 0.0);
        }
    }

    #[test]
    fn energy_examples() {
        let m = quartic(1.0, 1.0);
        assert_eq!(zeroth_energy(&m, 0, 2.0, Phase::Aho), 0.8125);
        let s = solve_level(&quartic(1.0, 0.1), 0).unwrap();
        assert!((s.energy - 0.56031).abs() < 5e-6);
        let sext = solve_level(&OscillatorModel::<f64>::new(6, 1.0, 1.0).unwrap(), 0).unwrap();
        assert!((sext.energy - 0.83780).abs() < 5e-6);
        let oct = solve_level(&OscillatorModel::<f64>::new(8, 1.0, 1.0).unwrap(), 0).unwrap();
        assert!((oct.energy - 0.88970).abs() < 1e-5);
        let s = solve_level(&quartic(1.0, 10.0), 2).unwrap();
        assert!((s.energy - 10.3240).abs() < 5e-4);
    }

    #[test]
    fn double_well_levels() {
        let s = solve_level(&quartic(-1.0, 0.1), 0).unwrap();
        assert_eq!(s.phase, Phase::DwoSr);
        assert_eq!(s.branches.len(), 1);
        let w = bisect(|w| w * w * w + w - 0.6, 0.0, 5.0);
        assert!((s.omega - w).abs() < 1e-13);
        assert!((s.omega - 0.48554).abs() < 1e-5);
        assert!((s.energy + 0.07537).abs() < 1e-5);
        assert!((s.energy + 0.625 - 0.5496).abs() < 5e-5);

        let s = solve_level(&quartic(-1.0, 1.0), 1).unwrap();
        assert_eq!(s.phase, Phase::DwoSr);
        assert!((s.energy + 0.0625 - 2.1250).abs() < 5e-5);
    }

    #[test]
    fn broken_symmetry_selected_below_critical_coupling() {
        let m = quartic(-1.0, 0.05);
        let s = solve_level(&m, 0).unwrap();
        assert_eq!(s.phase, Phase::DwoSsb);
        assert_eq!(s.branches.len(), 2);
        assert!(s.sigma > 0.0);
        let sr = s.branches.iter().find(|b| b.phase == Phase::DwoSr).unwrap();
        assert!(s.energy < sr.energy);
        // cubic satisfied by the broken-branch frequency
        let p = p_xi(0.5);
        let res = s.omega.powi(3) - 2.0 * s.omega + 6.0 * 0.05 * p;
        assert!(res.abs() < 1e-12);
        let (gap, egs) = general_gap_residuals(&m, 0, s.omega, s.sigma);
        assert!(gap.abs() < 1e-12 && egs.abs() < 1e-12);
    }

    #[test]
    fn critical_tie_keeps_symmetric_phase() {
        let lc = critical_coupling(0.5, -1.0).unwrap();
        let s = solve_level(&quartic(-1.0, lc), 0).unwrap();
        assert_eq!(s.phase, Phase::DwoSr);
        // the closed form still works at the tie
        let w = solve_gap(&quartic(-1.0, lc), 0, Phase::DwoSsb).unwrap();
        assert!((w - (2.0_f64 / 3.0).sqrt()).abs() < 1e-7);
    }

    #[test]
    fn symmetric_residuals_reduce() {
        let m = quartic(1.3, 0.4);
        let (gap, egs) = general_gap_residuals(&m, 2, 1.1, 0.0);
        assert!((gap - (1.1f64.powi(3) - 1.3 * 1.1 - 6.0 * 0.4 * f_xi(2.5))).abs() < 1e-14);
        assert_eq!(egs, 0.0);

        let sext = OscillatorModel::<f64>::new(6, 1.0, 1.0).unwrap();
        let w = solve_gap(&sext, 0, Phase::Aho).unwrap();
        let (gap, egs) = general_gap_residuals(&sext, 0, w, 0.0);
        assert!(gap.abs() < 1e-12 && egs == 0.0);
    }

    #[test]
    fn invalid_models() {
        assert!(OscillatorModel::new(5, 1.0, 1.0).is_err());
        assert!(OscillatorModel::new(4, 0.0, 1.0).is_err());
        assert!(OscillatorModel::new(4, 1.0, 0.0).is_err());
        assert!(OscillatorModel::new(4, 1.0, -1.0).is_err());
    }

    #[test]
    fn f32_solve_level() {
        let m = OscillatorModel::<f32>::quartic(1.0, 1.0).unwrap();
        let s = solve_level(&m, 0).unwrap();
        assert!((s.omega - 2.0).abs() < 1e-6);
        assert!((s.energy - 0.8125).abs() < 1e-6);
    }
}
