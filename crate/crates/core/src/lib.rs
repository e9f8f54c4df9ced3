//! Generalized Hartree approximation for anharmonic and double-well
//! oscillators, with an exact-diagonalization oracle and the λφ⁴ field
//! theory sector.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the bottom fix `f64` for everyday use.

// `!(x > 0)` style guards deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hartree;
pub mod hipt;
pub mod ladder;
pub mod oracle;
pub mod qft;
pub mod quadrature;
pub mod reports;
mod roots;
pub mod scalar;
pub mod vacuum;

pub use error::{GhaError, Result};
pub use hartree::{Anharmonicity, Phase};
pub use scalar::Real;

pub type Model = hartree::OscillatorModel<f64>;
pub type Solution = hartree::HartreeSolution<f64>;
pub type Polynomial = ladder::NormalOrderedPolynomial<f64>;
pub type Mode = ladder::ModeParameters<f64>;
pub type Report = hipt::PerturbationReport<f64>;
pub type Estimate = oracle::SpectrumEstimate<f64>;
