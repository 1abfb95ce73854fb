//! Tridiagonal representation of the Schrödinger wave operator.
//!
//! The crate builds the tridiagonal matrices and three-term recursions of
//! four solvable systems (the sinusoidal-bottom infinite well, the
//! generalized trigonometric Scarf well, repulsive Coulomb scattering and the
//! two-parameter Morse oscillator), diagonalizes them, and derives spectra,
//! phase shifts and wavefunctions. A finite-difference solver is kept apart as
//! an independent cross-check.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eig;
pub mod error;
pub mod opoly;
pub mod oracle;
pub mod real;
pub mod scatter;
pub mod special;
pub mod wavefun;
pub mod wavop;

mod lstsq;

pub use eig::{eigendecompose, gauss_from_recurrence, DiscreteMeasure, SpectrumResult};
pub use error::{Result, TraError};
pub use opoly::{eval_recursion, PolySequence, RecurrenceSpec};
pub use real::Real;
pub use wavop::{
    BasisChoice, BasisFamily, CoulombParams, MorseParams, ScarfParams, SymTridiag, SystemParams, WellParams,
};

pub type SymTridiagF64 = SymTridiag<f64>;
pub type RecurrenceSpecF64 = RecurrenceSpec<f64>;
pub type PolySequenceF64 = PolySequence<f64>;
pub type SpectrumResultF64 = SpectrumResult<f64>;
pub type DiscreteMeasureF64 = DiscreteMeasure<f64>;
pub type WellParamsF64 = WellParams<f64>;
pub type ScarfParamsF64 = ScarfParams<f64>;
pub type CoulombParamsF64 = CoulombParams<f64>;
pub type MorseParamsF64 = MorseParams<f64>;
pub type SystemParamsF64 = SystemParams<f64>;
pub type GridFunctionF64 = wavefun::GridFunction<f64>;
pub type AsymptoticFitF64 = scatter::AsymptoticFit<f64>;
pub type PhaseShiftF64 = scatter::PhaseShift<f64>;
