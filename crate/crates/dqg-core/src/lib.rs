//! Exact-arithmetic workbench for finite-dimensional dynamical quantum
//! groupoids: measured multiplier Hopf algebroids over a finite commutative
//! base, their duals, GNS spaces, fundamental unitaries, and the
//! finite-dimensional modular theory.
//!
//! Everything algebraic is computed exactly over the Gaussian rationals;
//! floating point appears only where a square root of a spectrum is needed
//! (the modular conjugation) and as an independent cross-check.

pub mod algebroid;
pub mod base;
pub mod dual;
pub mod exactlin;
pub mod fundamental;
pub mod gns;
pub mod hopf;
pub mod integrals;
