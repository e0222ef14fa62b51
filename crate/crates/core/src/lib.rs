//! Fermion and scalar entanglement seen by a uniformly accelerated observer.
//!
//! The crate builds the Minkowski vacuum and one-particle states in the
//! Rindler-wedge Fock basis, transports a spin-1/2 state along an accelerated
//! worldline through the local Lorentz frame, and measures the resulting
//! Alice-Rob entanglement both from explicit density matrices and from the
//! corresponding closed-form expressions.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod frame;
pub mod numerics;
pub mod rindler;
pub mod wigner;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, C64};
