//! Local harmonic-oscillator modes of a free scalar quantum field.
//!
//! The crate tiles a thin Cauchy slab of Minkowski spacetime with compactly
//! supported smearing functions, builds N normalized local modes out of 2N
//! smeared field operators, and computes the resulting multimode Wigner
//! function (and its s-ordered relatives), covariance matrices, and Wigner
//! negativity for vacuum, thermal, coherent, and one-particle field states.

pub mod error;
pub mod geometry;
pub mod numerics;
pub mod modes;
pub mod propagator;
pub mod smearing;
pub mod symmetry;
pub mod wigner;

pub use error::{Error, Result};
