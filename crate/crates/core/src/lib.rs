//! Toolkit for `n^d → 1` quantum random access codes and n-fold unbiased
//! bases.
//!
//! * [`bases`]: construction, validation and symmetries of orthonormal bases.
//! * [`unbiasedness`]: cycle sums, MUB/kUB/nUB checks, characteristic
//!   polynomial coefficients of the per-input Gram matrices.
//! * [`qrac`]: quantum and classical success probabilities and the nUB
//!   upper bound.
//! * [`search`]: see-saw optimization, residual descent, Haar Monte Carlo,
//!   and batch scans.
//!
//! Loops over the `d^n` inputs run on rayon when the `parallel` feature is
//! enabled (the default); see [`par`].

pub mod bases;
pub mod budget;
pub mod combinatorics;
pub mod error;
pub mod io;
pub mod linalg;
pub mod par;
pub mod qrac;
pub mod rng;
pub mod search;
pub mod table;
pub mod unbiasedness;

pub use bases::{Basis, BasisSet, EquivalenceTransform};
pub use error::{Error, Result};
