// SPDX-License-Identifier: Apache-2.0

//! Exact Clifford representations, admissible spinor bilinear forms, the
//! spinor-to-polyvector bracket and the dimension bounds built on it, plus
//! floating-point checks of Killing spinors on model hyperquadrics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod admissible;
pub mod brackets;
pub mod clifford;
pub mod cone_split;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod polyvector;
pub mod rng;
pub mod scalar;
pub mod signature;
pub mod subspace_lab;

pub use clifford::{build_rep, CliffordRep};
pub use error::{Error, Result};
pub use matrix::{ExactMatrix, Matrix};
pub use polyvector::Polyvector;
pub use scalar::{GaussianRational, Rational, Scalar};
pub use signature::{CommutantType, Signature};
