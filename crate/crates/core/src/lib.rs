//! Decomposability of nonnegative r-potent matrices.
//!
//! A square matrix `A` is *r-potent* when `A^r = A`. This crate decides,
//! with exact rational arithmetic, whether a nonnegative r-potent matrix is
//! decomposable (reducible), builds its maximal standard block
//! triangularization, and checks a catalogue of structural claims about such
//! matrices, their Kronecker products and the semigroups they generate
//! against brute-force oracles.
//!
//! The runnable programs under `examples/` walk through each capability:
//!
//! ```bash
//! cargo run -p rpotent --example potency
//! cargo run -p rpotent --example decompose
//! cargo run -p rpotent --example structure
//! cargo run -p rpotent --example spectral
//! cargo run -p rpotent --example kronecker
//! cargo run -p rpotent --example generate
//! cargo run -p rpotent --example semigroups
//! cargo run -p rpotent --example symmetric_group
//! cargo run -p rpotent --example verify_claims
//! ```

pub mod analysis;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod potency;
pub mod semigroup;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{PatternMatrix, Permutation, RMatrix, Rational};
