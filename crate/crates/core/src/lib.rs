//! Exact computer algebra for the quantum Weyl analogue algebras
//! A(n, d, q̲) = ⊗_i k[h_i^{±1}](σ_i, h_i^d − 1).
//!
//! - [`scalars`]: the ground field Q(ζ_L)(q), or Q(ζ_L) with q a root of unity
//! - [`algebra`]: graded normal form, multiplication, unit recognition
//! - [`torus`]: quantum torus embeddings used to cross-check units
//! - [`homs`]: homomorphism parameter bundles, validation, application, composition
//! - [`dixmier`]: automorphism criterion, inverses, root-of-unity endomorphisms
//! - [`tame`]: tame generator families and decomposition of automorphisms
//! - [`oracle`]: free-word rewriting used as an independent reference
//! - [`io`]: canonical JSON file formats
//! - [`sample`]: random generators for property checks
//! - [`cli`], [`selftest`]: the `qwa` binary

pub mod algebra;
pub mod cli;
pub mod dixmier;
pub mod error;
pub mod homs;
pub mod io;
pub mod literal;
pub mod oracle;
pub mod sample;
pub mod scalars;
pub mod selftest;
pub mod tame;
pub mod torus;

pub use error::{Error, Result};
