//! Two-dimensional lattice Yang-Mills heat-kernel measures over compact
//! structure groups built from U(1) and SU(2) factors.
//!
//! The crate computes the heat-kernel Radon-Nikodym densities of the lattice
//! Yang-Mills measures with certified series truncation, the closed-form
//! Wilson-loop and loop-network expectation values and their plaquette
//! continuum limits, the support-splitting construction separating the
//! Yang-Mills measure from the Haar (kinematical) measure, and path-ordered
//! holonomies of smooth gauge fields on R² for the small-loop estimates.

pub mod error;
pub mod expectation;
pub mod heatkernel;
pub mod lattice;
pub mod liegroup;
pub mod singularity;
pub mod smoothconn;

pub use error::{Error, Result};
