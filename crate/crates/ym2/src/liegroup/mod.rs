//! Representation theory for finite products of U(1) and SU(2):
//! irrep enumeration, dimensions, Casimir eigenvalues, characters,
//! Haar integration of class functions and tensor multiplicities.

mod class;
mod group;
mod quad;
mod tensor;

pub use class::{ClassFunction, ClassPoint, SmoothnessHint};
pub use group::{dimension, irreps_up_to, Factor, FactorKind, GroupSpec, Irrep};
pub use quad::{character, fourier_coefficients, haar_integrate, su2_character, ClassQuadrature};
pub use tensor::tensor_multiplicity;
