//! Exact computations in quantized enveloping algebras and their Coxeter
//! realizations: PBW straightening, root vectors, R-matrices evaluated in
//! finite-dimensional representations, central elements, Whittaker
//! projections and the q-deformed Toda Hamiltonians they produce.
//!
//! All coefficients live in [`QScalar`], an exact field of rational
//! functions in `q^{1/D}`. Primitive Cartan generators `H_i` never appear;
//! the Cartan part of every element is a group-like exponential
//! `e^{h Σ y_i Y_i}` recorded by its coordinates `y` in the weight-type
//! basis `Y_i = Σ_j d_i (a^{-1})_{ij} H_j`.

pub mod cartan_root;
pub mod coxeter_hopf;
pub mod qalgebra;
pub mod qscalar;
pub mod ratmat;
pub mod representations;
pub mod toda_ops;

mod error;

pub use error::Error;
pub use qscalar::QScalar;

/// Rational numbers used for Cartan data and exponents.
pub type Q = num_rational::Rational64;

pub type Result<T, E = Error> = std::result::Result<T, E>;
