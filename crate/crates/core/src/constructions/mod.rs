//! The two semigroup constructions: one from a triangular presentation, one
//! from the Cayley table of a finite group.

mod matrix;
mod one;
mod two;

pub use matrix::{AuxMatrix, UNIT};
pub use one::{
    build_construction1, build_construction1_with, build_sigma1, build_tau1, build_y1, census1,
    Census1, Construction1,
};
pub use two::{
    build_construction2, build_sigmas2, build_y2, column_of, column_pair, sigma_formula,
    sigma_from_formula, Checks2, Construction2, Derived, PairMap, DERIVED_PRODUCTS,
};
