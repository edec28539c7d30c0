//! Characteristic polynomials as a ratio of Macaulay determinants.

mod charpoly;
mod det;
mod matrix;
pub mod modular;

pub use charpoly::{
    charpoly, charpoly_disjoint, charpoly_of_matrix, charpoly_with, coefficient_bits,
    combine_disjoint, det_polynomial, expected_degree, leading_coefficients, CharPolyOptions,
    CharPolyResult, DetMethod, Timing,
};
pub use det::{bareiss_det, diagonal_blocks, hessenberg_charpoly, modular_det};
pub use matrix::{
    build_macaulay, build_macaulay_capped, LinearEntry, LinearMatrix, MacaulayMatrix,
    DEFAULT_MAX_MONOMIALS,
};
