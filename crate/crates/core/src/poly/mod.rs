//! Exact univariate polynomials over the integers, monomials in several
//! variables and numeric root extraction.

mod monomial;
mod roots;
mod unipoly;

pub use monomial::{enumerate_monomials, monomial_count, Monomial};
pub use roots::{numeric_roots, numeric_roots_with, Root, RootOptions, RootSet};
pub use unipoly::{interpolate, interpolate_integers, interpolate_rational, Division, UniPoly};
