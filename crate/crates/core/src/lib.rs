//! Exact spectral computations for k-uniform hypergraphs.

pub mod error;
pub mod family;
pub mod hypergraph;
pub mod macaulay;
pub mod poly;
pub mod repro;
pub mod spectral;
pub mod traces;

pub use error::{Error, Result};
pub use family::{parse_family, parse_family_with_k, Family};
pub use hypergraph::{EigenEquation, EigenSystem, Hypergraph};
pub use macaulay::{charpoly, charpoly_with, CharPolyOptions, CharPolyResult, DetMethod};
pub use poly::{Monomial, UniPoly};
