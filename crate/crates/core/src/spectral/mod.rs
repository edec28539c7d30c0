//! Numeric spectral quantities: eigenpair residuals, the largest
//! eigenvalue, degree bounds, colorings and explicit family spectra.

mod coloring;
mod families;
mod lambda_max;

pub use coloring::{greedy_color, min_degree_ordering, ColoringReport};
pub use families::{
    cartesian_eigenpair, complete3_spectrum, cylinder_spectrum, root_of_unity_symmetry,
    single_edge_charpoly, ultracube_sporadic, Eigenpair, FamilyEigenvalue, FamilySpectrum,
    MAX_CYLINDER_ASSIGNMENTS,
};
pub use lambda_max::{lambda_max, LambdaMaxOptions, LambdaMaxReport};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest residual of the eigen-equations at `(lambda, x)`, scaled by
/// `max(1, |x|_inf^(k-1))`.
pub fn eigenpair_residual(h: &Hypergraph, lambda: Complex64, x: &[Complex64]) -> Result<f64> {
    if x.len() != h.n() {
        return Err(Error::VectorLength {
            got: x.len(),
            expected: h.n(),
        });
    }
    let norm = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let scale = norm.powi(h.k() as i32 - 1).max(1.0);
    let worst = h
        .eigen_system()
        .evaluate(lambda, x)
        .into_iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    Ok(worst / scale)
}

/// [`eigenpair_residual`], failing when it exceeds `tol`.
pub fn verify_eigenpair(h: &Hypergraph, lambda: Complex64, x: &[Complex64], tol: f64) -> Result<f64> {
    let residual = eigenpair_residual(h, lambda, x)?;
    if residual > tol || residual.is_nan() {
        return Err(Error::InvalidEigenpair { residual, tol });
    }
    Ok(residual)
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeBounds {
    pub average_degree: f64,
    /// Exact average degree as a reduced fraction.
    pub average_degree_exact: String,
    pub lambda_max: f64,
    pub max_degree: usize,
    pub pass: bool,
}

/// Checks `d <= lambda_max <= Delta` up to `tol`.
pub fn degree_bounds_check(h: &Hypergraph, opts: &LambdaMaxOptions) -> Result<DegreeBounds> {
    let stats = h.degrees();
    let avg = num_traits::ToPrimitive::to_f64(&stats.average).unwrap_or(f64::NAN);
    let report = lambda_max(h, opts)?;
    let pass = avg - opts.tol <= report.lambda && report.lambda <= stats.max as f64 + opts.tol;
    Ok(DegreeBounds {
        average_degree: avg,
        average_degree_exact: stats.average.to_string(),
        lambda_max: report.lambda,
        max_degree: stats.max,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub lambda_sub: f64,
    pub lambda_super: f64,
    pub pass: bool,
}

/// Checks `lambda_max(G) <= lambda_max(H)` where `embedding[v - 1]` is the
/// image in `H` of vertex `v` of `G`.
pub fn subgraph_monotonicity_check(
    g: &Hypergraph,
    h: &Hypergraph,
    embedding: &[usize],
    opts: &LambdaMaxOptions,
) -> Result<MonotonicityReport> {
    if g.k() != h.k() {
        return Err(Error::UniformityMismatch(g.k(), h.k()));
    }
    if embedding.len() != g.n() {
        return Err(Error::InvalidEmbedding(format!(
            "embedding has {} entries for {} vertices",
            embedding.len(),
            g.n()
        )));
    }
    let mut seen = vec![false; h.n() + 1];
    for &v in embedding {
        if v == 0 || v > h.n() {
            return Err(Error::InvalidEmbedding(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidEmbedding(format!("vertex {v} used twice")));
        }
    }
    for e in g.edges() {
        let image: Vec<usize> = e.iter().map(|&v| embedding[v - 1]).collect();
        if !h.contains_edge(&image) {
            return Err(Error::InvalidEmbedding(format!("edge {e:?} maps to non-edge {image:?}")));
        }
    }
    let lambda_sub = lambda_max(g, opts)?.lambda;
    let lambda_super = lambda_max(h, opts)?.lambda;
    Ok(MonotonicityReport {
        lambda_sub,
        lambda_super,
        pass: lambda_sub <= lambda_super + opts.tol,
    })
}
