use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy)]
pub struct LambdaMaxOptions {
    /// Target width of the enclosure `[lower, upper]`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for LambdaMaxOptions {
    fn default() -> Self {
        LambdaMaxOptions {
            tol: 1e-8,
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaMaxReport {
    pub lambda: f64,
    /// Nonnegative vector with `sum x_i^k = 1`, supported on the component
    /// attaining the maximum.
    pub x: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest eigenvalue with a certified enclosure. Disconnected inputs are
/// split into components and the largest value is kept.
pub fn lambda_max(h: &Hypergraph, opts: &LambdaMaxOptions) -> Result<LambdaMaxReport> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let n = h.n();
    let k = h.k();
    let components = h.components();
    let reports: Vec<(Vec<usize>, LambdaMaxReport)> = components
        .into_par_iter()
        .map(|comp| {
            let sub = h.induced(&comp)?;
            let report = if sub.edge_count() == 0 {
                let unit = (1.0 / comp.len() as f64).powf(1.0 / k as f64);
                LambdaMaxReport {
                    lambda: 0.0,
                    x: vec![unit; comp.len()],
                    lower: 0.0,
                    upper: 0.0,
                    iterations: 0,
                    converged: true,
                }
            } else {
                connected_lambda_max(&sub, opts)
            };
            Ok((comp, report))
        })
        .collect::<Result<Vec<_>>>()?;
    let (comp, best) = reports
        .into_iter()
        .reduce(|a, b| if b.1.lambda > a.1.lambda { b } else { a })
        .ok_or_else(|| Error::InvalidParameter("hypergraph has no vertices".into()))?;
    let mut x = vec![0.0; n];
    for (local, &v) in comp.iter().enumerate() {
        x[v - 1] = best.x[local];
    }
    Ok(LambdaMaxReport { x, ..best })
}

fn link_sums(h: &Hypergraph, links: &[Vec<Vec<usize>>], x: &[f64]) -> Vec<f64> {
    (0..h.n())
        .map(|i| {
            links[i]
                .iter()
                .map(|e| e.iter().map(|&u| x[u - 1]).product::<f64>())
                .sum()
        })
        .collect()
}

fn normalize(x: &mut [f64], k: usize) {
    let s: f64 = x.iter().map(|v| v.powi(k as i32)).sum();
    let f = s.powf(1.0 / k as f64);
    for v in x.iter_mut() {
        *v /= f;
    }
}

/// Shifted power iteration `x <- (A x^(k-1) + Delta x^[k-1])^(1/(k-1))`,
/// stopped by the min/max ratio enclosure.
fn connected_lambda_max(h: &Hypergraph, opts: &LambdaMaxOptions) -> LambdaMaxReport {
    let n = h.n();
    let k = h.k();
    let links: Vec<Vec<Vec<usize>>> = (1..=n).map(|v| h.link(v).expect("vertex in range")).collect();
    let shift = (1..=n).map(|v| h.degree(v)).max().unwrap_or(0) as f64;
    let mut x = vec![1.0; n];
    normalize(&mut x, k);
    let mut best = (0.0f64, f64::INFINITY);
    let mut best_x = x.clone();
    let mut iterations = 0;
    let inv = 1.0 / (k - 1) as f64;
    while iterations < opts.max_iter {
        let s = link_sums(h, &links, &x);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = s[i] / x[i].powi(k as i32 - 1);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo < best.1 - best.0 {
            best = (lo, hi);
            best_x.clone_from(&x);
        }
        if hi - lo <= opts.tol {
            break;
        }
        iterations += 1;
        for i in 0..n {
            let y = s[i] + shift * x[i].powi(k as i32 - 1);
            x[i] = y.powf(inv);
        }
        normalize(&mut x, k);
    }
    let (lower, upper) = best;
    LambdaMaxReport {
        lambda: 0.5 * (lower + upper),
        x: best_x,
        lower,
        upper,
        iterations,
        converged: upper - lower <= opts.tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_three_graphs() {
        for n in 4..=6usize {
            let r = lambda_max(&Hypergraph::complete(n, 3).unwrap(), &LambdaMaxOptions::default()).unwrap();
            let expected = ((n - 1) * (n - 2) / 2) as f64;
            assert!(r.converged);
            assert!((r.lambda - expected).abs() < 1e-8, "n={n}: {}", r.lambda);
            assert!(r.lower <= r.lambda && r.lambda <= r.upper);
        }
    }

    #[test]
    fn bipartite_graph() {
        let r = lambda_max(&Hypergraph::complete_cylinder(&[2, 3]).unwrap(), &LambdaMaxOptions::default()).unwrap();
        assert!((r.lambda - 6f64.sqrt()).abs() < 1e-8);
        let sum: f64 = r.x.iter().map(|v| v * v).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(r.x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn disconnected_takes_maximum() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        let t = Hypergraph::tetra_minus_face();
        let u = Hypergraph::disjoint_union(&e3, &t).unwrap();
        let r = lambda_max(&u, &LambdaMaxOptions::default()).unwrap();
        assert!((r.lambda - 12f64.cbrt()).abs() < 1e-8);
        assert!(r.x[..3].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn flags_non_convergence() {
        let opts = LambdaMaxOptions {
            tol: 1e-14,
            max_iter: 3,
        };
        let r = lambda_max(&Hypergraph::tetra_minus_face(), &opts).unwrap();
        assert!(!r.converged);
        assert!(r.lower <= 12f64.cbrt() + 1e-12 && 12f64.cbrt() <= r.upper + 1e-12);
    }
}
