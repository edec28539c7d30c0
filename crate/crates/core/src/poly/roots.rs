use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// `|q(value)| / sum |q_i| |value|^i` for the square-free factor `q`
    /// the root was extracted from (zero for the exact `L^r` factor).
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// Distinct root values.
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    /// Largest modulus among the roots, zero for an empty set.
    pub fn spectral_radius(&self) -> f64 {
        self.roots.iter().map(|r| r.value.norm()).fold(0.0, f64::max)
    }

    /// Whether some root lies within `tol` of `z`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.roots.iter().any(|r| (r.value - z).norm() <= tol)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub tol: f64,
    /// Split multiplicities with an exact square-free decomposition. When
    /// false, all roots are found at once and clustered.
    pub exact_square_free: bool,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-10,
            exact_square_free: true,
            max_iter: 2000,
        }
    }
}

/// All complex roots of `p` with multiplicities. The exact factor `L^r` is
/// stripped first and reported as the root `0`.
pub fn numeric_roots(p: &UniPoly, tol: f64) -> Result<RootSet> {
    numeric_roots_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

pub fn numeric_roots_with(p: &UniPoly, opts: RootOptions) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::InvalidParameter("zero polynomial has no root set".into()));
    }
    let mut roots = Vec::new();
    let r = p.lambda_valuation();
    if r > 0 {
        roots.push(Root {
            value: Complex64::new(0.0, 0.0),
            multiplicity: r,
            residual: 0.0,
        });
    }
    let rest = p.shift_down(r);
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(RootSet { roots });
    }
    if opts.exact_square_free {
        for (factor, mult) in rest.square_free_decomposition() {
            for z in aberth(&factor, opts)? {
                roots.push(Root {
                    value: z,
                    multiplicity: mult,
                    residual: factor.relative_residual(z),
                });
            }
        }
    } else {
        let zs = aberth(&rest, opts)?;
        let deg = rest.degree().expect("positive degree");
        let radius = opts.tol.powf(1.0 / deg as f64);
        for cluster in cluster_points(&zs, radius) {
            let center = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
            roots.push(Root {
                value: center,
                multiplicity: cluster.len(),
                residual: rest.relative_residual(center),
            });
        }
    }
    Ok(RootSet { roots })
}

fn cluster_points(zs: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &z in zs {
        let scale = radius * z.norm().max(1.0);
        match clusters
            .iter_mut()
            .find(|c| (c[0] - z).norm() <= scale)
        {
            Some(c) => c.push(z),
            None => clusters.push(vec![z]),
        }
    }
    clusters
}

/// Simultaneous Aberth–Ehrlich iteration in double precision.
fn aberth(p: &UniPoly, opts: RootOptions) -> Result<Vec<Complex64>> {
    let coeffs = p.to_f64_coeffs();
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![Complex64::new(-a[0], 0.0)]);
    }
    // Fujiwara-style bound on the root moduli
    let bound = (0..n)
        .map(|i| {
            let c = a[i].abs();
            if i == 0 {
                (c / 2.0).powf(1.0 / n as f64)
            } else {
                c.powf(1.0 / (n - i) as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = bound.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64 + 0.4))
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(a[n], 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for i in (0..n).rev() {
            d = d * x + v;
            v = v * x + a[i];
        }
        (v, d)
    };

    let mut converged = vec![false; n];
    for _ in 0..opts.max_iter {
        let mut max_step: f64 = 0.0;
        for j in 0..n {
            if converged[j] {
                continue;
            }
            let (v, d) = eval(z[j]);
            if v.norm() == 0.0 {
                converged[j] = true;
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n)
                .filter(|&l| l != j)
                .map(|l| (z[j] - z[l]).inv())
                .sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                z[j] += Complex64::new(1e-6, 1e-6) * radius;
                continue;
            }
            z[j] -= step;
            let rel = step.norm() / z[j].norm().max(1.0);
            if rel < 1e-15 {
                converged[j] = true;
            }
            max_step = max_step.max(rel);
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // a few Newton steps to polish
    for zj in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval(*zj);
            if d.norm() == 0.0 || v.norm() == 0.0 {
                break;
            }
            let next = *zj - v / d;
            if p.relative_residual(next) <= p.relative_residual(*zj) {
                *zj = next;
            } else {
                break;
            }
        }
    }
    let worst = z.iter().map(|&x| p.relative_residual(x)).fold(0.0, f64::max);
    if worst > opts.tol {
        return Err(Error::NoConvergence { residual: worst });
    }
    Ok(z)
}
