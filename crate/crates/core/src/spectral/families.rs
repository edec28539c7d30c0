use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use super::eigenpair_residual;
use super::verify_eigenpair;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{numeric_roots, UniPoly};

#[derive(Debug, Clone, Serialize)]
pub struct Eigenpair {
    pub lambda: Complex64,
    pub x: Vec<Complex64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyEigenvalue {
    pub value: Complex64,
    /// How the value arises, e.g. the defining relation it satisfies.
    pub description: String,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilySpectrum {
    pub family: String,
    pub construction: String,
    pub values: Vec<FamilyEigenvalue>,
}

impl FamilySpectrum {
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|v| (v.value - z).norm() <= tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.values.iter().map(|v| v.residual).fold(0.0, f64::max)
    }

    /// Values with imaginary part below `tol`, as reals.
    pub fn real_values(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .values
            .iter()
            .filter(|v| v.value.im.abs() <= tol)
            .map(|v| v.value.re)
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        out
    }

    fn push_unique(&mut self, h: &Hypergraph, value: Complex64, description: String, vector: Vec<Complex64>) -> Result<()> {
        if self.contains(value, DEDUP_TOL) {
            return Ok(());
        }
        let residual = eigenpair_residual(h, value, &vector)?;
        self.values.push(FamilyEigenvalue {
            value,
            description,
            vector,
            residual,
        });
        Ok(())
    }
}

const DEDUP_TOL: f64 = 1e-8;

/// Largest number of per-class count assignments a cylinder enumeration
/// will visit.
pub const MAX_CYLINDER_ASSIGNMENTS: u128 = 1_000_000;

fn root_of_unity(order: usize, power: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (power % order.max(1)) as f64 / order.max(1) as f64)
}

/// `lambda^(k(k-1)^(k-1) - k^(k-1)) (lambda^k - 1)^(k^(k-2))`.
pub fn single_edge_charpoly(k: usize) -> Result<UniPoly> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    let zero_mult = k * (k - 1).pow(k as u32 - 1) - k.pow(k as u32 - 1);
    let factor = UniPoly::monomial(BigInt::one(), k) - UniPoly::one();
    Ok(&UniPoly::lambda().pow(zero_mult as u64) * &factor.pow(k.pow(k as u32 - 2) as u64))
}

/// Whether every nonzero coefficient sits at a codegree divisible by `k`.
pub fn root_of_unity_symmetry(phi: &UniPoly, k: usize) -> bool {
    let Some(deg) = phi.degree() else {
        return true;
    };
    phi.terms().all(|(d, _)| (deg - d) % k == 0)
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Eigenvalues of the complete k-partite k-graph with the given part
/// sizes: every `lambda` with `lambda^k = prod_i m_i^(k-1)`, where `m_i` sums
/// `(k-1)`-st roots of unity over part `i`, together with 0 when it is an
/// eigenvalue. Each value comes with an explicit eigenvector.
pub fn cylinder_spectrum(parts: &[usize]) -> Result<FamilySpectrum> {
    let k = parts.len();
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    if parts.contains(&0) {
        return Err(Error::EmptyPart);
    }
    let h = Hypergraph::complete_cylinder(parts)?;
    let r = k - 1;
    let per_class: Vec<Vec<Vec<usize>>> = parts.iter().map(|&p| compositions(p, r)).collect();
    let total: u128 = per_class.iter().map(|c| c.len() as u128).product();
    if total > MAX_CYLINDER_ASSIGNMENTS {
        return Err(Error::TooLarge(format!(
            "{total} count assignments exceed the limit {MAX_CYLINDER_ASSIGNMENTS}"
        )));
    }
    let mut spectrum = FamilySpectrum {
        family: format!("cylinder:parts={}", join(parts)),
        construction: "roots of lambda^k = prod m_i^(k-1) over per-class root-of-unity counts".into(),
        values: Vec::new(),
    };
    let n = h.n();
    let zero = Complex64::new(0.0, 0.0);
    if k >= 3 {
        let mut x = vec![zero; n];
        x[0] = Complex64::new(1.0, 0.0);
        spectrum.push_unique(&h, zero, "0 with a single-vertex support".into(), x)?;
    } else if let Some(class) = parts.iter().position(|&p| p >= 2) {
        let start: usize = parts[..class].iter().sum();
        let mut x = vec![zero; n];
        x[start] = Complex64::new(1.0, 0.0);
        x[start + 1] = Complex64::new(-1.0, 0.0);
        spectrum.push_unique(&h, zero, "0 with a kernel vector inside one part".into(), x)?;
    }

    let mut index = vec![0usize; k];
    loop {
        let counts: Vec<&Vec<usize>> = (0..k).map(|i| &per_class[i][index[i]]).collect();
        let m: Vec<Complex64> = counts
            .iter()
            .map(|c| c.iter().enumerate().map(|(j, &cnt)| root_of_unity(r, j) * cnt as f64).sum())
            .collect();
        if m.iter().all(|z| z.norm() > 1e-9) {
            emit_cylinder_values(&h, parts, &counts, &m, &mut spectrum)?;
        }
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(spectrum);
            }
            index[pos] += 1;
            if index[pos] < per_class[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

fn emit_cylinder_values(
    h: &Hypergraph,
    parts: &[usize],
    counts: &[&Vec<usize>],
    m: &[Complex64],
    spectrum: &mut FamilySpectrum,
) -> Result<()> {
    let k = parts.len();
    let r = k - 1;
    let roots: Vec<Complex64> = m.iter().map(|z| z.powf(1.0 / k as f64)).collect();
    for t in 0..k {
        let mut w = roots.clone();
        w[0] *= root_of_unity(k, t);
        let lambda: Complex64 = w.iter().map(|z| z.powu(r as u32)).product();
        let mut x = Vec::with_capacity(h.n());
        for (i, c) in counts.iter().enumerate() {
            for (j, &cnt) in c.iter().enumerate() {
                for _ in 0..cnt {
                    x.push(root_of_unity(r, j) / w[i]);
                }
            }
        }
        let description = format!(
            "branch {t} of lambda^{k} = prod m_i^{r}, root-of-unity counts {:?}",
            counts
        );
        spectrum.push_unique(h, lambda, description, x)?;
    }
    Ok(())
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Eigenvalues of the complete 3-graph on `n` vertices: 0, 1, `C(n-1,2)`,
/// and the values carried by two-valued vectors (`c` on `t` vertices, 1 on
/// the rest) where `c` solves a quartic for each `1 <= t <= n/2`.
pub fn complete3_spectrum(n: usize) -> Result<FamilySpectrum> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, k: 3 });
    }
    let h = Hypergraph::complete(n, 3)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut spectrum = FamilySpectrum {
        family: format!("complete:n={n},k=3"),
        construction: "two-valued eigenvectors from quartic relations".into(),
        values: Vec::new(),
    };
    let mut e1 = vec![zero; n];
    e1[0] = one;
    spectrum.push_unique(&h, zero, "0 with a single-vertex support".into(), e1)?;
    let mut cube = vec![zero; n];
    for (j, slot) in cube.iter_mut().take(3).enumerate() {
        *slot = root_of_unity(3, j);
    }
    spectrum.push_unique(&h, one, "1 with cube roots of unity on three vertices".into(), cube)?;
    spectrum.push_unique(
        &h,
        Complex64::new(binom2(n - 1) as f64, 0.0),
        format!("C({}, 2) with the all-ones vector", n - 1),
        vec![one; n],
    )?;
    for t in 1..=n / 2 {
        let a = binom2(t);
        let b = (t * (n - t - 1)) as i64;
        let c2 = binom2(n - t - 1) - binom2(t - 1);
        let c1 = -(((t - 1) * (n - t)) as i64);
        let c0 = -binom2(n - t);
        let quartic = UniPoly::from_i64s(&[c0, c1, c2, b, a]);
        let roots = numeric_roots(&quartic, 1e-9)?;
        for root in roots.roots {
            let c = root.value;
            let lambda = c * c * a as f64 + c * b as f64 + binom2(n - t - 1) as f64;
            let mut x = vec![one; n];
            for slot in x.iter_mut().take(t) {
                *slot = c;
            }
            let description = format!(
                "t = {t}, c a root of {a}c^4 + {b}c^3 + {c2}c^2 + {c1}c + {c0}"
            );
            spectrum.push_unique(&h, lambda, description, x)?;
        }
    }
    Ok(spectrum)
}

/// `(lambda + mu, u (x) v)` on the Cartesian product, after checking both
/// factor pairs at `tol`.
pub fn cartesian_eigenpair(
    g: &Hypergraph,
    first: &Eigenpair,
    h: &Hypergraph,
    second: &Eigenpair,
    tol: f64,
) -> Result<Eigenpair> {
    if g.k() != h.k() {
        return Err(Error::UniformityMismatch(g.k(), h.k()));
    }
    verify_eigenpair(g, first.lambda, &first.x, tol)?;
    verify_eigenpair(h, second.lambda, &second.x, tol)?;
    let mut x = Vec::with_capacity(g.n() * h.n());
    for ua in &first.x {
        for vb in &second.x {
            x.push(ua * vb);
        }
    }
    Ok(Eigenpair {
        lambda: first.lambda + second.lambda,
        x,
    })
}

/// The eigenpair `(d^(1/k), x)` of the ultracube `Q_k^d` with `x` equal to
/// `d^(1/k)` at the all-ones tuple, 1 at tuples with exactly one other
/// coordinate, and 0 elsewhere.
pub fn ultracube_sporadic(k: usize, d: usize) -> Result<Eigenpair> {
    if k <= 2 || d <= 1 {
        return Err(Error::InvalidParameter(format!(
            "need k > 2 and d > 1, got k = {k}, d = {d}"
        )));
    }
    let n = k
        .checked_pow(d as u32)
        .ok_or_else(|| Error::TooLarge(format!("{k}^{d} vertices")))?;
    let root = (d as f64).powf(1.0 / k as f64);
    let x = (0..n)
        .map(|idx| {
            let mut rest = idx;
            let mut off = 0;
            for _ in 0..d {
                if rest % k != 0 {
                    off += 1;
                }
                rest /= k;
            }
            match off {
                0 => Complex64::new(root, 0.0),
                1 => Complex64::new(1.0, 0.0),
                _ => Complex64::new(0.0, 0.0),
            }
        })
        .collect();
    Ok(Eigenpair {
        lambda: Complex64::new(root, 0.0),
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_closed_form() {
        assert_eq!(single_edge_charpoly(2).unwrap(), "L^2 - 1".parse().unwrap());
        assert_eq!(
            single_edge_charpoly(3).unwrap(),
            "L^12 - 3*L^9 + 3*L^6 - L^3".parse().unwrap()
        );
        let k4 = single_edge_charpoly(4).unwrap();
        assert_eq!(k4.degree(), Some(108));
        assert_eq!(k4.lambda_valuation(), 44);
    }

    #[test]
    fn symmetry_check() {
        assert!(root_of_unity_symmetry(&single_edge_charpoly(3).unwrap(), 3));
        assert!(!root_of_unity_symmetry(&"L^2 - L".parse().unwrap(), 2));
        assert!(root_of_unity_symmetry(&UniPoly::zero(), 3));
    }

    #[test]
    fn bipartite_spectra() {
        let s = cylinder_spectrum(&[2, 3]).unwrap();
        assert_eq!(s.real_values(1e-12).len(), 3);
        assert!(s.contains(Complex64::new(6f64.sqrt(), 0.0), 1e-12));
        assert!(s.contains(Complex64::new(-(6f64.sqrt()), 0.0), 1e-12));
        assert!(s.contains(Complex64::new(0.0, 0.0), 0.0));
        let edge = cylinder_spectrum(&[1, 1]).unwrap();
        assert_eq!(edge.values.len(), 2);
        assert!(s.max_residual() < 1e-12);
    }

    #[test]
    fn single_edge_cylinder() {
        let s = cylinder_spectrum(&[1, 1, 1]).unwrap();
        assert_eq!(s.values.len(), 4);
        for j in 0..3 {
            assert!(s.contains(root_of_unity(3, j), 1e-12));
        }
    }

    #[test]
    fn three_partite_values_follow_the_product_rule() {
        // each s_i ranges over n_i - 2m, lambda^3 = (s1 s2 s3)^2
        let s = cylinder_spectrum(&[2, 2, 3]).unwrap();
        assert!(s.max_residual() < 1e-10);
        for v in &s.values {
            if v.value.norm() < 1e-12 {
                continue;
            }
            let cube = v.value.powu(3);
            let ok = [2i64, 0, -2].iter().any(|&a| {
                [2i64, 0, -2].iter().any(|&b| {
                    [3i64, 1, -1, -3].iter().any(|&c| {
                        let p = ((a * b * c) as f64).powi(2);
                        (cube - Complex64::new(p, 0.0)).norm() < 1e-8
                    })
                })
            });
            assert!(ok, "{:?}", v.value);
        }
    }

    #[test]
    fn complete3_small() {
        let s = complete3_spectrum(4).unwrap();
        for v in [0.0, 1.0, 3.0] {
            assert!(s.contains(Complex64::new(v, 0.0), 1e-9));
        }
        assert!(s.max_residual() < 1e-9);
        let s3 = complete3_spectrum(3).unwrap();
        assert_eq!(s3.values.len(), 4);
        assert_eq!(s3.real_values(1e-9), vec![0.0, 1.0]);
    }

    #[test]
    fn ultracube_vector() {
        let q = Hypergraph::ultracube(3, 2).unwrap();
        let pair = ultracube_sporadic(3, 2).unwrap();
        assert!(verify_eigenpair(&q, pair.lambda, &pair.x, 1e-12).is_ok());
        let nonzero = pair.x.iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 5);
        assert!(ultracube_sporadic(2, 2).is_err());
    }
}
