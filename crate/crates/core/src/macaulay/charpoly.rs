use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::det::{
    bareiss_det, dense_block_at, diagonal_blocks, div_monic_mod, hessenberg_charpoly,
    max_entry_bits, modular_det, mul_mod,
};
use super::matrix::{build_macaulay_capped, LinearMatrix, MacaulayMatrix, DEFAULT_MAX_MONOMIALS};
use super::modular::{primes_below_2_31, required_bits, Crt, Modulus};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{interpolate_integers, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetMethod {
    /// Interpolation for small blocks, modular charpoly otherwise.
    Auto,
    /// Evaluate at consecutive integers, Bareiss determinants, interpolate.
    Interpolation,
    /// Hessenberg characteristic polynomials modulo word primes, then CRT.
    Modular,
}

impl std::str::FromStr for DetMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(DetMethod::Auto),
            "interpolation" => Ok(DetMethod::Interpolation),
            "modular" => Ok(DetMethod::Modular),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharPolyOptions {
    pub method: DetMethod,
    /// Number of interpolation points per block; defaults to the degree
    /// bound plus one.
    pub eval_points: Option<usize>,
    /// Evaluated matrices with entries wider than this switch from Bareiss
    /// to a modular determinant.
    pub modular_threshold_bits: u64,
    /// Also reconstruct `det(M')` exactly.
    pub with_minor: bool,
    pub max_monomials: u128,
    /// Largest diagonal block we are willing to densify.
    pub max_block: usize,
    /// Blocks up to this size use interpolation under `Auto`.
    pub interpolation_limit: usize,
}

impl Default for CharPolyOptions {
    fn default() -> Self {
        CharPolyOptions {
            method: DetMethod::Auto,
            eval_points: None,
            modular_threshold_bits: 62,
            with_minor: true,
            max_monomials: DEFAULT_MAX_MONOMIALS,
            max_block: 8000,
            interpolation_limit: 48,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub stage: String,
    pub index: usize,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharPolyResult {
    pub phi: UniPoly,
    /// Degree of `det(M)`, which equals the matrix size.
    pub det_m_degree: usize,
    pub det_m_prime: Option<UniPoly>,
    pub matrix_size: usize,
    pub minor_size: usize,
    pub largest_block: usize,
    pub method: DetMethod,
    pub primes: usize,
    pub timings: Vec<Timing>,
}

/// Unique diagonal blocks of a matrix with their multiplicities, in order
/// of first appearance.
fn block_multiset(m: &LinearMatrix) -> Vec<(LinearMatrix, usize)> {
    let mut order: Vec<(LinearMatrix, usize)> = Vec::new();
    let mut seen: HashMap<LinearMatrix, usize> = HashMap::new();
    for block in diagonal_blocks(m) {
        let sub = m.principal_submatrix(&block);
        match seen.get(&sub) {
            Some(&pos) => order[pos].1 += 1,
            None => {
                seen.insert(sub.clone(), order.len());
                order.push((sub, 1));
            }
        }
    }
    order
}

/// Blocks of `det(M)` and `det(M')` left after cancelling common factors.
struct BlockPlan {
    blocks: Vec<LinearMatrix>,
    numerator: Vec<(usize, usize)>,
    denominator: Vec<(usize, usize)>,
    /// Every block of the minor, for reconstructing `det(M')` itself.
    minor: Vec<(usize, usize)>,
}

impl BlockPlan {
    fn new(m: &LinearMatrix, minor: &LinearMatrix) -> Self {
        let mut blocks: Vec<LinearMatrix> = Vec::new();
        let mut ids: HashMap<LinearMatrix, usize> = HashMap::new();
        let mut intern = |b: LinearMatrix| -> usize {
            if let Some(&id) = ids.get(&b) {
                return id;
            }
            ids.insert(b.clone(), blocks.len());
            blocks.push(b);
            blocks.len() - 1
        };
        let num: Vec<(usize, usize)> = block_multiset(m)
            .into_iter()
            .map(|(b, c)| (intern(b), c))
            .collect();
        let den: Vec<(usize, usize)> = block_multiset(minor)
            .into_iter()
            .map(|(b, c)| (intern(b), c))
            .collect();
        let den_counts: HashMap<usize, usize> = den.iter().copied().collect();
        let num_counts: HashMap<usize, usize> = num.iter().copied().collect();
        let numerator = num
            .iter()
            .map(|&(id, c)| (id, c - c.min(*den_counts.get(&id).unwrap_or(&0))))
            .filter(|&(_, c)| c > 0)
            .collect();
        let denominator = den
            .iter()
            .map(|&(id, c)| (id, c - c.min(*num_counts.get(&id).unwrap_or(&0))))
            .filter(|&(_, c)| c > 0)
            .collect();
        BlockPlan {
            blocks,
            numerator,
            denominator,
            minor: den,
        }
    }

    fn needed(&self, with_minor: bool) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .numerator
            .iter()
            .chain(&self.denominator)
            .map(|&(id, _)| id)
            .collect();
        if with_minor {
            ids.extend(self.minor.iter().map(|&(id, _)| id));
        }
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Exact characteristic polynomial of a hypergraph via the Macaulay
/// resultant formulation.
pub fn charpoly(h: &Hypergraph) -> Result<UniPoly> {
    Ok(charpoly_with(h, &CharPolyOptions::default())?.phi)
}

pub fn charpoly_with(h: &Hypergraph, opts: &CharPolyOptions) -> Result<CharPolyResult> {
    let mac = build_macaulay_capped(&h.eigen_system(), opts.max_monomials)?;
    let delta = (1..=h.n()).map(|v| h.degree(v)).max().unwrap_or(0);
    charpoly_of_matrix(&mac, delta, opts)
}

/// `phi = det(M) / det(M')` for a prepared Macaulay matrix. `delta` bounds
/// the modulus of every root and so the size of the coefficients.
pub fn charpoly_of_matrix(
    mac: &MacaulayMatrix,
    delta: usize,
    opts: &CharPolyOptions,
) -> Result<CharPolyResult> {
    let minor = mac.minor();
    let degree = mac.size() - minor.size();
    let plan = BlockPlan::new(&mac.matrix, &minor);
    let needed = plan.needed(opts.with_minor);
    let largest = needed.iter().map(|&id| plan.blocks[id].size()).max().unwrap_or(0);
    if largest > opts.max_block {
        return Err(Error::TooLarge(format!(
            "diagonal block of size {largest} exceeds the limit {}; dense storage would take about {} MiB per prime",
            opts.max_block,
            largest * largest * 8 / (1 << 20)
        )));
    }
    let method = match opts.method {
        DetMethod::Auto if largest <= opts.interpolation_limit => DetMethod::Interpolation,
        DetMethod::Auto => DetMethod::Modular,
        m => m,
    };
    let mut timings = Vec::new();
    let (phi, det_m_prime, primes) = match method {
        DetMethod::Interpolation => {
            let polys = exact_block_polys(&plan, &needed, opts, &mut timings)?;
            let product = |list: &[(usize, usize)]| -> UniPoly {
                list.iter().fold(UniPoly::one(), |acc, &(id, c)| {
                    &acc * &polys[&id].pow(c as u64)
                })
            };
            let phi = product(&plan.numerator).exact_quotient(&product(&plan.denominator))?;
            let minor_det = opts.with_minor.then(|| product(&plan.minor));
            (phi, minor_det, 0)
        }
        _ => {
            let phi_bits = degree as f64 * (1.0 + delta as f64).log2();
            modular_phi(&plan, &needed, degree, phi_bits, opts.with_minor, &mut timings)?
        }
    };
    if phi.degree() != Some(degree) || !phi.is_monic() {
        return Err(Error::NonzeroRemainder(format!(
            "quotient has degree {:?}, expected monic of degree {degree}",
            phi.degree()
        )));
    }
    Ok(CharPolyResult {
        phi,
        det_m_degree: mac.size(),
        det_m_prime,
        matrix_size: mac.size(),
        minor_size: minor.size(),
        largest_block: largest,
        method,
        primes,
        timings,
    })
}

/// Exact determinant polynomial of one block by evaluation and
/// interpolation.
fn interpolate_block(block: &LinearMatrix, opts: &CharPolyOptions) -> Result<UniPoly> {
    if block.size() == 1 {
        let e = block.entry(0, 0);
        return Ok(UniPoly::from_i64s(&[e.constant, e.lambda]));
    }
    let bound = block.lambda_rows();
    let points = opts.eval_points.unwrap_or(bound + 1);
    if points < bound + 1 {
        return Err(Error::InvalidParameter(format!(
            "{points} evaluation points cannot pin a determinant of degree up to {bound}"
        )));
    }
    let all: Vec<usize> = (0..block.size()).collect();
    let values: Vec<(i64, BigInt)> = (0..points as i64)
        .into_par_iter()
        .map(|x| {
            let dense = dense_block_at(block, &all, x);
            let det = if max_entry_bits(&dense) > opts.modular_threshold_bits {
                modular_det(&dense)
            } else {
                bareiss_det(dense)
            };
            (x, det)
        })
        .collect();
    let poly = interpolate_integers(&values)?;
    if poly.degree().unwrap_or(0) > bound {
        return Err(Error::NonzeroRemainder(format!(
            "interpolated determinant has degree {:?} above the bound {bound}",
            poly.degree()
        )));
    }
    Ok(poly)
}

fn exact_block_polys(
    plan: &BlockPlan,
    needed: &[usize],
    opts: &CharPolyOptions,
    timings: &mut Vec<Timing>,
) -> Result<HashMap<usize, UniPoly>> {
    let results: Vec<(usize, Result<UniPoly>, f64)> = needed
        .par_iter()
        .map(|&id| {
            let start = Instant::now();
            let poly = interpolate_block(&plan.blocks[id], opts);
            (id, poly, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut out = HashMap::new();
    for (id, poly, millis) in results {
        if plan.blocks[id].size() > 1 {
            timings.push(Timing {
                stage: "interpolate-block".into(),
                index: id,
                millis,
            });
        }
        out.insert(id, poly?);
    }
    Ok(out)
}

fn block_charpoly_mod(block: &LinearMatrix, m: &Modulus) -> Result<Vec<u64>> {
    if !block.is_lambda_identity() {
        return Err(Error::InvalidParameter(
            "modular route needs a matrix of the form L*I - B".into(),
        ));
    }
    let n = block.size();
    let mut dense = vec![0u64; n * n];
    for (i, row) in block.rows().iter().enumerate() {
        for &(c, e) in row {
            // entry is L*delta_ic + constant, and B = -constant
            dense[i * n + c] = m.from_i64(-e.constant);
        }
    }
    Ok(hessenberg_charpoly(dense, n, m))
}

fn pow_mod(base: &[u64], mut e: usize, m: &Modulus) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m);
        }
    }
    acc
}

struct PrimeImage {
    phi: Vec<u64>,
    minor: Option<Vec<u64>>,
    millis: f64,
}

fn image_mod(plan: &BlockPlan, needed: &[usize], with_minor: bool, m: &Modulus) -> Result<PrimeImage> {
    let start = Instant::now();
    let mut polys: HashMap<usize, Vec<u64>> = HashMap::new();
    for &id in needed {
        polys.insert(id, block_charpoly_mod(&plan.blocks[id], m)?);
    }
    let product = |list: &[(usize, usize)]| -> Vec<u64> {
        list.iter()
            .fold(vec![1u64], |acc, &(id, c)| mul_mod(&acc, &pow_mod(&polys[&id], c, m), m))
    };
    let phi = div_monic_mod(&product(&plan.numerator), &product(&plan.denominator), m)
        .ok_or_else(|| Error::NonzeroRemainder(format!("det(M') does not divide det(M) modulo {}", m.p)))?;
    let minor = with_minor.then(|| product(&plan.minor));
    Ok(PrimeImage {
        phi,
        minor,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn pad(mut v: Vec<u64>, len: usize) -> Vec<u64> {
    v.resize(len, 0);
    v
}

/// Chinese-remainder reconstruction of `phi` (and optionally `det(M')`),
/// followed by one extra prime as a consistency check.
fn modular_phi(
    plan: &BlockPlan,
    needed: &[usize],
    degree: usize,
    phi_bound_bits: f64,
    with_minor: bool,
    timings: &mut Vec<Timing>,
) -> Result<(UniPoly, Option<UniPoly>, usize)> {
    let minor_size: usize = plan.minor.iter().map(|&(id, c)| plan.blocks[id].size() * c).sum();
    let minor_bits: f64 = if with_minor {
        plan.minor
            .iter()
            .map(|&(id, c)| c as f64 * row_norm_bound_bits(&plan.blocks[id]))
            .sum()
    } else {
        0.0
    };
    let needed_bits = required_bits(phi_bound_bits.max(minor_bits));
    // each prime contributes just under 31 bits
    let count = (needed_bits as usize).div_ceil(30) + 1;
    let primes: Vec<u64> = primes_below_2_31().take(count + 1).collect();
    let images: Vec<Result<PrimeImage>> = primes
        .par_iter()
        .map(|&p| image_mod(plan, needed, with_minor, &Modulus::new(p)))
        .collect();
    let mut phi_crt = Crt::new(degree + 1);
    let mut minor_crt = Crt::new(minor_size + 1);
    let mut check = None;
    for (idx, (img, &p)) in images.into_iter().zip(&primes).enumerate() {
        let img = img?;
        timings.push(Timing {
            stage: "prime".into(),
            index: idx,
            millis: img.millis,
        });
        if idx == count {
            check = Some((img, p));
            break;
        }
        let m = Modulus::new(p);
        phi_crt.add_residues(&m, &pad(img.phi, degree + 1));
        if let Some(minor) = img.minor {
            minor_crt.add_residues(&m, &pad(minor, minor_size + 1));
        }
    }
    let phi = UniPoly::new(phi_crt.symmetric());
    let minor = with_minor.then(|| UniPoly::new(minor_crt.symmetric()));
    let (img, p) = check.expect("verification prime computed");
    let m = Modulus::new(p);
    let agrees = |poly: &UniPoly, residues: &[u64], len: usize| {
        let expect: Vec<u64> = (0..len).map(|d| m.from_bigint(&poly.coeff(d))).collect();
        expect == pad(residues.to_vec(), len)
    };
    let mut ok = agrees(&phi, &img.phi, degree + 1);
    if let (Some(mp), Some(res)) = (&minor, &img.minor) {
        ok &= agrees(mp, res, minor_size + 1);
    }
    if !ok {
        return Err(Error::NonzeroRemainder(format!(
            "reconstruction disagrees with verification prime {p}"
        )));
    }
    Ok((phi, minor, count + 1))
}

/// `log2` of `prod_i (1 + |b_i|_2)`, bounding every coefficient of
/// `det(L*I - B)`.
fn row_norm_bound_bits(block: &LinearMatrix) -> f64 {
    block
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let sq: f64 = row
                .iter()
                .filter(|&&(c, _)| c != i)
                .map(|&(_, e)| (e.constant as f64).powi(2))
                .sum::<f64>()
                + row
                    .iter()
                    .find(|&&(c, _)| c == i)
                    .map_or(0.0, |&(_, e)| (e.constant as f64).powi(2));
            (1.0 + sq.sqrt()).log2()
        })
        .sum()
}

/// Determinant polynomial of an arbitrary linear matrix by blockwise
/// interpolation.
pub fn det_polynomial(m: &LinearMatrix, opts: &CharPolyOptions) -> Result<UniPoly> {
    let mut acc = UniPoly::one();
    for (block, count) in block_multiset(m) {
        acc = &acc * &interpolate_block(&block, opts)?.pow(count as u64);
    }
    Ok(acc)
}

/// `phi` of a disjoint union from the factors' polynomials:
/// `phi_G^((k-1)^{n_H}) * phi_H^((k-1)^{n_G})`.
pub fn combine_disjoint(phi_g: &UniPoly, n_g: usize, phi_h: &UniPoly, n_h: usize, k: usize) -> UniPoly {
    let e_g = ((k - 1) as u64).pow(n_h as u32);
    let e_h = ((k - 1) as u64).pow(n_g as u32);
    &phi_g.pow(e_g) * &phi_h.pow(e_h)
}

pub fn charpoly_disjoint(g: &Hypergraph, h: &Hypergraph) -> Result<UniPoly> {
    if g.k() != h.k() {
        return Err(Error::UniformityMismatch(g.k(), h.k()));
    }
    Ok(combine_disjoint(&charpoly(g)?, g.n(), &charpoly(h)?, h.n(), g.k()))
}

/// The first `count + 1` coefficients of `phi` by codegree, from power sums
/// `tr(B^j)` of the two Macaulay matrices. Avoids any determinant.
pub fn leading_coefficients(h: &Hypergraph, count: usize) -> Result<Vec<BigInt>> {
    let mac = build_macaulay_capped(&h.eigen_system(), DEFAULT_MAX_MONOMIALS)?;
    let minor = mac.minor();
    let a = charpoly_head(&mac.matrix, count)?;
    let b = charpoly_head(&minor, count)?;
    // a = phi * b as series in 1/L, with b monic
    let mut c: Vec<BigInt> = Vec::with_capacity(count + 1);
    for j in 0..=count {
        let mut v = a[j].clone();
        for i in 1..=j {
            v -= &b[i] * &c[j - i];
        }
        c.push(v);
    }
    Ok(c)
}

/// Codegree-`0..=count` coefficients of `det(L*I - B)` via Newton's
/// identities.
fn charpoly_head(m: &LinearMatrix, count: usize) -> Result<Vec<BigInt>> {
    if !m.is_lambda_identity() {
        return Err(Error::InvalidParameter("expected a matrix of the form L*I - B".into()));
    }
    let sums = power_sums(m, count);
    // e_j = (1/j) sum_{i=1}^{j} (-1)^{i-1} e_{j-i} p_i
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for j in 1..=count {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let term = &e[j - i] * BigRational::from_integer(sums[i].clone());
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    e.into_iter()
        .enumerate()
        .map(|(j, v)| {
            if !v.is_integer() {
                return Err(Error::NonIntegral {
                    degree: j,
                    value: v.to_string(),
                });
            }
            let v = v.to_integer();
            Ok(if j % 2 == 0 { v } else { -v })
        })
        .collect()
}

/// `tr(B^j)` for `j = 0..=count` by sparse closed-walk expansion.
fn power_sums(m: &LinearMatrix, count: usize) -> Vec<BigInt> {
    let n = m.size();
    let b: Vec<Vec<(usize, i64)>> = m
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .filter(|&&(_, e)| e.constant != 0)
                .map(|&(c, e)| (c, -e.constant))
                .collect()
        })
        .collect();
    let partial: Vec<Vec<i128>> = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut sums = vec![0i128; count + 1];
            let mut current: HashMap<usize, i128> = HashMap::from([(start, 1)]);
            for s in sums.iter_mut().skip(1) {
                let mut next: HashMap<usize, i128> = HashMap::new();
                for (&v, &w) in &current {
                    for &(c, x) in &b[v] {
                        *next.entry(c).or_insert(0) += w * x as i128;
                    }
                }
                next.retain(|_, w| *w != 0);
                *s = *next.get(&start).unwrap_or(&0);
                current = next;
            }
            sums
        })
        .collect();
    let mut out = vec![BigInt::from(n)];
    for j in 1..=count {
        out.push(partial.iter().map(|s| BigInt::from(s[j])).sum());
    }
    out
}

/// Degree of `phi`: `n (k-1)^(n-1)`.
pub fn expected_degree(n: usize, k: usize) -> Option<usize> {
    let km1 = k.checked_sub(1)?;
    km1.checked_pow(u32::try_from(n.checked_sub(1)?).ok()?)?
        .checked_mul(n)
}

/// Rough magnitude of `phi`'s largest coefficient in bits, for reporting.
pub fn coefficient_bits(phi: &UniPoly) -> u64 {
    phi.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0)
}
