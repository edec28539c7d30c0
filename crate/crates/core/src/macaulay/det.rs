use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::matrix::LinearMatrix;
use super::modular::{primes_below_2_31, required_bits, Crt, Modulus};

/// Diagonal blocks of a block-triangular form: strongly connected
/// components of the off-diagonal nonzero pattern. The determinant is the
/// product of the determinants of these principal submatrices.
pub fn diagonal_blocks(m: &LinearMatrix) -> Vec<Vec<usize>> {
    let n = m.size();
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, m.nnz());
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, row) in m.rows().iter().enumerate() {
        for &(c, _) in row {
            if c != i {
                graph.add_edge(nodes[i], nodes[c], ());
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|comp| {
            let mut v: Vec<usize> = comp.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Fraction-free Gaussian elimination with Markowitz-style pivot choice.
/// Consumes the matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for step in 0..n {
        // pivot with the fewest nonzeros in its row and column
        let mut row_counts = vec![0usize; n];
        let mut col_counts = vec![0usize; n];
        for i in step..n {
            for j in step..n {
                if !a[i][j].is_zero() {
                    row_counts[i] += 1;
                    col_counts[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for i in step..n {
            for j in step..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let cost = (row_counts[i] - 1) * (col_counts[j] - 1);
                if best.map_or(true, |(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return BigInt::zero();
        };
        if pi != step {
            a.swap(pi, step);
            negate = !negate;
        }
        if pj != step {
            for row in a.iter_mut() {
                row.swap(pj, step);
            }
            negate = !negate;
        }
        let pivot = a[step][step].clone();
        let (top, bottom) = a.split_at_mut(step + 1);
        let pivot_row = &top[step];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[step]);
            for j in step + 1..n {
                let mut v = &row[j] * &pivot;
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() && !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of an integer matrix modulo `m` by Gaussian elimination.
pub fn det_mod(a: &[Vec<BigInt>], m: &Modulus) -> u64 {
    let n = a.len();
    let mut r: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|v| m.from_bigint(v)).collect())
        .collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| r[i][col] != 0) else {
            return 0;
        };
        if piv != col {
            r.swap(piv, col);
            det = m.sub(0, det);
        }
        det = m.mul(det, r[col][col]);
        let inv = m.inv(r[col][col]);
        for i in col + 1..n {
            if r[i][col] == 0 {
                continue;
            }
            let f = m.mul(r[i][col], inv);
            for j in col..n {
                let t = m.mul(f, r[col][j]);
                r[i][j] = m.sub(r[i][j], t);
            }
        }
    }
    det
}

/// Integer determinant by Chinese remaindering against the Hadamard bound.
pub fn modular_det(a: &[Vec<BigInt>]) -> BigInt {
    let bound_bits: f64 = a
        .iter()
        .map(|row| {
            let norm2: f64 = row
                .iter()
                .map(|v| {
                    let b = v.bits() as f64;
                    2f64.powf(2.0 * b)
                })
                .sum();
            0.5 * norm2.max(1.0).log2()
        })
        .sum();
    let needed = required_bits(bound_bits);
    let mut crt = Crt::new(1);
    for p in primes_below_2_31() {
        let m = Modulus::new(p);
        crt.add_residues(&m, &[det_mod(a, &m)]);
        if crt.modulus_bits() > needed {
            break;
        }
    }
    crt.symmetric().pop().expect("one value")
}

/// Characteristic polynomial `det(L*I - b)` of a dense matrix over `Z/p`
/// by reduction to upper Hessenberg form. Coefficients are ascending and
/// the result is monic of degree `n`.
pub fn hessenberg_charpoly(mut h: Vec<u64>, n: usize, m: &Modulus) -> Vec<u64> {
    debug_assert_eq!(h.len(), n * n);
    let at = |i: usize, j: usize| i * n + j;
    for col in 0..n.saturating_sub(2) {
        let sub = col + 1;
        let Some(piv) = (sub..n).find(|&i| h[at(i, col)] != 0) else {
            continue;
        };
        if piv != sub {
            for j in 0..n {
                h.swap(at(piv, j), at(sub, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, sub));
            }
        }
        let inv = m.inv(h[at(sub, col)]);
        for i in sub + 1..n {
            let u = m.mul(h[at(i, col)], inv);
            if u == 0 {
                continue;
            }
            // row_i -= u * row_sub
            let neg_u = m.p - u;
            for j in col..n {
                let t = h[at(sub, j)];
                if t != 0 {
                    h[at(i, j)] = m.reduce(h[at(i, j)] + neg_u * t);
                }
            }
            // col_sub += u * col_i
            for r in 0..n {
                let t = h[at(r, i)];
                if t != 0 {
                    h[at(r, sub)] = m.reduce(h[at(r, sub)] + u * t);
                }
            }
        }
    }
    // p_j = (L - h_jj) p_{j-1} - sum_i h_{j-i, j} prod h p_{j-i-1}
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for j in 0..n {
        let prev = &polys[j];
        let mut next = vec![0u64; j + 2];
        let d = h[at(j, j)];
        for (idx, &c) in prev.iter().enumerate() {
            next[idx + 1] = m.add(next[idx + 1], c);
            next[idx] = m.sub(next[idx], m.mul(d, c));
        }
        let mut prod = 1u64;
        for i in 1..=j {
            prod = m.mul(prod, h[at(j - i + 1, j - i)]);
            if prod == 0 {
                break;
            }
            let coef = m.mul(prod, h[at(j - i, j)]);
            if coef == 0 {
                continue;
            }
            for (idx, &c) in polys[j - i].iter().enumerate() {
                next[idx] = m.sub(next[idx], m.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n+1 polynomials")
}

/// Product of ascending polynomials over `Z/p`.
pub fn mul_mod(a: &[u64], b: &[u64], m: &Modulus) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = m.add(out[i + j], m.mul(x, y));
        }
    }
    out
}

/// Quotient of `a` by a monic `b` over `Z/p`, or `None` if the division
/// leaves a remainder.
pub fn div_monic_mod(a: &[u64], b: &[u64], m: &Modulus) -> Option<Vec<u64>> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    if a.len() < b.len() {
        return if a.iter().all(|&x| x == 0) { Some(vec![0]) } else { None };
    }
    let mut rem = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = m.sub(rem[i + j], m.mul(c, bj));
        }
    }
    if rem[..db].iter().all(|&x| x == 0) {
        Some(q)
    } else {
        None
    }
}

/// Big-integer matrix at `L = x` restricted to `indices`.
pub fn dense_block_at(m: &LinearMatrix, indices: &[usize], x: i64) -> Vec<Vec<BigInt>> {
    m.principal_submatrix(indices)
        .dense_at(x)
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn max_entry_bits(a: &[Vec<BigInt>]) -> u64 {
    a.iter()
        .flat_map(|r| r.iter())
        .map(|v| v.abs().bits())
        .max()
        .unwrap_or(0)
}
