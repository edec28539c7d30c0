use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::EigenSystem;
use crate::poly::{enumerate_monomials, monomial_count, Monomial};

/// An entry `constant + lambda * L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LinearEntry {
    pub constant: i64,
    pub lambda: i64,
}

impl LinearEntry {
    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.lambda == 0
    }

    pub fn at(&self, x: i64) -> i64 {
        self.constant + self.lambda * x
    }
}

/// A square sparse matrix whose entries are linear in `L`. Rows store
/// `(column, entry)` pairs sorted by column with no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMatrix {
    size: usize,
    rows: Vec<Vec<(usize, LinearEntry)>>,
}

impl LinearMatrix {
    pub fn new(size: usize, rows: Vec<Vec<(usize, LinearEntry)>>) -> Result<Self> {
        if rows.len() != size {
            return Err(Error::InvalidParameter(format!(
                "expected {size} rows, got {}",
                rows.len()
            )));
        }
        let mut clean = Vec::with_capacity(size);
        for row in rows {
            let mut acc: Vec<(usize, LinearEntry)> = Vec::with_capacity(row.len());
            let mut row = row;
            row.sort_by_key(|&(c, _)| c);
            for (c, e) in row {
                if c >= size {
                    return Err(Error::InvalidParameter(format!("column {c} out of range")));
                }
                match acc.last_mut() {
                    Some((lc, le)) if *lc == c => {
                        le.constant += e.constant;
                        le.lambda += e.lambda;
                    }
                    _ => acc.push((c, e)),
                }
            }
            acc.retain(|(_, e)| !e.is_zero());
            clean.push(acc);
        }
        Ok(LinearMatrix { size, rows: clean })
    }

    /// `L * I - b` for an integer matrix `b` given densely.
    pub fn lambda_minus(b: &[Vec<i64>]) -> Result<Self> {
        let size = b.len();
        let rows = b
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut out: Vec<(usize, LinearEntry)> = row
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0)
                    .map(|(j, &v)| (j, LinearEntry { constant: -v, lambda: 0 }))
                    .collect();
                out.push((i, LinearEntry { constant: 0, lambda: 1 }));
                out
            })
            .collect();
        LinearMatrix::new(size, rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Vec<(usize, LinearEntry)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> LinearEntry {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|pos| self.rows[i][pos].1)
            .unwrap_or(LinearEntry { constant: 0, lambda: 0 })
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> LinearMatrix {
        let mut position = HashMap::with_capacity(indices.len());
        for (new, &old) in indices.iter().enumerate() {
            position.insert(old, new);
        }
        let rows = indices
            .iter()
            .map(|&old| {
                let mut row: Vec<(usize, LinearEntry)> = self.rows[old]
                    .iter()
                    .filter_map(|&(c, e)| position.get(&c).map(|&nc| (nc, e)))
                    .collect();
                row.sort_by_key(|&(c, _)| c);
                row
            })
            .collect();
        LinearMatrix {
            size: indices.len(),
            rows,
        }
    }

    /// Number of rows carrying an `L` term, an upper bound on the degree of
    /// the determinant.
    pub fn lambda_rows(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.iter().any(|(_, e)| e.lambda != 0))
            .count()
    }

    /// Whether the `L` part is exactly the identity, i.e. the matrix is
    /// `L * I - b` for an integer `b`.
    pub fn is_lambda_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .all(|&(c, e)| if c == i { e.lambda == 1 } else { e.lambda == 0 })
                && row.iter().any(|&(c, _)| c == i)
        })
    }

    /// The integer matrix obtained by substituting `L = x`, densely.
    pub fn dense_at(&self, x: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.size]; self.size];
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, e) in row {
                out[i][c] = e.at(x);
            }
        }
        out
    }
}

/// The Macaulay matrix of an eigen-system together with its bookkeeping.
#[derive(Debug, Clone)]
pub struct MacaulayMatrix {
    pub n: usize,
    pub k: usize,
    pub degree: u32,
    /// Column and row labels, in graded-lex order.
    pub monomials: Vec<Monomial>,
    /// 1-based equation index whose shifted copy fills each row.
    pub class: Vec<usize>,
    /// Rows (and columns) that survive in the minor.
    pub reduced: Vec<bool>,
    pub matrix: LinearMatrix,
}

impl MacaulayMatrix {
    /// Indices of the non-reduced rows, which span the minor.
    pub fn minor_indices(&self) -> Vec<usize> {
        (0..self.monomials.len()).filter(|&i| !self.reduced[i]).collect()
    }

    pub fn minor(&self) -> LinearMatrix {
        self.matrix.principal_submatrix(&self.minor_indices())
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }
}

/// Default ceiling on the number of monomials we are willing to index.
pub const DEFAULT_MAX_MONOMIALS: u128 = 200_000;

/// Build the Macaulay matrix of `system` in degree `n(k-1) - n + 1`.
pub fn build_macaulay(system: &EigenSystem) -> Result<MacaulayMatrix> {
    build_macaulay_capped(system, DEFAULT_MAX_MONOMIALS)
}

pub fn build_macaulay_capped(system: &EigenSystem, max_monomials: u128) -> Result<MacaulayMatrix> {
    let n = system.n;
    let k = system.k;
    if n == 0 {
        return Err(Error::InvalidParameter("hypergraph has no vertices".into()));
    }
    let km1 = (k - 1) as u32;
    let degree = (n as u32) * (km1 - 1) + 1;
    let count = monomial_count(n, degree);
    if count > max_monomials {
        return Err(Error::TooLarge(format!(
            "{count} monomials of degree {degree} in {n} variables exceeds the limit {max_monomials}"
        )));
    }
    let monomials = enumerate_monomials(n, degree);
    let index: HashMap<&[u32], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exponents(), i))
        .collect();

    let mut class = Vec::with_capacity(monomials.len());
    let mut reduced = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let e = m.exponents();
        let first = e.iter().position(|&a| a >= km1).expect("degree forces a large exponent");
        class.push(first + 1);
        reduced.push(e.iter().filter(|&&a| a >= km1).count() == 1);
    }

    let mut rows = Vec::with_capacity(monomials.len());
    let mut shifted = vec![0u32; n];
    for (row_idx, m) in monomials.iter().enumerate() {
        let i = class[row_idx] - 1;
        let eq = &system.equations[i];
        let mut row = vec![(row_idx, LinearEntry { constant: 0, lambda: 1 })];
        for edge in &eq.link {
            shifted.copy_from_slice(m.exponents());
            shifted[i] -= km1;
            for &v in edge {
                shifted[v - 1] += 1;
            }
            let col = index[shifted.as_slice()];
            row.push((col, LinearEntry { constant: -1, lambda: 0 }));
        }
        rows.push(row);
    }
    let size = monomials.len();
    Ok(MacaulayMatrix {
        n,
        k,
        degree,
        monomials,
        class,
        reduced,
        matrix: LinearMatrix::new(size, rows)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Hypergraph;

    #[test]
    fn single_edge_sizes() {
        let h = Hypergraph::single_edge(3).unwrap();
        let m = build_macaulay(&h.eigen_system()).unwrap();
        assert_eq!(m.degree, 4);
        assert_eq!(m.size(), 15);
        assert!(m.matrix.is_lambda_identity());
        // reduced monomials: exactly one exponent >= 2 among degree-4 monomials
        let minor = m.minor_indices().len();
        let non_reduced = m
            .monomials
            .iter()
            .filter(|mon| mon.exponents().iter().filter(|&&a| a >= 2).count() != 1)
            .count();
        assert_eq!(minor, non_reduced);
    }

    #[test]
    fn greedy_partition_prefers_smallest_index() {
        let h = Hypergraph::single_edge(3).unwrap();
        let m = build_macaulay(&h.eigen_system()).unwrap();
        for (mon, &c) in m.monomials.iter().zip(&m.class) {
            let e = mon.exponents();
            assert!(e[c - 1] >= 2);
            assert!(e[..c - 1].iter().all(|&a| a < 2));
        }
    }

    #[test]
    fn rows_encode_shifted_equations() {
        let h = Hypergraph::single_edge(3).unwrap();
        let m = build_macaulay(&h.eigen_system()).unwrap();
        // x1^4 lies in the first class: row is L*x1^4 - x1^2*x2*x3
        let row = &m.matrix.rows()[0];
        assert_eq!(row.len(), 2);
        let target = m
            .monomials
            .iter()
            .position(|mon| mon.exponents() == [2, 1, 1])
            .unwrap();
        assert_eq!(m.matrix.entry(0, target), LinearEntry { constant: -1, lambda: 0 });
    }

    #[test]
    fn linear_matrix_merges_duplicates() {
        let e = LinearEntry { constant: 1, lambda: 0 };
        let m = LinearMatrix::new(1, vec![vec![(0, e), (0, LinearEntry { constant: -1, lambda: 1 })]])
            .unwrap();
        assert_eq!(m.entry(0, 0), LinearEntry { constant: 0, lambda: 1 });
        assert!(LinearMatrix::new(1, vec![vec![(3, e)]]).is_err());
    }
}
