//! Generalized traces by counting closed arrangements of arc multisets,
//! and the leading coefficients of the characteristic polynomial they
//! determine.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::macaulay::bareiss_det;
use crate::poly::UniPoly;

/// A directed multigraph given by arc multiplicities. Arcs are
/// distinguishable when counting arrangements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ArcMultiset {
    arcs: BTreeMap<(usize, usize), usize>,
}

impl ArcMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, from: usize, to: usize, mult: usize) {
        if mult > 0 {
            *self.arcs.entry((from, to)).or_insert(0) += mult;
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.arcs.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn len(&self) -> usize {
        self.arcs.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.arcs.keys().flat_map(|&(u, v)| [u, v]).collect();
        set.into_iter().collect()
    }

    pub fn is_balanced(&self) -> bool {
        let mut net: BTreeMap<usize, i64> = BTreeMap::new();
        for (&(u, v), &m) in &self.arcs {
            *net.entry(u).or_insert(0) += m as i64;
            *net.entry(v).or_insert(0) -= m as i64;
        }
        net.values().all(|&x| x == 0)
    }

    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        if verts.is_empty() {
            return true;
        }
        let mut seen = BTreeSet::from([verts[0]]);
        let mut stack = vec![verts[0]];
        while let Some(x) = stack.pop() {
            for &(u, v) in self.arcs.keys() {
                for (a, b) in [(u, v), (v, u)] {
                    if a == x && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        seen.len() == verts.len()
    }

    /// Number of sequences listing every arc once such that consecutive
    /// arcs chain head to tail and the last arc returns to the start of
    /// the first. Counted as `m * t_w * prod_v (deg(v) - 1)!` with `t_w` the
    /// number of arborescences into any fixed vertex.
    pub fn count_closed_arrangements(&self) -> BigInt {
        if self.arcs.is_empty() {
            return BigInt::one();
        }
        if !self.is_balanced() || !self.is_connected() {
            return BigInt::zero();
        }
        let verts = self.vertices();
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let s = verts.len();
        let mut lap = vec![vec![BigInt::zero(); s]; s];
        let mut out_deg = vec![0usize; s];
        for (&(u, v), &m) in &self.arcs {
            let (a, b) = (index[&u], index[&v]);
            out_deg[a] += m;
            if a != b {
                lap[a][a] += m;
                lap[a][b] -= m;
            }
        }
        let reduced: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
        let trees = bareiss_det(reduced);
        let mut total = BigInt::from(self.len()) * trees;
        for d in out_deg {
            total *= factorial(d - 1);
        }
        total
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// One operator-term multiset contributing to a generalized trace: each
/// entry is `(primary vertex, edge index, multiplicity)`.
#[derive(Debug, Clone)]
pub struct TraceTerm {
    pub terms: Vec<(usize, usize, usize)>,
    pub arrangements: BigInt,
    pub weight: BigRational,
}

/// Arcs `i -> j` for every other vertex `j` of the edge, per term.
pub fn arcs_of_terms(h: &Hypergraph, terms: &[(usize, usize, usize)]) -> ArcMultiset {
    let mut arcs = ArcMultiset::new();
    for &(i, e, mult) in terms {
        for &j in &h.edges()[e] {
            if j != i {
                arcs.add(i, j, mult);
            }
        }
    }
    arcs
}

/// Default ceiling on edge multisets enumerated for one trace.
pub const DEFAULT_MAX_MULTISETS: u128 = 50_000_000;

/// Every nonzero contribution to `Tr_d(H)`, before the global factor
/// `(k-1)^(n-1)`.
pub fn trace_terms(h: &Hypergraph, d: usize) -> Result<Vec<TraceTerm>> {
    let m = h.edge_count();
    if d == 0 {
        return Ok(Vec::new());
    }
    let estimate = crate::poly::monomial_count(m, d as u32);
    if estimate > DEFAULT_MAX_MULTISETS {
        return Err(Error::TooLarge(format!(
            "{estimate} edge multisets of size {d} exceed the limit {DEFAULT_MAX_MULTISETS}"
        )));
    }
    let k = h.k();
    let mut out: Vec<TraceTerm> = (0..m)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut chosen = vec![first];
            edge_multisets(h, d, &mut chosen, &mut |edges| {
                primary_assignments(h, k, edges, &mut found);
            });
            found
        })
        .collect();
    out.sort_by(|a, b| a.terms.cmp(&b.terms));
    Ok(out)
}

fn edge_multisets(h: &Hypergraph, d: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if chosen.len() == d {
        let mut cover = vec![0usize; h.n() + 1];
        for &e in chosen.iter() {
            for &v in &h.edges()[e] {
                cover[v] += 1;
            }
        }
        if cover.iter().all(|&c| c % h.k() == 0) {
            visit(chosen);
        }
        return;
    }
    let last = *chosen.last().expect("nonempty");
    for e in last..h.edge_count() {
        chosen.push(e);
        edge_multisets(h, d, chosen, visit);
        chosen.pop();
    }
}

/// Distribute each edge's multiplicity over its vertices as primaries so
/// that vertex `v` is primary exactly `cover(v)/k` times.
fn primary_assignments(h: &Hypergraph, k: usize, edges: &[usize], found: &mut Vec<TraceTerm>) {
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for &e in edges {
        match distinct.last_mut() {
            Some((le, c)) if *le == e => *c += 1,
            _ => distinct.push((e, 1)),
        }
    }
    let mut need = vec![0usize; h.n() + 1];
    for &e in edges {
        for &v in &h.edges()[e] {
            need[v] += 1;
        }
    }
    for x in need.iter_mut() {
        *x /= k;
    }
    let mut terms = Vec::new();
    assign(h, k, &distinct, 0, &mut need, &mut terms, found);
}

fn assign(
    h: &Hypergraph,
    k: usize,
    distinct: &[(usize, usize)],
    pos: usize,
    need: &mut Vec<usize>,
    terms: &mut Vec<(usize, usize, usize)>,
    found: &mut Vec<TraceTerm>,
) {
    if pos == distinct.len() {
        if need.iter().all(|&x| x == 0) {
            record(h, k, terms, found);
        }
        return;
    }
    let (e, mult) = distinct[pos];
    let verts = h.edges()[e].clone();
    split(h, k, distinct, pos, &verts, 0, mult, need, terms, found);
}

#[allow(clippy::too_many_arguments)]
fn split(
    h: &Hypergraph,
    k: usize,
    distinct: &[(usize, usize)],
    pos: usize,
    verts: &[usize],
    vi: usize,
    remaining: usize,
    need: &mut Vec<usize>,
    terms: &mut Vec<(usize, usize, usize)>,
    found: &mut Vec<TraceTerm>,
) {
    if vi == verts.len() {
        if remaining == 0 {
            assign(h, k, distinct, pos + 1, need, terms, found);
        }
        return;
    }
    let v = verts[vi];
    let e = distinct[pos].0;
    for take in 0..=remaining.min(need[v]) {
        need[v] -= take;
        if take > 0 {
            terms.push((v, e, take));
        }
        split(h, k, distinct, pos, verts, vi + 1, remaining - take, need, terms, found);
        if take > 0 {
            terms.pop();
        }
        need[v] += take;
    }
}

fn record(h: &Hypergraph, k: usize, terms: &[(usize, usize, usize)], found: &mut Vec<TraceTerm>) {
    let arcs = arcs_of_terms(h, terms);
    let arrangements = arcs.count_closed_arrangements();
    if arrangements.is_zero() {
        return;
    }
    let mut primary: BTreeMap<usize, usize> = BTreeMap::new();
    let mut denom = BigInt::one();
    for &(i, _, mult) in terms {
        *primary.entry(i).or_insert(0) += mult;
        denom *= factorial(mult);
    }
    let mut numer = BigInt::one();
    for &di in primary.values() {
        numer *= factorial(di);
        denom *= factorial(di * (k - 1));
    }
    let weight = BigRational::new(numer * &arrangements, denom);
    let mut sorted = terms.to_vec();
    sorted.sort_unstable();
    found.push(TraceTerm {
        terms: sorted,
        arrangements,
        weight,
    });
}

/// `Tr_d(H)`, the `d`-th power sum of the eigenvalues counted with
/// multiplicity.
pub fn generalized_trace(h: &Hypergraph, d: usize) -> Result<BigInt> {
    if d == 0 {
        return Ok(BigInt::from(crate::macaulay::expected_degree(h.n(), h.k()).unwrap_or(0)));
    }
    let sum: BigRational = trace_terms(h, d)?.into_iter().map(|t| t.weight).sum();
    let scale = BigInt::from(h.k() - 1).pow(h.n() as u32 - 1);
    let total = sum * BigRational::from_integer(scale);
    if !total.is_integer() {
        return Err(Error::NonIntegral {
            degree: d,
            value: total.to_string(),
        });
    }
    Ok(total.to_integer())
}

/// Coefficients of a monic polynomial by codegree `0..=traces.len()`, from
/// its power sums `traces[j-1] = p_j`, via `d c_d = -sum_j p_j c_{d-j}`.
pub fn coefficients_from_power_sums(traces: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for d in 1..=traces.len() {
        let mut acc = BigInt::zero();
        for j in 1..=d {
            acc -= &traces[j - 1] * &c[d - j];
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(d));
        if !r.is_zero() {
            return Err(Error::NonIntegral {
                degree: d,
                value: format!("{acc}/{d}"),
            });
        }
        c.push(q);
    }
    Ok(c)
}

/// Power sums `p_1..=p_count` of the roots of a polynomial, from its
/// coefficients by Newton's identities.
pub fn power_sums_of(phi: &UniPoly, count: usize) -> Vec<BigInt> {
    let lead = phi.leading().cloned().unwrap_or_else(BigInt::one);
    assert!(lead == BigInt::one(), "power sums need a monic polynomial");
    let c: Vec<BigInt> = (0..=count).map(|d| phi.codegree_coeff(d)).collect();
    let mut p: Vec<BigInt> = Vec::with_capacity(count);
    for d in 1..=count {
        // p_d = -d c_d - sum_{j=1}^{d-1} p_j c_{d-j}
        let mut v = -BigInt::from(d) * &c[d];
        for j in 1..d {
            v -= &p[j - 1] * &c[d - j];
        }
        p.push(v);
    }
    p
}

/// Leading coefficients of the characteristic polynomial for codegrees
/// `0..=max_codegree`, computed from generalized traces. Codegrees above
/// `cap` (default `k + 1`) are refused.
pub fn coefficients_via_traces(
    h: &Hypergraph,
    max_codegree: usize,
    cap: Option<usize>,
) -> Result<Vec<BigInt>> {
    let cap = cap.unwrap_or(h.k() + 1);
    if max_codegree > cap {
        return Err(Error::CapExceeded {
            requested: max_codegree,
            cap,
        });
    }
    let traces = (1..=max_codegree)
        .map(|d| generalized_trace(h, d))
        .collect::<Result<Vec<_>>>()?;
    coefficients_from_power_sums(&traces)
}

/// Number of `(k+1)`-vertex sets all of whose `k`-subsets are edges.
pub fn count_simplices(h: &Hypergraph) -> usize {
    let k = h.k();
    let n = h.n();
    let mut count = 0;
    // every simplex contains an edge; extend each edge by a larger vertex
    // than its maximum so each simplex is found once
    for e in h.edges() {
        let max = *e.last().expect("edge nonempty");
        for w in max + 1..=n {
            let all = (0..k).all(|skip| {
                let mut face: Vec<usize> = e
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                face.push(w);
                h.contains_edge(&face)
            });
            if all {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_u(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn complete_digraph_closed_form() {
        for k in 2..=4usize {
            let mut arcs = ArcMultiset::new();
            for u in 1..=k {
                for v in 1..=k {
                    if u != v {
                        arcs.add(u, v, 1);
                    }
                }
            }
            let k64 = k as u64;
            let expected = k64 * (k64 - 1) * k64.pow(k as u32 - 2) * factorial_u(k64 - 2).pow(k as u32);
            assert_eq!(arcs.count_closed_arrangements(), BigInt::from(expected), "k={k}");
        }
    }

    #[test]
    fn parallel_arcs_are_distinguishable() {
        let mut arcs = ArcMultiset::new();
        arcs.add(1, 2, 2);
        arcs.add(2, 1, 2);
        // 2 circuits up to rotation times 4 starting arcs
        assert_eq!(arcs.count_closed_arrangements(), BigInt::from(8));
    }

    #[test]
    fn unbalanced_or_disconnected_gives_zero() {
        let mut arcs = ArcMultiset::new();
        arcs.add(1, 2, 1);
        assert_eq!(arcs.count_closed_arrangements(), BigInt::zero());
        let mut two = ArcMultiset::new();
        two.add(1, 2, 1);
        two.add(2, 1, 1);
        two.add(3, 4, 1);
        two.add(4, 3, 1);
        assert_eq!(two.count_closed_arrangements(), BigInt::zero());
    }

    #[test]
    fn single_edge_traces() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        assert_eq!(generalized_trace(&e3, 1).unwrap(), BigInt::zero());
        assert_eq!(generalized_trace(&e3, 2).unwrap(), BigInt::zero());
        assert_eq!(generalized_trace(&e3, 3).unwrap(), BigInt::from(9));
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(count_simplices(&Hypergraph::complete(4, 3).unwrap()), 1);
        assert_eq!(count_simplices(&Hypergraph::complete(5, 3).unwrap()), 5);
        assert_eq!(count_simplices(&Hypergraph::tetra_minus_face()), 0);
        assert_eq!(count_simplices(&Hypergraph::complete(5, 4).unwrap()), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let h = Hypergraph::single_edge(3).unwrap();
        assert!(matches!(
            coefficients_via_traces(&h, 5, None),
            Err(Error::CapExceeded { requested: 5, cap: 4 })
        ));
        assert!(coefficients_via_traces(&h, 5, Some(5)).is_ok());
    }
}
