//! Uniform hypergraphs on the vertex set `1..=n`.
//!
//! A [`Hypergraph`] is immutable once built. Edges are sorted ascending and
//! the edge list is kept in lexicographic order, so two hypergraphs with the
//! same vertex count and edge set compare equal and serialize identically.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;

    fn try_from(r: HypergraphRepr) -> Result<Self> {
        Hypergraph::from_edge_list(r.n, r.k, r.edges)
    }
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        HypergraphRepr {
            n: h.n,
            k: h.k,
            edges: h.edges,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub average: BigRational,
    pub max: usize,
}

impl Hypergraph {
    /// Builds a hypergraph from 1-based edges. Vertex order inside an edge
    /// and duplicate edges do not matter.
    pub fn from_edge_list<E, I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for edge in edges {
            let edge = edge.as_ref();
            if edge.len() != k {
                return Err(Error::EdgeSize {
                    edge: edge.to_vec(),
                    got: edge.len(),
                    expected: k,
                });
            }
            let mut sorted = edge.to_vec();
            sorted.sort_unstable();
            for &v in &sorted {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(edge.to_vec()));
            }
            set.insert(sorted);
        }
        Ok(Self::from_canonical(n, k, set.into_iter().collect()))
    }

    fn from_canonical(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (idx, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v - 1].push(idx);
            }
        }
        Hypergraph {
            n,
            k,
            edges,
            incidence,
        }
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::from_edge_list(n, k, Vec::<Vec<usize>>::new())
    }

    /// The single-edge k-graph `E_k`.
    pub fn single_edge(k: usize) -> Result<Self> {
        Self::from_edge_list(k, k, [(1..=k).collect::<Vec<_>>()])
    }

    /// All k-subsets of `1..=n`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if n < k {
            return Err(Error::TooFewVertices { n, k });
        }
        let mut edges = Vec::new();
        let mut current = Vec::with_capacity(k);
        k_subsets(1, n, k, &mut current, &mut edges);
        Ok(Self::from_canonical(n, k, edges))
    }

    /// The complete k-cylinder: one class per entry of `parts`, every
    /// transversal an edge. Classes occupy consecutive vertex ranges.
    pub fn complete_cylinder(parts: &[usize]) -> Result<Self> {
        let k = parts.len();
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::EmptyPart);
        }
        let classes = cylinder_classes(parts);
        let mut edges = Vec::new();
        let mut current = Vec::with_capacity(k);
        transversals(&classes, &mut current, &mut edges);
        Self::from_edge_list(parts.iter().sum(), k, edges)
    }

    /// Each `k`-subset of `1..=n` becomes an edge independently with
    /// probability `p`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
        }
        let mut all = Vec::new();
        k_subsets(1, n, k, &mut Vec::new(), &mut all);
        let edges: Vec<Vec<usize>> = all.into_iter().filter(|_| rng.gen_bool(p)).collect();
        Self::from_edge_list(n, k, edges)
    }

    /// The 3-graph on four vertices with three of the four possible edges.
    pub fn tetra_minus_face() -> Self {
        Self::from_edge_list(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).expect("valid edges")
    }

    /// Cartesian product. Vertex `(a, b)` gets index `(a - 1) * n_h + b`.
    pub fn cartesian_product(g: &Hypergraph, h: &Hypergraph) -> Result<Self> {
        if g.k != h.k {
            return Err(Error::UniformityMismatch(g.k, h.k));
        }
        let m = h.n;
        let index = |a: usize, b: usize| (a - 1) * m + b;
        let mut edges = Vec::with_capacity(g.n * h.edges.len() + m * g.edges.len());
        for a in 1..=g.n {
            for e in &h.edges {
                edges.push(e.iter().map(|&b| index(a, b)).collect::<Vec<_>>());
            }
        }
        for e in &g.edges {
            for b in 1..=m {
                edges.push(e.iter().map(|&a| index(a, b)).collect::<Vec<_>>());
            }
        }
        Self::from_edge_list(g.n * m, g.k, edges)
    }

    /// Disjoint union; the vertices of `h` are shifted by `g.n()`.
    pub fn disjoint_union(g: &Hypergraph, h: &Hypergraph) -> Result<Self> {
        if g.k != h.k {
            return Err(Error::UniformityMismatch(g.k, h.k));
        }
        let shifted = h
            .edges
            .iter()
            .map(|e| e.iter().map(|v| v + g.n).collect::<Vec<_>>());
        Self::from_edge_list(g.n + h.n, g.k, g.edges.iter().cloned().chain(shifted))
    }

    /// The ultracube `Q_k^d`, built directly from coordinate tuples in
    /// `[k]^d`. Tuple `(i_1, .., i_d)` maps to `1 + sum (i_j - 1) k^(d-j)`,
    /// which matches the vertex numbering of iterated [`Self::cartesian_product`].
    pub fn ultracube(k: usize, d: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("ultracube dimension must be >= 1".into()));
        }
        let n = k
            .checked_pow(d as u32)
            .ok_or_else(|| Error::TooLarge(format!("{k}^{d} vertices")))?;
        let mut edges = Vec::new();
        // each edge varies one coordinate and fixes all the others
        for axis in 0..d {
            let stride = k.pow((d - 1 - axis) as u32);
            for base in 0..n {
                if (base / stride) % k != 0 {
                    continue;
                }
                edges.push((0..k).map(|i| base + i * stride + 1).collect::<Vec<_>>());
            }
        }
        Self::from_edge_list(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.binary_search(&sorted).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Edges containing `v`, as indices into [`Self::edges`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v - 1].len()
    }

    /// The link of `v`: every edge through `v` with `v` removed.
    pub fn link(&self, v: usize) -> Result<Vec<Vec<usize>>> {
        self.check_vertex(v)?;
        Ok(self.link_unchecked(v))
    }

    pub(crate) fn link_unchecked(&self, v: usize) -> Vec<Vec<usize>> {
        self.incidence[v - 1]
            .iter()
            .map(|&idx| self.edges[idx].iter().copied().filter(|&u| u != v).collect())
            .collect()
    }

    pub fn degrees(&self) -> DegreeStats {
        let min = (1..=self.n).map(|v| self.degree(v)).min().unwrap_or(0);
        let max = (1..=self.n).map(|v| self.degree(v)).max().unwrap_or(0);
        let average = BigRational::new(
            BigInt::from(self.k * self.edges.len()),
            BigInt::from(self.n),
        );
        DegreeStats { min, average, max }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex. Isolated vertices are singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &idx in &self.incidence[v - 1] {
                    for &u in &self.edges[idx] {
                        if !seen[u - 1] {
                            seen[u - 1] = true;
                            comp.push(u);
                            queue.push_back(u);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced on `vertices` (1-based, any order), relabelled to
    /// `1..=vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut position = vec![0usize; self.n + 1];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            position[v] = i + 1;
        }
        let edges = self.edges.iter().filter_map(|e| {
            e.iter()
                .map(|&v| (position[v] != 0).then_some(position[v]))
                .collect::<Option<Vec<_>>>()
        });
        Self::from_edge_list(vertices.len().max(1), self.k, edges)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check.iter().enumerate().any(|(i, &v)| v != i + 1) {
            return Err(Error::InvalidParameter("not a permutation of 1..=n".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v - 1]).collect::<Vec<_>>());
        Self::from_edge_list(self.n, self.k, edges)
    }

    /// Lexicographically smallest edge list over all relabellings. Brute
    /// force, so limited to `n <= 9`.
    pub fn canonical_form(&self) -> Result<Self> {
        if self.n > 9 {
            return Err(Error::TooLarge(format!(
                "canonical form over {}! permutations",
                self.n
            )));
        }
        let mut perm: Vec<usize> = (1..=self.n).collect();
        let mut best = self.clone();
        while next_permutation(&mut perm) {
            let candidate = self.relabel(&perm)?;
            if candidate.edges < best.edges {
                best = candidate;
            }
        }
        Ok(best)
    }

    /// The polynomial system whose resultant is the characteristic
    /// polynomial: `F_i = lambda x_i^(k-1) - sum_{e in link(i)} x^e`.
    pub fn eigen_system(&self) -> EigenSystem {
        let equations = (1..=self.n)
            .map(|v| EigenEquation {
                vertex: v,
                link: self.link_unchecked(v),
            })
            .collect();
        EigenSystem {
            n: self.n,
            k: self.k,
            equations,
        }
    }

    /// Edge-list text: header `n k`, then one edge per line.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut values = Vec::new();
            for (column, token) in tokens_with_columns(raw) {
                let value: usize = token.parse().map_err(|_| Error::Parse {
                    line,
                    column,
                    message: format!("expected a non-negative integer, found `{token}`"),
                })?;
                values.push((column, value));
            }
            match header {
                None => {
                    if values.len() != 2 {
                        return Err(Error::Parse {
                            line,
                            column: 1,
                            message: "header must be `n k`".into(),
                        });
                    }
                    header = Some((values[0].1, values[1].1));
                }
                Some((n, k)) => {
                    if values.len() != k {
                        return Err(Error::Parse {
                            line,
                            column: 1,
                            message: format!("expected {k} vertices, found {}", values.len()),
                        });
                    }
                    for &(column, v) in &values {
                        if v == 0 || v > n {
                            return Err(Error::Parse {
                                line,
                                column,
                                message: format!("vertex {v} out of range 1..={n}"),
                            });
                        }
                    }
                    let edge: Vec<usize> = values.iter().map(|&(_, v)| v).collect();
                    let mut sorted = edge.clone();
                    sorted.sort_unstable();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::Parse {
                            line,
                            column: 1,
                            message: format!("edge {edge:?} repeats a vertex"),
                        });
                    }
                    edges.push(edge);
                }
            }
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing `n k` header".into(),
        })?;
        Self::from_edge_list(n, k, edges)
    }
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn k_subsets(from: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    let need = k - current.len();
    for v in from..=n + 1 - need {
        current.push(v);
        k_subsets(v + 1, n, k, current, out);
        current.pop();
    }
}

/// Consecutive 1-based vertex ranges for the parts of a cylinder.
pub fn cylinder_classes(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 1;
    parts
        .iter()
        .map(|&size| {
            let class: Vec<usize> = (next..next + size).collect();
            next += size;
            class
        })
        .collect()
}

fn transversals(classes: &[Vec<usize>], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let depth = current.len();
    if depth == classes.len() {
        out.push(current.clone());
        return;
    }
    for &v in &classes[depth] {
        current.push(v);
        transversals(classes, current, out);
        current.pop();
    }
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// One equation `lambda x_v^(k-1) - sum_{e in link} x^e` of the eigen-system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenEquation {
    pub vertex: usize,
    pub link: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem {
    pub n: usize,
    pub k: usize,
    pub equations: Vec<EigenEquation>,
}

impl EigenEquation {
    /// The monomial carrying the `lambda` coefficient.
    pub fn lambda_monomial(&self, n: usize, k: usize) -> Monomial {
        let mut exps = vec![0u32; n];
        exps[self.vertex - 1] = (k - 1) as u32;
        Monomial::new(exps)
    }

    /// The monomials `x^e` for `e` in the link, each with coefficient `-1`.
    pub fn link_monomials(&self, n: usize) -> Vec<Monomial> {
        self.link
            .iter()
            .map(|e| {
                let mut exps = vec![0u32; n];
                for &u in e {
                    exps[u - 1] += 1;
                }
                Monomial::new(exps)
            })
            .collect()
    }
}

impl EigenSystem {
    /// Evaluates every `F_i` at `(lambda, x)`.
    pub fn evaluate(
        &self,
        lambda: num_complex::Complex64,
        x: &[num_complex::Complex64],
    ) -> Vec<num_complex::Complex64> {
        self.equations
            .iter()
            .map(|eq| {
                let link_sum: num_complex::Complex64 = eq
                    .link
                    .iter()
                    .map(|e| e.iter().map(|&u| x[u - 1]).product::<num_complex::Complex64>())
                    .sum();
                lambda * x[eq.vertex - 1].powu((self.k - 1) as u32) - link_sum
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_rebuilds_incidence() {
        let h = Hypergraph::tetra_minus_face();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"n":4,"k":3,"edges":[[1,2,3],[1,2,4],[1,3,4]]}"#);
        let back: Hypergraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.degree(1), 3);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":2,"k":3,"edges":[[1,2,3]]}"#).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        use rand::SeedableRng;
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = Hypergraph::random(6, 3, 0.4, &mut a).unwrap();
        assert_eq!(g, Hypergraph::random(6, 3, 0.4, &mut b).unwrap());
        assert!(Hypergraph::random(6, 3, 1.5, &mut a).is_err());
        assert_eq!(Hypergraph::random(5, 3, 1.0, &mut a).unwrap().edge_count(), 10);
    }

    #[test]
    fn canonicalizes_edges() {
        let h = Hypergraph::from_edge_list(3, 3, [[1, 2, 3], [3, 2, 1]]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h, Hypergraph::single_edge(3).unwrap());
        let t = Hypergraph::from_edge_list(4, 3, [[1, 3, 4], [2, 1, 4], [1, 2, 3]]).unwrap();
        assert_eq!(t.edges(), &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4]]);
        assert_eq!(t, Hypergraph::tetra_minus_face());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Hypergraph::from_edge_list(3, 3, [[1, 2, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert!(matches!(
            Hypergraph::from_edge_list(3, 3, [[1, 2, 2]]),
            Err(Error::RepeatedVertex(_))
        ));
        assert_eq!(
            Hypergraph::from_edge_list(3, 1, [[1]]),
            Err(Error::UniformityTooSmall(1))
        );
        assert!(matches!(
            Hypergraph::from_edge_list(3, 3, [vec![1, 2]]),
            Err(Error::EdgeSize { .. })
        ));
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(Hypergraph::complete(4, 3).unwrap().edge_count(), 4);
        assert_eq!(Hypergraph::complete(5, 3).unwrap().edge_count(), 10);
        let k3 = Hypergraph::complete(3, 2).unwrap();
        assert_eq!(k3.edges(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(
            Hypergraph::complete(2, 3),
            Err(Error::TooFewVertices { n: 2, k: 3 })
        );
    }

    #[test]
    fn cylinders() {
        assert_eq!(
            Hypergraph::complete_cylinder(&[1, 1, 1]).unwrap(),
            Hypergraph::single_edge(3).unwrap()
        );
        let k23 = Hypergraph::complete_cylinder(&[2, 3]).unwrap();
        assert_eq!((k23.n(), k23.edge_count()), (5, 6));
        let c222 = Hypergraph::complete_cylinder(&[2, 2, 2]).unwrap();
        assert_eq!((c222.n(), c222.edge_count()), (6, 8));
        assert_eq!(Hypergraph::complete_cylinder(&[2, 0, 1]), Err(Error::EmptyPart));
    }

    #[test]
    fn products_and_unions() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        let q = Hypergraph::cartesian_product(&e3, &e3).unwrap();
        assert_eq!((q.n(), q.edge_count()), (9, 6));
        assert_eq!(q, Hypergraph::ultracube(3, 2).unwrap());

        let k2 = Hypergraph::single_edge(2).unwrap();
        let c4 = Hypergraph::cartesian_product(&k2, &k2).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!((1..=4).all(|v| c4.degree(v) == 2));
        assert!(c4.is_connected());

        let empty = Hypergraph::empty(2, 3).unwrap();
        let copies = Hypergraph::cartesian_product(&empty, &e3).unwrap();
        assert_eq!(copies.components().len(), 2);
        assert_eq!(copies.edge_count(), 2);

        let two = Hypergraph::disjoint_union(&e3, &e3).unwrap();
        assert_eq!((two.n(), two.edge_count()), (6, 2));
        assert_eq!(two.edges()[1], vec![4, 5, 6]);
        let padded = Hypergraph::disjoint_union(&e3, &Hypergraph::empty(2, 3).unwrap()).unwrap();
        assert_eq!((padded.n(), padded.edge_count()), (5, 1));
        assert_eq!(
            Hypergraph::disjoint_union(&e3, &k2),
            Err(Error::UniformityMismatch(3, 2))
        );
    }

    #[test]
    fn ultracubes() {
        assert_eq!(
            Hypergraph::ultracube(3, 1).unwrap(),
            Hypergraph::single_edge(3).unwrap()
        );
        let cube = Hypergraph::ultracube(2, 3).unwrap();
        assert_eq!((cube.n(), cube.edge_count()), (8, 12));
        for k in 2..=3 {
            let e = Hypergraph::single_edge(k).unwrap();
            let mut iterated = e.clone();
            for d in 2..=3 {
                iterated = Hypergraph::cartesian_product(&iterated, &e).unwrap();
                let direct = Hypergraph::ultracube(k, d).unwrap();
                assert_eq!(direct, iterated);
                assert_eq!(direct.edge_count(), d * k.pow(d as u32 - 1));
            }
        }
    }

    #[test]
    fn links_and_degrees() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        assert_eq!(e3.link(1).unwrap(), vec![vec![2, 3]]);
        let simplex = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(
            simplex.link(1).unwrap(),
            vec![vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        let padded = Hypergraph::disjoint_union(&e3, &Hypergraph::empty(1, 3).unwrap()).unwrap();
        assert!(padded.link(4).unwrap().is_empty());
        assert!(padded.link(5).is_err());

        let stats = simplex.degrees();
        assert_eq!((stats.min, stats.max), (3, 3));
        assert_eq!(stats.average, BigRational::from_integer(3.into()));

        let t = Hypergraph::tetra_minus_face();
        let stats = t.degrees();
        assert_eq!((stats.min, stats.max), (2, 3));
        assert_eq!(stats.average, BigRational::new(9.into(), 4.into()));

        let stats = Hypergraph::empty(4, 3).unwrap().degrees();
        assert_eq!((stats.min, stats.max), (0, 0));
        assert_eq!(stats.average, BigRational::from_integer(0.into()));
    }

    #[test]
    fn eigen_system_shapes() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        let sys = e3.eigen_system();
        assert_eq!(sys.equations[0].link, vec![vec![2, 3]]);
        assert_eq!(sys.equations[2].link, vec![vec![1, 2]]);
        let lm = sys.equations[0].lambda_monomial(3, 3);
        assert_eq!(lm.exponents(), &[2, 0, 0]);

        let empty = Hypergraph::empty(3, 3).unwrap().eigen_system();
        assert!(empty.equations.iter().all(|eq| eq.link.is_empty()));

        let k2 = Hypergraph::single_edge(2).unwrap().eigen_system();
        assert_eq!(k2.equations[0].link, vec![vec![2]]);
        assert_eq!(k2.equations[1].link, vec![vec![1]]);
    }

    #[test]
    fn edge_list_text() {
        let t = Hypergraph::tetra_minus_face();
        let text = t.to_edge_list_string();
        assert_eq!(text, "4 3\n1 2 3\n1 2 4\n1 3 4\n");
        assert_eq!(Hypergraph::parse_edge_list(&text).unwrap(), t);

        let commented = "# tetra\n4 3\n\n# edges\n3 2 1\n 1 4 2\n1 3 4\n";
        assert_eq!(Hypergraph::parse_edge_list(commented).unwrap(), t);

        match Hypergraph::parse_edge_list("4 3\n1 2 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match Hypergraph::parse_edge_list("4 3\n1 2 3\n1 2 9\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Hypergraph::parse_edge_list("# nothing\n").is_err());
    }

    #[test]
    fn canonical_form_identifies_relabellings() {
        let t = Hypergraph::tetra_minus_face();
        let moved = t.relabel(&[4, 3, 2, 1]).unwrap();
        assert_ne!(t, moved);
        assert_eq!(t.canonical_form().unwrap(), moved.canonical_form().unwrap());
    }

    #[test]
    fn components_and_induced() {
        let e3 = Hypergraph::single_edge(3).unwrap();
        let h = Hypergraph::disjoint_union(&e3, &Hypergraph::empty(1, 3).unwrap()).unwrap();
        let h = Hypergraph::disjoint_union(&h, &e3).unwrap();
        assert_eq!(h.components(), vec![vec![1, 2, 3], vec![4], vec![5, 6, 7]]);
        assert_eq!(h.induced(&[5, 6, 7]).unwrap(), e3);
    }
}
