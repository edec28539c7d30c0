use serde::Serialize;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Serialize)]
pub struct ColoringReport {
    /// Color of vertex `v` at index `v - 1`, starting from 1.
    pub colors: Vec<usize>,
    pub count: usize,
    /// Vertices in the order they were colored.
    pub order: Vec<usize>,
    /// Largest minimum degree met while peeling vertices off.
    pub degeneracy: usize,
}

impl ColoringReport {
    /// No edge has all of its vertices the same color.
    pub fn is_proper(&self, h: &Hypergraph) -> bool {
        h.edges()
            .iter()
            .all(|e| e.iter().any(|&v| self.colors[v - 1] != self.colors[e[0] - 1]))
    }
}

/// Repeatedly removes a vertex of minimum degree in what is left, ties to
/// the smallest label. Returns the removal order and the degeneracy.
pub fn min_degree_ordering(h: &Hypergraph) -> (Vec<usize>, usize) {
    let n = h.n();
    let mut alive_edges = vec![true; h.edge_count()];
    let mut degree: Vec<usize> = (1..=n).map(|v| h.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices left");
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        order.push(v + 1);
        for &e in h.incident_edges(v + 1) {
            if std::mem::replace(&mut alive_edges[e], false) {
                for &u in &h.edges()[e] {
                    degree[u - 1] -= 1;
                }
            }
        }
    }
    (order, degeneracy)
}

/// Greedy weak coloring along the reverse of the minimum-degree
/// elimination order. Uses at most `degeneracy + 1` colors.
pub fn greedy_color(h: &Hypergraph) -> ColoringReport {
    let (removal, degeneracy) = min_degree_ordering(h);
    let order: Vec<usize> = removal.into_iter().rev().collect();
    let mut colors = vec![0usize; h.n()];
    for &v in &order {
        let mut blocked = Vec::new();
        for &e in h.incident_edges(v) {
            let others: Vec<usize> = h.edges()[e]
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| colors[u - 1])
                .collect();
            if others.iter().all(|&c| c != 0 && c == others[0]) {
                blocked.push(others[0]);
            }
        }
        let color = (1..).find(|c| !blocked.contains(c)).expect("unbounded colors");
        colors[v - 1] = color;
    }
    let count = colors.iter().copied().max().unwrap_or(0);
    ColoringReport {
        colors,
        count,
        order,
        degeneracy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let e = greedy_color(&Hypergraph::single_edge(3).unwrap());
        assert_eq!(e.count, 2);
        let empty = greedy_color(&Hypergraph::empty(4, 3).unwrap());
        assert_eq!(empty.count, 1);
        let k43 = Hypergraph::complete(4, 3).unwrap();
        let c = greedy_color(&k43);
        assert!(c.is_proper(&k43));
        assert!(c.count >= 2 && c.count <= c.degeneracy + 1);
        let k2 = Hypergraph::complete(5, 2).unwrap();
        assert_eq!(greedy_color(&k2).count, 5);
    }
}
