use hyperspec::poly::numeric_roots;
use hyperspec::spectral::{
    cartesian_eigenpair, complete3_spectrum, cylinder_spectrum, greedy_color, lambda_max,
    subgraph_monotonicity_check, verify_eigenpair, Eigenpair, LambdaMaxOptions,
};
use hyperspec::{charpoly, Hypergraph, UniPoly};
use num_complex::Complex64;
use proptest::prelude::*;

fn triples(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| vec![a, b, c])))
        .collect()
}

fn three_graph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (3usize..=max_n).prop_flat_map(|n| {
        let all = triples(n);
        proptest::collection::vec(any::<bool>(), all.len()).prop_map(move |mask| {
            let edges: Vec<Vec<usize>> = all
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(e, _)| e.clone())
                .collect();
            Hypergraph::from_edge_list(n, 3, edges).unwrap()
        })
    })
}

fn largest_real_root(phi: &UniPoly) -> f64 {
    let roots = numeric_roots(phi, 1e-8).unwrap();
    roots
        .values()
        .iter()
        .filter(|z| z.im.abs() < 1e-6)
        .map(|z| z.re.abs())
        .fold(0.0, f64::max)
}

fn relative_value(phi: &UniPoly, z: Complex64) -> f64 {
    phi.relative_residual(z)
}

#[test]
fn complete3_values_are_roots() {
    let phi = charpoly(&Hypergraph::complete(4, 3).unwrap()).unwrap();
    let spec = complete3_spectrum(4).unwrap();
    for v in &spec.values {
        assert!(relative_value(&phi, v.value) < 1e-6, "{:?}", v.value);
        assert!(v.residual < 1e-9);
    }
    let phi5 = charpoly(&Hypergraph::complete(5, 3).unwrap()).unwrap();
    for v in &complete3_spectrum(5).unwrap().values {
        assert!(relative_value(&phi5, v.value) < 1e-6, "{:?}", v.value);
    }
}

#[test]
fn cylinder_values_are_roots() {
    for parts in [vec![1, 1, 2], vec![1, 2, 2], vec![2, 3], vec![1, 4]] {
        let h = Hypergraph::complete_cylinder(&parts).unwrap();
        let phi = charpoly(&h).unwrap();
        let spec = cylinder_spectrum(&parts).unwrap();
        for v in &spec.values {
            assert!(relative_value(&phi, v.value) < 1e-6, "{parts:?} {:?}", v.value);
            assert!(v.residual < 1e-10);
        }
    }
}

#[test]
fn lambda_max_is_the_largest_real_root() {
    let mut cases = vec![
        Hypergraph::tetra_minus_face(),
        Hypergraph::complete(4, 3).unwrap(),
        Hypergraph::complete(5, 3).unwrap(),
        Hypergraph::single_edge(3).unwrap(),
    ];
    cases.push(Hypergraph::from_edge_list(5, 3, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap());
    cases.push(Hypergraph::from_edge_list(5, 3, vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![1, 4, 5]]).unwrap());
    for h in cases {
        let phi = charpoly(&h).unwrap();
        let lm = lambda_max(&h, &LambdaMaxOptions::default()).unwrap();
        assert!((lm.lambda - largest_real_root(&phi)).abs() < 1e-6, "{h:?}");
    }
}

#[test]
fn regular_graphs_hit_their_degree() {
    let q = Hypergraph::ultracube(3, 2).unwrap();
    let lm = lambda_max(&q, &LambdaMaxOptions::default()).unwrap();
    assert!((lm.lambda - 2.0).abs() < 1e-8);
}

fn spec_e3() -> Vec<Eigenpair> {
    cylinder_spectrum(&[1, 1, 1])
        .unwrap()
        .values
        .into_iter()
        .map(|v| Eigenpair {
            lambda: v.value,
            x: v.vector,
        })
        .collect()
}

#[test]
fn cartesian_pairs_verify() {
    let e3 = Hypergraph::single_edge(3).unwrap();
    let q = Hypergraph::cartesian_product(&e3, &e3).unwrap();
    let pairs = spec_e3();
    let mut sums: Vec<Complex64> = Vec::new();
    for a in &pairs {
        for b in &pairs {
            let w = cartesian_eigenpair(&e3, a, &e3, b, 1e-10).unwrap();
            assert!(verify_eigenpair(&q, w.lambda, &w.x, 1e-10).is_ok());
            if !sums.iter().any(|s| (s - w.lambda).norm() < 1e-9) {
                sums.push(w.lambda);
            }
        }
    }
    assert_eq!(sums.len(), 10);
    let bad = Eigenpair {
        lambda: Complex64::new(5.0, 0.0),
        x: vec![Complex64::new(1.0, 0.0); 3],
    };
    assert!(cartesian_eigenpair(&e3, &bad, &e3, &pairs[0], 1e-10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coloring_respects_the_spectral_bound(h in three_graph(8)) {
        let c = greedy_color(&h);
        prop_assert!(c.is_proper(&h));
        prop_assert!(c.count <= c.degeneracy + 1);
        let lm = lambda_max(&h, &LambdaMaxOptions::default()).unwrap();
        prop_assert!(c.count as f64 <= (lm.lambda + 1e-8).floor() + 1.0);
    }

    #[test]
    fn enclosure_contains_lambda(h in three_graph(7)) {
        let lm = lambda_max(&h, &LambdaMaxOptions::default()).unwrap();
        prop_assert!(lm.lower <= lm.lambda && lm.lambda <= lm.upper);
        let stats = h.degrees();
        let avg: f64 = num_traits::ToPrimitive::to_f64(&stats.average).unwrap();
        prop_assert!(avg - 1e-8 <= lm.lambda && lm.lambda <= stats.max as f64 + 1e-8);
    }

    #[test]
    fn subgraphs_have_smaller_lambda(h in three_graph(7), drop in proptest::collection::vec(any::<bool>(), 35)) {
        let edges: Vec<Vec<usize>> = h.edges().iter().zip(&drop).filter(|(_, &d)| !d).map(|(e, _)| e.clone()).collect();
        let g = Hypergraph::from_edge_list(h.n(), 3, edges).unwrap();
        let id: Vec<usize> = (1..=h.n()).collect();
        let r = subgraph_monotonicity_check(&g, &h, &id, &LambdaMaxOptions::default()).unwrap();
        prop_assert!(r.pass);
    }
}
