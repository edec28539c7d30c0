use hyperspec::macaulay::{
    charpoly_disjoint, charpoly_with, det_polynomial, expected_degree, leading_coefficients,
    CharPolyOptions, DetMethod, LinearMatrix,
};
use hyperspec::{charpoly, Hypergraph, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn p(s: &str) -> UniPoly {
    s.parse().unwrap()
}

fn with_method(method: DetMethod) -> CharPolyOptions {
    CharPolyOptions {
        method,
        ..CharPolyOptions::default()
    }
}

/// Faddeev-LeVerrier over the rationals: an oracle independent of the
/// determinant engine.
fn faddeev_leverrier(a: &[Vec<i64>]) -> UniPoly {
    let n = a.len();
    let a: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    UniPoly::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

fn adjacency(h: &Hypergraph) -> Vec<Vec<i64>> {
    let n = h.n();
    let mut a = vec![vec![0i64; n]; n];
    for e in h.edges() {
        a[e[0] - 1][e[1] - 1] = 1;
        a[e[1] - 1][e[0] - 1] = 1;
    }
    a
}

#[test]
fn single_edge_closed_forms() {
    assert_eq!(charpoly(&Hypergraph::single_edge(2).unwrap()).unwrap(), p("L^2 - 1"));
    let e3 = charpoly(&Hypergraph::single_edge(3).unwrap()).unwrap();
    assert_eq!(e3, p("L^12 - 3*L^9 + 3*L^6 - L^3"));
    let lam = UniPoly::lambda();
    assert_eq!(e3, &lam.pow(3) * &UniPoly::lambda_pow_minus(3, 1).pow(3));
}

#[test]
fn tetrahedron_minus_face() {
    let h = Hypergraph::tetra_minus_face();
    let expected = &(&UniPoly::lambda().pow(11) * &UniPoly::lambda_pow_minus(3, 12))
        * &p("L^6 - 2*L^3 + 5").pow(3);
    for method in [DetMethod::Interpolation, DetMethod::Modular] {
        let res = charpoly_with(&h, &with_method(method)).unwrap();
        assert_eq!(res.phi, expected, "{method:?}");
        assert_eq!(res.matrix_size, 56);
    }
}

#[test]
fn triangle_graph() {
    let k3 = Hypergraph::complete(3, 2).unwrap();
    assert_eq!(charpoly(&k3).unwrap(), p("L^3 - 3*L - 2"));
}

#[test]
fn ordinary_graphs_match_matrix_charpoly() {
    // every graph on up to 5 vertices, plus a sample on 6
    for n in 2..=6usize {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let total = 1usize << pairs.len();
        let step = if n == 6 { 997 } else { 1 };
        let mut mask = 0;
        while mask < total {
            let edges: Vec<Vec<usize>> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &(i, j))| vec![i, j])
                .collect();
            let g = Hypergraph::from_edge_list(n, 2, edges).unwrap();
            assert_eq!(charpoly(&g).unwrap(), faddeev_leverrier(&adjacency(&g)), "{g:?}");
            mask += step;
        }
    }
}

#[test]
fn routes_agree_on_small_three_graphs() {
    let all: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]];
    for mask in 0u32..16 {
        let edges: Vec<Vec<usize>> = (0..4)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| all[b].clone())
            .collect();
        let h = Hypergraph::from_edge_list(4, 3, edges).unwrap();
        let a = charpoly_with(&h, &with_method(DetMethod::Interpolation)).unwrap();
        let b = charpoly_with(&h, &with_method(DetMethod::Modular)).unwrap();
        assert_eq!(a.phi, b.phi);
        assert_eq!(a.det_m_prime, b.det_m_prime);
        assert_eq!(a.phi.degree(), expected_degree(4, 3));
        // det(M) = phi * det(M') against a direct interpolation of det(M)
        let mac = hyperspec::macaulay::build_macaulay(&h.eigen_system()).unwrap();
        let det_m = det_polynomial(&mac.matrix, &CharPolyOptions::default()).unwrap();
        assert_eq!(det_m, &a.phi * a.det_m_prime.as_ref().unwrap());
    }
}

#[test]
fn edgeless_is_a_pure_power() {
    let h = Hypergraph::empty(3, 3).unwrap();
    assert_eq!(charpoly(&h).unwrap(), UniPoly::lambda().pow(12));
}

#[test]
fn disjoint_union_factorises() {
    let g = Hypergraph::complete(3, 2).unwrap();
    let h = Hypergraph::single_edge(2).unwrap();
    let u = Hypergraph::disjoint_union(&g, &h).unwrap();
    assert_eq!(charpoly(&u).unwrap(), charpoly_disjoint(&g, &h).unwrap());
    let e3 = Hypergraph::single_edge(3).unwrap();
    let v = Hypergraph::empty(1, 3).unwrap();
    let w = Hypergraph::disjoint_union(&e3, &v).unwrap();
    assert_eq!(charpoly(&w).unwrap(), charpoly_disjoint(&e3, &v).unwrap());
}

#[test]
fn leading_coefficients_match_full_polynomial() {
    let h = Hypergraph::tetra_minus_face();
    let full = charpoly(&h).unwrap();
    let head = leading_coefficients(&h, 6).unwrap();
    for (d, c) in head.iter().enumerate() {
        assert_eq!(c, &full.codegree_coeff(d), "codegree {d}");
    }
}

#[test]
fn too_few_evaluation_points_rejected() {
    let opts = CharPolyOptions {
        method: DetMethod::Interpolation,
        eval_points: Some(2),
        ..CharPolyOptions::default()
    };
    assert!(charpoly_with(&Hypergraph::tetra_minus_face(), &opts).is_err());
}

#[test]
fn generic_linear_determinant() {
    // det [[L, 2], [3, L - 1]] = L^2 - L - 6
    let m = LinearMatrix::new(
        2,
        vec![
            vec![(0, hyperspec::macaulay::LinearEntry { constant: 0, lambda: 1 }), (1, hyperspec::macaulay::LinearEntry { constant: 2, lambda: 0 })],
            vec![(0, hyperspec::macaulay::LinearEntry { constant: 3, lambda: 0 }), (1, hyperspec::macaulay::LinearEntry { constant: -1, lambda: 1 })],
        ],
    )
    .unwrap();
    assert_eq!(det_polynomial(&m, &CharPolyOptions::default()).unwrap(), p("L^2 - L - 6"));
}

fn small_three_graph() -> impl Strategy<Value = Hypergraph> {
    (3usize..=4).prop_flat_map(|n| {
        let triples: Vec<Vec<usize>> = (1..=n)
            .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| vec![a, b, c])))
            .collect();
        let len = triples.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<Vec<usize>> = triples
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(e, _)| e.clone())
                .collect();
            Hypergraph::from_edge_list(n, 3, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabelling_preserves_charpoly(h in small_three_graph(), seed in 0usize..24) {
        let n = h.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        for _ in 0..seed % 7 {
            perm.rotate_left(1);
            perm.swap(0, n - 1 - seed % (n - 1));
        }
        let g = h.relabel(&perm).unwrap();
        prop_assert_eq!(charpoly(&h).unwrap(), charpoly(&g).unwrap());
    }

    #[test]
    fn charpoly_is_monic_of_expected_degree(h in small_three_graph()) {
        let phi = charpoly(&h).unwrap();
        prop_assert!(phi.is_monic());
        prop_assert_eq!(phi.degree(), expected_degree(h.n(), 3));
    }
}
