"""Smoke test for the hyperspec_py extension module.

Build the module and put it on the path first, e.g.

    cargo build --release -p hyperspec-py --features extension-module
    cp target/release/libhyperspec_py.so crates/py/python/hyperspec_py.so
    python3 crates/py/python/smoke_test.py
"""

import cmath
import math

import hyperspec_py as hs


def main():
    edge = hs.Hypergraph.family("single-edge", k=3)
    phi = hs.charpoly(edge)
    assert str(phi) == "L^12 - 3*L^9 + 3*L^6 - L^3", phi
    assert phi.coeffs == [0, 0, 0, -1, 0, 0, 3, 0, 0, -3, 0, 0, 1]
    assert phi == hs.Polynomial("L^12 - 3*L^9 + 3*L^6 - L^3")

    tetra = hs.Hypergraph.family("tetra-minus-face")
    assert hs.charpoly(tetra).coeffs[:12] == [0] * 11 + [-1500]
    assert hs.charpoly(tetra, method="modular") == hs.charpoly(tetra)

    simplex = hs.Hypergraph(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    assert hs.coefficients(simplex, 4) == [1, 0, 0, -24, -42]
    assert hs.coefficients(simplex, 4, route="walks") == hs.coefficients(simplex, 4, route="resultant")
    assert hs.generalized_trace(simplex, 4) == 168

    report = hs.lambda_max(simplex)
    assert report["converged"] and abs(report["lambda"] - 3.0) < 1e-8
    bounds = hs.degree_bounds(hs.Hypergraph.family("cylinder:parts=2,3"))
    assert bounds["pass"] and abs(bounds["lambda_max"] - math.sqrt(6)) < 1e-8

    coloring = hs.greedy_color(simplex)
    assert coloring["proper"] and coloring["count"] <= math.floor(report["lambda"]) + 1

    omega = cmath.exp(2j * math.pi / 3)
    assert hs.verify_eigenpair(edge, omega, [1, 1, omega])
    assert not hs.verify_eigenpair(edge, 2, [1, 1, 1])

    cube = hs.Hypergraph.family("ultracube:k=3,d=2")
    ((value, vector, residual),) = hs.family_spectrum("ultracube:k=3,d=2")
    assert abs(value - 2 ** (1 / 3)) < 1e-12 and residual < 1e-10
    assert hs.eigenpair_residual(cube, value, vector) < 1e-10
    for value, vector, residual in hs.family_spectrum("cylinder:parts=2,2,2"):
        assert residual < 1e-10

    g = hs.Hypergraph.random(6, 3, 0.5, seed=1)
    assert hs.Hypergraph.parse(g.edge_list()) == g
    union = edge.disjoint_union(edge)
    assert hs.charpoly(union).degree == 16 * phi.degree

    claims = hs.repro(only="disjoint")
    assert len(claims) == 1 and claims[0]["matched"], claims

    try:
        hs.Hypergraph.family("petersen")
    except ValueError as e:
        assert "petersen" in str(e)
    else:
        raise AssertionError("unknown family accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
