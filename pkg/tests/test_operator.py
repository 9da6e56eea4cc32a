"""Operator assembly and the derivative/adjoint factorisation of L."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import treenodal as tn
from treenodal.errors import DimensionMismatch
from treenodal.operator import (
    EdgeFunction,
    adjoint,
    derivative,
    edge_inner,
    matrix_text,
    vertex_inner,
)

FINITE = dict(allow_nan=False, allow_infinity=False, min_value=-100, max_value=100)


def test_p2_laplacian_matrix(p2):
    a = tn.assemble(p2).matrix
    assert np.array_equal(a, [[1.0, -1.0], [-1.0, 1.0]])


def test_p3_laplacian_matrix(p3):
    a = tn.assemble(p3).matrix
    assert np.array_equal(a, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])


def test_star_diagonal_counts_incident_weights(star5):
    a = tn.assemble(star5).matrix
    assert np.array_equal(np.diag(a), [4.0, 1.0, 1.0, 1.0, 1.0])
    assert a[0, 3] == -1.0 and a[1, 2] == 0.0


def test_potential_shifts_the_diagonal_only(p3):
    r = np.array([0.5, -1.0, 2.0])
    plain = tn.assemble(p3).matrix
    shifted = tn.assemble(p3, r).matrix
    assert np.array_equal(shifted - plain, np.diag(r))


def test_weighted_entries_are_negative_weights():
    t = tn.validate_tree(3, [(0, 1, 2.0), (1, 2, 0.25)], root=0)
    a = tn.assemble(t).matrix
    assert a[0, 1] == -2.0
    assert a[1, 2] == -0.25
    assert a[1, 1] == 2.25


def test_matrix_is_exactly_symmetric():
    t = tn.generate("random_pruefer", 12, weight_law="uniform:0.5:2", seed=4)
    a = tn.assemble(t).matrix
    assert np.array_equal(a, a.T)


def test_apply_matches_matrix_product():
    t = tn.generate("random_pruefer", 9, weight_law="uniform:0.5:2", seed=8)
    r = tn.random_potential(9, law="uniform:-1:1", seed=9)
    op = tn.assemble(t, r)
    rng = np.random.default_rng(1)
    for _ in range(5):
        u = rng.standard_normal(9)
        assert np.allclose(op.apply(u), op.matrix @ u, atol=1e-13)


def test_laplacian_kills_constants_exactly():
    # pairwise-difference form: no rounding residue on constant inputs
    t = tn.generate("random_pruefer", 15, weight_law="uniform:0.5:2", seed=2)
    out = tn.assemble(t).apply(np.full(15, 7.25))
    assert np.array_equal(out, np.zeros(15))


def test_apply_rejects_wrong_length(p3):
    with pytest.raises(DimensionMismatch):
        tn.assemble(p3).apply([1.0, 2.0])


class TestDerivative:
    def test_edge_function_is_antisymmetric(self, p3):
        g = EdgeFunction(p3, [2.0, -5.0])
        assert g.value(0, 1) == 2.0
        assert g.value(1, 0) == -2.0
        assert g.value(2, 1) == 5.0

    def test_edge_function_length_checked(self, p3):
        with pytest.raises(DimensionMismatch):
            EdgeFunction(p3, [1.0, 2.0, 3.0])

    def test_derivative_of_constant_vanishes(self, star5):
        g = derivative(star5, np.ones(5))
        assert np.array_equal(g.per_edge, np.zeros(4))

    def test_laplacian_factors_through_adjoint(self):
        t = tn.generate("caterpillar", 10, weight_law="uniform:0.5:2", seed=6)
        op = tn.assemble(t)
        rng = np.random.default_rng(3)
        u = rng.standard_normal(10)
        assert np.allclose(adjoint(t, derivative(t, u)), op.apply(u), atol=1e-13)

    @settings(max_examples=30, deadline=None)
    @given(
        u=arrays(np.float64, 6, elements=st.floats(**FINITE)),
        g=arrays(np.float64, 5, elements=st.floats(**FINITE)),
    )
    def test_adjointness(self, u, g):
        # <Du, g> on edges equals <u, D*g> on vertices
        t = tn.generate("random_pruefer", 6, weight_law="uniform:0.5:2", seed=13)
        gf = EdgeFunction(t, g)
        lhs = edge_inner(derivative(t, u), gf)
        rhs = vertex_inner(u, adjoint(t, gf))
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-8)

    def test_adjoint_rejects_foreign_tree(self, p3, star5):
        with pytest.raises(DimensionMismatch):
            adjoint(star5, derivative(p3, [1.0, 2.0, 3.0]))


def test_matrix_text_round_trips(p3):
    op = tn.assemble(p3, [0.25, 0.0, -0.5])
    rows = [[float(v) for v in line.split()] for line in matrix_text(op).splitlines()]
    assert np.array_equal(np.array(rows), op.matrix)


def test_frobenius_norm(p2):
    assert tn.assemble(p2).frobenius_norm == pytest.approx(2.0)
