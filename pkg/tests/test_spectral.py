"""
Tests for exact inertia, the Jacobi eigensolver and the pendant and Smith criteria.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from graph_inertia.census import labeled_graphs
from graph_inertia.families import BkSpec, build_bk, lex_product
from graph_inertia.graph import (
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty,
    path,
)
from graph_inertia.spectral import (
    Inertia,
    Spectrum,
    congruence_diagonal,
    eigenvalues,
    inertia,
    is_one_positive,
    jacobi_eigenvalues,
    lambda3,
    matrix_inertia,
    pendant_reduce,
)


def random_unimodular(rng, size: int) -> list[list[int]]:
    """Product of a random unit lower and a random unit upper triangular integer matrix."""
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(size)]
             for i in range(size)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(size)]
             for i in range(size)]
    return [
        [sum(lower[i][k] * upper[k][j] for k in range(size)) for j in range(size)]
        for i in range(size)
    ]


def congruent(a: list[list[int]], p: list[list[int]]) -> list[list[int]]:
    """P^T A P over the integers."""
    size = len(a)
    ap = [[sum(a[i][k] * p[k][j] for k in range(size)) for j in range(size)] for i in range(size)]
    return [
        [sum(p[k][i] * ap[k][j] for k in range(size)) for j in range(size)] for i in range(size)
    ]


class TestInertia:
    """Test exact inertia."""

    @pytest.mark.parametrize(
        "graph, expected",
        [
            (complete(5), Inertia(1, 4, 0)),
            (complete_multipartite([2, 3]), Inertia(1, 1, 3)),
            (path(4), Inertia(2, 2, 0)),
            (path(3), Inertia(1, 1, 1)),
            (cycle(4), Inertia(1, 1, 2)),
            (cycle(6), Inertia(3, 3, 0)),
            (empty(3), Inertia(0, 0, 3)),
            (empty(0), Inertia(0, 0, 0)),
        ],
    )
    def test_known_graphs(self, graph, expected):
        """Test inertia of small graphs with known spectra."""
        assert inertia(graph) == expected

    def test_inertia_value(self):
        """Test the Inertia value type."""
        ine = Inertia(2, 3, 1)
        assert ine.order == 6
        assert ine.as_dict() == {"p": 2, "n": 3, "eta": 1}
        assert str(ine) == "(2, 3, 1)"
        with pytest.raises(ValueError):
            Inertia(-1, 0, 0)

    def test_matrix_inertia(self):
        """Test integer and rational symmetric matrices."""
        assert matrix_inertia([[0, 1], [1, 0]]) == Inertia(1, 1, 0)
        assert matrix_inertia([[Fraction(1, 2), 0], [0, Fraction(-3)]]) == Inertia(1, 1, 0)
        assert matrix_inertia([[0, 0], [0, 0]]) == Inertia(0, 0, 2)
        with pytest.raises(ValueError, match="symmetric"):
            matrix_inertia([[0, 1], [2, 0]])
        with pytest.raises(ValueError, match="square"):
            matrix_inertia([[0, 1]])

    def test_congruence_diagonal(self):
        """Test that the diagonal's signs give the inertia."""
        diagonal = congruence_diagonal(cycle(4).adjacency_matrix())
        assert len(diagonal) == 4
        assert sum(1 for d in diagonal if d > 0) == 1
        assert sum(1 for d in diagonal if d < 0) == 1
        assert sum(1 for d in diagonal if d == 0) == 2

    def test_sylvester_invariance(self, rng, random_graph):
        """Test that inertia survives random integer congruences."""
        for _ in range(1000):
            g = random_graph(rng.randint(1, 7))
            a = g.adjacency_matrix()
            b = congruent(a, random_unimodular(rng, g.order))
            assert matrix_inertia(b) == inertia(g)

    def test_agrees_with_numpy(self, random_graph):
        """Test exact signs against a floating-point eigensolver."""
        for n in range(1, 10):
            g = random_graph(n)
            values = np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))
            ine = inertia(g)
            assert ine.p == int(np.sum(values > 1e-8))
            assert ine.n == int(np.sum(values < -1e-8))

    def test_induced_subgraphs_never_gain(self, rng, random_graph):
        """Test p and n of an induced subgraph are at most those of the graph."""
        for _ in range(500):
            g = random_graph(rng.randint(2, 9))
            whole = inertia(g)
            keep = rng.sample(list(g.vertices), rng.randint(1, g.order - 1))
            for sub in (g.induced_subgraph(keep), g.delete_vertex(rng.randrange(g.order))):
                part = inertia(sub)
                assert part.p <= whole.p
                assert part.n <= whole.n


class TestEigenvalues:
    """Test the Jacobi eigensolver."""

    def test_path3(self):
        """Test P_3 has spectrum sqrt 2, 0, -sqrt 2."""
        spectrum = eigenvalues(path(3))
        assert spectrum.values == pytest.approx((math.sqrt(2), 0.0, -math.sqrt(2)), abs=1e-10)
        assert lambda3(path(3)) == pytest.approx(-math.sqrt(2), abs=1e-10)

    def test_single_vertex(self):
        """Test K_1 has spectrum {0}."""
        assert eigenvalues(empty(1)).values == (0.0,)
        assert jacobi_eigenvalues([]).shape == (0,)

    def test_matches_numpy(self, random_graph):
        """Test agreement with numpy on random graphs."""
        for n in range(2, 12):
            g = random_graph(n)
            expected = np.sort(np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float)))
            assert np.allclose(eigenvalues(g).values, expected[::-1], atol=1e-9)

    def test_sign_counts_agree_with_inertia(self, random_graph):
        """Test float signs agree with exact inertia."""
        for n in range(2, 10):
            g = random_graph(n)
            assert eigenvalues(g).sign_counts() == inertia(g)

    def test_spectrum_access(self):
        """Test Spectrum indexing."""
        spectrum = Spectrum((3.0, 1.0, -1.0), 1e-12)
        assert len(spectrum) == 3
        assert spectrum[0] == 3.0
        assert spectrum.lambda_(3) == -1.0

    def test_invalid_tolerance(self):
        """Test that a non-positive tolerance is rejected."""
        with pytest.raises(ValueError):
            eigenvalues(path(3), tol=0)
        with pytest.raises(ValueError):
            lambda3(path(2))

    def test_interlacing(self, rng, random_graph):
        """Test Cauchy interlacing under vertex deletion."""
        for _ in range(500):
            g = random_graph(rng.randint(2, 8))
            v = rng.randrange(g.order)
            big = eigenvalues(g).values
            small = eigenvalues(g.delete_vertex(v)).values
            for i, mu in enumerate(small):
                assert big[i] + 1e-8 >= mu >= big[i + 1] - 1e-8

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_three_part_lambda3_single_ends(self, m):
        """Test B_3(1;1;m) has lambda_3 = -1."""
        assert lambda3(build_bk(BkSpec(3, (1, 1, m)))) == pytest.approx(-1.0, abs=1e-10)

    @pytest.mark.parametrize("parts", [(2, 1, 1), (1, 2, 3), (2, 2, 2), (3, 1, 4), (2, 3, 1)])
    def test_three_part_lambda3_large_ends(self, parts):
        """Test B_3(a;b;c) with ab > 1 has lambda_3 = -1."""
        assert lambda3(build_bk(BkSpec(3, parts))) == pytest.approx(-1.0, abs=1e-10)

    def test_lex_product_center_last(self):
        """Test P_3 with its centre last, blown up by [1, 1, 3]."""
        base = path(3).relabel([0, 2, 1])
        assert lambda3(lex_product(base, [1, 1, 3])) == pytest.approx(-1.0, abs=1e-10)


class TestPendant:
    """Test pendant-vertex reduction."""

    def test_examples(self):
        """Test small examples."""
        reduced, pendant, support = pendant_reduce(path(4))
        assert (pendant, support) == (0, 1)
        assert reduced == complete(2)
        assert pendant_reduce(cycle(4)) is None
        assert pendant_reduce(complete(2))[0] == empty(0)

    def test_pendant_law(self, rng, random_graph):
        """Test p and n each drop by one when a pendant edge is removed."""
        for _ in range(500):
            base = random_graph(rng.randint(1, 7))
            g = base.add_vertex([rng.randrange(base.order)])
            reduced, _, _ = pendant_reduce(g)
            before = inertia(g)
            after = inertia(reduced)
            assert (before.p, before.n, before.eta) == (after.p + 1, after.n + 1, after.eta)


class TestSmith:
    """Test the one-positive-eigenvalue criterion."""

    def test_examples(self):
        """Test small examples."""
        assert is_one_positive(disjoint_union(complete_multipartite([2, 3]), empty(2)))
        assert not is_one_positive(path(4))
        assert not is_one_positive(empty(4))

    def test_exhaustive_order5(self):
        """Test the criterion against inertia on every labelled graph of order 5."""
        for g in labeled_graphs(5):
            assert is_one_positive(g) == (inertia(g).p == 1)
