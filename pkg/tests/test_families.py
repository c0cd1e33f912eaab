"""
Tests for G_n, B_k names and the canonical graph.
"""

import pytest

from graph_inertia.canon import are_isomorphic, canonical_form
from graph_inertia.errors import BkSyntaxError, GraphError
from graph_inertia.families import (
    BkSpec,
    bk_spec_of,
    build_bk,
    build_gn,
    canonical_graph,
    format_bk,
    gn_deletion_candidates,
    is_dstar_member,
    lex_product,
    parse_bk,
    part_vertices,
    rho_classes,
    swap_blocks,
)
from graph_inertia.graph import complete, cycle, empty, path
from graph_inertia.spectral import Inertia, inertia


def random_spec(rng, k: int, largest: int = 4) -> BkSpec:
    return BkSpec(k, tuple(rng.randint(1, largest) for _ in range(k)))


class TestGn:
    """Test the G_n family."""

    def test_small_members(self):
        """Test G_2, G_3, G_4 and G_5."""
        assert build_gn(2) == empty(2)
        assert are_isomorphic(build_gn(3), path(3))
        assert are_isomorphic(build_gn(4), path(4))
        assert build_gn(5).edges() == [(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]

    def test_invalid(self):
        """Test out-of-range orders."""
        with pytest.raises(GraphError):
            build_gn(1)
        with pytest.raises(GraphError):
            build_gn(65)

    def test_g15_has_three_positive(self):
        """Test G_15 has at least three positive eigenvalues."""
        assert inertia(build_gn(15)).p >= 3

    def test_members_up_to_14_have_two_positive(self):
        """Test G_k for 4 <= k <= 14 has exactly two positive eigenvalues."""
        for k in range(4, 15):
            assert inertia(build_gn(k)).p == 2

    @pytest.mark.parametrize("n", range(2, 17))
    def test_induced_in_next(self, n):
        """Test deleting the predicted vertex of G_{n+1} leaves G_n."""
        candidates = gn_deletion_candidates(n)
        assert candidates
        for v in candidates:
            assert are_isomorphic(build_gn(n + 1).delete_vertex(v), build_gn(n))


class TestLexProduct:
    """Test blowing vertices up into cliques."""

    def test_identity(self, random_graph):
        """Test all-ones sizes give the base graph."""
        g = random_graph(7)
        assert lex_product(g, [1] * 7) == g

    def test_join_of_cliques(self):
        """Test K_2 blown up is a complete graph."""
        assert lex_product(complete(2), [2, 3]) == complete(5)

    def test_invalid(self):
        """Test size mismatches and non-positive sizes."""
        with pytest.raises(GraphError):
            lex_product(path(3), [1, 1])
        with pytest.raises(GraphError):
            lex_product(path(3), [1, 0, 1])
        with pytest.raises(GraphError):
            lex_product(path(2), [40, 30])


class TestBk:
    """Test B_k construction and naming."""

    def test_spec_validation(self):
        """Test BkSpec pre-conditions."""
        with pytest.raises(GraphError):
            BkSpec(2, (1, 1))
        with pytest.raises(GraphError):
            BkSpec(4, (1, 1, 1))
        with pytest.raises(GraphError):
            BkSpec(4, (1, 0, 1, 1))

    def test_blocks(self):
        """Test block accessors."""
        spec = BkSpec(7, (5, 2, 4, 5, 3, 2, 8))
        assert spec.s == 3
        assert spec.order == 29
        assert spec.first_block == (5, 2, 4)
        assert spec.second_block == (5, 3, 2)
        assert spec.tail == (8,)
        assert swap_blocks(spec) == BkSpec(7, (5, 3, 2, 5, 2, 4, 8))

    def test_part_vertices(self):
        """Test the part-to-vertex map puts the odd tail on the dominating vertex."""
        assert part_vertices(6) == [0, 1, 2, 3, 4, 5]
        assert part_vertices(5) == [0, 1, 3, 4, 2]
        g5 = build_gn(5)
        assert g5.degree(part_vertices(5)[-1]) == 4

    def test_all_ones_is_gn(self):
        """Test B_5(1,1;1,1;1) is G_5."""
        assert are_isomorphic(build_bk(BkSpec(5, (1,) * 5)), build_gn(5))

    def test_paw(self):
        """Test B_3(2;1;1) is the paw."""
        g = build_bk(parse_bk("B3(2;1;1)"))
        assert sorted(g.degrees()) == [1, 2, 2, 3]
        assert g.edge_count == 4
        assert inertia(g) == Inertia(2, 2, 0)

    def test_table_member(self):
        """Test a listed reduced X-complete graph."""
        g = build_bk(parse_bk("B6(4,3,3;2,1,1)"))
        assert g.order == 14
        assert inertia(g) == Inertia(2, 10, 2)
        assert is_dstar_member(g)

    def test_swap_isomorphism(self, rng):
        """Test swapping the two blocks gives an isomorphic graph."""
        for _ in range(200):
            spec = random_spec(rng, rng.randint(3, 9))
            assert are_isomorphic(build_bk(spec), build_bk(spec.swapped()))

    def test_format(self):
        """Test canonical names prefer the larger first block."""
        assert format_bk(parse_bk("B6(4,3,1;4,3,2)")) == "B6(4,3,2;4,3,1)"
        assert format_bk(parse_bk("B7(5,2,4;5,3,2;8)")) == "B7(5,3,2;5,2,4;8)"
        assert parse_bk("B_{6}( 4,3,2 ; 4,3,1 )") == BkSpec(6, (4, 3, 2, 4, 3, 1))
        assert BkSpec(4, (1, 2, 3, 1)).name == "B4(3,1;1,2)"

    def test_format_round_trip(self, rng):
        """Test parse(format(spec)) is the canonical spec."""
        for _ in range(100):
            spec = random_spec(rng, rng.randint(3, 12))
            assert parse_bk(format_bk(spec)) == spec.canonical()

    @pytest.mark.parametrize(
        "text",
        [
            "X6(4,3,3;2,1,1)",
            "B6(4,3;2,1,1)",
            "B6(4,3,3;2,1,1;1)",
            "B7(1,1,1;1,1,1)",
            "B6(4,a,3;2,1,1)",
            "B6(4,0,3;2,1,1)",
            "B2(1;1)",
        ],
    )
    def test_parse_errors(self, text):
        """Test malformed names."""
        with pytest.raises(BkSyntaxError):
            parse_bk(text)

    def test_recognise(self, rng):
        """Test bk_spec_of recovers the canonical spec up to relabelling."""
        for _ in range(60):
            spec = random_spec(rng, rng.randint(4, 10), largest=3)
            g = build_bk(spec)
            perm = list(g.vertices)
            rng.shuffle(perm)
            assert bk_spec_of(g.relabel(perm)) == spec.canonical()
        assert bk_spec_of(cycle(5)) is None
        assert bk_spec_of(complete(4)) is None

    def test_dstar_membership(self):
        """Test graphs outside the catalog."""
        assert not is_dstar_member(path(4))
        assert not is_dstar_member(cycle(4))
        assert not is_dstar_member(build_bk(BkSpec(6, (5, 3, 3, 2, 1, 1))))


class TestCanonicalGraph:
    """Test the rho quotient."""

    def test_complete(self):
        """Test K_n collapses to one vertex."""
        decomp = canonical_graph(complete(5))
        assert decomp.quotient == empty(1)
        assert decomp.multiplicities == (5,)

    def test_cycle(self):
        """Test C_4 is already reduced."""
        decomp = canonical_graph(cycle(4))
        assert decomp.multiplicities == (1, 1, 1, 1)
        assert decomp.quotient == cycle(4)

    def test_bk_quotient(self, rng):
        """Test B_k collapses to G_k with its parts as multiplicities."""
        for _ in range(50):
            spec = random_spec(rng, rng.randint(4, 10))
            decomp = canonical_graph(build_bk(spec))
            assert decomp.k == spec.k
            assert are_isomorphic(decomp.quotient, build_gn(spec.k))
            assert sorted(decomp.multiplicities) == sorted(spec.parts)

    def test_reconstruction(self, rng, random_graph):
        """Test the quotient blown up by the multiplicities is the original graph."""
        for _ in range(1000):
            g = random_graph(rng.randint(1, 10), density=rng.choice([0.3, 0.5, 0.8]))
            decomp = canonical_graph(g)
            assert canonical_form(decomp.reconstruct()) == canonical_form(g)
            assert set(canonical_graph(decomp.quotient).multiplicities) == {1}

    def test_classes_are_cliques(self, random_graph):
        """Test each rho class induces a clique."""
        g = random_graph(9, density=0.7)
        for cls in rho_classes(g):
            sub = g.induced_subgraph(cls)
            assert sub.edge_count == len(cls) * (len(cls) - 1) // 2
