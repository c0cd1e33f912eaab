"""
Tests for B_k classification, the labelled-graph oracle and the structural case split.
"""

import pytest

from graph_inertia.canon import canonical_form
from graph_inertia.census import (
    CensusRecord,
    ClassLabel,
    StructureCase,
    classify_bk,
    classify_order,
    classify_structure,
    compositions,
    compute_dstar,
    count_compositions,
    disconnected_gs,
    label_for,
    labeled_count,
    labeled_graphs,
    multipartite_shapes,
    oracle_census,
    run_oracle,
    run_parallel,
    tripartite_plus_isolated,
)
from graph_inertia.constants import TABLE1_COUNTS
from graph_inertia.errors import OracleLimitError
from graph_inertia.families import BkSpec
from graph_inertia.graph import (
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty,
    from_edges,
    path,
)
from graph_inertia.spectral import Inertia


def square(x: int) -> int:
    return x * x


class TestLabels:
    """Test the lambda_3 sign classes."""

    @pytest.mark.parametrize(
        "ine, label",
        [
            (Inertia(3, 3, 0), ClassLabel.PLUS),
            (Inertia(2, 2, 0), ClassLabel.MINUS),
            (Inertia(2, 2, 1), ClassLabel.SINGLE_ZERO),
            (Inertia(2, 10, 2), ClassLabel.DOUBLE_ZERO),
            (Inertia(1, 1, 1), ClassLabel.MINUS),
        ],
    )
    def test_label_for(self, ine, label):
        """Test labels from inertia."""
        assert label_for(ine) is label

    def test_classify_bk(self):
        """Test single B_k classification."""
        assert classify_bk(BkSpec(6, (4, 3, 3, 2, 1, 1))) is ClassLabel.DOUBLE_ZERO
        assert classify_bk(BkSpec(4, (1, 1, 1, 1))) is ClassLabel.MINUS
        with pytest.raises(ValueError):
            classify_bk(BkSpec(3, (1, 1, 1)))


class TestCompositions:
    """Test compositions of n into k parts."""

    def test_small(self):
        """Test an explicit list."""
        assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
        assert list(compositions(3, 3)) == [(1, 1, 1)]
        assert count_compositions(6, 3) == len(list(compositions(6, 3))) == 10

    def test_invalid(self):
        """Test k outside 1..n."""
        with pytest.raises(ValueError):
            list(compositions(3, 4))
        with pytest.raises(ValueError):
            list(compositions(3, 0))

    def test_order15_total(self):
        """Test the number of order-15 compositions into 4..14 parts."""
        assert sum(count_compositions(15, k) for k in range(4, 15)) == 16277


class TestClassification:
    """Test classification of whole orders."""

    def test_order6(self):
        """Test every B_k of order 6."""
        result = classify_order(6)
        assert sorted(result.counts) == [4, 5, 6]
        assert result.examined == 16
        assert result.counts[6] == {"Plus": 0, "DoubleZero": 0, "SingleZero": 0, "Minus": 1}
        assert sum(result.total(label) for label in ClassLabel) == 16

    def test_run_parallel(self):
        """Test pool results keep item order."""
        assert run_parallel(square, [1, 2, 3, 4], jobs=2) == [1, 4, 9, 16]
        assert run_parallel(square, [5], jobs=4) == [25]

    @pytest.mark.slow
    def test_dstar_catalog(self):
        """Test the reduced X-complete catalog has 175 classes of nullity two."""
        catalog = compute_dstar(jobs=2)
        assert len(catalog) == 175
        assert catalog.examined == 15914
        assert catalog.per_k() == TABLE1_COUNTS
        assert catalog.per_order() == {14: 175}
        assert all(entry.inertia == Inertia(2, 10, 2) for entry in catalog.entries)
        assert "B6(4,3,3;2,1,1)" in catalog.names()


class TestOracle:
    """Test exhaustive enumeration."""

    def test_labeled_count(self):
        """Test the number of labelled graphs."""
        assert labeled_count(4) == 64
        assert len(list(labeled_graphs(4))) == 64
        assert len(list(labeled_graphs(5, 10, 20))) == 10

    def test_order4(self):
        """Test three classes, all of nullity zero."""
        records = oracle_census(4)
        assert len(records) == 3
        assert {r.eta for r in records} == {0}
        assert sum(1 for r in records if r.connected) == 2

    def test_order5(self):
        """Test the order-5 census by nullity."""
        result = run_oracle(5)
        assert len(result.by_eta(0)) == 7
        assert len(result.by_eta(1)) == 12
        assert len(result.by_eta(2)) == 0
        assert result.examined == 1024
        assert result.records == sorted(result.records, key=lambda r: r.form)

    def test_jobs_do_not_change_output(self):
        """Test parallel and serial runs agree."""
        assert run_oracle(5, jobs=2).records == run_oracle(5, jobs=1).records

    def test_limits(self):
        """Test orders outside 1..8."""
        with pytest.raises(OracleLimitError):
            oracle_census(9)
        with pytest.raises(OracleLimitError):
            oracle_census(0)

    def test_record_dict(self):
        """Test records survive a JSON-ready dict."""
        record = CensusRecord.from_graph(path(4))
        data = record.to_dict()
        assert data["p"] == 2 and data["eta"] == 0 and data["connected"] is True
        assert CensusRecord.from_dict(data) == record
        assert canonical_form(record.graph) == record.form

    @pytest.mark.slow
    def test_order6(self):
        """Test the order-6 census and its labelled counts."""
        result = run_oracle(6, jobs=2)
        assert [len(result.by_eta(eta)) for eta in range(4)] == [17, 35, 39, 0]
        assert result.labeled == {0: 2320, 1: 7875, 2: 7980}


class TestDisconnected:
    """Test generation of disconnected members."""

    def test_shapes(self):
        """Test complete multipartite shapes with at least two parts."""
        assert multipartite_shapes(4) == [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert multipartite_shapes(1) == []

    def test_order4(self):
        """Test 2K_2 is the only disconnected order-4 class."""
        graphs = disconnected_gs(4, 0)
        assert len(graphs) == 1
        assert canonical_form(graphs[0]) == canonical_form(disjoint_union(complete(2), complete(2)))

    def test_matches_census(self):
        """Test order-5 generation against the oracle."""
        census = oracle_census(5)
        smaller = oracle_census(4)
        for s in range(3):
            expected = {r.form for r in census if r.eta == s and not r.connected}
            generated = {canonical_form(g) for g in disconnected_gs(5, s, smaller)}
            assert generated == expected

    def test_invalid(self):
        """Test nullity outside 0..n-3."""
        with pytest.raises(ValueError):
            disconnected_gs(4, 2)


class TestStructure:
    """Test the case split around a minimum-degree vertex."""

    def test_isolated_in_y(self):
        """Test C_4: the vertex opposite v* has no neighbour in Y."""
        report = classify_structure(cycle(4))
        assert report.case is StructureCase.ISOLATED_IN_Y
        assert report.v_star == 0
        assert report.x_mask == 0b1010

    def test_multipartite_y(self):
        """Test P_5: Y induces a path on three vertices."""
        report = classify_structure(path(5))
        assert report.case is StructureCase.MULTIPARTITE_Y
        assert report.y_shape_ok

    def test_x_incomplete(self):
        """Test a graph whose X is independent while Y is a clique."""
        g = from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (1, 4), (2, 3)])
        assert classify_structure(g).case is StructureCase.X_INCOMPLETE

    def test_x_complete(self):
        """Test reduced and non-reduced X-complete graphs."""
        assert classify_structure(path(4)).case is StructureCase.X_COMPLETE_REDUCED
        g = from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)])
        assert classify_structure(g).case is StructureCase.X_COMPLETE_NONREDUCED

    def test_tripartite(self):
        """Test complete tripartite plus isolated vertices."""
        assert tripartite_plus_isolated(disjoint_union(complete_multipartite([1, 2, 2]), empty(2)))
        assert not tripartite_plus_isolated(complete_multipartite([2, 2]))
        assert not tripartite_plus_isolated(empty(3))
