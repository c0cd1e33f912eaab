"""
Canonical labelling by equitable refinement with individualisation backtracking.

A leaf of the search tree is a discrete ordered partition, i.e. a vertex ordering; its
certificate is the order byte followed by the upper-triangle adjacency bits (column-major,
the graph6 bit order) packed eight to a byte. The canonical form is the least certificate
over all leaves. Vertices of a target cell that are twins (equal open or closed
neighbourhoods) are swapped by an automorphism fixing the partition, so only one of each
twin class is individualised.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

import numpy as np

from .constants import EXHAUSTIVE_CANON_MAX_ORDER, SPECTRUM_MATCH_TOLERANCE
from .graph import Graph, VertexId
from .logging_config import get_logger

logger = get_logger(__name__)

Cells = list[list[VertexId]]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Order-prefixed, bit-packed upper triangle under the canonical ordering."""

    data: bytes

    @property
    def order(self) -> int:
        return self.data[0]

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def fromhex(cls, text: str) -> "CanonicalForm":
        return cls(bytes.fromhex(text))

    def to_graph(self) -> Graph:
        """Rebuild the canonically labelled graph."""
        n = self.order
        rows = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if self.data[1 + k // 8] >> (7 - k % 8) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        return Graph(n, tuple(rows))


def certificate(g: Graph, ordering: Sequence[VertexId]) -> bytes:
    """Certificate of g when its vertices are listed in the given order."""
    n = g.order
    out = bytearray([n])
    acc = 0
    nbits = 0
    rows = g.rows
    for j in range(1, n):
        vj = ordering[j]
        for i in range(j):
            acc = acc << 1 | (rows[ordering[i]] >> vj & 1)
            nbits += 1
            if nbits == 8:
                out.append(acc)
                acc = nbits = 0
    if nbits:
        out.append(acc << (8 - nbits))
    return bytes(out)


def _refine(g: Graph, cells: Cells) -> Cells:
    """Coarsest equitable refinement of an ordered partition.

    Each cell splits by the vector of neighbour counts into every current cell; sub-cells
    are ordered by that vector, which keeps the result isomorphism invariant.
    """
    rows = g.rows
    while True:
        masks = []
        for cell in cells:
            mask = 0
            for v in cell:
                mask |= 1 << v
            masks.append(mask)

        refined: Cells = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[tuple[int, ...], list[VertexId]] = {}
            for v in cell:
                key = tuple(bin(rows[v] & m).count("1") for m in masks)
                groups.setdefault(key, []).append(v)
            for key in sorted(groups):
                refined.append(groups[key])

        if len(refined) == len(cells):
            return refined
        cells = refined


def _twin_representatives(g: Graph, cell: list[VertexId]) -> list[VertexId]:
    seen_open: set[int] = set()
    seen_closed: set[int] = set()
    reps = []
    for v in cell:
        open_row = g.rows[v]
        closed_row = open_row | (1 << v)
        # Twins u, v have open rows equal, or closed rows equal.
        if open_row in seen_open or closed_row in seen_closed:
            continue
        seen_open.add(open_row)
        seen_closed.add(closed_row)
        reps.append(v)
    return reps


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.best: Optional[bytes] = None
        self.best_order: list[VertexId] = []
        self.leaves = 0

    def run(self, cells: Cells) -> None:
        cells = _refine(self.g, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            ordering = [cell[0] for cell in cells]
            cert = certificate(self.g, ordering)
            self.leaves += 1
            if self.best is None or cert < self.best:
                self.best = cert
                self.best_order = ordering
            return

        cell = cells[target]
        for v in _twin_representatives(self.g, cell):
            rest = [u for u in cell if u != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1 :])


def canonical_labeling(g: Graph) -> tuple[CanonicalForm, list[VertexId]]:
    """Canonical form of g and an ordering realising it.

    ``ordering[i]`` is the vertex of g placed at canonical position i.
    """
    if g.order == 0:
        return CanonicalForm(bytes([0])), []

    search = _Search(g)
    initial = sorted(g.vertices, key=lambda v: -g.degree(v))
    cells: Cells = []
    for v in initial:
        if cells and g.degree(cells[-1][0]) == g.degree(v):
            cells[-1].append(v)
        else:
            cells.append([v])
    search.run(cells)
    assert search.best is not None
    logger.debug(f"Canonical labelling of order {g.order} visited {search.leaves} leaves")
    return CanonicalForm(search.best), search.best_order


def canonical_form(g: Graph) -> CanonicalForm:
    """Isomorphism-invariant bytes: equal exactly for isomorphic graphs."""
    return canonical_labeling(g)[0]


def canonical_relabel(g: Graph) -> Graph:
    """The canonically labelled copy of g."""
    return canonical_form(g).to_graph()


def exhaustive_canonical_form(g: Graph) -> CanonicalForm:
    """Least certificate over all n! orderings; for cross-checking on small graphs."""
    if g.order > EXHAUSTIVE_CANON_MAX_ORDER:
        raise ValueError(
            f"exhaustive canonical form limited to {EXHAUSTIVE_CANON_MAX_ORDER} vertices"
        )
    return CanonicalForm(min(certificate(g, p) for p in permutations(g.vertices)))


def _spectra_match(g: Graph, h: Graph) -> bool:
    a = np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))
    b = np.linalg.eigvalsh(np.array(h.adjacency_matrix(), dtype=float))
    return bool(np.allclose(a, b, atol=SPECTRUM_MATCH_TOLERANCE))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism test with a cheap invariant pre-check."""
    if g.order != h.order or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if g.order and not _spectra_match(g, h):
        return False
    return canonical_form(g) == canonical_form(h)


def isomorphism(g: Graph, h: Graph) -> Optional[dict[VertexId, VertexId]]:
    """A vertex map g -> h that is an isomorphism, or None."""
    form_g, order_g = canonical_labeling(g)
    form_h, order_h = canonical_labeling(h)
    if form_g != form_h:
        return None
    return {order_g[i]: order_h[i] for i in range(g.order)}
