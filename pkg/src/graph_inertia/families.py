"""
G_n, lexicographic products by cliques, B_k names and the canonical (rho-quotient) graph.

G_n has vertices v_1..v_c (c = ceil(n/2)) forming a clique, then w_1..w_h (h = floor(n/2))
forming a clique, and v_i ~ w_j exactly when j >= h - i + 2. In B_k(n_1..n_s; n_{s+1}..n_{2s})
part n_i sits on v_i and part n_{s+j} on w_j; for odd k = 2s + 1 the last part sits on the
dominating vertex v_{s+1}. The rule is symmetric in (i, j), so swapping the two blocks is an
isomorphism.
"""

import re
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .canon import isomorphism
from .constants import BK_MIN_K, CLASSIFY_MAX_K, CLASSIFY_MIN_K, DSTAR_MAX_ORDER, MAX_ORDER
from .errors import BkSyntaxError, GraphError
from .graph import Graph, VertexId
from .logging_config import get_logger
from .spectral import inertia

logger = get_logger(__name__)

_BK_PATTERN = re.compile(r"^B_?\{?(\d+)\}?\((.*)\)$")


@dataclass(frozen=True)
class BkSpec:
    """Parameters of B_k(n_1, ..., n_k) = G_k[K_{n_1}, ..., K_{n_k}]."""

    k: int
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < BK_MIN_K:
            raise GraphError(f"B_k needs k >= {BK_MIN_K}, got {self.k}")
        if len(self.parts) != self.k:
            raise GraphError(f"B_{self.k} needs {self.k} parts, got {len(self.parts)}")
        if any(part < 1 for part in self.parts):
            raise GraphError(f"parts must be positive: {self.parts}")
        if self.order > MAX_ORDER:
            raise GraphError(f"B_{self.k} of order {self.order} exceeds {MAX_ORDER}")

    @property
    def s(self) -> int:
        return self.k // 2

    @property
    def order(self) -> int:
        return sum(self.parts)

    @property
    def first_block(self) -> tuple[int, ...]:
        return self.parts[: self.s]

    @property
    def second_block(self) -> tuple[int, ...]:
        return self.parts[self.s : 2 * self.s]

    @property
    def tail(self) -> tuple[int, ...]:
        """The dominating-vertex part for odd k, empty for even k."""
        return self.parts[2 * self.s :]

    def swapped(self) -> "BkSpec":
        return BkSpec(self.k, self.second_block + self.first_block + self.tail)

    def canonical(self) -> "BkSpec":
        """The representative whose first block is lexicographically >= the second."""
        return self if self.first_block >= self.second_block else self.swapped()

    @property
    def name(self) -> str:
        return format_bk(self)


def swap_blocks(spec: BkSpec) -> BkSpec:
    return spec.swapped()


def part_vertices(k: int) -> list[VertexId]:
    """G_k vertex receiving each B_k part, in part order."""
    s = k // 2
    c = (k + 1) // 2
    mapping = list(range(s)) + [c + j for j in range(s)]
    if k % 2:
        mapping.append(s)
    return mapping


def build_gn(n: int) -> Graph:
    """G_n: two cliques joined by a staircase of cross edges."""
    if n < 2:
        raise GraphError(f"G_n needs n >= 2, got {n}")
    if n > MAX_ORDER:
        raise GraphError(f"G_{n} exceeds {MAX_ORDER} vertices")

    c = (n + 1) // 2
    h = n // 2
    v_clique = (1 << c) - 1
    w_clique = ((1 << h) - 1) << c
    rows = [v_clique & ~(1 << i) for i in range(c)] + [w_clique & ~(1 << (c + j)) for j in range(h)]
    for i in range(1, c + 1):
        for j in range(max(1, h - i + 2), h + 1):
            v, w = i - 1, c + j - 1
            rows[v] |= 1 << w
            rows[w] |= 1 << v
    return Graph(n, tuple(rows))


def lex_product(base: Graph, sizes: Sequence[int]) -> Graph:
    """base[K_{t_1}, ..., K_{t_m}]: vertex j becomes a clique, cliques joined along base edges."""
    if len(sizes) != base.order:
        raise GraphError(f"expected {base.order} clique sizes, got {len(sizes)}")
    if any(t < 1 for t in sizes):
        raise GraphError(f"clique sizes must be positive: {list(sizes)}")
    order = sum(sizes)
    if order > MAX_ORDER:
        raise GraphError(f"product of order {order} exceeds {MAX_ORDER}")

    starts = []
    blocks = []
    start = 0
    for t in sizes:
        starts.append(start)
        blocks.append(((1 << t) - 1) << start)
        start += t

    rows = []
    for v in base.vertices:
        joined = blocks[v]
        for u in range(base.order):
            if base.rows[v] >> u & 1:
                joined |= blocks[u]
        rows.extend(joined & ~(1 << x) for x in range(starts[v], starts[v] + sizes[v]))
    return Graph(order, tuple(rows))


def build_bk(spec: BkSpec) -> Graph:
    """B_k(parts) with the vertices laid out part by part in spec order."""
    base = build_gn(spec.k)
    mapping = part_vertices(spec.k)
    # Reorder G_k so that vertex t of the base carries part t.
    inverse = {g_vertex: t for t, g_vertex in enumerate(mapping)}
    relabelled = base.relabel([inverse[v] for v in base.vertices])
    return lex_product(relabelled, spec.parts)


def _parse_block(text: str, name: str) -> tuple[int, ...]:
    items = [item.strip() for item in text.split(",")]
    try:
        values = tuple(int(item) for item in items)
    except ValueError:
        raise BkSyntaxError(f"non-integer part in {name!r}") from None
    if any(v < 1 for v in values):
        raise BkSyntaxError(f"parts must be positive in {name!r}")
    return values


def parse_bk(text: str) -> BkSpec:
    """Parse "B6(4,3,3;2,1,1)" or "B7(5,3,2;5,2,4;8)" (spaces, B_6 and B_{6} also accepted)."""
    compact = re.sub(r"\s+", "", text)
    match = _BK_PATTERN.match(compact)
    if not match:
        raise BkSyntaxError(f"not a B_k name: {text!r}")

    k = int(match.group(1))
    blocks = match.group(2).split(";")
    if k < BK_MIN_K:
        raise BkSyntaxError(f"B_k needs k >= {BK_MIN_K}: {text!r}")

    s = k // 2
    expected = 3 if k % 2 else 2
    if len(blocks) != expected:
        raise BkSyntaxError(f"B{k} needs {expected} ';'-separated blocks: {text!r}")

    parsed = [_parse_block(block, text) for block in blocks]
    if len(parsed[0]) != s or len(parsed[1]) != s or (k % 2 and len(parsed[2]) != 1):
        raise BkSyntaxError(f"block lengths do not match k={k}: {text!r}")

    parts: tuple[int, ...] = ()
    for block in parsed:
        parts += block
    try:
        return BkSpec(k, parts)
    except GraphError as e:
        raise BkSyntaxError(str(e)) from None


def format_bk(spec: BkSpec) -> str:
    """Canonical name: of a spec and its block swap, the one with the larger first block."""
    canon = spec.canonical()
    blocks = [canon.first_block, canon.second_block]
    if canon.tail:
        blocks.append(canon.tail)
    inner = ";".join(",".join(str(x) for x in block) for block in blocks)
    return f"B{canon.k}({inner})"


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Quotient by the rho relation (adjacent with equal closed neighbourhoods)."""

    quotient: Graph
    multiplicities: tuple[int, ...]
    classes: tuple[tuple[VertexId, ...], ...]

    @property
    def k(self) -> int:
        return self.quotient.order

    def reconstruct(self) -> Graph:
        return lex_product(self.quotient, self.multiplicities)


def rho_classes(g: Graph) -> list[list[VertexId]]:
    """Classes of equal closed neighbourhoods, ordered by lowest member."""
    groups: dict[int, list[VertexId]] = {}
    for v in g.vertices:
        groups.setdefault(g.closed_row(v), []).append(v)
    return sorted(groups.values(), key=lambda cls: cls[0])


def canonical_graph(g: Graph) -> CanonicalDecomposition:
    """Collapse each rho class (a clique) to its lowest vertex."""
    classes = rho_classes(g)
    quotient = g.induced_subgraph(cls[0] for cls in classes)
    return CanonicalDecomposition(
        quotient=quotient,
        multiplicities=tuple(len(cls) for cls in classes),
        classes=tuple(tuple(cls) for cls in classes),
    )


def bk_spec_of(g: Graph, min_k: int = BK_MIN_K, max_k: int = CLASSIFY_MAX_K) -> Optional[BkSpec]:
    """Recognise g as some B_k(parts); returns the canonical spec or None."""
    decomp = canonical_graph(g)
    k = decomp.k
    if not min_k <= k <= max_k:
        return None

    mapping = isomorphism(decomp.quotient, build_gn(k))
    if mapping is None:
        return None

    by_gn_vertex = {gn_vertex: q for q, gn_vertex in mapping.items()}
    parts = tuple(decomp.multiplicities[by_gn_vertex[v]] for v in part_vertices(k))
    return BkSpec(k, parts).canonical()


def is_dstar_member(g: Graph) -> bool:
    """p = 2, eta >= 2, order <= 14 and canonical graph isomorphic to G_k with 4 <= k <= 14."""
    if g.order > DSTAR_MAX_ORDER:
        return False
    ine = inertia(g)
    if ine.p != 2 or ine.eta < 2:
        return False
    return bk_spec_of(g, CLASSIFY_MIN_K, CLASSIFY_MAX_K) is not None


def gn_deletion_candidates(n: int) -> list[VertexId]:
    """Vertices of G_{n+1} whose deletion should leave G_n.

    Maximum-degree vertices when n is even, minimum-degree vertices when n is odd.
    """
    bigger = build_gn(n + 1)
    degrees = bigger.degrees()
    target = max(degrees) if n % 2 == 0 else min(degrees)
    return [v for v, d in enumerate(degrees) if d == target]
