"""
Enumeration and classification: B_k compositions, the D* catalog, the labelled-graph
oracle, disconnected members of G^s(n) and the structural case split of connected ones.

Parallel runs split work into fixed-size chunks handed to a multiprocessing pool; results
are merged and sorted by canonical form, so the output does not depend on the worker count.
"""

import multiprocessing as mp
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Any, Callable, Optional, TypeVar

from .canon import CanonicalForm, canonical_form
from .constants import (
    CLASSIFY_MAX_K,
    CLASSIFY_MIN_K,
    DSTAR_MAX_ORDER,
    ORACLE_MAX_ORDER,
    SMITH_MAX_ORDER,
)
from .errors import GraphError, OracleLimitError
from .families import BkSpec, build_bk, format_bk
from .graph import Graph, complete_multipartite, disjoint_union, empty, from_graph6, to_graph6
from .logging_config import get_logger
from .spectral import Inertia, inertia, is_one_positive, rows_inertia

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")

ORACLE_CHUNK = 1 << 14


class ClassLabel(str, Enum):
    """Sign class of lambda_3 for a B_k graph."""

    PLUS = "Plus"
    DOUBLE_ZERO = "DoubleZero"
    SINGLE_ZERO = "SingleZero"
    MINUS = "Minus"


def label_for(ine: Inertia) -> ClassLabel:
    """Plus: lambda_3 > 0. DoubleZero: lambda_3 = lambda_4 = 0. SingleZero: lambda_3 = 0 > lambda_4.

    Minus: lambda_3 < 0. For p = 2 these are eta >= 2, eta = 1 and eta = 0.
    """
    if ine.p >= 3:
        return ClassLabel.PLUS
    nonnegative = ine.p + ine.eta
    if nonnegative <= 2:
        return ClassLabel.MINUS
    if nonnegative == 3:
        return ClassLabel.SINGLE_ZERO
    return ClassLabel.DOUBLE_ZERO


@dataclass(frozen=True)
class CensusRecord:
    """One isomorphism class with p = 2 found by the oracle."""

    form: CanonicalForm
    graph6: str
    inertia: Inertia
    order: int
    connected: bool

    @classmethod
    def from_graph(cls, g: Graph, ine: Optional[Inertia] = None) -> "CensusRecord":
        form = canonical_form(g)
        return cls(
            form=form,
            graph6=to_graph6(form.to_graph()),
            inertia=ine or inertia(g),
            order=g.order,
            connected=g.is_connected(),
        )

    @property
    def graph(self) -> Graph:
        return from_graph6(self.graph6)

    @property
    def eta(self) -> int:
        return self.inertia.eta

    def problem(self) -> Optional[str]:
        """Recompute the record from its graph6; a description of the first mismatch, or None."""
        try:
            g = from_graph6(self.graph6)
        except GraphError as e:
            return f"graph6 does not decode: {e}"
        if g.order != self.order:
            return f"graph6 has order {g.order}, record says {self.order}"
        if canonical_form(g) != self.form:
            return "canonical form does not match graph6"
        if to_graph6(self.form.to_graph()) != self.graph6:
            return "graph6 is not the canonical labelling"
        ine = inertia(g)
        if ine != self.inertia:
            return f"inertia is {ine}, record says {self.inertia}"
        if ine.p != 2:
            return f"p = {ine.p}"
        if g.is_connected() != self.connected:
            return f"connected is {g.is_connected()}, record says {self.connected}"
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph6": self.graph6,
            "order": self.order,
            **self.inertia.as_dict(),
            "connected": self.connected,
            "form": self.form.hex(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CensusRecord":
        return cls(
            form=CanonicalForm.fromhex(data["form"]),
            graph6=data["graph6"],
            inertia=Inertia(data["p"], data["n"], data["eta"]),
            order=data["order"],
            connected=bool(data["connected"]),
        )


@dataclass(frozen=True)
class DStarEntry:
    name: str
    spec: BkSpec
    form: CanonicalForm
    inertia: Inertia


@dataclass
class DStarCatalog:
    """The reduced X-complete graphs: B_k graphs of order <= 14 with p = 2 and eta >= 2."""

    entries: list[DStarEntry]
    examined: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [entry.name for entry in self.entries]

    def per_k(self) -> dict[int, int]:
        counts = {k: 0 for k in range(CLASSIFY_MIN_K, CLASSIFY_MAX_K + 1)}
        for entry in self.entries:
            counts[entry.spec.k] += 1
        return counts

    def per_order(self) -> dict[int, int]:
        return dict(sorted(Counter(entry.spec.order for entry in self.entries).items()))

    def forms(self) -> set[CanonicalForm]:
        return {entry.form for entry in self.entries}

    def contains(self, g: Graph) -> bool:
        return canonical_form(g) in self.forms()


def run_parallel(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """Map func over items, in a worker pool when jobs > 1; results keep item order."""
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with mp.Pool(min(jobs, len(items))) as pool:
        return pool.map(func, items)


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered k-tuples of positive integers summing to n, in lexicographic order."""
    if k < 1 or k > n:
        raise ValueError(f"compositions need 1 <= k <= n, got n={n}, k={k}")

    # Cut points in lexicographic order give the parts in lexicographic order.
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def count_compositions(n: int, k: int) -> int:
    return comb(n - 1, k - 1)


def classify_bk(spec: BkSpec) -> ClassLabel:
    """Sign class of lambda_3(B_k(parts)) from exact inertia."""
    if not CLASSIFY_MIN_K <= spec.k <= CLASSIFY_MAX_K:
        raise ValueError(
            f"classification covers {CLASSIFY_MIN_K} <= k <= {CLASSIFY_MAX_K}, got {spec.k}"
        )
    return label_for(inertia(build_bk(spec)))


ChunkResult = tuple[int, int, dict[str, int], list[tuple[str, tuple[int, ...]]]]


def _classify_chunk(task: tuple[int, int]) -> ChunkResult:
    n, k = task
    counts: Counter[str] = Counter()
    zero = []
    for parts in compositions(n, k):
        label = label_for(inertia(build_bk(BkSpec(k, parts))))
        counts[label.value] += 1
        if label in (ClassLabel.DOUBLE_ZERO, ClassLabel.SINGLE_ZERO):
            zero.append((label.value, parts))
    return n, k, dict(counts), zero


@dataclass
class Classification:
    """Class counts of every B_k(parts) of one order, with the compositions labelled zero."""

    order: int
    counts: dict[int, dict[str, int]]
    zero: dict[int, list[tuple[ClassLabel, tuple[int, ...]]]]

    @property
    def examined(self) -> int:
        return sum(sum(per_k.values()) for per_k in self.counts.values())

    def total(self, label: ClassLabel) -> int:
        return sum(per_k[label.value] for per_k in self.counts.values())

    def specs(self, label: ClassLabel) -> list[BkSpec]:
        return [
            BkSpec(k, parts)
            for k, items in self.zero.items()
            for lab, parts in items
            if lab is label
        ]


def classify_order(n: int, jobs: int = 1) -> Classification:
    """Classify every B_k(parts) of order n, 4 <= k <= min(n, 14)."""
    tasks = [(n, k) for k in range(CLASSIFY_MIN_K, min(n, CLASSIFY_MAX_K) + 1)]
    counts = {}
    zero = {}
    for _, k, label_counts, flagged in run_parallel(_classify_chunk, tasks, jobs):
        counts[k] = {label.value: label_counts.get(label.value, 0) for label in ClassLabel}
        zero[k] = [(ClassLabel(value), parts) for value, parts in flagged]
        logger.debug(f"n={n} k={k}: {counts[k]}")
    logger.info(f"Classified {sum(sum(c.values()) for c in counts.values())} compositions of {n}")
    return Classification(n, counts, zero)


def compute_dstar(jobs: int = 1) -> DStarCatalog:
    """Every DoubleZero B_k of order <= 14, deduplicated up to isomorphism."""
    tasks = [
        (n, k)
        for k in range(CLASSIFY_MIN_K, CLASSIFY_MAX_K + 1)
        for n in range(k, DSTAR_MAX_ORDER + 1)
    ]
    results = run_parallel(_classify_chunk, tasks, jobs)

    by_form: dict[CanonicalForm, DStarEntry] = {}
    examined = 0
    for n, k, label_counts, flagged in results:
        examined += sum(label_counts.values())
        for value, parts in flagged:
            if value != ClassLabel.DOUBLE_ZERO.value:
                continue
            spec = BkSpec(k, parts).canonical()
            g = build_bk(spec)
            form = canonical_form(g)
            if form in by_form:
                continue
            ine = inertia(g)
            if ine.eta != 2:
                logger.error(f"{format_bk(spec)} has nullity {ine.eta}, expected 2")
            by_form[form] = DStarEntry(format_bk(spec), spec, form, ine)
        logger.debug(f"D* search n={n} k={k} done")

    entries = sorted(by_form.values(), key=lambda e: (e.spec.k, e.spec.order, e.spec.parts))
    logger.info(f"D* catalog: {len(entries)} classes from {examined} compositions")
    return DStarCatalog(entries, examined)


def _pair_bits(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def labeled_rows(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Adjacency rows of labelled graphs number start..stop-1 (bit b = b-th upper-triangle pair)."""
    pairs = _pair_bits(n)
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        rows = [0] * n
        b = 0
        m = mask
        while m:
            if m & 1:
                i, j = pairs[b]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            m >>= 1
            b += 1
        yield tuple(rows)


def labeled_graphs(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[Graph]:
    """All labelled graphs on n vertices (or an index range of them)."""
    for rows in labeled_rows(n, start, stop):
        yield Graph(n, rows)


def labeled_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def _check_oracle_order(n: int, limit: int = ORACLE_MAX_ORDER) -> None:
    if not 1 <= n <= limit:
        raise OracleLimitError(f"exhaustive enumeration supports 1 <= n <= {limit}, got {n}")


def _oracle_chunk(task: tuple[int, int, int]) -> tuple[list[CensusRecord], dict[int, int]]:
    n, start, stop = task
    seen: dict[CanonicalForm, CensusRecord] = {}
    labeled: Counter[int] = Counter()
    for rows in labeled_rows(n, start, stop):
        ine = rows_inertia(n, rows)
        if ine.p != 2:
            continue
        labeled[ine.eta] += 1
        g = Graph(n, rows)
        form = canonical_form(g)
        if form not in seen:
            seen[form] = CensusRecord(form, to_graph6(form.to_graph()), ine, n, g.is_connected())
    return list(seen.values()), dict(labeled)


def labeled_chunks(n: int) -> list[tuple[int, int, int]]:
    total = labeled_count(n)
    return [(n, start, min(start + ORACLE_CHUNK, total)) for start in range(0, total, ORACLE_CHUNK)]


@dataclass
class CensusResult:
    """Oracle output for one order: the classes and the labelled graphs behind them."""

    order: int
    records: list[CensusRecord]
    examined: int
    labeled: Optional[dict[int, int]] = None

    def by_eta(self, eta: int) -> list[CensusRecord]:
        return [r for r in self.records if r.eta == eta]


def run_oracle(n: int, jobs: int = 1, store: Optional[Any] = None) -> CensusResult:
    """Enumerate every labelled graph on n vertices and keep the classes with p = 2.

    A CensusStore passed as store is consulted first and filled after a fresh run.
    """
    _check_oracle_order(n)
    if store is not None:
        cached = store.load_result(n)
        if cached is not None:
            logger.info(f"Loaded {len(cached.records)} census records for n={n} from cache")
            return cached

    logger.info(f"Enumerating {labeled_count(n)} labelled graphs on {n} vertices")
    merged: dict[CanonicalForm, CensusRecord] = {}
    labeled: Counter[int] = Counter()
    for chunk_records, chunk_labeled in run_parallel(_oracle_chunk, labeled_chunks(n), jobs):
        labeled.update(chunk_labeled)
        for record in chunk_records:
            merged.setdefault(record.form, record)

    records = sorted(merged.values(), key=lambda r: r.form)
    logger.info(f"Census n={n}: {len(records)} classes with p = 2")
    result = CensusResult(n, records, labeled_count(n), dict(sorted(labeled.items())))
    if store is not None:
        store.save_census(n, records, result.examined, result.labeled)
    return result


def oracle_census(n: int, jobs: int = 1, store: Optional[Any] = None) -> list[CensusRecord]:
    """All isomorphism classes of n-vertex graphs with p = 2, sorted by canonical form."""
    return run_oracle(n, jobs, store).records


def census_counts(records: Sequence[CensusRecord]) -> dict[int, int]:
    """Number of records per nullity."""
    return dict(sorted(Counter(r.eta for r in records).items()))


def multipartite_shapes(size: int) -> list[tuple[int, ...]]:
    """Part-size multisets (non-increasing) of complete multipartite graphs with >= 2 parts."""
    shapes = []

    def extend(prefix: tuple[int, ...], remaining: int, largest: int) -> None:
        if remaining == 0:
            if len(prefix) >= 2:
                shapes.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            extend(prefix + (part,), remaining - part, part)

    extend((), size, size)
    return shapes


def _sum_family(n: int, s: int) -> list[Graph]:
    """K_{t_1..t_p} + K_{r_1..r_q}, both with >= 2 parts, total nullity s."""
    graphs = []
    for a in range(2, n // 2 + 1):
        b = n - a
        for left in multipartite_shapes(a):
            for right in multipartite_shapes(b):
                if (a - len(left)) + (b - len(right)) != s:
                    continue
                if a == b and left < right:
                    continue
                pair = (complete_multipartite(left), complete_multipartite(right))
                graphs.append(disjoint_union(*pair))
    return graphs


def disconnected_gs(
    n: int,
    s: int,
    smaller: Optional[Sequence[CensusRecord]] = None,
    jobs: int = 1,
) -> list[Graph]:
    """Disconnected n-vertex graphs with p = 2 and eta = s, up to isomorphism.

    Two multipartite summands, or H + K_1 for H in G^{s-1}(n-1). The H come from smaller
    (the census of order n - 1) or from the oracle while n - 1 <= 7; past that only the
    multipartite sums are produced.
    """
    if s < 0 or s > n - 3:
        raise ValueError(f"disconnected_gs needs 0 <= s <= n - 3, got n={n}, s={s}")

    graphs = _sum_family(n, s)

    if s >= 1:
        if smaller is None and n - 1 <= SMITH_MAX_ORDER:
            smaller = oracle_census(n - 1, jobs)
        if smaller is None:
            logger.warning(f"H + K1 members of G^{s}({n}) skipped: order {n - 1} beyond the oracle")
        else:
            graphs.extend(disjoint_union(r.graph, empty(1)) for r in smaller if r.eta == s - 1)

    unique = {canonical_form(g): g for g in graphs}
    return [unique[form] for form in sorted(unique)]


class StructureCase(str, Enum):
    """Case split for a connected graph with p = 2 around a minimum-degree vertex v*."""

    ISOLATED_IN_Y = "isolated-in-Y"
    MULTIPARTITE_Y = "multipartite-Y"
    X_INCOMPLETE = "X-incomplete"
    X_COMPLETE_NONREDUCED = "X-complete-nonreduced"
    X_COMPLETE_REDUCED = "X-complete-reduced"


@dataclass(frozen=True)
class StructureReport:
    case: StructureCase
    v_star: int
    x_mask: int
    y_mask: int
    y_shape_ok: bool


def _is_clique(g: Graph, mask: int) -> bool:
    for v in range(g.order):
        if mask >> v & 1 and g.rows[v] & mask != mask & ~(1 << v):
            return False
    return True


def classify_structure(g: Graph) -> StructureReport:
    """Place g in the case split used to prove every such graph reduces.

    v* is the lowest vertex of minimum degree, X = N(v*), Y the rest. y_shape_ok records
    whether G[Y] is a complete multipartite graph plus isolated vertices.
    """
    degrees = g.degrees()
    v_star = degrees.index(min(degrees))
    x_mask = g.rows[v_star]
    y_mask = g.full_mask & ~x_mask & ~(1 << v_star)

    y_graph = g.induced_subgraph(v for v in g.vertices if y_mask >> v & 1)
    y_shape_ok = y_graph.edge_count == 0 or is_one_positive(y_graph)

    if any(y_mask >> y & 1 and not g.rows[y] & y_mask for y in g.vertices):
        case = StructureCase.ISOLATED_IN_Y
    elif not _is_clique(g, y_mask):
        case = StructureCase.MULTIPARTITE_Y
    elif not _is_clique(g, x_mask):
        case = StructureCase.X_INCOMPLETE
    else:
        y_neighbourhoods = [g.rows[x] & y_mask for x in g.vertices if x_mask >> x & 1]
        chain = all(a & ~b == 0 or b & ~a == 0 for a in y_neighbourhoods for b in y_neighbourhoods)
        case = StructureCase.X_COMPLETE_REDUCED if chain else StructureCase.X_COMPLETE_NONREDUCED

    return StructureReport(case, v_star, x_mask, y_mask, y_shape_ok)


def tripartite_plus_isolated(g: Graph) -> bool:
    """Whether g is K_{n1,n2,n3} plus isolated vertices."""
    active = [v for v in g.vertices if g.rows[v]]
    core = g.induced_subgraph(active)
    if not active or not is_one_positive(core):
        return False
    parts = {core.rows[v] for v in core.vertices}
    return len(parts) == 3
