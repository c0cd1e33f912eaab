"""
Congruent vertices of I-, II- and III-type, their deletion and greedy reduction chains.

  TYPE1   u, v non-adjacent with N(u) = N(v).
  TYPE2   u with N(u) the disjoint union of N(v) and N(w), v and w non-adjacent.
  TYPE3   an induced quadrangle u-v-x-y with N(u) \\ {y, v} = N(v) \\ {u, x} and
          N(x) \\ {v, y} = N(y) \\ {x, u}; (uv, xy) is the pair of congruent edges.

Each finding carries a kernel vector of the adjacency matrix supported on its witness,
so deleting the removable vertex keeps p and n and lowers the nullity by one.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .errors import InertiaLawViolation, StaleFindingError
from .families import is_dstar_member
from .graph import Graph, VertexId, iter_bits, to_graph6
from .logging_config import get_logger
from .spectral import Inertia, inertia

logger = get_logger(__name__)


class TransformKind(str, Enum):
    TYPE1 = "TYPE1"
    TYPE2 = "TYPE2"
    TYPE3 = "TYPE3"


class TerminalKind(str, Enum):
    ETA_ZERO = "EtaZero"
    DSTAR_MEMBER = "DStarMember"
    STUCK = "Stuck"


@dataclass(frozen=True, order=True)
class TransformFinding:
    """A congruent-vertex witness.

    Witness layouts: TYPE1 (u, v) with u < v; TYPE2 (u, v, w) with v < w;
    TYPE3 (u, v, x, y) along the quadrangle with u its lowest vertex.
    """

    kind: TransformKind
    witness: tuple[VertexId, ...]
    removable: VertexId

    def to_line(self) -> str:
        w = self.witness
        if self.kind is TransformKind.TYPE1:
            return f"TYPE1 {w[0]} {w[1]}"
        if self.kind is TransformKind.TYPE2:
            return f"TYPE2 {w[0]}|{w[1]},{w[2]}"
        return "TYPE3 " + ",".join(str(v) for v in w)


def finding_lines(findings: Iterable[TransformFinding]) -> list[str]:
    return [f.to_line() for f in findings]


def find_type1(g: Graph) -> list[TransformFinding]:
    """All non-adjacent pairs with identical open neighbourhoods."""
    rows = g.rows
    findings = []
    for u in g.vertices:
        for v in range(u + 1, g.order):
            if rows[u] == rows[v] and not rows[u] >> v & 1:
                findings.append(TransformFinding(TransformKind.TYPE1, (u, v), v))
    return findings


def find_type2(g: Graph) -> list[TransformFinding]:
    """All (u; v, w) with v ~/~ w, N(v) and N(w) disjoint, N(u) = N(v) | N(w)."""
    rows = g.rows
    findings = []
    pairs = [
        (v, w)
        for v in g.vertices
        for w in range(v + 1, g.order)
        if not rows[v] >> w & 1 and not rows[v] & rows[w]
    ]
    for u in g.vertices:
        for v, w in pairs:
            if u != v and u != w and rows[u] == rows[v] | rows[w]:
                findings.append(TransformFinding(TransformKind.TYPE2, (u, v, w), u))
    return findings


def _quadrangle_is_congruent(g: Graph, u: int, v: int, x: int, y: int) -> bool:
    outside = ~((1 << u) | (1 << v) | (1 << x) | (1 << y))
    rows = g.rows
    return rows[u] & outside == rows[v] & outside and rows[x] & outside == rows[y] & outside


def _is_induced_quadrangle(g: Graph, u: int, v: int, x: int, y: int) -> bool:
    rows = g.rows
    return (
        len({u, v, x, y}) == 4
        and bool(rows[u] >> v & 1)
        and bool(rows[v] >> x & 1)
        and bool(rows[x] >> y & 1)
        and bool(rows[y] >> u & 1)
        and not rows[u] >> x & 1
        and not rows[v] >> y & 1
    )


def find_type3(g: Graph) -> list[TransformFinding]:
    """All congruent quadrangles, both edge pairings tested.

    Each induced C4 is met once via its lowest vertex a, its opposite c and the two
    common neighbours b < d; pairing (ab, cd) gives witness (a, b, c, d) and pairing
    (ad, cb) gives (a, d, c, b).
    """
    rows = g.rows
    findings = []
    for a in g.vertices:
        for c in range(a + 1, g.order):
            if rows[a] >> c & 1:
                continue
            common = [b for b in iter_bits(rows[a] & rows[c]) if b > a]
            for i, b in enumerate(common):
                for d in common[i + 1 :]:
                    if rows[b] >> d & 1:
                        continue
                    for witness in ((a, b, c, d), (a, d, c, b)):
                        if _quadrangle_is_congruent(g, *witness):
                            findings.append(TransformFinding(TransformKind.TYPE3, witness, a))
    findings.sort(key=lambda f: f.witness)
    return findings


def find_all(g: Graph) -> list[TransformFinding]:
    """Every finding, in priority order TYPE1, TYPE2, TYPE3 and by witness within a type."""
    return find_type1(g) + find_type2(g) + find_type3(g)


def first_finding(g: Graph) -> Optional[TransformFinding]:
    for finder in (find_type1, find_type2, find_type3):
        findings = finder(g)
        if findings:
            return findings[0]
    return None


def holds(g: Graph, f: TransformFinding) -> bool:
    """Re-check a finding's neighbourhood equations against g."""
    if any(not 0 <= v < g.order for v in f.witness):
        return False
    rows = g.rows
    if f.kind is TransformKind.TYPE1:
        u, v = f.witness
        return u != v and rows[u] == rows[v] and not rows[u] >> v & 1 and f.removable in f.witness
    if f.kind is TransformKind.TYPE2:
        u, v, w = f.witness
        return (
            len({u, v, w}) == 3
            and not rows[v] >> w & 1
            and not rows[v] & rows[w]
            and rows[u] == rows[v] | rows[w]
            and f.removable == u
        )
    return (
        _is_induced_quadrangle(g, *f.witness)
        and _quadrangle_is_congruent(g, *f.witness)
        and f.removable in f.witness
    )


def apply(g: Graph, f: TransformFinding, before: Optional[Inertia] = None) -> Graph:
    """Delete the finding's removable vertex and check the inertia law."""
    if not holds(g, f):
        raise StaleFindingError(f"{f.to_line()} does not hold on {to_graph6(g)}")

    before = before or inertia(g)
    reduced = g.delete_vertex(f.removable)
    after = inertia(reduced)
    if (after.p, after.n, after.eta) != (before.p, before.n, before.eta - 1):
        raise InertiaLawViolation(
            f"{f.to_line()} on {to_graph6(g)}: inertia {before} -> {after}"
        )
    return reduced


def add_type1(g: Graph, v: VertexId) -> Graph:
    """Add a twin of v (a new vertex with N = N(v))."""
    return g.add_vertex(g.neighbors(v))


@dataclass(frozen=True)
class ReductionStep:
    finding: TransformFinding
    graph6: str


@dataclass
class ReductionChain:
    steps: list[ReductionStep] = field(default_factory=list)
    terminal: Optional[Graph] = None
    terminal_kind: TerminalKind = TerminalKind.STUCK
    terminal_inertia: Optional[Inertia] = None

    def to_lines(self) -> list[str]:
        lines = [f"{step.graph6} {step.finding.to_line()}" for step in self.steps]
        assert self.terminal is not None
        lines.append(f"{to_graph6(self.terminal)} {self.terminal_kind.value}")
        return lines


def reduction_chain(
    g: Graph,
    dstar_check: Callable[[Graph], bool] = is_dstar_member,
) -> ReductionChain:
    """Greedily delete congruent vertices while the nullity is positive.

    Stops at eta = 0, at a D* member, or when no finding exists.
    """
    chain = ReductionChain()
    current = g
    while True:
        ine = inertia(current)
        if ine.eta == 0:
            kind = TerminalKind.ETA_ZERO
            break
        if dstar_check(current):
            kind = TerminalKind.DSTAR_MEMBER
            break
        finding = first_finding(current)
        if finding is None:
            kind = TerminalKind.STUCK
            break
        chain.steps.append(ReductionStep(finding, to_graph6(current)))
        current = apply(current, finding, before=ine)

    chain.terminal = current
    chain.terminal_kind = kind
    chain.terminal_inertia = ine
    logger.debug(f"Reduction chain of {len(chain.steps)} steps ended {kind.value}")
    return chain
