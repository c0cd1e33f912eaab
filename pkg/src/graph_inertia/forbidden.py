"""
Six-vertex graphs with three positive eigenvalues that cannot occur as induced subgraphs of a
graph with p = 2.

The first nine are the hexagon v*-x-y-y*-y'-x' with chords drawn from xx', xy', xy* and x'y*,
one class per isomorphism type, named by their third eigenvalue. The last four are fixed by
neighbourhood constraints on labelled vertices; recover_gamma searches every graph meeting
those constraints.
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .canon import CanonicalForm, canonical_form
from .constants import FIG3_TOLERANCE
from .graph import Graph, cycle, from_edges
from .logging_config import get_logger
from .spectral import inertia, lambda3

logger = get_logger(__name__)

ChordClass = tuple[tuple[str, ...], Graph]

HEXAGON_LABELS = ("v*", "x", "y", "y*", "y'", "x'")
CHORDS = {"xx'": (1, 5), "xy'": (1, 4), "xy*": (1, 3), "x'y*": (5, 3)}

# Printed third eigenvalues, grouped by chord count for the hexagon family.
CHORD_NAMES: dict[int, list[tuple[str, float]]] = {
    1: [("Gamma1", 0.6180), ("Gamma2", 0.4142)],
    2: [("Gamma3", 0.5293), ("Gamma4", 0.1830), ("Gamma5", 0.6180)],
    3: [("Gamma6", 0.1124), ("Gamma7", 0.6180), ("Gamma8", 0.2798)],
    4: [("Gamma9", 0.1589)],
}


@dataclass(frozen=True)
class GammaConstraints:
    labels: tuple[str, ...]
    required: tuple[tuple[str, str], ...]
    forbidden: tuple[tuple[str, str], ...]
    expected: float


def _pairs(text: str) -> tuple[tuple[str, str], ...]:
    return tuple(tuple(item.split("-")) for item in text.split())  # type: ignore[misc]


CONSTRAINED: dict[str, GammaConstraints] = {
    "Gamma10": GammaConstraints(
        labels=("v*", "x", "x'", "y", "y'", "y*"),
        required=_pairs("v*-x v*-x' x-y x-y' x'-y x'-y' x'-y* y-y' y-y* y'-y*"),
        forbidden=_pairs("v*-y v*-y' v*-y* x-x' x-y*"),
        expected=0.1505,
    ),
    "Gamma11": GammaConstraints(
        labels=("v*", "x*", "x1", "x2", "y", "y'"),
        required=_pairs("v*-x* v*-x1 v*-x2 x*-x2 x*-y x*-y' x1-y x1-y' x2-y x2-y' y-y'"),
        forbidden=_pairs("v*-y v*-y' x1-x2 x*-x1"),
        expected=0.2679,
    ),
    "Gamma12": GammaConstraints(
        labels=("v*", "x", "x*", "x'", "y", "y'"),
        required=_pairs("v*-x v*-x* v*-x' x-x* x*-x' x-y x'-y x'-y' y-y'"),
        forbidden=_pairs("v*-y v*-y' x-x' x-y' x*-y x*-y'"),
        expected=0.6180,
    ),
    "Gamma13": GammaConstraints(
        labels=("v*", "x", "x*", "x'", "y", "y'"),
        required=_pairs("v*-x v*-x* v*-x' x-x* x*-x' x-y x'-y x'-y' y-y' x*-y'"),
        forbidden=_pairs("v*-y v*-y' x-x' x-y' x*-y"),
        expected=0.1873,
    ),
}


@dataclass(frozen=True)
class GammaEntry:
    """One catalog graph with its computed and printed third eigenvalue."""

    name: str
    graph: Graph
    lambda3: float
    expected: Optional[float]
    flagged: bool = False
    note: str = ""

    @property
    def matches(self) -> bool:
        return self.expected is None or abs(self.lambda3 - self.expected) <= FIG3_TOLERANCE


@dataclass(frozen=True)
class RecoveryResult:
    name: str
    candidates: tuple[Graph, ...]
    matching: tuple[Graph, ...]

    @property
    def unique(self) -> bool:
        return len(self.candidates) == 1


def hexagon_with_chords(chords: Sequence[str]) -> Graph:
    """The hexagon v*-x-y-y*-y'-x' plus the named chords."""
    edges = list(cycle(6).edges()) + [CHORDS[c] for c in chords]
    return from_edges(6, edges)


def chord_classes() -> dict[int, list[ChordClass]]:
    """Isomorphism classes of hexagon-plus-chords graphs by chord count.

    Each class is represented by its lexicographically first chord subset.
    """
    classes: dict[int, list[ChordClass]] = {}
    for size in range(1, len(CHORDS) + 1):
        seen: dict[CanonicalForm, ChordClass] = {}
        for chords in combinations(CHORDS, size):
            g = hexagon_with_chords(chords)
            seen.setdefault(canonical_form(g), (chords, g))
        classes[size] = sorted(seen.values(), key=lambda item: item[0])
    return classes

def _name_chord_classes(size: int, members: list[ChordClass]) -> list[GammaEntry]:
    unused = list(CHORD_NAMES.get(size, []))
    entries = []
    for chords, g in members:
        value = lambda3(g)
        match = next((item for item in unused if abs(value - item[1]) <= FIG3_TOLERANCE), None)
        if match is None:
            label = "+".join(chords)
            logger.warning(f"No printed value matches hexagon + {label} (lambda3 {value:.4f})")
            entries.append(
                GammaEntry(f"C6+{label}", g, value, None, flagged=True, note="unmatched")
            )
            continue
        unused.remove(match)
        entries.append(GammaEntry(match[0], g, value, match[1], note="chords " + " ".join(chords)))
    for name, expected in unused:
        logger.warning(f"{name} (lambda3 {expected}) has no matching chord class")
    return entries


def _candidates(constraints: GammaConstraints) -> Iterator[Graph]:
    index = {label: i for i, label in enumerate(constraints.labels)}
    required = [(index[a], index[b]) for a, b in constraints.required]
    excluded = {frozenset((index[a], index[b])) for a, b in constraints.forbidden}
    fixed = excluded | {frozenset(pair) for pair in required}
    free = [
        (i, j)
        for i, j in combinations(range(len(constraints.labels)), 2)
        if frozenset((i, j)) not in fixed
    ]
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            yield from_edges(len(constraints.labels), required + list(extra))


def recover_gamma(name: str) -> RecoveryResult:
    """All graphs meeting a constrained entry's neighbourhood conditions with p = 3.

    ``matching`` holds the candidates whose third eigenvalue is within tolerance of the
    printed value.
    """
    if name not in CONSTRAINED:
        raise KeyError(f"no neighbourhood constraints recorded for {name}")
    constraints = CONSTRAINED[name]

    seen: dict[CanonicalForm, Graph] = {}
    for g in _candidates(constraints):
        if inertia(g).p == 3:
            seen.setdefault(canonical_form(g), g)
    candidates = tuple(seen[form] for form in sorted(seen))
    matching = tuple(
        g for g in candidates if abs(lambda3(g) - constraints.expected) <= FIG3_TOLERANCE
    )
    logger.debug(f"{name}: {len(candidates)} candidates, {len(matching)} matching")
    return RecoveryResult(name, candidates, matching)


def _constrained_entry(name: str) -> list[GammaEntry]:
    result = recover_gamma(name)
    expected = CONSTRAINED[name].expected
    if result.unique and result.matching:
        g = result.matching[0]
        return [GammaEntry(name, g, lambda3(g), expected)]
    if not result.candidates:
        logger.warning(f"{name}: no graph meets the neighbourhood constraints with p = 3")
        return []

    note = f"{len(result.candidates)} candidates, {len(result.matching)} within tolerance"
    logger.warning(f"{name} flagged for review: {note}")
    return [
        GammaEntry(name, g, lambda3(g), expected, flagged=True, note=note)
        for g in result.candidates
    ]


@lru_cache(maxsize=1)
def _catalog() -> tuple[GammaEntry, ...]:
    base = cycle(6)
    entries = [GammaEntry("C6", base, lambda3(base), None, note="no chord")]
    for size, members in chord_classes().items():
        entries.extend(_name_chord_classes(size, members))
    for name in CONSTRAINED:
        entries.extend(_constrained_entry(name))
    return tuple(entries)


def forbidden_catalog() -> list[GammaEntry]:
    """C6, the nine hexagon-plus-chord classes and the four constrained graphs."""
    return list(_catalog())


@lru_cache(maxsize=1)
def _catalog_forms() -> dict[CanonicalForm, str]:
    forms: dict[CanonicalForm, str] = {}
    for entry in _catalog():
        forms.setdefault(canonical_form(entry.graph), entry.name)
    return forms


def contains_forbidden(g: Graph) -> Optional[str]:
    """Name of a catalog graph occurring as an induced subgraph of g, or None."""
    forms = _catalog_forms()
    for subset in combinations(g.vertices, 6):
        name = forms.get(canonical_form(g.induced_subgraph(subset)))
        if name is not None:
            return name
    return None
