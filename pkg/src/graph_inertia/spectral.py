"""
Exact inertia by symmetric congruent elimination, plus a Jacobi eigensolver.

The exact path never touches floating point. Integer matrices go through fraction-free
(Bareiss) symmetric elimination over Python ints; rational matrices through plain
Fraction elimination. Both use the same pivot rules:

  a. pivot on any nonzero diagonal entry and eliminate its row and column;
  b. if the diagonal is zero but some a_ij is not, add row j to row i and column j to
     column i (diagonal entry becomes 2 a_ij) and pivot on i;
  c. whatever remains once every entry is zero counts toward the nullity.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .constants import DEFAULT_TOLERANCE, FLOAT_SIGN_THRESHOLD, JACOBI_MAX_SWEEPS
from .graph import Graph, VertexId
from .logging_config import get_logger

logger = get_logger(__name__)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Inertia:
    """Counts of positive (p), negative (n) and zero (eta) eigenvalues."""

    p: int
    n: int
    eta: int

    def __post_init__(self) -> None:
        if min(self.p, self.n, self.eta) < 0:
            raise ValueError(f"negative inertia component in {self}")

    @property
    def order(self) -> int:
        return self.p + self.n + self.eta

    def as_dict(self) -> dict[str, int]:
        return {"p": self.p, "n": self.n, "eta": self.eta}

    def __str__(self) -> str:
        return f"({self.p}, {self.n}, {self.eta})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted in non-increasing order."""

    values: tuple[float, ...]
    tolerance: float

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def lambda_(self, i: int) -> float:
        """The i-th largest eigenvalue, 1-based as in lambda_1 >= lambda_2 >= ..."""
        return self.values[i - 1]

    def sign_counts(self, threshold: float = FLOAT_SIGN_THRESHOLD) -> Inertia:
        positive = sum(1 for x in self.values if x > threshold)
        negative = sum(1 for x in self.values if x < -threshold)
        return Inertia(positive, negative, len(self.values) - positive - negative)


def _sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def _bareiss_inertia(a: list[list[int]]) -> Inertia:
    """Fraction-free symmetric elimination; a is consumed.

    Every stage entry is a minor of the (congruence-transformed) input, so the exact
    integer division by the previous pivot never leaves a remainder. The true pivot is
    d_k / d_{k-1}; only its sign matters.
    """
    size = len(a)
    alive = list(range(size))
    prev = 1
    positive = negative = 0

    while alive:
        pivot = next((i for i in alive if a[i][i]), None)
        if pivot is None:
            pair = next(((i, j) for i in alive for j in alive if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for c in alive:
                a[i][c] += a[j][c]
            for r in alive:
                a[r][i] += a[r][j]
            pivot = i

        d = a[pivot][pivot]
        if _sign(d) == _sign(prev):
            positive += 1
        else:
            negative += 1

        alive.remove(pivot)
        row = a[pivot]
        for i in alive:
            ai = a[i]
            f = ai[pivot]
            for j in alive:
                ai[j] = (d * ai[j] - f * row[j]) // prev
        prev = d

    return Inertia(positive, negative, len(alive))


def congruence_diagonal(matrix: Sequence[Sequence[Number]]) -> list[Fraction]:
    """Diagonal of a congruent diagonalisation over the rationals.

    Returns one entry per row: the pivots in elimination order followed by zeros for the
    block that vanished. Sylvester's law makes the sign pattern an invariant of the input.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    alive = list(range(len(a)))
    diagonal: list[Fraction] = []

    while alive:
        pivot = next((i for i in alive if a[i][i]), None)
        if pivot is None:
            pair = next(((i, j) for i in alive for j in alive if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for c in alive:
                a[i][c] += a[j][c]
            for r in alive:
                a[r][i] += a[r][j]
            pivot = i

        d = a[pivot][pivot]
        diagonal.append(d)
        alive.remove(pivot)
        for i in alive:
            factor = a[i][pivot] / d
            if factor:
                for j in alive:
                    a[i][j] -= factor * a[pivot][j]

    diagonal.extend(Fraction(0) for _ in alive)
    return diagonal


def _check_square_symmetric(matrix: Sequence[Sequence[Number]]) -> None:
    size = len(matrix)
    for i, row in enumerate(matrix):
        if len(row) != size:
            raise ValueError("matrix is not square")
        for j in range(i):
            if row[j] != matrix[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")


def matrix_inertia(matrix: Sequence[Sequence[Number]]) -> Inertia:
    """Exact inertia of a symmetric integer or rational matrix."""
    _check_square_symmetric(matrix)
    if all(isinstance(x, int) for row in matrix for x in row):
        return _bareiss_inertia([list(row) for row in matrix])

    diagonal = congruence_diagonal(matrix)
    positive = sum(1 for d in diagonal if d > 0)
    negative = sum(1 for d in diagonal if d < 0)
    return Inertia(positive, negative, len(diagonal) - positive - negative)


def rows_inertia(order: int, rows: Sequence[int]) -> Inertia:
    """Inertia of the 0/1 adjacency matrix given as bitset rows."""
    return _bareiss_inertia([[row >> j & 1 for j in range(order)] for row in rows])


def inertia(g: Graph) -> Inertia:
    """Exact (p, n, eta) of the adjacency matrix of g."""
    return rows_inertia(g.order, g.rows)


def jacobi_eigenvalues(
    matrix: Sequence[Sequence[float]],
    tol: float = DEFAULT_TOLERANCE,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted descending."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    a = np.array(matrix, dtype=float)
    size = a.shape[0]
    if size == 0:
        return np.zeros(0)

    for _ in range(max_sweeps):
        off = float(np.sqrt(np.sum(np.square(a - np.diag(np.diag(a))))))
        if off < tol:
            break
        rotated = False
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                rotated = True
        if not rotated:
            break
    else:
        logger.warning(f"Jacobi did not reach tolerance {tol} after {max_sweeps} sweeps")

    return np.sort(np.diag(a))[::-1]


def eigenvalues(g: Graph, tol: float = DEFAULT_TOLERANCE) -> Spectrum:
    """Adjacency spectrum of g, sorted descending."""
    values = jacobi_eigenvalues(g.adjacency_matrix(), tol)
    return Spectrum(tuple(float(x) for x in values), tol)


def lambda3(g: Graph, tol: float = DEFAULT_TOLERANCE) -> float:
    """Third largest adjacency eigenvalue."""
    if g.order < 3:
        raise ValueError("lambda_3 needs at least 3 vertices")
    return eigenvalues(g, tol).lambda_(3)


def pendant_reduce(g: Graph) -> Optional[tuple[Graph, VertexId, VertexId]]:
    """Delete the lowest pendant vertex together with its neighbour."""
    for v in g.vertices:
        row = g.rows[v]
        if row and row & (row - 1) == 0:
            support = row.bit_length() - 1
            remaining = [u for u in g.vertices if u not in (v, support)]
            return g.induced_subgraph(remaining), v, support
    return None


def is_one_positive(g: Graph) -> bool:
    """Smith's criterion: the non-isolated vertices form a complete multipartite graph.

    Non-adjacency among non-isolated vertices must be transitive, which for a graph
    with at least one edge means non-adjacent vertices have equal neighbourhoods.
    """
    active = [v for v in g.vertices if g.rows[v]]
    if not active:
        return False
    for i, u in enumerate(active):
        for v in active[i + 1 :]:
            if not g.rows[u] >> v & 1 and g.rows[u] != g.rows[v]:
                return False
    return True

