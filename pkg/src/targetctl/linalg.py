"""Exact linear algebra over the rationals.

Matrices are lists of rows whose entries are ``int`` or ``Fraction``.  Rank is
computed with fraction-free (Bareiss) elimination after clearing denominators
row by row, so every intermediate value is an exact integer.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

Scalar = int | Fraction
Matrix = list[list[Scalar]]


def integer_row(row: Sequence[Scalar]) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    lcm = 1
    for x in row:
        if isinstance(x, Fraction):
            lcm = math.lcm(lcm, x.denominator)
    return [int(x * lcm) for x in row]


def rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    m = [integer_row(row) for row in matrix]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, rows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


class ColumnSpan:
    """Incrementally grown span of integer vectors, for early-exit rank tests."""

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self._basis: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def full(self) -> bool:
        return self.rank == self.dim

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Add a vector; return True if it enlarged the span."""
        v = integer_row(vector)
        for pivot, b in self._basis:
            a = v[pivot]
            if a:
                p = b[pivot]
                v = [p * x - a * y for x, y in zip(v, b)]
                g = math.gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        self._basis.append((lead, v))
        return True


EQUILIBRATION_SWEEPS = 3


def _nonzero(norms: np.ndarray) -> np.ndarray:
    return np.where(norms == 0, 1.0, norms)


def float_rank(matrix: Sequence[Sequence[Scalar]], rtol: float = 1e-8) -> int:
    """Numerical rank: singular values above ``rtol`` times the largest one.

    Rows and columns are first scaled to unit norm a few times. Scaling keeps
    the rank but removes the magnitude spread of high matrix powers, which
    would otherwise push genuine singular values below the threshold.
    """
    a = np.array([[float(x) for x in row] for row in matrix], dtype=float)
    if a.size == 0:
        return 0
    for _ in range(EQUILIBRATION_SWEEPS):
        a = a / _nonzero(np.linalg.norm(a, axis=0))
        a = a / _nonzero(np.linalg.norm(a, axis=1))[:, None]
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def format_scalar(x: Scalar) -> str:
    return str(Fraction(x))


def parse_scalar(text: str | int) -> Scalar:
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value
