"""Small exact linear algebra over the rationals.

Matrices are dense lists of rows of ``Fraction``; elimination runs on
sparse dict rows internally since the matrices met here (expansions of
k-roots, permutation actions) are very sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

Matrix = List[List[Fraction]]


def identity(size: int) -> Matrix:
    return [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def _sparse_rows(matrix: Sequence[Sequence]) -> list[Dict[int, Fraction]]:
    return [{c: Fraction(x) for c, x in enumerate(row) if x} for row in matrix]


def _eliminate(rows: list[Dict[int, Fraction]], ncols: int) -> list[tuple[int, Dict[int, Fraction]]]:
    """Reduced row echelon form; returns (pivot column, normalized row) pairs.

    The pivot for each column is the first remaining row (in input order)
    with a nonzero entry there.
    """
    pivots: list[tuple[int, Dict[int, Fraction]]] = []
    remaining = [r for r in rows if r]
    for col in range(ncols):
        pick = next((idx for idx, r in enumerate(remaining) if col in r), None)
        if pick is None:
            continue
        prow = remaining.pop(pick)
        inv = 1 / prow[col]
        prow = {c: x * inv for c, x in prow.items()}
        for target in (remaining, [r for _, r in pivots]):
            for r in target:
                factor = r.get(col)
                if factor:
                    for c, x in prow.items():
                        val = r.get(c, 0) - factor * x
                        if val:
                            r[c] = val
                        else:
                            r.pop(c, None)
        pivots.append((col, prow))
        remaining = [r for r in remaining if r]
    return pivots


def rank(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return len(_eliminate(_sparse_rows(matrix), ncols))


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """A basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    pivots = _eliminate(_sparse_rows(matrix), ncols)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for c, row in pivots:
            vec[c] = -row.get(free, 0)
        basis.append(vec)
    return basis


class SingularMatrixError(ArithmeticError):
    pass


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse of a square rational matrix."""
    size = len(matrix)
    rows = _sparse_rows(matrix)
    for idx, r in enumerate(rows):
        r[size + idx] = Fraction(1)
    pivots = _eliminate(rows, size)
    if len(pivots) != size or any(c >= size for c, _ in pivots):
        raise SingularMatrixError("matrix is singular")
    inv = [[Fraction(0)] * size for _ in range(size)]
    for c, row in pivots:
        for cc, x in row.items():
            if cc >= size:
                inv[c][cc - size] = x
    return inv
