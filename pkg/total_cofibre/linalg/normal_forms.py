"""Hermite and Smith normal forms over the integers, and Diophantine solving.

Both reductions pick as pivot the nonzero entry of minimal absolute value (ties
broken by lowest row, then lowest column), which keeps coefficient growth in
check and makes every output deterministic.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from ..errors import DimensionMismatchError
from .matrix import IntegerMatrix, MatrixLike, as_dense


# --- Configure Logging ---
logger = logging.getLogger(__name__)


def _identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _column_axpy(rows: list[list[int]], target: int, source: int, factor: int) -> None:
    """column[target] -= factor * column[source]"""
    for row in rows:
        if row[source]:
            row[target] -= factor * row[source]


def _swap_columns(rows: list[list[int]], a: int, b: int) -> None:
    if a != b:
        for row in rows:
            row[a], row[b] = row[b], row[a]


def hermite_normal_form(matrix: MatrixLike) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Column Hermite normal form.

    Returns ``(H, U)`` with ``H = M @ U`` and ``U`` unimodular. ``H`` is a lower
    staircase: pivot column ``k`` has its first nonzero entry (positive) in a row
    strictly below the pivot row of column ``k - 1``; the entries of a pivot row
    in the earlier columns are reduced into ``[0, pivot)`` and those in later
    columns are zero. Zero columns come last.
    """
    m = as_dense(matrix)
    # column storage: every operation below is a column operation
    h = [list(c) for c in m.columns()]
    u = [list(c) for c in IntegerMatrix.identity(m.cols).columns()]

    def axpy(j: int, k: int, q: int) -> None:
        h[j] = [a - q * b for a, b in zip(h[j], h[k])]
        u[j] = [a - q * b for a, b in zip(u[j], u[k])]

    k = 0
    for i in range(m.rows):
        if k == m.cols:
            break
        while True:
            candidates = [j for j in range(k, m.cols) if h[j][i]]
            if not candidates:
                break
            pivot = min(candidates, key=lambda j: (abs(h[j][i]), j))
            h[k], h[pivot] = h[pivot], h[k]
            u[k], u[pivot] = u[pivot], u[k]
            done = True
            for j in range(k + 1, m.cols):
                if h[j][i]:
                    axpy(j, k, h[j][i] // h[k][i])
                    done = done and not h[j][i]
            if done:
                break
        if h[k][i] == 0:
            continue
        if h[k][i] < 0:
            h[k] = [-a for a in h[k]]
            u[k] = [-a for a in u[k]]
        for j in range(k):
            q = h[j][i] // h[k][i]
            if q:
                axpy(j, k, q)
        k += 1
    logger.debug(f"[hermite_normal_form] {m.rows}x{m.cols} matrix has rank {k}")
    return IntegerMatrix.from_columns(h, m.rows), IntegerMatrix.from_columns(u, m.cols)


def column_rank_of_hnf(h: IntegerMatrix) -> int:
    return sum(1 for j in range(h.cols) if any(h.column(j)))


def smith_normal_form(matrix: MatrixLike) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Smith normal form ``D = U @ M @ V`` with ``d_1 | d_2 | ...`` and positive diagonal."""
    m = as_dense(matrix)
    rows, cols = m.rows, m.cols
    d = m.to_rows()
    u = _identity_rows(rows)
    v = _identity_rows(cols)

    def row_axpy(target: int, source: int, factor: int) -> None:
        d[target] = [a - factor * b for a, b in zip(d[target], d[source])]
        u[target] = [a - factor * b for a, b in zip(u[target], u[source])]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            d[t], d[pi] = d[pi], d[t]
            u[t], u[pi] = u[pi], u[t]
            _swap_columns(d, t, pj)
            _swap_columns(v, t, pj)

            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_axpy(i, t, d[i][t] // d[t][t])
                    clean = clean and not d[i][t]
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    _column_axpy(d, j, t, q)
                    _column_axpy(v, j, t, q)
                    clean = clean and not d[t][j]
            if not clean:
                continue
            # divisibility: fold an offending row into row t and reduce again
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t]),
                None,
            )
            if offender is None:
                break
            d[t] = [a + b for a, b in zip(d[t], d[offender])]
            u[t] = [a + b for a, b in zip(u[t], u[offender])]
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
    return (
        IntegerMatrix.from_rows(d, cols),
        IntegerMatrix.from_rows(u, rows),
        IntegerMatrix.from_rows(v, cols),
    )


def invariant_factors(matrix: MatrixLike) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(matrix)
    return tuple(d[i, i] for i in range(min(d.rows, d.cols)) if d[i, i])


def is_smith_normal_form(d: IntegerMatrix) -> bool:
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d[i, j]:
                return False
    diagonal = [d[i, i] for i in range(min(d.rows, d.cols))]
    nonzero = [x for x in diagonal if x]
    if any(x < 0 for x in diagonal) or diagonal[: len(nonzero)] != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def hnf_coordinates(basis: IntegerMatrix, vector: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coordinates of ``vector`` in the columns of a column-HNF ``basis`` without zero columns.

    Forward substitution along the pivot rows; ``None`` when the vector is not an
    integer combination of the columns.
    """
    if len(vector) != basis.rows:
        raise DimensionMismatchError(f"vector of length {len(vector)} in an ambient of rank {basis.rows}")
    residual = list(vector)
    coordinates = []
    row = 0
    for k in range(basis.cols):
        column = basis.column(k)
        while column[row] == 0:
            if residual[row]:
                return None
            row += 1
        c, r = divmod(residual[row], column[row])
        if r:
            return None
        coordinates.append(c)
        if c:
            for i in range(row, basis.rows):
                if column[i]:
                    residual[i] -= c * column[i]
        row += 1
    if any(residual):
        return None
    return tuple(coordinates)


def kernel_basis(matrix: MatrixLike) -> IntegerMatrix:
    """Columns form a basis of the integer kernel (the trailing columns of the HNF transform)."""
    m = as_dense(matrix)
    h, u = hermite_normal_form(m)
    rank = column_rank_of_hnf(h)
    return u.select_columns(range(rank, m.cols))


def solve_integer(matrix: MatrixLike, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """An integer solution ``x`` of ``M x = b``, or ``None`` if there is none."""
    m = as_dense(matrix)
    if len(b) != m.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {m.rows} equations")
    h, u = hermite_normal_form(m)
    rank = column_rank_of_hnf(h)
    y = hnf_coordinates(h.select_columns(range(rank)), b)
    if y is None:
        return None
    return u.select_columns(range(rank)).apply(y)
