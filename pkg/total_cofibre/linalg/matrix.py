"""Arbitrary-precision integer matrices, dense and sparse.

Entries are Python ``int`` throughout, so no arithmetic ever overflows. Dense
matrices are immutable and row-major; normal-form routines copy them into
mutable lists of rows before reducing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ..errors import DimensionMismatchError


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # --- Constructors ---
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        n_rows = len(rows)
        if cols is None:
            cols = len(rows[0]) if n_rows else 0
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatchError(f"ragged row of length {len(row)}, expected {cols}")
        return cls(n_rows, cols, tuple(int(x) for row in rows for x in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        for column in columns:
            if len(column) != rows:
                raise DimensionMismatchError(f"column of length {len(column)}, expected {rows}")
        return cls(rows, len(columns), tuple(int(columns[j][i]) for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            data[i][i] = value
        return cls.from_rows(data, cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntegerMatrix"]) -> "IntegerMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(block.to_rows()):
                data[r0 + i][c0 : c0 + block.cols] = row
            r0 += block.rows
            c0 += block.cols
        return cls.from_rows(data, cols)

    # --- Access ---
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # --- Algebra ---
    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows, tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        data = []
        for i in range(self.rows):
            row = self.row(i)
            nonzero = [(k, a) for k, a in enumerate(row) if a]
            data.extend(sum(a * col[k] for k, a in nonzero) for col in other_cols)
        return IntegerMatrix(self.rows, other.cols, tuple(data))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for a matrix with {self.cols} columns")
        return tuple(sum(a * v for a, v in zip(self.row(i), vector) if a) for i in range(self.rows))

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return IntegerMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, factor: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(factor * a for a in self.entries))

    def hstack(self, *others: "IntegerMatrix") -> "IntegerMatrix":
        blocks = (self, *others)
        for block in blocks:
            if block.rows != self.rows:
                raise DimensionMismatchError(f"hstack of {self.shape} with {block.shape}")
        data = [list(self.row(i)) for i in range(self.rows)]
        for block in others:
            for i in range(self.rows):
                data[i].extend(block.row(i))
        return IntegerMatrix.from_rows(data, sum(b.cols for b in blocks))

    def vstack(self, *others: "IntegerMatrix") -> "IntegerMatrix":
        for block in others:
            if block.cols != self.cols:
                raise DimensionMismatchError(f"vstack of {self.shape} with {block.shape}")
        return IntegerMatrix(
            self.rows + sum(b.rows for b in others), self.cols, self.entries + sum((b.entries for b in others), ())
        )

    def select_rows(self, indices: Iterable[int]) -> "IntegerMatrix":
        indices = list(indices)
        return IntegerMatrix(len(indices), self.cols, tuple(x for i in indices for x in self.row(i)))

    def select_columns(self, indices: Iterable[int]) -> "IntegerMatrix":
        indices = list(indices)
        return IntegerMatrix(
            self.rows, len(indices), tuple(self.entries[i * self.cols + j] for i in range(self.rows) for j in indices)
        )

    def determinant(self) -> int:
        """Bareiss fraction-free elimination; exact for any entry size."""
        if not self.is_square():
            raise DimensionMismatchError(f"determinant of non-square {self.shape}")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, previous = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.determinant()) == 1

    # --- Sparse interchange ---
    def to_triplets(self) -> list[tuple[int, int, int]]:
        return [(i, j, a) for i in range(self.rows) for j, a in enumerate(self.row(i)) if a]

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "IntegerMatrix":
        return SparseMatrix.from_triplets(rows, cols, triplets).to_dense()

    def to_sparse(self) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {(i, j): a for i, j, a in self.to_triplets()})

    def to_dense(self) -> "IntegerMatrix":
        return self

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_rows()})"


@dataclass(frozen=True)
class SparseMatrix:
    """Triplet form for boundary matrices; nerve boundaries are mostly zero."""

    rows: int
    cols: int
    data: dict[tuple[int, int], int]

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "SparseMatrix":
        data: dict[tuple[int, int], int] = {}
        for i, j, value in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatchError(f"triplet ({i}, {j}) outside a {rows}x{cols} matrix")
            total = data.get((i, j), 0) + int(value)
            if total:
                data[(i, j)] = total
            else:
                data.pop((i, j), None)
        return cls(rows, cols, data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> IntegerMatrix:
        entries = [0] * (self.rows * self.cols)
        for (i, j), value in self.data.items():
            entries[i * self.cols + j] = value
        return IntegerMatrix(self.rows, self.cols, tuple(entries))

    def to_triplets(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, a) for (i, j), a in self.data.items())

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.to_triplets())))


MatrixLike = Union[IntegerMatrix, SparseMatrix]


def as_dense(matrix: MatrixLike) -> IntegerMatrix:
    return matrix.to_dense()
