"""Exact matrices over Q or F_p, backed by sympy's DomainMatrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import InputError
from ..linalg import IntegerMatrix


@dataclass(frozen=True)
class Field:
    """Q for characteristic 0, F_p otherwise."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic and not isprime(self.characteristic):
            raise InputError(f"F_{self.characteristic} is not a field: {self.characteristic} is not prime")

    @property
    def domain(self):
        return GF(self.characteristic) if self.characteristic else QQ

    @property
    def name(self) -> str:
        return f"fp:{self.characteristic}" if self.characteristic else "q"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """``q`` for the rationals, ``fp:<p>`` for a prime field."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(0)
        if text.startswith("fp:") and text[3:].isdigit():
            return cls(int(text[3:]))
        raise InputError(f"unknown field '{text}'; use 'q' or 'fp:<prime>'")


RATIONALS = Field(0)


class FieldMatrix:
    """An immutable rows x cols matrix over a :class:`Field`.

    Entries are kept as a row list of domain elements; reductions go through
    :meth:`DomainMatrix.rref`. Empty shapes are handled here because the
    reduction routines expect at least one row and column.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, rows: int, cols: int, data: Sequence[Sequence]):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = [list(row) for row in data]
        if len(self._data) != rows or any(len(row) != cols for row in self._data):
            raise InputError(f"field matrix data does not have shape {rows}x{cols}")

    # --- Constructors ---
    @classmethod
    def from_integer(cls, matrix: IntegerMatrix, field: Field) -> "FieldMatrix":
        k = field.domain
        return cls(field, matrix.rows, matrix.cols, [[k(x) for x in matrix.row(i)] for i in range(matrix.rows)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FieldMatrix":
        zero = field.domain.zero
        return cls(field, rows, cols, [[zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "FieldMatrix":
        k = field.domain
        return cls(field, n, n, [[k.one if i == j else k.zero for j in range(n)] for i in range(n)])

    # --- Access ---
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]):
        i, j = index
        return self._data[i][j]

    def to_list(self) -> list[list]:
        return [list(row) for row in self._data]

    def is_zero(self) -> bool:
        return all(not x for row in self._data for x in row)

    def _domain_matrix(self) -> DomainMatrix:
        return DomainMatrix(self.to_list(), self.shape, self.field.domain)

    # --- Algebra ---
    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        if not (self.rows and self.cols and other.cols):
            return FieldMatrix.zeros(self.field, self.rows, other.cols)
        product = self._domain_matrix().matmul(other._domain_matrix())
        return FieldMatrix(self.field, self.rows, other.cols, product.to_list())

    def hstack(self, *others: "FieldMatrix") -> "FieldMatrix":
        data = [list(row) for row in self._data]
        for other in others:
            if other.rows != self.rows:
                raise InputError(f"hstack of {self.shape} with {other.shape}")
            for i in range(self.rows):
                data[i].extend(other._data[i])
        return FieldMatrix(self.field, self.rows, self.cols + sum(o.cols for o in others), data)

    def select_rows(self, indices: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix(self.field, len(indices), self.cols, [self._data[i] for i in indices])

    def select_columns(self, indices: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix(self.field, self.rows, len(indices), [[row[j] for j in indices] for row in self._data])

    # --- Reduction ---
    def rref(self) -> tuple["FieldMatrix", tuple[int, ...]]:
        if not (self.rows and self.cols):
            return self, ()
        reduced, pivots = self._domain_matrix().rref()
        return FieldMatrix(self.field, self.rows, self.cols, reduced.to_list()), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "FieldMatrix":
        """Columns form a basis of the kernel."""
        reduced, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        k = self.field.domain
        columns = []
        for f in free:
            vector = [k.zero] * self.cols
            vector[f] = k.one
            for row, pivot in enumerate(pivots):
                vector[pivot] = -reduced[row, f]
            columns.append(vector)
        return FieldMatrix(self.field, self.cols, len(columns), [[c[i] for c in columns] for i in range(self.cols)])

    def independent_columns(self) -> "FieldMatrix":
        """A basis of the column space chosen among the columns."""
        return self.select_columns(self.rref()[1])

    def extend_basis(self, span: "FieldMatrix") -> "FieldMatrix":
        """Columns of ``self`` that extend a basis of span(span) to one of span(span + self)."""
        _, pivots = span.hstack(self).rref()
        return self.select_columns([j - span.cols for j in pivots if j >= span.cols])

    def solve(self, rhs: "FieldMatrix") -> "FieldMatrix":
        """X with self @ X = rhs, for ``self`` of full column rank and rhs in its column space."""
        if not self.cols or not rhs.cols:
            if not rhs.is_zero():
                raise InputError("right-hand side is not in the column space")
            return FieldMatrix.zeros(self.field, self.cols, rhs.cols)
        reduced, pivots = self.hstack(rhs).rref()
        if pivots[: self.cols] != tuple(range(self.cols)) or len(pivots) > self.cols:
            raise InputError("system is not uniquely solvable")
        return reduced.select_rows(range(self.cols)).select_columns(range(self.cols, self.cols + rhs.cols))

    def __repr__(self) -> str:
        return f"FieldMatrix({self.field.name}, {self.to_list()})"
