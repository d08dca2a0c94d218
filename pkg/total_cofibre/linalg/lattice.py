"""Subgroups of Z^n in canonical (column HNF) form."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from ..errors import DimensionMismatchError, InputError
from .matrix import IntegerMatrix, MatrixLike, as_dense
from .normal_forms import column_rank_of_hnf, hermite_normal_form, hnf_coordinates, kernel_basis


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^ambient_rank; ``generators`` is its column HNF with zero columns removed.

    Build instances with :meth:`span`; two lattices are equal iff their canonical
    generator matrices are identical.
    """

    ambient_rank: int
    generators: IntegerMatrix

    def __post_init__(self):
        if self.generators.rows != self.ambient_rank:
            raise DimensionMismatchError(
                f"generators have {self.generators.rows} rows in an ambient of rank {self.ambient_rank}"
            )

    @classmethod
    def span(cls, ambient_rank: int, generators: MatrixLike) -> "Lattice":
        gens = as_dense(generators)
        if gens.rows != ambient_rank:
            raise DimensionMismatchError(f"generators have {gens.rows} rows, ambient rank is {ambient_rank}")
        h, _ = hermite_normal_form(gens)
        return cls(ambient_rank, h.select_columns(range(column_rank_of_hnf(h))))

    @classmethod
    def from_vectors(cls, ambient_rank: int, vectors: Sequence[Sequence[int]]) -> "Lattice":
        return cls.span(ambient_rank, IntegerMatrix.from_columns(vectors, ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntegerMatrix.zeros(ambient_rank, 0))

    @classmethod
    def full(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntegerMatrix.identity(ambient_rank))

    @classmethod
    def scaled(cls, ambient_rank: int, factor: int) -> "Lattice":
        """factor * Z^n"""
        if factor == 0:
            return cls.zero(ambient_rank)
        return cls(ambient_rank, IntegerMatrix.identity(ambient_rank).scale(abs(factor)))

    @property
    def rank(self) -> int:
        return self.generators.cols

    def is_zero(self) -> bool:
        return self.rank == 0

    def basis(self) -> list[tuple[int, ...]]:
        return self.generators.columns()

    def coordinates(self, vector: Sequence[int]) -> Optional[tuple[int, ...]]:
        return hnf_coordinates(self.generators, vector)

    def __contains__(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        self._check_compatible(other)
        return all(v in self for v in other.basis())

    def _check_compatible(self, other: "Lattice") -> None:
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatchError(f"lattices in Z^{self.ambient_rank} and Z^{other.ambient_rank}")

    # --- Lattice arithmetic ---
    def __add__(self, other: "Lattice") -> "Lattice":
        self._check_compatible(other)
        return Lattice.span(self.ambient_rank, self.generators.hstack(other.generators))

    def intersection(self, other: "Lattice") -> "Lattice":
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return Lattice.zero(self.ambient_rank)
        # (x, y) with A x = B y, i.e. the kernel of [A | -B]
        kernel = kernel_basis(self.generators.hstack(-other.generators))
        top = kernel.select_rows(range(self.rank))
        return Lattice.span(self.ambient_rank, self.generators @ top)

    def image(self, matrix: MatrixLike) -> "Lattice":
        m = as_dense(matrix)
        if m.cols != self.ambient_rank:
            raise DimensionMismatchError(f"{m.rows}x{m.cols} matrix applied to a lattice in Z^{self.ambient_rank}")
        return Lattice.span(m.rows, m @ self.generators)

    def preimage(self, matrix: MatrixLike) -> "Lattice":
        """{ v : M v in self } as a lattice in the source ambient of ``M``."""
        m = as_dense(matrix)
        if m.rows != self.ambient_rank:
            raise DimensionMismatchError(f"{m.rows}x{m.cols} matrix into a lattice in Z^{self.ambient_rank}")
        kernel = kernel_basis(m.hstack(-self.generators))
        return Lattice.span(m.cols, kernel.select_rows(range(m.cols)))


class LatticeOperation(str, Enum):
    SUM = "sum"
    INTERSECTION = "intersection"
    PREIMAGE = "preimage"


def kernel_lattice(matrix: MatrixLike) -> Lattice:
    m = as_dense(matrix)
    return Lattice.span(m.cols, kernel_basis(m))


def image_lattice(matrix: MatrixLike) -> Lattice:
    m = as_dense(matrix)
    return Lattice.span(m.rows, m)


def lattice_ops(
    a: Lattice,
    b: Lattice,
    kind: LatticeOperation | str,
    matrix: Optional[MatrixLike] = None,
) -> Lattice:
    """Sum, intersection, or preimage of ``b`` under ``matrix`` (``a`` is then the source lattice).

    For the preimage the result is intersected with ``a``, so passing the full
    source lattice as ``a`` gives the plain preimage.
    """
    kind = LatticeOperation(kind)
    if kind is LatticeOperation.SUM:
        return a + b
    if kind is LatticeOperation.INTERSECTION:
        return a.intersection(b)
    if matrix is None:
        raise InputError("preimage needs a matrix")
    return a.intersection(b.preimage(matrix))
