"""Finitely generated abelian groups as subquotients L1/L2 of Z^n.

Every homology group and every lim^p value in the package is a
:class:`SubquotientGroup`; maps between them are :class:`GroupHomomorphism`
instances carrying an ambient integer matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import ContainmentError, DimensionMismatchError, InvalidMapError
from .lattice import Lattice
from .matrix import IntegerMatrix, MatrixLike, as_dense
from .normal_forms import invariant_factors


# --- Configure Logging ---
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubquotientGroup:
    ambient_rank: int
    numerator: Lattice
    denominator: Lattice
    free_rank: int
    torsion: tuple[int, ...]

    # --- Constructors ---
    @classmethod
    def zero(cls, ambient_rank: int = 0) -> "SubquotientGroup":
        return group_structure(Lattice.zero(ambient_rank), Lattice.zero(ambient_rank))

    @classmethod
    def free(cls, rank: int) -> "SubquotientGroup":
        return group_structure(Lattice.full(rank), Lattice.zero(rank))

    @classmethod
    def cyclic(cls, order: int, copies: int = 1) -> "SubquotientGroup":
        """(Z/order)^copies; order 0 gives Z^copies."""
        return group_structure(Lattice.full(copies), Lattice.scaled(copies, order))

    # --- Structure ---
    @property
    def structure(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.torsion

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_isomorphic(self, other: "SubquotientGroup") -> bool:
        return self.structure == other.structure

    def dimension_over(self, characteristic: int) -> int:
        """dim of (self ⊗ F) for the prime field of the given characteristic (0 = Q)."""
        if characteristic == 0:
            return self.free_rank
        return self.free_rank + sum(1 for d in self.torsion if d % characteristic == 0)

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_record(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def group_structure(numerator: Lattice, denominator: Lattice) -> SubquotientGroup:
    """The invariant-factor decomposition of numerator / denominator."""
    if numerator.ambient_rank != denominator.ambient_rank:
        raise DimensionMismatchError(
            f"numerator in Z^{numerator.ambient_rank}, denominator in Z^{denominator.ambient_rank}"
        )
    columns = []
    for v in denominator.basis():
        coordinates = numerator.coordinates(v)
        if coordinates is None:
            raise ContainmentError(f"denominator generator {list(v)} is not in the numerator")
        columns.append(coordinates)
    inclusion = IntegerMatrix.from_columns(columns, numerator.rank)
    factors = invariant_factors(inclusion)
    return SubquotientGroup(
        ambient_rank=numerator.ambient_rank,
        numerator=numerator,
        denominator=denominator,
        free_rank=numerator.rank - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )


def direct_sum(groups: Sequence[SubquotientGroup]) -> SubquotientGroup:
    """Block direct sum; ambient coordinates are concatenated in order."""
    rank = sum(g.ambient_rank for g in groups)
    numerator = Lattice.span(rank, IntegerMatrix.block_diagonal([g.numerator.generators for g in groups]))
    denominator = Lattice.span(rank, IntegerMatrix.block_diagonal([g.denominator.generators for g in groups]))
    return group_structure(numerator, denominator)


@dataclass(frozen=True)
class GroupHomomorphism:
    """The map of subquotients induced by an ambient integer matrix."""

    matrix: IntegerMatrix
    source: SubquotientGroup
    target: SubquotientGroup

    def kernel(self) -> SubquotientGroup:
        lattice = self.source.numerator.intersection(self.target.denominator.preimage(self.matrix))
        return group_structure(lattice, self.source.denominator)

    def image(self) -> SubquotientGroup:
        lattice = self.source.numerator.image(self.matrix) + self.target.denominator
        return group_structure(lattice, self.target.denominator)

    def cokernel(self) -> SubquotientGroup:
        return group_structure(self.target.numerator, self.image().numerator)

    def is_zero(self) -> bool:
        return self.target.denominator.contains_lattice(self.source.numerator.image(self.matrix))

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.image().numerator == self.target.numerator

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, first: "GroupHomomorphism") -> "GroupHomomorphism":
        """self ∘ first"""
        return GroupHomomorphism(self.matrix @ first.matrix, first.source, self.target)

    def equals(self, other: "GroupHomomorphism") -> bool:
        """Equality as maps of subquotients: the ambient difference lands in the denominator."""
        if self.source.numerator != other.source.numerator or self.target.numerator != other.target.numerator:
            return False
        difference = self.matrix - other.matrix
        return self.target.denominator.contains_lattice(self.source.numerator.image(difference))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(vector)


def induced_map(matrix: MatrixLike, source: SubquotientGroup, target: SubquotientGroup) -> GroupHomomorphism:
    """Check that ``matrix`` respects numerators and denominators, and wrap it."""
    f = as_dense(matrix)
    if f.shape != (target.ambient_rank, source.ambient_rank):
        raise DimensionMismatchError(
            f"{f.rows}x{f.cols} matrix between ambients Z^{source.ambient_rank} -> Z^{target.ambient_rank}"
        )
    if not target.numerator.contains_lattice(source.numerator.image(f)):
        raise InvalidMapError("matrix does not map the source numerator into the target numerator")
    if not target.denominator.contains_lattice(source.denominator.image(f)):
        raise InvalidMapError("matrix does not map the source denominator into the target denominator")
    return GroupHomomorphism(f, source, target)


def identity_map(group: SubquotientGroup) -> GroupHomomorphism:
    return GroupHomomorphism(IntegerMatrix.identity(group.ambient_rank), group, group)


@dataclass(frozen=True)
class SubquotientComplex:
    """A complex of subquotient groups with ambient integer differentials.

    ``differentials[k]`` maps ``terms[k]`` to ``terms[k + step]``; ``step`` is +1
    for cochain complexes and -1 for chain complexes.
    """

    terms: Mapping[int, SubquotientGroup]
    differentials: Mapping[int, IntegerMatrix]
    step: int = 1
    checked: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.step not in (1, -1):
            raise DimensionMismatchError(f"degree step must be +1 or -1, got {self.step}")
        for k, d in self.differentials.items():
            source = self.term(k)
            target = self.term(k + self.step)
            if d.shape != (target.ambient_rank, source.ambient_rank):
                raise DimensionMismatchError(f"differential in degree {k} has shape {d.shape}")
            if self.checked:
                induced_map(d, source, target)
                following = self.differentials.get(k + self.step)
                if following is not None:
                    square = following @ d
                    landing = self.term(k + 2 * self.step).denominator
                    if not landing.contains_lattice(source.numerator.image(square)):
                        raise InvalidMapError(f"differential does not square to zero at degree {k}")

    def term(self, k: int) -> SubquotientGroup:
        return self.terms.get(k) or SubquotientGroup.zero(0)

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def cohomology(self, k: int) -> SubquotientGroup:
        term = self.terms.get(k)
        if term is None:
            return SubquotientGroup.zero(0)
        cycles = term.numerator
        outgoing = self.differentials.get(k)
        if outgoing is not None:
            cycles = cycles.intersection(self.term(k + self.step).denominator.preimage(outgoing))
        boundaries = term.denominator
        incoming = self.differentials.get(k - self.step)
        if incoming is not None:
            boundaries = boundaries + self.term(k - self.step).numerator.image(incoming)
        return group_structure(cycles, boundaries)


def free_subquotient_complex(
    ranks: Mapping[int, int],
    differentials: Mapping[int, IntegerMatrix],
    step: int,
    modulus: int = 0,
) -> SubquotientComplex:
    """Free modules Z^r reduced mod ``modulus`` (0 keeps them free) with the given differentials."""
    terms = {k: group_structure(Lattice.full(r), Lattice.scaled(r, modulus)) for k, r in ranks.items()}
    # the integer differentials already square to zero; no need to recheck
    return SubquotientComplex(terms, dict(differentials), step=step, checked=False)
