"""Integral homology, induced maps, mapping cones and acyclicity tests."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..linalg import (
    GroupHomomorphism,
    IntegerMatrix,
    SubquotientGroup,
    free_subquotient_complex,
    group_structure,
    image_lattice,
    induced_map,
    kernel_lattice,
)
from .complexes import ChainComplex, ChainMap


# --- Configure Logging ---
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree groups of a complex; every degree not listed is zero.

    ``coefficients`` is n for Z/n coefficients and 0 for the integers.
    """

    groups: dict[int, SubquotientGroup]
    coefficients: int = 0
    cohomological: bool = field(default=False, compare=False)

    def __getitem__(self, n: int) -> SubquotientGroup:
        return self.groups.get(n) or SubquotientGroup.zero(0)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def structure(self, n: int) -> tuple[int, tuple[int, ...]]:
        return self[n].structure

    def nonzero_degrees(self) -> list[int]:
        return [n for n in self.degrees if not self.groups[n].is_trivial()]

    def is_trivial(self) -> bool:
        return not self.nonzero_degrees()

    def first_nontrivial(self) -> Optional[tuple[int, SubquotientGroup]]:
        nonzero = self.nonzero_degrees()
        return (nonzero[0], self.groups[nonzero[0]]) if nonzero else None

    def ranks(self) -> dict[int, int]:
        return {n: g.free_rank for n, g in self.groups.items() if g.free_rank}

    def to_records(self) -> list[dict]:
        return [{"degree": n, **self.groups[n].to_record()} for n in self.nonzero_degrees()]

    def describe(self) -> str:
        parts = [f"H{'^' if self.cohomological else '_'}{n} = {self.groups[n].describe()}" for n in self.nonzero_degrees()]
        return ", ".join(parts) if parts else "0"


def homology_group(complex_: ChainComplex, n: int) -> SubquotientGroup:
    """H_n = ker d_n / im d_{n+1} over the integers."""
    cycles = kernel_lattice(complex_.differential(n))
    boundaries = image_lattice(complex_.differential(n + 1))
    return group_structure(cycles, boundaries)


def homology(complex_: ChainComplex, coefficients: int = 0) -> HomologySummary:
    """Homology with coefficients in Z (``coefficients=0``) or Z/n."""
    if coefficients:
        reduced = free_subquotient_complex(complex_.ranks(), complex_.differentials(), step=-1, modulus=coefficients)
        groups = {n: reduced.cohomology(n) for n in complex_.degrees}
    else:
        groups = {n: homology_group(complex_, n) for n in complex_.degrees}
    summary = HomologySummary(groups, coefficients)
    logger.debug(f"[homology] ranks {complex_.ranks()} -> {summary.describe()}")
    return summary


def cohomology(complex_: ChainComplex, coefficients: int = 0) -> HomologySummary:
    """Cohomology of Hom(C, Z/n): the cochain differential in degree n is the transpose of d_{n+1}."""
    codifferentials = {n: complex_.differential(n + 1).transpose() for n in range(complex_.lo, complex_.hi)}
    dual = free_subquotient_complex(complex_.ranks(), codifferentials, step=1, modulus=coefficients)
    return HomologySummary({n: dual.cohomology(n) for n in complex_.degrees}, coefficients, cohomological=True)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone(f)_n = T_n + S_{n-1} with differential [[d_T, f], [0, -d_S]].

    Basis labels are ("T", x) for the target and ("S", x) for the shifted source.
    """
    source, target = f.source, f.target
    lo = min(target.lo, source.lo + 1)
    hi = max(target.hi, source.hi + 1)
    bases = {
        n: tuple(("T", x) for x in target.basis(n)) + tuple(("S", x) for x in source.basis(n - 1))
        for n in range(lo, hi + 1)
    }
    differentials = {}
    for n in range(lo + 1, hi + 1):
        top = target.differential(n).hstack(f.component(n - 1))
        bottom = IntegerMatrix.zeros(source.rank(n - 2), target.rank(n)).hstack(-source.differential(n - 1))
        differentials[n] = top.vstack(bottom)
    return ChainComplex(bases, differentials)


def induced_map_on_homology(f: ChainMap, coefficients: int = 0) -> dict[int, GroupHomomorphism]:
    """The homomorphism H_n(S) -> H_n(T) in every degree where either side is nonzero."""
    source = homology(f.source, coefficients)
    target = homology(f.target, coefficients)
    maps = {}
    for n in range(min(f.source.lo, f.target.lo), max(f.source.hi, f.target.hi) + 1):
        src = source.groups.get(n) or SubquotientGroup.zero(f.source.rank(n))
        dst = target.groups.get(n) or SubquotientGroup.zero(f.target.rank(n))
        maps[n] = induced_map(f.component(n), src, dst)
    return maps


def is_quasi_isomorphism(f: ChainMap, coefficients: int = 0) -> bool:
    return all(map_.is_isomorphism() for map_ in induced_map_on_homology(f, coefficients).values())


def is_homologically_trivial(complex_: ChainComplex, reduced: bool = False) -> bool:
    """True iff every homology group vanishes.

    With ``reduced=True`` the complex is read as an unaugmented one and a single
    free summand in degree 0 is allowed (trivial reduced homology).
    """
    summary = homology(complex_)
    if not reduced:
        return summary.is_trivial()
    for n in summary.nonzero_degrees():
        if n != 0 or summary[0].structure != (1, ()):
            return False
    return 0 in summary.nonzero_degrees()
