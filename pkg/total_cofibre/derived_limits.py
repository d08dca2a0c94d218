"""lim^p of poset-indexed diagrams of finitely generated abelian groups.

The cochain complex places A(x_p) on a chain x_0 < ... < x_p and uses the
same coboundary as the holim total complex, so that for a diagram of
homology groups its cohomology is the E_2 term of the holim spectral
sequence:

    (delta a)(y_0 < ... < y_{p+1}) = sum_{i <= p} (-1)^i a(d_i y)
                                     + (-1)^(p+1) A(y_p -> y_{p+1}) a(d_{p+1} y)
"""

from __future__ import annotations

import logging
from typing import Mapping, Optional

from .chains import homology
from .diagrams import DiagramOfComplexes
from .errors import InputError, NotFunctorialError
from .linalg import (
    GroupHomomorphism,
    IntegerMatrix,
    SubquotientComplex,
    SubquotientGroup,
    direct_sum,
    group_structure,
    identity_map,
    induced_map,
)
from .posets import Chain, Poset


# --- Configure Logging ---
logger = logging.getLogger(__name__)


class AbelianDiagram:
    """A covariant functor from a finite poset to subquotient groups, given on covers."""

    def __init__(
        self,
        index: Poset,
        values: Mapping[str, SubquotientGroup],
        maps: Optional[Mapping[tuple[str, str], GroupHomomorphism]] = None,
        *,
        check: bool = True,
    ):
        for x in values:
            index.index(x)
        self.index = index
        self.values = {x: values.get(x) or SubquotientGroup.zero(0) for x in index.elements}
        maps = dict(maps or {})
        self.maps: dict[tuple[str, str], GroupHomomorphism] = {}
        for x, y in index.cover_pairs:
            source, target = self.values[x], self.values[y]
            f = maps.pop((x, y), None)
            if f is None:
                if not (source.is_trivial() or target.is_trivial()):
                    raise InputError(f"missing map for the covering relation {x} < {y}")
                f = GroupHomomorphism(IntegerMatrix.zeros(target.ambient_rank, source.ambient_rank), source, target)
            self.maps[(x, y)] = f
        if maps:
            x, y = next(iter(maps))
            raise InputError(f"({x}, {y}) is not a covering relation of the index poset")
        self._composites: dict[tuple[str, str], GroupHomomorphism] = {}
        covers_into: dict[str, list[str]] = {y: [] for y in index.elements}
        for x, y in index.cover_pairs:
            covers_into[y].append(x)
        order = index.linear_extension()
        for x in order:
            self._composites[(x, x)] = identity_map(self.values[x])
            for y in order:
                if not index.is_less(x, y):
                    continue
                composite = None
                for z in (z for z in covers_into[y] if index.is_leq(x, z)):
                    through = self.maps[(z, y)].compose(self._composites[(x, z)])
                    if composite is None:
                        composite = through
                        if not check:
                            break
                    elif not through.equals(composite):
                        raise NotFunctorialError(f"composites from {x} to {y} disagree through {z}", (x, y))
                self._composites[(x, y)] = composite

    @classmethod
    def constant(cls, index: Poset, group: SubquotientGroup) -> "AbelianDiagram":
        identity = identity_map(group)
        return cls(index, {x: group for x in index.elements}, {pair: identity for pair in index.cover_pairs})

    def map_between(self, x: str, y: str) -> GroupHomomorphism:
        try:
            return self._composites[(x, y)]
        except KeyError:
            raise InputError(f"{x} is not below {y}") from None

    def is_zero(self) -> bool:
        return all(g.is_trivial() for g in self.values.values())

    def __repr__(self) -> str:
        return f"AbelianDiagram({self.index!r})"


def lim_cochain_complex(diagram: AbelianDiagram) -> SubquotientComplex:
    """The cochain complex whose p-th term is the sum of A(x_p) over strict p-chains."""
    poset = diagram.index
    top = poset.longest_chain_length
    terms: dict[int, SubquotientGroup] = {}
    offsets: dict[int, dict[Chain, int]] = {}
    for p in range(top + 1):
        chains = poset.chains(p)
        groups = [diagram.values[c[-1]] for c in chains]
        offsets[p] = {}
        position = 0
        for chain, group in zip(chains, groups):
            offsets[p][chain] = position
            position += group.ambient_rank
        terms[p] = direct_sum(groups)

    differentials: dict[int, IntegerMatrix] = {}
    for p in range(top):
        rows = [[0] * terms[p].ambient_rank for _ in range(terms[p + 1].ambient_rank)]
        for longer in poset.chains(p + 1):
            r0 = offsets[p + 1][longer]
            for i in range(p + 2):
                face = longer[:i] + longer[i + 1 :]
                c0 = offsets[p][face]
                if i <= p:
                    block = IntegerMatrix.identity(diagram.values[longer[-1]].ambient_rank)
                    sign = -1 if i % 2 else 1
                else:
                    block = diagram.map_between(face[-1], longer[-1]).matrix
                    sign = -1 if (p + 1) % 2 else 1
                for a, b, value in block.to_triplets():
                    rows[r0 + a][c0 + b] += sign * value
        differentials[p] = IntegerMatrix.from_rows(rows, terms[p].ambient_rank)
        logger.debug(f"[lim_cochain_complex] delta_{p}: {differentials[p].shape}")
    return SubquotientComplex(terms, differentials, step=1)


def derived_limits(diagram: AbelianDiagram) -> dict[int, SubquotientGroup]:
    """lim^p for every p from 0 to the longest chain length."""
    complex_ = lim_cochain_complex(diagram)
    return {p: complex_.cohomology(p) for p in complex_.degrees()}


def limp(diagram: AbelianDiagram, p: int) -> SubquotientGroup:
    """lim^p; out-of-range p gives the zero group and logs a warning."""
    top = diagram.index.longest_chain_length
    if p < 0 or p > top:
        logger.warning(f"[limp] p={p} is outside [0, {top}]; lim^{p} is zero")
        return SubquotientGroup.zero(0)
    return lim_cochain_complex(diagram).cohomology(p)


def inverse_limit(diagram: AbelianDiagram) -> SubquotientGroup:
    """lim^0 as the group of compatible families, computed by intersecting lattices."""
    elements = diagram.index.elements
    values = [diagram.values[x] for x in elements]
    total = direct_sum(values)
    offsets, position = {}, 0
    for x, group in zip(elements, values):
        offsets[x] = position
        position += group.ambient_rank
    compatible = total.numerator
    for x, y in diagram.index.cover_pairs:
        f = diagram.maps[(x, y)].matrix
        target = diagram.values[y]
        # v -> f(v_x) - v_y must land in the denominator of A(y)
        rows = [[0] * total.ambient_rank for _ in range(target.ambient_rank)]
        for a, b, value in f.to_triplets():
            rows[a][offsets[x] + b] += value
        for a in range(target.ambient_rank):
            rows[a][offsets[y] + a] -= 1
        difference = IntegerMatrix.from_rows(rows, total.ambient_rank)
        compatible = compatible.intersection(target.denominator.preimage(difference))
    return group_structure(compatible, total.denominator)


def homotopy_groups_diagram(diagram: DiagramOfComplexes, q: int, coefficients: int = 0) -> AbelianDiagram:
    """The diagram x -> H_q(X(x); Z/n) with the induced maps (n = 0 for Z)."""
    values = {x: homology(c, coefficients)[q] for x, c in diagram.values.items()}
    maps = {
        (x, y): induced_map(diagram.maps[(x, y)].component(q), values[x], values[y])
        for x, y in diagram.index.cover_pairs
    }
    return AbelianDiagram(diagram.index, values, maps)
