"""Normalized chains of order complexes, relative complexes and the map beta."""

from __future__ import annotations

import logging
from typing import Callable, Iterable, Union

from ..errors import InputError
from ..linalg import IntegerMatrix, SparseMatrix
from ..posets import Chain, Poset, PosetPair, complement_star
from .complexes import ChainComplex, ChainMap


# --- Configure Logging ---
logger = logging.getLogger(__name__)

EMPTY_CHAIN: Chain = ()

SubPoset = Union[Poset, Iterable[str]]


def _labels_of(poset: Poset, sub: SubPoset) -> frozenset[str]:
    labels = frozenset(sub.elements if isinstance(sub, Poset) else sub)
    for x in labels:
        poset.index(x)
    return labels


def chain_complex_on(poset: Poset, keep: Callable[[Chain], bool], *, reduced: bool = False) -> ChainComplex:
    """Chains of ``poset`` selected by ``keep``, with faces outside the selection dropped.

    When the rejected chains are closed under taking faces this is the quotient
    of N(poset) by the subcomplex they span.
    """
    top = poset.longest_chain_length
    bases: dict[int, tuple[Chain, ...]] = {n: tuple(c for c in poset.chains(n) if keep(c)) for n in range(top + 1)}
    if reduced and keep(EMPTY_CHAIN):
        bases[-1] = (EMPTY_CHAIN,)
    positions = {n: {c: i for i, c in enumerate(basis)} for n, basis in bases.items()}
    differentials = {}
    for n, basis in bases.items():
        if n - 1 not in bases:
            continue
        rows = positions[n - 1]
        triplets = []
        for j, chain in enumerate(basis):
            for i in range(len(chain)):
                face = chain[:i] + chain[i + 1 :]
                row = rows.get(face)
                if row is not None:
                    triplets.append((row, j, -1 if i % 2 else 1))
        differentials[n] = SparseMatrix.from_triplets(len(bases[n - 1]), len(basis), triplets)
    complex_ = ChainComplex(bases, differentials)
    logger.debug(f"[chain_complex_on] ranks {complex_.ranks()}")
    return complex_


def order_complex_chains(poset: Poset, reduced: bool = False) -> ChainComplex:
    """Normalized chain complex of N(poset); ``reduced`` appends the augmentation in degree -1."""
    return chain_complex_on(poset, lambda chain: True, reduced=reduced)


def relative_chains(poset: Poset, sub: SubPoset) -> ChainComplex:
    """C_*(N C, N A): chains of C not entirely inside A."""
    inside = _labels_of(poset, sub)
    return chain_complex_on(poset, lambda chain: not all(x in inside for x in chain))


def quotient_map_beta(pair: PosetPair, face: str) -> ChainMap:
    """The surjection N(C)/N(D) -> N(C)/N(C^F) for F outside D."""
    if face in pair.ideal_set:
        raise InputError(f"beta is only defined for elements outside the ideal, got '{face}'")
    c = pair.ambient
    star = complement_star(c, face)
    source = relative_chains(c, pair.ideal)
    target = relative_chains(c, star)
    components = {}
    for n in source.degrees:
        rows = {chain: i for i, chain in enumerate(target.basis(n))}
        triplets = [(rows[chain], j, 1) for j, chain in enumerate(source.basis(n)) if chain in rows]
        components[n] = SparseMatrix.from_triplets(target.rank(n), source.rank(n), triplets)
    return ChainMap(source, target, components)


def inclusion_chain_map(sub: SubPoset, poset: Poset) -> ChainMap:
    """N(sub) -> N(poset) for a full sub-poset given by its labels."""
    labels = _labels_of(poset, sub)
    source = order_complex_chains(poset.subposet(labels))
    target = order_complex_chains(poset)
    components = {}
    for n in source.degrees:
        columns = [target.position(n, chain) for chain in source.basis(n)]
        components[n] = IntegerMatrix.from_columns(
            [[1 if i == row else 0 for i in range(target.rank(n))] for row in columns], target.rank(n)
        )
    return ChainMap(source, target, components)
