"""Total complexes of a diagram: hocolim, the total cofibre Gamma, and holim.

Conventions, fixed here and echoed in every CLI report:

hocolim
    basis (x_0 < ... < x_p, e) with e in X(x_0)_q, total degree p + q.
    d = sum_i (-1)^i d_i + (-1)^p d_X, where d_0 applies X(x_0 -> x_1).
Gamma
    the quotient of hocolim over C by the chains lying in D; the basis keeps the
    chains whose top element is outside D.
holim
    basis (x_0 < ... < x_p, e) with e in Y(x_p)_q, total degree q - p.
    D = delta + (-1)^p d_Y, where
    (delta a)(y_0 < ... < y_{p+1}) = sum_{i <= p} (-1)^i a(d_i y)
                                     + (-1)^(p+1) Y(y_p -> y_{p+1}) a(d_{p+1} y).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from ..chains import ChainComplex, ChainMap
from ..errors import InputError
from ..linalg import IntegerMatrix, SparseMatrix
from ..posets import Chain, PosetPair
from .diagram import DiagramMap, DiagramOfComplexes


# --- Configure Logging ---
logger = logging.getLogger(__name__)

HOCOLIM = "hocolim"
GAMMA = "gamma"
HOLIM = "holim"


@dataclass(frozen=True, eq=False)
class TotalComplex:
    """A total complex with the bidegree (p, q) of every basis element.

    ``p`` is the chain length and also the filtration degree used by the
    spectral sequence.
    """

    chain_complex: ChainComplex
    bidegrees: dict[int, tuple[tuple[int, int], ...]]
    kind: str

    def filtration(self, n: int) -> tuple[int, ...]:
        return tuple(p for p, _ in self.bidegrees.get(n, ()))

    def bigraded_ranks(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for pieces in self.bidegrees.values():
            for bidegree in pieces:
                counts[bidegree] = counts.get(bidegree, 0) + 1
        return counts

    @property
    def longest_filtration(self) -> int:
        return max((p for pieces in self.bidegrees.values() for p, _ in pieces), default=-1)


def _chains_by_length(index_chains, length: int) -> dict[int, tuple[Chain, ...]]:
    return {p: tuple(index_chains(p)) for p in range(length + 1)}


def _hocolim(diagram: DiagramOfComplexes, chains: dict[int, tuple[Chain, ...]], kind: str) -> TotalComplex:
    qlo, qhi = diagram.degree_window
    top = max(chains, default=-1)
    values = diagram.values
    bases: dict[int, list[tuple[Chain, object]]] = {}
    bidegrees: dict[int, list[tuple[int, int]]] = {}
    for n in range(qlo, qhi + top + 1):
        bases[n], bidegrees[n] = [], []
        for p in range(top + 1):
            q = n - p
            for chain in chains[p]:
                for label in values[chain[0]].basis(q):
                    bases[n].append((chain, label))
                    bidegrees[n].append((p, q))
    positions = {n: {element: i for i, element in enumerate(basis)} for n, basis in bases.items()}

    differentials = {}
    for n, basis in bases.items():
        rows = positions.get(n - 1)
        if rows is None:
            continue
        triplets = []
        for column, ((chain, label), (p, q)) in enumerate(zip(basis, bidegrees[n])):
            start = values[chain[0]]
            j = start.position(q, label)
            vertical = start.differential(q)
            sign = -1 if p % 2 else 1
            for i, target in enumerate(start.basis(q - 1)):
                if vertical[i, j]:
                    triplets.append((rows[(chain, target)], column, sign * vertical[i, j]))
            for i in range(1, p + 1):
                row = rows.get((chain[:i] + chain[i + 1 :], label))
                if row is not None:
                    triplets.append((row, column, -1 if i % 2 else 1))
            if p >= 1:
                face = chain[1:]
                transfer = diagram.map_between(chain[0], chain[1]).component(q)
                for i, target in enumerate(values[chain[1]].basis(q)):
                    if transfer[i, j]:
                        row = rows.get((face, target))
                        if row is not None:
                            triplets.append((row, column, transfer[i, j]))
        differentials[n] = SparseMatrix.from_triplets(len(bases[n - 1]), len(basis), triplets)
    complex_ = ChainComplex(bases, differentials)
    logger.info(f"[{kind}] total ranks {complex_.ranks()}")
    return TotalComplex(complex_, {n: tuple(b) for n, b in bidegrees.items()}, kind)


def hocolim_total(diagram: DiagramOfComplexes, over: Optional[Iterable[str]] = None) -> TotalComplex:
    """Simplicial replacement of hocolim over the whole index or the full sub-poset ``over``."""
    poset = diagram.index if over is None else diagram.index.subposet(over)
    return _hocolim(diagram, _chains_by_length(poset.chains, poset.longest_chain_length), HOCOLIM)


def hocolim_inclusion(diagram: DiagramOfComplexes, over: Iterable[str]) -> ChainMap:
    """The basis inclusion hocolim over a sub-poset -> hocolim over the whole index."""
    small = hocolim_total(diagram, over).chain_complex
    large = hocolim_total(diagram).chain_complex
    components = {
        n: SparseMatrix.from_triplets(
            large.rank(n), small.rank(n), [(large.position(n, x), j, 1) for j, x in enumerate(small.basis(n))]
        )
        for n in small.degrees
    }
    return ChainMap(small, large, components)


def _check_pair(diagram: DiagramOfComplexes, pair: PosetPair) -> None:
    if diagram.index != pair.ambient:
        raise InputError("the diagram is not indexed by the ambient poset of the pair")


def gamma_total_complex(diagram: DiagramOfComplexes, pair: PosetPair) -> TotalComplex:
    """The total cofibre of hocolim_D X -> hocolim_C X as a quotient complex."""
    _check_pair(diagram, pair)
    poset = diagram.index
    outside = set(pair.outside)
    chains = _chains_by_length(lambda p: [c for c in poset.chains(p) if c[-1] in outside], poset.longest_chain_length)
    return _hocolim(diagram, chains, GAMMA)


def holim_total(diagram: DiagramOfComplexes) -> TotalComplex:
    """Cosimplicial replacement of holim as a chain complex (total degree q - p)."""
    poset = diagram.index
    qlo, qhi = diagram.degree_window
    top = poset.longest_chain_length
    values = diagram.values
    bases: dict[int, list[tuple[Chain, object]]] = {}
    bidegrees: dict[int, list[tuple[int, int]]] = {}
    for n in range(qlo - top, qhi + 1):
        bases[n], bidegrees[n] = [], []
        for p in range(top + 1):
            q = n + p
            for chain in poset.chains(p):
                for label in values[chain[-1]].basis(q):
                    bases[n].append((chain, label))
                    bidegrees[n].append((p, q))
    positions = {n: {element: i for i, element in enumerate(basis)} for n, basis in bases.items()}

    cofaces: dict[Chain, list[tuple[Chain, int]]] = {}
    for p in range(1, top + 1):
        for chain in poset.chains(p):
            for i in range(p + 1):
                cofaces.setdefault(chain[:i] + chain[i + 1 :], []).append((chain, i))

    differentials = {}
    for n, basis in bases.items():
        rows = positions.get(n - 1)
        if rows is None:
            continue
        triplets = []
        for column, ((chain, label), (p, q)) in enumerate(zip(basis, bidegrees[n])):
            end = values[chain[-1]]
            j = end.position(q, label)
            internal = end.differential(q)
            sign = -1 if p % 2 else 1
            for i, target in enumerate(end.basis(q - 1)):
                if internal[i, j]:
                    triplets.append((rows[(chain, target)], column, sign * internal[i, j]))
            for longer, i in cofaces.get(chain, ()):
                if i <= p:
                    triplets.append((rows[(longer, label)], column, -1 if i % 2 else 1))
                    continue
                extend = diagram.map_between(chain[-1], longer[-1]).component(q)
                last_sign = -1 if (p + 1) % 2 else 1
                for r, target in enumerate(values[longer[-1]].basis(q)):
                    if extend[r, j]:
                        triplets.append((rows[(longer, target)], column, last_sign * extend[r, j]))
        differentials[n] = SparseMatrix.from_triplets(len(bases[n - 1]), len(basis), triplets)
    complex_ = ChainComplex(bases, differentials)
    logger.info(f"[{HOLIM}] total ranks {complex_.ranks()}")
    return TotalComplex(complex_, {n: tuple(b) for n, b in bidegrees.items()}, HOLIM)


def diagram_map_gamma(f: DiagramMap, pair: PosetPair) -> ChainMap:
    """The chain map Gamma(X) -> Gamma(Y) induced by a natural transformation X -> Y."""
    source = gamma_total_complex(f.source, pair)
    target = gamma_total_complex(f.target, pair)
    components = {}
    for n in source.chain_complex.degrees:
        triplets = []
        for column, ((chain, label), (_, q)) in enumerate(zip(source.chain_complex.basis(n), source.bidegrees[n])):
            x = chain[0]
            j = f.source.values[x].position(q, label)
            block = f.components[x].component(q)
            for i, image in enumerate(f.target.values[x].basis(q)):
                if block[i, j]:
                    triplets.append((target.chain_complex.position(n, (chain, image)), column, block[i, j]))
        components[n] = IntegerMatrix.from_triplets(target.chain_complex.rank(n), source.chain_complex.rank(n), triplets)
    return ChainMap(source.chain_complex, target.chain_complex, components)
