"""Finite posets, order ideals, C^F and strict chains.

A :class:`Poset` keeps its strict order as an explicit boolean matrix over the
canonical element order (the constructor's insertion order). Every basis built
downstream (chains, chain complexes, total complexes) inherits that order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Collection, Iterable, Iterator, Optional, Sequence

import numpy as np

from ..config import get_settings
from ..errors import (
    DuplicateLabelError,
    NotAPosetError,
    NotAnIdealError,
    PosetTooLargeError,
    UnknownElementError,
)


# --- Configure Logging ---
logger = logging.getLogger(__name__)

Chain = tuple[str, ...]


class Poset:
    """Immutable finite strict partial order on string labels.

    Attributes:
        elements: labels in canonical order.
        less: ``less[i, j]`` is True iff ``elements[i] < elements[j]``.
    """

    __slots__ = ("elements", "less", "_index", "__dict__")

    def __init__(self, elements: Sequence[str], less: np.ndarray, *, check: bool = True):
        elements = tuple(elements)
        max_elements = get_settings().max_elements
        if len(elements) > max_elements:
            raise PosetTooLargeError(f"{len(elements)} elements exceed the cap of {max_elements}")
        index: dict[str, int] = {}
        for i, label in enumerate(elements):
            if label in index:
                raise DuplicateLabelError(f"duplicate element label '{label}'")
            index[label] = i
        less = np.array(less, dtype=bool).reshape(len(elements), len(elements))
        less.setflags(write=False)
        self.elements = elements
        self.less = less
        self._index = index
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        n = len(self.elements)
        diagonal = np.flatnonzero(np.diag(self.less))
        if diagonal.size:
            x = self.elements[diagonal[0]]
            raise NotAPosetError(f"relation is not irreflexive: {x} < {x}", (x, x))
        both = np.argwhere(self.less & self.less.T)
        if both.size:
            i, j = both[0]
            raise NotAPosetError(
                f"relation is not antisymmetric: {self.elements[i]} < {self.elements[j]} and back",
                (self.elements[i], self.elements[j]),
            )
        if n:
            composite = (self.less.astype(np.int64) @ self.less.astype(np.int64)) > 0
            missing = np.argwhere(composite & ~self.less)
            if missing.size:
                i, j = missing[0]
                raise NotAPosetError(
                    f"relation is not transitive: missing {self.elements[i]} < {self.elements[j]}",
                    (self.elements[i], self.elements[j]),
                )

    # --- Basic access ---
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.less, other.less)

    def __hash__(self) -> int:
        return hash((self.elements, self.less.tobytes()))

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.cover_pairs)} covers)"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElementError(f"unknown element '{label}'") from None

    def is_less(self, x: str, y: str) -> bool:
        return bool(self.less[self.index(x), self.index(y)])

    def is_leq(self, x: str, y: str) -> bool:
        return x == y or self.is_less(x, y)

    def up_set(self, label: str) -> tuple[str, ...]:
        """Elements G with label <= G."""
        i = self.index(label)
        return tuple(g for j, g in enumerate(self.elements) if j == i or self.less[i, j])

    def down_set(self, label: str) -> tuple[str, ...]:
        i = self.index(label)
        return tuple(g for j, g in enumerate(self.elements) if j == i or self.less[j, i])

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(x for j, x in enumerate(self.elements) if not self.less[:, j].any())

    def sorted_labels(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Labels in canonical order."""
        return tuple(sorted(set(labels), key=self.index))

    @cached_property
    def cover_pairs(self) -> tuple[tuple[str, str], ...]:
        """The Hasse diagram: pairs (x, y) with x < y and nothing strictly between."""
        if not len(self):
            return ()
        composite = (self.less.astype(np.int64) @ self.less.astype(np.int64)) > 0
        covers = self.less & ~composite
        return tuple((self.elements[i], self.elements[j]) for i, j in np.argwhere(covers))

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in np.flatnonzero(self.less[i])) for i in range(len(self)))

    # --- Derived posets ---
    def subposet(self, labels: Iterable[str]) -> "Poset":
        """The full sub-poset on ``labels``, in canonical order."""
        keep = [self.index(x) for x in self.sorted_labels(labels)]
        return Poset([self.elements[i] for i in keep], self.less[np.ix_(keep, keep)], check=False)

    def relabel(self, mapping: dict[str, str], order: Optional[Sequence[str]] = None) -> "Poset":
        """Rename elements; ``order`` (new labels) optionally fixes a new canonical order."""
        renamed = [mapping[x] for x in self.elements]
        if order is None:
            return Poset(renamed, self.less)
        position = [renamed.index(label) for label in order]
        return Poset(list(order), self.less[np.ix_(position, position)])

    # --- Chains ---
    @cached_property
    def _chains(self) -> tuple[tuple[Chain, ...], ...]:
        by_length: list[list[tuple[int, ...]]] = []

        def extend(prefix: tuple[int, ...]) -> None:
            p = len(prefix) - 1
            while len(by_length) <= p:
                by_length.append([])
            by_length[p].append(prefix)
            for j in self.successors[prefix[-1]]:
                extend(prefix + (j,))

        for i in range(len(self)):
            extend((i,))
        return tuple(
            tuple(tuple(self.elements[i] for i in chain) for chain in sorted(chains)) for chains in by_length
        )

    def chains(self, p: int) -> tuple[Chain, ...]:
        if p < 0 or p >= len(self._chains):
            return ()
        return self._chains[p]

    @property
    def longest_chain_length(self) -> int:
        """Largest p with a strict chain x_0 < ... < x_p; -1 for the empty poset."""
        return len(self._chains) - 1

    def chain_counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self._chains)

    @cached_property
    def heights(self) -> dict[str, int]:
        """Length of the longest chain ending at each element."""
        heights = {x: 0 for x in self.elements}
        for p in range(1, len(self._chains)):
            for chain in self._chains[p]:
                heights[chain[-1]] = max(heights[chain[-1]], p)
        return heights

    def linear_extension(self) -> tuple[str, ...]:
        """Elements sorted by height, ties in canonical order; x < y puts x first."""
        return tuple(sorted(self.elements, key=lambda x: (self.heights[x], self.index(x))))


@dataclass(frozen=True)
class ChainBasis:
    dimension: int
    chains: tuple[Chain, ...]

    def __len__(self) -> int:
        return len(self.chains)


@dataclass(frozen=True, eq=False)
class PosetPair:
    """An ambient poset C with an order ideal D; ``ball_dimension`` is set for generated ball pairs."""

    ambient: Poset
    ideal: tuple[str, ...]
    ball_dimension: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        for x in self.ideal:
            self.ambient.index(x)
        object.__setattr__(self, "ideal", self.ambient.sorted_labels(self.ideal))
        violation = ideal_violation(self.ambient, self.ideal)
        if violation is not None:
            x, y = violation
            raise NotAnIdealError(f"ideal is not downward closed: {x} < {y} but {x} is missing", violation)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PosetPair):
            return NotImplemented
        return (self.ambient, self.ideal, self.ball_dimension) == (other.ambient, other.ideal, other.ball_dimension)

    def __hash__(self) -> int:
        return hash((self.ambient, self.ideal, self.ball_dimension))

    @cached_property
    def ideal_set(self) -> frozenset[str]:
        return frozenset(self.ideal)

    @property
    def outside(self) -> tuple[str, ...]:
        """C \\ D in canonical order."""
        return tuple(x for x in self.ambient.elements if x not in self.ideal_set)

    def ideal_poset(self) -> Poset:
        return self.ambient.subposet(self.ideal)


# --- Operations ---
def poset_from_relations(elements: Sequence[str], covering_pairs: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from generating relations (x, y) meaning x < y; the closure is computed."""
    elements = tuple(elements)
    seen: set[str] = set()
    for label in elements:
        if label in seen:
            raise DuplicateLabelError(f"duplicate element label '{label}'")
        seen.add(label)
    index = {label: i for i, label in enumerate(elements)}
    n = len(elements)
    max_elements = get_settings().max_elements
    if n > max_elements:
        raise PosetTooLargeError(f"{n} elements exceed the cap of {max_elements}")
    less = np.zeros((n, n), dtype=bool)
    for x, y in covering_pairs:
        for label in (x, y):
            if label not in index:
                raise UnknownElementError(f"relation ({x}, {y}) mentions unknown element '{label}'")
        if x == y:
            raise NotAPosetError(f"relation ({x}, {x}) is reflexive", (x, y))
        less[index[x], index[y]] = True
    # Warshall closure on the boolean matrix
    for k in range(n):
        less |= np.outer(less[:, k], less[k, :])
    cycle = np.flatnonzero(np.diag(less))
    if cycle.size:
        x = elements[cycle[0]]
        partner = next(elements[j] for j in np.flatnonzero(less[cycle[0]]) if j != cycle[0] and less[j, cycle[0]])
        raise NotAPosetError(f"relations contain a cycle through {x} and {partner}", (x, partner))
    logger.debug(f"[poset_from_relations] closed {n} elements")
    return Poset(elements, less, check=False)


def complement_star(poset: Poset, label: str) -> Poset:
    """C^F = { G : not F <= G }; F itself is removed."""
    above = set(poset.up_set(label))
    return poset.subposet(x for x in poset.elements if x not in above)


def ideal_violation(poset: Poset, subset: Collection[str]) -> Optional[tuple[str, str]]:
    """The first (x, y) with x < y, y in the subset and x not, or None."""
    members = set(subset)
    for y in poset.elements:
        if y in members:
            for x in poset.down_set(y):
                if x not in members:
                    return x, y
    return None


def is_order_ideal(poset: Poset, subset: Collection[str]) -> bool:
    for label in subset:
        poset.index(label)
    return ideal_violation(poset, subset) is None


def strict_chains(poset: Poset, p: int) -> ChainBasis:
    """All chains x_0 < ... < x_p, lexicographic in canonical element indices."""
    return ChainBasis(p, poset.chains(p))
