"""Poset-indexed diagrams of chain complexes and the standard builders.

A diagram is given on covering relations only; :meth:`DiagramOfComplexes.map_between`
returns the composite along any path, and construction checks that every two
paths with the same endpoints agree.
"""

from __future__ import annotations

import logging
import random
from typing import Iterable, Mapping, Optional

from ..chains import ChainComplex, ChainMap
from ..errors import InputError, NotFunctorialError
from ..linalg import IntegerMatrix, kernel_basis
from ..posets import Poset


# --- Configure Logging ---
logger = logging.getLogger(__name__)

# --- Constants ---
RANDOM_MAX_RANK = 3
RANDOM_DEGREES = (0, 1, 2)
RANDOM_ENTRY_BOUND = 2


class DiagramOfComplexes:
    """A covariant functor from a finite poset to bounded chain complexes.

    Args:
        index: the indexing poset.
        values: a chain complex for every element (missing elements are zero).
        maps: a chain map value(x) -> value(y) for every covering pair (x, y);
            a missing map is allowed only when one of its ends is the zero complex.
    """

    def __init__(
        self,
        index: Poset,
        values: Mapping[str, ChainComplex],
        maps: Optional[Mapping[tuple[str, str], ChainMap]] = None,
        *,
        check: bool = True,
    ):
        for x in values:
            index.index(x)
        self.index = index
        self.values = {x: values.get(x) or ChainComplex.zero() for x in index.elements}
        maps = dict(maps or {})
        self.maps: dict[tuple[str, str], ChainMap] = {}
        for x, y in index.cover_pairs:
            f = maps.pop((x, y), None)
            if f is None:
                if not (self.values[x].is_zero() or self.values[y].is_zero()):
                    raise InputError(f"missing map for the covering relation {x} < {y}")
                f = ChainMap.zero(self.values[x], self.values[y])
            elif f.source != self.values[x] or f.target != self.values[y]:
                raise InputError(f"map for {x} < {y} does not connect value({x}) to value({y})")
            self.maps[(x, y)] = f
        if maps:
            x, y = next(iter(maps))
            raise InputError(f"({x}, {y}) is not a covering relation of the index poset")
        self._composites: dict[tuple[str, str], ChainMap] = {}
        self._build_composites(check)

    def _build_composites(self, check: bool) -> None:
        """Composite maps x -> y, built along covers in a linear extension and compared path by path."""
        covers_into: dict[str, list[str]] = {y: [] for y in self.index.elements}
        for x, y in self.index.cover_pairs:
            covers_into[y].append(x)
        order = self.index.linear_extension()
        for x in order:
            self._composites[(x, x)] = ChainMap.identity(self.values[x])
            for y in order:
                if not self.index.is_less(x, y):
                    continue
                candidates = [z for z in covers_into[y] if self.index.is_leq(x, z)]
                composite = None
                for z in candidates:
                    through = self.maps[(z, y)].compose(self._composites[(x, z)])
                    if composite is None:
                        composite = through
                        if not check:
                            break
                    elif through != composite:
                        raise NotFunctorialError(f"composites from {x} to {y} disagree through {z}", (x, y))
                self._composites[(x, y)] = composite

    def map_between(self, x: str, y: str) -> ChainMap:
        """The map value(x) -> value(y) for x <= y."""
        try:
            return self._composites[(x, y)]
        except KeyError:
            self.index.index(x)
            self.index.index(y)
            raise InputError(f"{x} is not below {y}") from None

    def value(self, x: str) -> ChainComplex:
        return self.values[x]

    @property
    def degree_window(self) -> tuple[int, int]:
        """The smallest [lo, hi] holding every nonzero value; (0, -1) for the zero diagram."""
        nonzero = [c for c in self.values.values() if not c.is_zero()]
        if not nonzero:
            return 0, -1
        return min(c.lo for c in nonzero), max(c.hi for c in nonzero)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.values.values())

    def restrict(self, labels: Iterable[str]) -> "DiagramOfComplexes":
        """The diagram on the full sub-poset on ``labels``."""
        sub = self.index.subposet(labels)
        maps = {(x, y): self.map_between(x, y) for x, y in sub.cover_pairs}
        return DiagramOfComplexes(sub, {x: self.values[x] for x in sub.elements}, maps, check=False)

    def __repr__(self) -> str:
        return f"DiagramOfComplexes({self.index!r}, window={self.degree_window})"


class DiagramMap:
    """A natural transformation: components value_X(x) -> value_Y(x) commuting with every map."""

    def __init__(self, source: DiagramOfComplexes, target: DiagramOfComplexes, components: Mapping[str, ChainMap]):
        if source.index != target.index:
            raise InputError("diagram map between diagrams on different posets")
        self.source = source
        self.target = target
        self.components = {}
        for x in source.index.elements:
            f = components.get(x) or ChainMap.zero(source.values[x], target.values[x])
            self.components[x] = f
        for x, y in source.index.cover_pairs:
            left = target.maps[(x, y)].compose(self.components[x])
            right = self.components[y].compose(source.maps[(x, y)])
            if left != right:
                raise NotFunctorialError(f"diagram map is not natural on {x} < {y}", (x, y))


# --- Builders ---
def point_complex(rank: int = 1) -> ChainComplex:
    """Z^rank in degree 0."""
    return ChainComplex.free(rank, 0)


def cyclic_complex(order: int) -> ChainComplex:
    """Z --order--> Z in degrees 1 -> 0, a free model of Z/order; order 0 gives Z."""
    if order == 0:
        return point_complex()
    return ChainComplex.from_matrices(0, [1, 1], {1: IntegerMatrix.from_rows([[order]])})


def zero_diagram(index: Poset) -> DiagramOfComplexes:
    return DiagramOfComplexes(index, {})


def constant_diagram(index: Poset, value: ChainComplex) -> DiagramOfComplexes:
    identity = ChainMap.identity(value)
    return DiagramOfComplexes(index, {x: value for x in index.elements}, {pair: identity for pair in index.cover_pairs})


def supported_on_upset(index: Poset, upset: Iterable[str], value: ChainComplex) -> DiagramOfComplexes:
    """``value`` on an up-set with identity maps inside it, zero elsewhere."""
    members = set(upset)
    for x in members:
        for y in index.up_set(x):
            if y not in members:
                raise InputError(f"{sorted(members)} is not an up-set: {x} < {y} but {y} is missing")
    identity = ChainMap.identity(value)
    return DiagramOfComplexes(
        index,
        {x: value for x in members},
        {(x, y): identity for x, y in index.cover_pairs if x in members},
    )


def representable(index: Poset, face: str, value: ChainComplex) -> DiagramOfComplexes:
    """G -> C(F, G)_+ smash K: ``value`` on everything above F, zero elsewhere.

    Its holim is the cochain complex of N(C)/N(C^F) with coefficients in ``value``.
    """
    return supported_on_upset(index, index.up_set(face), value)


def _random_complex(rng: random.Random, max_rank: int) -> ChainComplex:
    ranks = [rng.randint(0, max_rank) for _ in RANDOM_DEGREES]
    d1 = IntegerMatrix.from_rows(
        [[rng.randint(-RANDOM_ENTRY_BOUND, RANDOM_ENTRY_BOUND) for _ in range(ranks[1])] for _ in range(ranks[0])],
        ranks[1],
    )
    kernel = kernel_basis(d1)
    mix = IntegerMatrix.from_rows(
        [[rng.randint(-1, 1) for _ in range(ranks[2])] for _ in range(kernel.cols)], ranks[2]
    )
    d2 = kernel @ mix
    return ChainComplex.from_matrices(RANDOM_DEGREES[0], ranks, {1: d1, 2: d2})


def random_chain_map(rng: random.Random, source: ChainComplex, target: ChainComplex) -> ChainMap:
    """A random chain map source -> target supported in the random-diagram degrees.

    The commutation equations d f_n = f_(n-1) d are solved over Z once; the map
    is a combination of the resulting kernel basis with coefficients in {-1, 0, 1}.
    """
    offsets = {}
    size = 0
    for n in RANDOM_DEGREES:
        offsets[n] = size
        size += target.rank(n) * source.rank(n)
    if not size:
        return ChainMap.zero(source, target)

    def variable(n: int, i: int, j: int) -> int:
        return offsets[n] + i * source.rank(n) + j

    equations = []
    for n in RANDOM_DEGREES[1:]:
        d_target, d_source = target.differential(n), source.differential(n)
        for i in range(target.rank(n - 1)):
            for j in range(source.rank(n)):
                row = [0] * size
                for k in range(target.rank(n)):
                    row[variable(n, k, j)] += d_target[i, k]
                for k in range(source.rank(n - 1)):
                    row[variable(n - 1, i, k)] -= d_source[k, j]
                equations.append(row)
    basis = kernel_basis(IntegerMatrix.from_rows(equations, size)) if equations else IntegerMatrix.identity(size)
    vector = basis.apply([rng.randint(-1, 1) for _ in range(basis.cols)])
    components = {
        n: IntegerMatrix.from_rows(
            [[vector[variable(n, i, j)] for j in range(source.rank(n))] for i in range(target.rank(n))],
            source.rank(n),
        )
        for n in RANDOM_DEGREES
    }
    return ChainMap(source, target, components)


class _Strand:
    """One summand of a random diagram: a complex per height and chain maps between consecutive heights."""

    def __init__(self, rng: random.Random, top: int, max_rank: int, support: set[str]):
        self.support = support
        self.complexes = [_random_complex(rng, max_rank) for _ in range(top + 1)]
        self.steps = [random_chain_map(rng, a, b) for a, b in zip(self.complexes, self.complexes[1:])]
        self._composites: dict[tuple[int, int], ChainMap] = {}

    def between(self, lower: int, upper: int) -> ChainMap:
        if (lower, upper) not in self._composites:
            result = ChainMap.identity(self.complexes[lower])
            for step in self.steps[lower:upper]:
                result = step.compose(result)
            self._composites[(lower, upper)] = result
        return self._composites[(lower, upper)]


def random_diagram(index: Poset, seed: int, max_rank: int = RANDOM_MAX_RANK) -> DiagramOfComplexes:
    """A seeded random functorial diagram with at most ``max_rank`` generators per degree.

    The diagram is a direct sum of one to three strands. A strand has an
    independent random complex K_h for every height h and random chain maps
    K_h -> K_(h+1). It is supported on the up-set or the down-set of a random
    element; x < y inside the support maps by the composite from height(x) to
    height(y), and by zero when entering or leaving the support. Every path
    from x to y crosses the same heights, so composites agree.
    """
    rng = random.Random(seed)
    elements = index.elements
    if not elements:
        return zero_diagram(index)
    count = rng.randint(1, 3)
    per_strand = max(1, max_rank // count)
    heights = index.heights
    top = max(heights.values())
    strands = []
    for _ in range(count):
        anchor = rng.choice(elements)
        support = set(index.up_set(anchor) if rng.random() < 0.5 else index.down_set(anchor))
        strands.append(_Strand(rng, top, per_strand, support))

    values: dict[str, ChainComplex] = {}
    for x in elements:
        parts = [(k, s.complexes[heights[x]]) for k, s in enumerate(strands) if x in s.support]
        bases = {}
        differentials = {}
        for n in RANDOM_DEGREES:
            bases[n] = tuple((k, label) for k, c in parts for label in c.basis(n))
            if n > RANDOM_DEGREES[0]:
                differentials[n] = IntegerMatrix.block_diagonal([c.differential(n) for _, c in parts])
        values[x] = ChainComplex(bases, differentials, check=False)

    maps = {}
    for x, y in index.cover_pairs:
        source, target = values[x], values[y]
        components = {}
        for n in RANDOM_DEGREES:
            triplets = []
            for k, strand in enumerate(strands):
                if x not in strand.support or y not in strand.support:
                    continue
                block = strand.between(heights[x], heights[y]).component(n)
                lower, upper = strand.complexes[heights[x]], strand.complexes[heights[y]]
                for j, label in enumerate(lower.basis(n)):
                    column = source.position(n, (k, label))
                    for i, row_label in enumerate(upper.basis(n)):
                        if block[i, j]:
                            triplets.append((target.position(n, (k, row_label)), column, block[i, j]))
            components[n] = IntegerMatrix.from_triplets(target.rank(n), source.rank(n), triplets)
        maps[(x, y)] = ChainMap(source, target, components)
    logger.info(f"[random_diagram] seed={seed}: {count} strands over {len(elements)} elements")
    return DiagramOfComplexes(index, values, maps)
