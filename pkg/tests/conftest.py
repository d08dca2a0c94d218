import numpy as np
import pytest

from total_cofibre.chains import ChainMap, induced_map_on_homology, mapping_cone
from total_cofibre.diagrams import random_diagram
from total_cofibre.linalg import IntegerMatrix
from total_cofibre.posets import Poset, PosetPair, boundary, cube, poset_from_relations, simplex


@pytest.fixture
def segment() -> PosetPair:
    """simplex:1, C = {a, b, ab}, D = {a, b}, m = 1."""
    return simplex(1)


@pytest.fixture
def square() -> PosetPair:
    """cube:2, nine faces with the eight boundary faces as ideal, m = 2."""
    return cube(2)


@pytest.fixture
def square_boundary() -> PosetPair:
    """The eight boundary faces of the square: a circle."""
    return boundary(cube(2))


@pytest.fixture
def half_open_segment(segment) -> PosetPair:
    """The segment poset with ideal {a}; (P2) fails at ab."""
    return PosetPair(segment.ambient, ("a",), name="segment-a")


@pytest.fixture
def diamond() -> Poset:
    """0 < l, r < 1."""
    return poset_from_relations(["0", "l", "r", "1"], [("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")])


@pytest.fixture
def empty_poset() -> Poset:
    return Poset([], np.zeros((0, 0), dtype=bool))


@pytest.fixture
def segment_diagrams(segment):
    return [random_diagram(segment.ambient, seed) for seed in range(8)]


def _cone_sequence_defects(f: ChainMap) -> list[tuple[int, str]]:
    """(degree, term) where H(S) -> H(T) -> H(Cone f) -> H_(n-1)(S) -> ... is not exact.

    The connecting map of the cone sequence is f itself up to sign, so every
    map in the sequence is induced by a chain map.
    """
    source, target = f.source, f.target
    cone = mapping_cone(f)
    include = ChainMap(
        target,
        cone,
        {
            n: IntegerMatrix.identity(target.rank(n)).vstack(IntegerMatrix.zeros(source.rank(n - 1), target.rank(n)))
            for n in target.degrees
        },
    )
    project = ChainMap(
        cone,
        source.shift(1),
        {
            n: IntegerMatrix.zeros(source.rank(n - 1), target.rank(n)).hstack(
                IntegerMatrix.identity(source.rank(n - 1)).scale(-1 if n % 2 else 1)
            )
            for n in cone.degrees
        },
    )
    f_star, i_star, p_star = (induced_map_on_homology(g) for g in (f, include, project))
    defects = []
    for n in sorted(set(f_star) | set(i_star) | set(p_star)):
        if n in f_star and n in i_star and f_star[n].image().numerator != i_star[n].kernel().numerator:
            defects.append((n, "target"))
        if n in i_star and n in p_star and i_star[n].image().numerator != p_star[n].kernel().numerator:
            defects.append((n, "cone"))
        if n in p_star and n - 1 in f_star and p_star[n].image().numerator != f_star[n - 1].kernel().numerator:
            defects.append((n - 1, "source"))
    return defects


@pytest.fixture
def cone_sequence_defects():
    return _cone_sequence_defects
