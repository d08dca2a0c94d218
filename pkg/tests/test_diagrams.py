import random

import pytest

from total_cofibre.chains import ChainComplex, ChainMap
from total_cofibre.diagrams import (
    DiagramMap,
    DiagramOfComplexes,
    constant_diagram,
    cyclic_complex,
    point_complex,
    random_chain_map,
    random_diagram,
    representable,
    supported_on_upset,
    zero_diagram,
)
from total_cofibre.errors import InputError, NotFunctorialError
from total_cofibre.linalg import IntegerMatrix


def _scalar(complex_: ChainComplex, factor: int) -> ChainMap:
    return ChainMap(complex_, complex_, {n: IntegerMatrix.identity(complex_.rank(n)).scale(factor) for n in complex_.degrees})


def test_constant_diagram_composites(diamond):
    diagram = constant_diagram(diamond, point_complex())
    assert diagram.map_between("0", "1") == ChainMap.identity(point_complex())
    assert diagram.degree_window == (0, 0)


def test_non_commuting_square_is_rejected(diamond):
    z = point_complex()
    maps = {pair: ChainMap.identity(z) for pair in diamond.cover_pairs}
    maps[("r", "1")] = _scalar(z, 2)
    with pytest.raises(NotFunctorialError) as info:
        DiagramOfComplexes(diamond, {x: z for x in diamond.elements}, maps)
    assert info.value.pair == ("0", "1")


def test_missing_map_between_nonzero_values(segment):
    z = point_complex()
    with pytest.raises(InputError):
        DiagramOfComplexes(segment.ambient, {x: z for x in segment.ambient.elements}, {})


def test_map_on_non_cover_is_rejected(diamond):
    z = point_complex()
    maps = {pair: ChainMap.identity(z) for pair in diamond.cover_pairs}
    maps[("0", "1")] = ChainMap.identity(z)
    with pytest.raises(InputError):
        DiagramOfComplexes(diamond, {x: z for x in diamond.elements}, maps)


def test_missing_map_allowed_next_to_zero(segment):
    diagram = DiagramOfComplexes(segment.ambient, {"ab": point_complex()})
    assert diagram.maps[("a", "ab")].is_zero()
    assert diagram.value("a").is_zero()


def test_map_between_unrelated_elements(segment):
    diagram = zero_diagram(segment.ambient)
    assert diagram.is_zero()
    with pytest.raises(InputError):
        diagram.map_between("a", "b")


def test_supported_on_upset_requires_upset(segment):
    with pytest.raises(InputError):
        supported_on_upset(segment.ambient, ["a"], point_complex())


def test_representable_support(square):
    diagram = representable(square.ambient, "0x", point_complex())
    assert {x for x, c in diagram.values.items() if not c.is_zero()} == {"0x", "xx"}


def test_cyclic_complex_window():
    assert cyclic_complex(3).ranks() == {0: 1, 1: 1}
    assert cyclic_complex(0) == point_complex()


@pytest.mark.parametrize("seed", range(6))
def test_random_diagram_is_deterministic(square, seed):
    first = random_diagram(square.ambient, seed)
    second = random_diagram(square.ambient, seed)
    assert first.values == second.values
    assert first.maps == second.maps
    lo, hi = first.degree_window
    assert 0 <= lo and hi <= 2 or first.is_zero()
    assert all(max(c.ranks().values(), default=0) <= 3 for c in first.values.values())


def test_diagram_map_naturality(segment):
    z = point_complex()
    diagram = constant_diagram(segment.ambient, z)
    negate = DiagramMap(diagram, diagram, {x: _scalar(z, -1) for x in segment.ambient.elements})
    assert negate.components["ab"] == _scalar(z, -1)
    with pytest.raises(NotFunctorialError):
        DiagramMap(diagram, diagram, {"a": _scalar(z, -1), "b": _scalar(z, -1), "ab": ChainMap.identity(z)})


def test_restrict_to_ideal(segment):
    diagram = random_diagram(segment.ambient, 2)
    restricted = diagram.restrict(segment.ideal)
    assert restricted.index.elements == ("a", "b")
    assert restricted.values["a"] == diagram.values["a"]


@pytest.mark.parametrize("seed", range(5))
def test_random_chain_map_between_different_complexes(seed):
    f = random_chain_map(random.Random(seed), cyclic_complex(2), cyclic_complex(4))
    assert f.component(0)[0, 0] == 2 * f.component(1)[0, 0]


def test_random_diagrams_connect_different_values(square):
    covers = [
        (diagram.values[x], diagram.values[y])
        for diagram in (random_diagram(square.ambient, seed) for seed in range(20))
        for x, y in square.ambient.cover_pairs
    ]
    assert any(a != b and not a.is_zero() and not b.is_zero() for a, b in covers)
