import logging

import pytest

from total_cofibre.chains import cohomology, order_complex_chains
from total_cofibre.derived_limits import (
    AbelianDiagram,
    derived_limits,
    homotopy_groups_diagram,
    inverse_limit,
    limp,
)
from total_cofibre.diagrams import constant_diagram, cyclic_complex, random_diagram
from total_cofibre.linalg import GroupHomomorphism, IntegerMatrix, SubquotientGroup
from total_cofibre.posets import cone, cube, poset_from_relations, simplex


def _nonzero(values):
    return {p: g.describe() for p, g in values.items() if not g.is_trivial()}


def test_constant_on_diamond(diamond):
    values = derived_limits(AbelianDiagram.constant(diamond, SubquotientGroup.free(1)))
    assert _nonzero(values) == {0: "Z"}


def test_constant_on_circle(square_boundary):
    values = derived_limits(AbelianDiagram.constant(square_boundary.ambient, SubquotientGroup.free(1)))
    assert _nonzero(values) == {0: "Z", 1: "Z"}


def test_torsion_constant_on_circle(square_boundary):
    diagram = AbelianDiagram.constant(square_boundary.ambient, SubquotientGroup.cyclic(2))
    assert limp(diagram, 1).describe() == "Z/2"


def test_one_element_poset():
    point = poset_from_relations(["x"], [])
    values = derived_limits(AbelianDiagram.constant(point, SubquotientGroup.cyclic(6)))
    assert _nonzero(values) == {0: "Z/6"}


def test_zero_diagram(diamond):
    assert _nonzero(derived_limits(AbelianDiagram(diamond, {}))) == {}


def test_doubling_map_creates_torsion_in_lim1(segment):
    # A(b) = 0 forces the value at ab, and then at a, to vanish
    z = SubquotientGroup.free(1)
    doubling = GroupHomomorphism(IntegerMatrix.from_rows([[2]]), z, z)
    diagram = AbelianDiagram(segment.ambient, {"a": z, "ab": z}, {("a", "ab"): doubling})
    assert limp(diagram, 0).describe() == "0"
    assert limp(diagram, 1).describe() == "Z/2"
    assert inverse_limit(diagram).is_isomorphic(limp(diagram, 0))


def test_doubling_map_with_identity_branch_has_free_limit(segment):
    z = SubquotientGroup.free(1)
    doubling = GroupHomomorphism(IntegerMatrix.from_rows([[2]]), z, z)
    identity = GroupHomomorphism(IntegerMatrix.from_rows([[1]]), z, z)
    diagram = AbelianDiagram(
        segment.ambient, {"a": z, "b": z, "ab": z}, {("a", "ab"): doubling, ("b", "ab"): identity}
    )
    assert _nonzero(derived_limits(diagram)) == {0: "Z"}


def test_out_of_range_is_zero_with_warning(segment, caplog):
    diagram = AbelianDiagram.constant(segment.ambient, SubquotientGroup.free(1))
    with caplog.at_level(logging.WARNING, logger="total_cofibre.derived_limits"):
        assert limp(diagram, 5).is_trivial()
        assert limp(diagram, -1).is_trivial()
    assert "outside" in caplog.text


@pytest.mark.parametrize("order", [0, 2, 6])
@pytest.mark.parametrize("pair", [simplex(1), cube(2), cone(simplex(1))], ids=["segment", "square", "cone"])
def test_constant_coefficients_compute_nerve_cohomology(pair, order):
    for poset in (pair.ambient, pair.ideal_poset()):
        values = derived_limits(AbelianDiagram.constant(poset, SubquotientGroup.cyclic(order)))
        expected = cohomology(order_complex_chains(poset), order)
        for p, group in values.items():
            assert group.is_isomorphic(expected[p]), f"p={p}"


@pytest.mark.parametrize("seed", range(6))
def test_inverse_limit_agrees_with_lim0(square, seed):
    groups = homotopy_groups_diagram(random_diagram(square.ambient, seed), 0)
    assert inverse_limit(groups).is_isomorphic(limp(groups, 0))


def test_homotopy_groups_of_constant_diagram(diamond):
    groups = homotopy_groups_diagram(constant_diagram(diamond, cyclic_complex(2)), 0)
    assert all(g.describe() == "Z/2" for g in groups.values.values())
    assert limp(groups, 0).describe() == "Z/2"
    assert homotopy_groups_diagram(constant_diagram(diamond, cyclic_complex(2)), 1).is_zero()


def test_homotopy_groups_with_field_coefficients(diamond):
    groups = homotopy_groups_diagram(constant_diagram(diamond, cyclic_complex(2)), 1, coefficients=2)
    assert all(g.dimension_over(2) == 1 for g in groups.values.values())
