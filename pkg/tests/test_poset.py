import itertools
import random

import numpy as np
import pytest

from total_cofibre.errors import (
    DuplicateLabelError,
    NotAPosetError,
    NotAnIdealError,
    PosetTooLargeError,
    UnknownElementError,
)
from total_cofibre.posets import (
    Poset,
    PosetPair,
    complement_star,
    is_order_ideal,
    poset_from_relations,
    strict_chains,
)


def _random_poset(rng: random.Random, n: int) -> Poset:
    labels = [f"v{i}" for i in range(n)]
    # relations only go forward, so there is never a cycle
    pairs = [(labels[i], labels[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < 0.4]
    return poset_from_relations(labels, pairs)


def test_segment_from_covers():
    poset = poset_from_relations(["a", "b", "ab"], [("a", "ab"), ("b", "ab")])
    assert poset.is_less("a", "ab") and poset.is_less("b", "ab")
    assert not poset.is_less("a", "b")
    assert poset.cover_pairs == (("a", "ab"), ("b", "ab"))


def test_closure_is_transitive():
    poset = poset_from_relations(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert poset.is_less("x", "z")
    assert poset.cover_pairs == (("x", "y"), ("y", "z"))


def test_cycle_is_rejected_with_pair():
    with pytest.raises(NotAPosetError) as info:
        poset_from_relations(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(info.value.pair) == {"a", "b"}


def test_long_cycle_names_two_distinct_elements():
    with pytest.raises(NotAPosetError) as info:
        poset_from_relations(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    x, y = info.value.pair
    assert x != y
    assert {x, y} <= {"a", "b", "c"}


def test_duplicate_label():
    with pytest.raises(DuplicateLabelError):
        poset_from_relations(["a", "a"], [])


def test_unknown_label_in_relation():
    with pytest.raises(UnknownElementError):
        poset_from_relations(["a"], [("a", "z")])


def test_empty_relations_give_antichain():
    poset = poset_from_relations(["p", "q", "r"], [])
    assert poset.longest_chain_length == 0
    assert strict_chains(poset, 1).chains == ()


def test_axioms_checked_on_raw_relation():
    less = np.array([[False, True], [True, False]])
    with pytest.raises(NotAPosetError):
        Poset(["a", "b"], less)


def test_size_cap(monkeypatch):
    from total_cofibre import config

    monkeypatch.setenv(config.ENV_MAX_ELEMENTS, "2")
    config.get_settings.cache_clear()
    try:
        with pytest.raises(PosetTooLargeError):
            poset_from_relations(["a", "b", "c"], [])
    finally:
        monkeypatch.delenv(config.ENV_MAX_ELEMENTS)
        config.get_settings.cache_clear()


@pytest.mark.parametrize(
    "face, expected",
    [("ab", ("a", "b")), ("a", ("b",))],
)
def test_complement_star_of_segment(segment, face, expected):
    assert complement_star(segment.ambient, face).elements == expected


def test_complement_star_of_minimum_is_empty(diamond):
    assert len(complement_star(diamond, "0")) == 0


def test_complement_star_unknown_element(segment):
    with pytest.raises(UnknownElementError):
        complement_star(segment.ambient, "zz")


@pytest.mark.parametrize(
    "subset, expected",
    [({"a", "b"}, True), ({"ab"}, False), ({"a", "b", "ab"}, True)],
)
def test_is_order_ideal(segment, subset, expected):
    assert is_order_ideal(segment.ambient, subset) is expected


def test_non_ideal_names_offending_pair(segment):
    with pytest.raises(NotAnIdealError) as info:
        PosetPair(segment.ambient, ("ab",))
    assert info.value.pair == ("a", "ab")


def test_segment_chains(segment):
    assert strict_chains(segment.ambient, 1).chains == (("a", "ab"), ("b", "ab"))


def test_square_chain_counts(square):
    assert square.ambient.chain_counts() == (9, 16, 8)
    counts = square.ambient.chain_counts()
    assert sum((-1) ** p * c for p, c in enumerate(counts)) == 1
    assert all(
        square.ambient.is_less(x, y) and square.ambient.is_less(y, z)
        for x, y, z in strict_chains(square.ambient, 2).chains
    )


def test_chains_are_lexicographic(square):
    poset = square.ambient
    for p in range(3):
        keys = [[poset.index(x) for x in chain] for chain in poset.chains(p)]
        assert keys == sorted(keys)


def test_complement_star_matches_definition_on_small_posets():
    rng = random.Random(3)
    for _ in range(30):
        poset = _random_poset(rng, rng.randint(1, 6))
        for face in poset.elements:
            star = set(complement_star(poset, face).elements)
            assert star == {g for g in poset.elements if not poset.is_leq(face, g)}
            for g in star:
                for h in poset.down_set(g):
                    if not poset.is_leq(face, h):
                        assert h in star


def test_generated_ideals_lie_in_every_complement_star(square):
    for face in square.outside:
        star = set(complement_star(square.ambient, face).elements)
        assert square.ideal_set <= star


def test_relabelling_keeps_chain_counts(square):
    mapping = {x: f"f{i}" for i, x in enumerate(square.ambient.elements)}
    order = sorted(mapping.values(), reverse=True)
    renamed = square.ambient.relabel(mapping, order)
    assert renamed.chain_counts() == square.ambient.chain_counts()


def test_linear_extension_respects_order(square):
    order = square.ambient.linear_extension()
    position = {x: i for i, x in enumerate(order)}
    assert all(position[x] < position[y] for x, y in square.ambient.cover_pairs)
