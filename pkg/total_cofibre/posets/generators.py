"""Face posets of polytopal balls and the operations that build new ones.

Every generator returns a :class:`PosetPair` whose ideal is the boundary
subcomplex and whose ``ball_dimension`` records m. Faces are built
combinatorially; no coordinates are involved.

Spec strings understood by :func:`parse_generator_spec`::

    simplex:2   cube:3   cube:2-boundary
    prism(simplex:1,cube:1)   cone(simplex:1)   sd(cube:2)   boundary(cube:2)
"""

from __future__ import annotations

import itertools
import logging
import re
import string
from typing import Callable

import numpy as np

from ..config import get_settings
from ..errors import ParseError, UnsupportedGeneratorError
from .poset import Poset, PosetPair, poset_from_relations


# --- Configure Logging ---
logger = logging.getLogger(__name__)

# --- Constants ---
APEX = "*"
POINT = "pt"
_ATOM = re.compile(r"(?P<kind>[a-z]+):(?P<n>\d+)(?P<boundary>-boundary)?")


def _check_dimension(kind: str, n: int) -> None:
    bound = get_settings().max_generator_dimension
    if n < 0:
        raise UnsupportedGeneratorError(f"{kind} needs a non-negative dimension, got {n}")
    if n > bound:
        raise UnsupportedGeneratorError(f"{kind}({n}) exceeds the configured dimension bound {bound}")


def _poset_from_order(labels: list[str], leq: Callable[[int, int], bool]) -> Poset:
    n = len(labels)
    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and leq(i, j):
                less[i, j] = True
    return Poset(labels, less, check=False)


def simplex(n: int) -> PosetPair:
    """Faces of the n-simplex on vertices a, b, c, ...; the ideal is the proper faces."""
    _check_dimension("simplex", n)
    vertices = string.ascii_lowercase[: n + 1]
    faces = [frozenset(c) for k in range(1, n + 2) for c in itertools.combinations(vertices, k)]
    labels = ["".join(sorted(f)) for f in faces]
    ambient = _poset_from_order(labels, lambda i, j: faces[i] <= faces[j])
    logger.info(f"[simplex] n={n}: {len(ambient)} faces")
    return PosetPair(ambient, tuple(labels[:-1]), ball_dimension=n, name=f"simplex:{n}")


def cube(n: int) -> PosetPair:
    """Faces of [0,1]^n as words over {0, 1, x}; the ideal is the boundary faces."""
    _check_dimension("cube", n)
    if n == 0:
        return PosetPair(Poset([POINT], np.zeros((1, 1), dtype=bool)), (), ball_dimension=0, name="cube:0")
    words = sorted(("".join(w) for w in itertools.product("01x", repeat=n)), key=lambda w: (w.count("x"), w))

    def leq(i: int, j: int) -> bool:
        return all(a == b or b == "x" for a, b in zip(words[i], words[j]))

    ambient = _poset_from_order(words, leq)
    logger.info(f"[cube] n={n}: {len(ambient)} faces")
    return PosetPair(ambient, tuple(words[:-1]), ball_dimension=n, name=f"cube:{n}")


def prism(first: PosetPair, second: PosetPair) -> PosetPair:
    """Product of two balls; faces are pairs "F|G" ordered componentwise."""
    if first.ball_dimension is None or second.ball_dimension is None:
        raise UnsupportedGeneratorError("prism needs two generated ball pairs")
    _check_dimension("prism", first.ball_dimension + second.ball_dimension)
    pairs = list(itertools.product(first.ambient.elements, second.ambient.elements))
    labels = [f"{f}|{g}" for f, g in pairs]
    p, q = first.ambient, second.ambient

    def leq(i: int, j: int) -> bool:
        (f1, g1), (f2, g2) = pairs[i], pairs[j]
        return p.is_leq(f1, f2) and q.is_leq(g1, g2)

    ambient = _poset_from_order(labels, leq)
    ideal = [
        label
        for (f, g), label in zip(pairs, labels)
        if f in first.ideal_set or g in second.ideal_set
    ]
    return PosetPair(
        ambient,
        tuple(ideal),
        ball_dimension=first.ball_dimension + second.ball_dimension,
        name=f"prism({first.name},{second.name})",
    )


def cone(base: PosetPair) -> PosetPair:
    """Cone with apex "*"; the face F* is the cone on F.

    The boundary of the cone on a ball B is B together with the cone on the
    boundary of B.
    """
    if base.ball_dimension is None:
        raise UnsupportedGeneratorError("cone needs a generated ball pair")
    _check_dimension("cone", base.ball_dimension + 1)
    old = base.ambient.elements
    labels = list(old) + [APEX] + [f"{f}{APEX}" for f in old]
    relations = list(base.ambient.cover_pairs)
    relations += [(f"{f}{APEX}", f"{g}{APEX}") for f, g in base.ambient.cover_pairs]
    relations += [(f, f"{f}{APEX}") for f in old]
    relations += [(APEX, f"{f}{APEX}") for f in base.ambient.minimal_elements()]
    ambient = poset_from_relations(labels, relations)
    ideal = list(old) + [APEX] + [f"{f}{APEX}" for f in base.ideal]
    return PosetPair(ambient, tuple(ideal), ball_dimension=base.ball_dimension + 1, name=f"cone({base.name})")


def chain_label(chain: tuple[str, ...]) -> str:
    return "[" + "<".join(chain) + "]"


def barycentric_subdivision(base: PosetPair) -> PosetPair:
    """Face poset of the order complex: chains of the ambient ordered by inclusion."""
    poset = base.ambient
    chains = [c for p in range(poset.longest_chain_length + 1) for c in poset.chains(p)]
    chains.sort(key=lambda c: (len(c), [poset.index(x) for x in c]))
    labels = [chain_label(c) for c in chains]
    as_sets = [frozenset(c) for c in chains]
    ambient = _poset_from_order(labels, lambda i, j: as_sets[i] <= as_sets[j])
    ideal = [label for c, label in zip(chains, labels) if all(x in base.ideal_set for x in c)]
    logger.info(f"[barycentric_subdivision] {base.name}: {len(ambient)} chains")
    return PosetPair(ambient, tuple(ideal), ball_dimension=base.ball_dimension, name=f"sd({base.name})")


def boundary(base: PosetPair) -> PosetPair:
    """The ideal of ``base`` as an ambient poset with an empty ideal (a sphere for ball pairs)."""
    return PosetPair(base.ideal_poset(), (), ball_dimension=None, name=f"boundary({base.name})")


# --- Dispatch ---
_BASIC = {"simplex": simplex, "cube": cube}
_UNARY = {"cone": cone, "sd": barycentric_subdivision, "boundary": boundary}


def generate(kind: str, *params) -> PosetPair:
    """Run a generator by name: ``generate("cube", 2)``, ``generate("prism", a, b)``."""
    if kind in _BASIC:
        (n,) = params
        return _BASIC[kind](int(n))
    if kind in _UNARY:
        (base,) = params
        return _UNARY[kind](base)
    if kind == "prism":
        return prism(*params)
    if kind == "barycentric_subdivision":
        return barycentric_subdivision(*params)
    raise UnsupportedGeneratorError(f"unsupported generator '{kind}'")


def parse_generator_spec(text: str) -> PosetPair:
    """Parse and run a generator spec string such as ``prism(simplex:1,cube:1)``."""
    source = text.replace(" ", "")
    pair, position = _parse_term(source, 0)
    if position != len(source):
        raise ParseError(f"unexpected '{source[position:]}' in generator spec '{text}'", 1, position + 1)
    return pair


def _parse_term(source: str, position: int) -> tuple[PosetPair, int]:
    atom = _ATOM.match(source, position)
    if atom:
        kind = atom.group("kind")
        if kind not in _BASIC:
            raise UnsupportedGeneratorError(f"unsupported generator '{kind}'")
        pair = _BASIC[kind](int(atom.group("n")))
        if atom.group("boundary"):
            pair = boundary(pair)
        return pair, atom.end()
    name = re.compile(r"[a-z_]+\(").match(source, position)
    if not name:
        raise ParseError(f"expected a generator at '{source[position:]}'", 1, position + 1)
    kind = name.group(0)[:-1]
    arguments = []
    position = name.end()
    while True:
        argument, position = _parse_term(source, position)
        arguments.append(argument)
        if position < len(source) and source[position] == ",":
            position += 1
            continue
        if position < len(source) and source[position] == ")":
            position += 1
            break
        raise ParseError(f"unterminated arguments for '{kind}'", 1, position + 1)
    if kind in _UNARY and len(arguments) != 1:
        raise ParseError(f"'{kind}' takes one argument, got {len(arguments)}", 1, position)
    if kind == "prism" and len(arguments) != 2:
        raise ParseError(f"'prism' takes two arguments, got {len(arguments)}", 1, position)
    return generate(kind, *arguments), position
