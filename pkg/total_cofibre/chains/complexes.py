"""Bounded chain complexes of finitely generated free abelian groups.

Each degree carries an explicit ordered basis of hashable labels; the
differential ``d_n: C_n -> C_{n-1}`` is an :class:`IntegerMatrix` of shape
``(rank C_{n-1}, rank C_n)``.
"""

from __future__ import annotations

import logging
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from ..errors import DimensionMismatchError, InputError, InvalidMapError, NotAChainComplexError
from ..linalg import IntegerMatrix, MatrixLike, as_dense


# --- Configure Logging ---
logger = logging.getLogger(__name__)

Label = Hashable


class ChainComplex:
    """A bounded complex; degrees outside ``[lo, hi]`` are zero."""

    __slots__ = ("lo", "hi", "_bases", "_differentials", "_positions")

    def __init__(
        self,
        bases: Mapping[int, Sequence[Label]],
        differentials: Optional[Mapping[int, MatrixLike]] = None,
        *,
        check: bool = True,
    ):
        degrees = [n for n, basis in bases.items() if len(basis)]
        self.lo = min(degrees) if degrees else 0
        self.hi = max(degrees) if degrees else -1
        self._bases = {n: tuple(bases.get(n, ())) for n in range(self.lo, self.hi + 1)}
        self._positions: dict[int, dict[Label, int]] = {}
        differentials = dict(differentials or {})
        self._differentials: dict[int, IntegerMatrix] = {}
        for n in range(self.lo + 1, self.hi + 1):
            shape = (self.rank(n - 1), self.rank(n))
            d = differentials.pop(n, None)
            d = IntegerMatrix.zeros(*shape) if d is None else as_dense(d)
            if d.shape != shape:
                raise NotAChainComplexError(f"d_{n} has shape {d.shape}, expected {shape}")
            self._differentials[n] = d
        for n, d in differentials.items():
            if not as_dense(d).is_zero():
                raise NotAChainComplexError(f"nonzero d_{n} leaves the degree range [{self.lo}, {self.hi}]")
        if check:
            self.check()

    # --- Construction helpers ---
    @classmethod
    def zero(cls) -> "ChainComplex":
        return cls({})

    @classmethod
    def free(cls, rank: int, degree: int = 0) -> "ChainComplex":
        """Z^rank concentrated in one degree."""
        return cls({degree: tuple(range(rank))})

    @classmethod
    def from_matrices(cls, lo: int, ranks: Sequence[int], differentials: Mapping[int, MatrixLike]) -> "ChainComplex":
        """Integer-labelled bases: degree ``lo + k`` gets ``ranks[k]`` elements."""
        return cls({lo + k: tuple(range(r)) for k, r in enumerate(ranks)}, differentials)

    def check(self) -> None:
        for n in range(self.lo + 2, self.hi + 1):
            square = self._differentials[n - 1] @ self._differentials[n]
            if not square.is_zero():
                raise NotAChainComplexError(f"d_{n - 1} . d_{n} is not zero")

    # --- Access ---
    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def basis(self, n: int) -> tuple[Label, ...]:
        return self._bases.get(n, ())

    def rank(self, n: int) -> int:
        return len(self.basis(n))

    def ranks(self) -> dict[int, int]:
        return {n: self.rank(n) for n in self.degrees}

    def differential(self, n: int) -> IntegerMatrix:
        d = self._differentials.get(n)
        return d if d is not None else IntegerMatrix.zeros(self.rank(n - 1), self.rank(n))

    def differentials(self) -> dict[int, IntegerMatrix]:
        return dict(self._differentials)

    def position(self, n: int, label: Label) -> int:
        if n not in self._positions:
            self._positions[n] = {label: i for i, label in enumerate(self.basis(n))}
        try:
            return self._positions[n][label]
        except KeyError:
            raise InputError(f"{label!r} is not a basis element in degree {n}") from None

    def is_zero(self) -> bool:
        return not any(self.rank(n) for n in self.degrees)

    def total_rank(self) -> int:
        return sum(self.rank(n) for n in self.degrees)

    def euler_characteristic(self) -> int:
        return sum(-self.rank(n) if n % 2 else self.rank(n) for n in self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._bases == other._bases and self._differentials == other._differentials

    def __hash__(self) -> int:
        return hash((tuple(self._bases.items()), tuple(self._differentials.items())))

    def __repr__(self) -> str:
        ranks = ", ".join(f"{n}:{r}" for n, r in self.ranks().items())
        return f"ChainComplex({{{ranks}}})"

    # --- Derived complexes ---
    def shift(self, k: int) -> "ChainComplex":
        """Degree n moves to n + k; differentials are kept as they are."""
        return ChainComplex(
            {n + k: self.basis(n) for n in self.degrees},
            {n + k: d for n, d in self._differentials.items()},
            check=False,
        )

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        """Bases are tagged (0, label) and (1, label)."""
        degrees = range(min(self.lo, other.lo), max(self.hi, other.hi) + 1)
        bases = {n: tuple((0, x) for x in self.basis(n)) + tuple((1, x) for x in other.basis(n)) for n in degrees}
        differentials = {
            n: IntegerMatrix.block_diagonal([self.differential(n), other.differential(n)]) for n in degrees
        }
        return ChainComplex(bases, differentials, check=False)

    def restrict(self, keep: Callable[[int, Label], bool], *, quotient: bool) -> "ChainComplex":
        """Keep the basis elements selected by ``keep``.

        With ``quotient=True`` the dropped elements must span a subcomplex and the
        result is the quotient; otherwise the kept elements must span one.
        """
        selected: dict[int, list[int]] = {}
        dropped: dict[int, list[int]] = {}
        for n in self.degrees:
            flags = [keep(n, x) for x in self.basis(n)]
            selected[n] = [i for i, flag in enumerate(flags) if flag]
            dropped[n] = [i for i, flag in enumerate(flags) if not flag]
        bases = {n: tuple(self.basis(n)[i] for i in selected[n]) for n in self.degrees}
        differentials = {}
        for n in range(self.lo + 1, self.hi + 1):
            d = self._differentials[n]
            if quotient:
                leak = d.select_rows(selected[n - 1]).select_columns(dropped[n])
            else:
                leak = d.select_rows(dropped[n - 1]).select_columns(selected[n])
            if not leak.is_zero():
                raise NotAChainComplexError(f"dropped basis elements do not span a subcomplex in degree {n}"
                                            if quotient else f"kept basis elements do not span a subcomplex in degree {n}")
            differentials[n] = d.select_rows(selected[n - 1]).select_columns(selected[n])
        return ChainComplex(bases, differentials, check=False)

    def quotient(self, sub: Iterable[tuple[int, Label]]) -> "ChainComplex":
        """Quotient by the basis-aligned subcomplex spanned by the given (degree, label) pairs."""
        sub = set(sub)
        return self.restrict(lambda n, x: (n, x) not in sub, quotient=True)

    def subcomplex(self, elements: Iterable[tuple[int, Label]]) -> "ChainComplex":
        elements = set(elements)
        return self.restrict(lambda n, x: (n, x) in elements, quotient=False)


class ChainMap:
    """A degreewise family ``f_n: S_n -> T_n`` commuting with the differentials."""

    __slots__ = ("source", "target", "_components")

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        components: Mapping[int, MatrixLike],
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self._components: dict[int, IntegerMatrix] = {}
        for n, f in components.items():
            f = as_dense(f)
            shape = (target.rank(n), source.rank(n))
            if f.shape != shape:
                raise DimensionMismatchError(f"component f_{n} has shape {f.shape}, expected {shape}")
            if not f.is_zero():
                self._components[n] = f
        if check:
            self.check()

    def check(self) -> None:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo + 1, hi + 1):
            left = self.target.differential(n) @ self.component(n)
            right = self.component(n - 1) @ self.source.differential(n)
            if left != right:
                raise InvalidMapError(f"chain map does not commute with the differentials in degree {n}")

    @classmethod
    def identity(cls, complex_: ChainComplex) -> "ChainMap":
        return cls(complex_, complex_, {n: IntegerMatrix.identity(complex_.rank(n)) for n in complex_.degrees}, check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, {}, check=False)

    def component(self, n: int) -> IntegerMatrix:
        f = self._components.get(n)
        return f if f is not None else IntegerMatrix.zeros(self.target.rank(n), self.source.rank(n))

    def components(self) -> dict[int, IntegerMatrix]:
        return dict(self._components)

    def is_zero(self) -> bool:
        return not self._components

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self . first"""
        if first.target != self.source:
            raise DimensionMismatchError("composed chain maps do not share a middle complex")
        degrees = set(first._components) & set(self._components)
        return ChainMap(
            first.source, self.target, {n: self._components[n] @ first._components[n] for n in degrees}, check=False
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self._components == other._components
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._components.items())))

    def __repr__(self) -> str:
        return f"ChainMap({self.source!r} -> {self.target!r})"
