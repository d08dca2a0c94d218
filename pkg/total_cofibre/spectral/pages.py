"""The spectral sequence of the chain-length filtration of the holim total complex.

F^s is spanned by the basis elements with chain length p >= s; the total
differential preserves it. With D the differential and n = q - p,

    Z_r^p   = { x in F^p C_n : D x in F^(p+r) }
    E_r^p   = Z_r^p / (Z_(r-1)^(p+1) + D Z_(r-1)^(p-r+1))
    d_r     : E_r^(p,q) -> E_r^(p+r, q+r-1),  [x] -> [D x]

Page 0 is the associated graded with d_0 the internal differential; page 2
is lim^p H_q. Pages stop once r exceeds the longest chain length, after which
every d_r vanishes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, Field as PydanticField

from ..chains import homology
from ..derived_limits import homotopy_groups_diagram, limp
from ..diagrams import DiagramOfComplexes, gamma_total_complex, holim_total
from ..diagrams.totals import TotalComplex
from ..posets import PosetPair
from .field import RATIONALS, Field, FieldMatrix


# --- Configure Logging ---
logger = logging.getLogger(__name__)

Cell = tuple[int, int]


@dataclass
class SpectralPage:
    """E_r with cell dimensions and the differentials d_r keyed by their source cell."""

    r: int
    field: Field
    cells: dict[Cell, int]
    differentials: dict[Cell, FieldMatrix] = field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        return self.cells.get((p, q), 0)

    def target(self, p: int, q: int) -> Cell:
        return p + self.r, q + self.r - 1

    def differential(self, p: int, q: int) -> FieldMatrix:
        d = self.differentials.get((p, q))
        if d is None:
            return FieldMatrix.zeros(self.field, self.dim(*self.target(p, q)), self.dim(p, q))
        return d

    def total_dimension(self, n: int) -> int:
        return sum(dim for (p, q), dim in self.cells.items() if q - p == n)

    def euler_characteristic(self) -> int:
        return sum(-dim if (q - p) % 2 else dim for (p, q), dim in self.cells.items())

    def squares_to_zero(self) -> bool:
        for (p, q) in self.cells:
            after = self.differential(*self.target(p, q))
            if not (after @ self.differential(p, q)).is_zero():
                return False
        return True

    def homology_dimensions(self) -> dict[Cell, int]:
        """dim ker d_r - dim im d_r at every cell."""
        ranks = {cell: self.differential(*cell).rank() for cell in self.cells}
        result = {}
        for (p, q), dim in self.cells.items():
            incoming = ranks.get((p - self.r, q - self.r + 1), 0)
            result[(p, q)] = dim - ranks[(p, q)] - incoming
        return result

    def to_rows(self) -> list[dict]:
        return [{"r": self.r, "p": p, "q": q, "dim": dim} for (p, q), dim in sorted(self.cells.items()) if dim]


class _FilteredComplex:
    """The holim total complex over a field, with cached filtration pieces."""

    def __init__(self, total: TotalComplex, field_: Field):
        self.complex = total.chain_complex
        self.field = field_
        self.filtration = {n: total.filtration(n) for n in total.bidegrees}
        self._differentials: dict[int, FieldMatrix] = {}
        self._cycles: dict[tuple[int, int, int], FieldMatrix] = {}
        self._cells: dict[tuple[int, int, int], tuple[FieldMatrix, FieldMatrix]] = {}

    def rank(self, n: int) -> int:
        return self.complex.rank(n)

    def d(self, n: int) -> FieldMatrix:
        if n not in self._differentials:
            self._differentials[n] = FieldMatrix.from_integer(self.complex.differential(n), self.field)
        return self._differentials[n]

    def _at_least(self, n: int, p: int) -> list[int]:
        return [i for i, s in enumerate(self.filtration.get(n, ())) if s >= p]

    def _below(self, n: int, s: int) -> list[int]:
        return [i for i, t in enumerate(self.filtration.get(n, ())) if t < s]

    def _embed(self, n: int, indices: list[int], block: FieldMatrix) -> FieldMatrix:
        data = FieldMatrix.zeros(self.field, self.rank(n), block.cols).to_list()
        for row, i in enumerate(indices):
            data[i] = [block[row, j] for j in range(block.cols)]
        return FieldMatrix(self.field, self.rank(n), block.cols, data)

    def cycles(self, r: int, p: int, n: int) -> FieldMatrix:
        """Z_r^p in degree n as columns."""
        key = (r, p, n)
        if key not in self._cycles:
            columns = self._at_least(n, p)
            rows = self._below(n - 1, p + r)
            condition = self.d(n).select_rows(rows).select_columns(columns)
            self._cycles[key] = self._embed(n, columns, condition.nullspace())
        return self._cycles[key]

    def cell(self, r: int, p: int, n: int) -> tuple[FieldMatrix, FieldMatrix]:
        """(representatives of E_r^p in degree n, a basis of the denominator)."""
        key = (r, p, n)
        if key not in self._cells:
            earlier = self.cycles(r - 1, p + 1, n)
            boundaries = self.d(n + 1) @ self.cycles(r - 1, p - r + 1, n + 1)
            denominator = earlier.hstack(boundaries).independent_columns()
            self._cells[key] = (self.cycles(r, p, n).extend_basis(denominator), denominator)
        return self._cells[key]

    def page(self, r: int, cells: list[Cell]) -> SpectralPage:
        page = SpectralPage(r, self.field, {})
        for p, q in cells:
            page.cells[(p, q)] = self.cell(r, p, q - p)[0].cols
        for p, q in cells:
            n = q - p
            representatives, _ = self.cell(r, p, n)
            target_reps, target_den = self.cell(r, p + r, n - 1)
            if not representatives.cols or not target_reps.cols:
                continue
            images = self.d(n) @ representatives
            coordinates = target_reps.hstack(target_den).solve(images)
            page.differentials[(p, q)] = coordinates.select_rows(range(target_reps.cols))
        return page


def ss_pages(diagram: DiagramOfComplexes, field_: Field = RATIONALS, r_max: Optional[int] = None) -> list[SpectralPage]:
    """Pages E_0, E_1, ... up to ``r_max`` (default: longest chain length + 2) or stabilization.

    Stabilization is reached at r = longest chain length + 1; page 2 is always
    produced when ``r_max >= 2``.
    """
    top = diagram.index.longest_chain_length
    if r_max is None:
        r_max = top + 2
    last = min(r_max, max(top + 1, 2))
    total = holim_total(diagram)
    filtered = _FilteredComplex(total, field_)
    qlo, qhi = diagram.degree_window
    cells = [(p, q) for p in range(top + 1) for q in range(qlo, qhi + 1)]
    pages = []
    for r in range(last + 1):
        page = filtered.page(r, cells)
        logger.info(f"[ss_pages] E_{r} over {field_.name}: total dimension {sum(page.cells.values())}")
        pages.append(page)
    return pages


def field_dimension(group, field_: Field) -> int:
    return group.dimension_over(field_.characteristic)


def _stable_pages(diagram: DiagramOfComplexes, field_: Field, pages: Optional[list[SpectralPage]]) -> list[SpectralPage]:
    """Pages through E_2 and the stable page; recomputed when ``pages`` was cut short."""
    last = max(diagram.index.longest_chain_length + 1, 2)
    if pages is None or len(pages) <= last:
        return ss_pages(diagram, field_)
    return pages


# --- Reports ---
class E2Row(BaseModel):
    p: int
    q: int
    spectral: int
    derived_limit: int
    match: bool


class E2Report(BaseModel):
    field: str
    rows: list[E2Row] = PydanticField(default_factory=list)
    mismatches: list[tuple[int, int]] = PydanticField(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.mismatches


def e2_check(
    diagram: DiagramOfComplexes, field_: Field = RATIONALS, pages: Optional[list[SpectralPage]] = None
) -> E2Report:
    """Compare dim E_2^(p,q) with dim lim^p H_q(Y; field) for every cell."""
    e2 = _stable_pages(diagram, field_, pages)[2]
    report = E2Report(field=field_.name)
    top = diagram.index.longest_chain_length
    qlo, qhi = diagram.degree_window
    for q in range(qlo, qhi + 1):
        groups = homotopy_groups_diagram(diagram, q, coefficients=field_.characteristic)
        for p in range(top + 1):
            expected = field_dimension(limp(groups, p), field_)
            row = E2Row(p=p, q=q, spectral=e2.dim(p, q), derived_limit=expected, match=e2.dim(p, q) == expected)
            report.rows.append(row)
            if not row.match:
                report.mismatches.append((p, q))
    logger.info(f"[e2_check] {field_.name}: {len(report.mismatches)} mismatches")
    return report


class AbutmentRow(BaseModel):
    degree: int
    e_infinity: int
    holim: int
    gamma: Optional[int] = None
    match: bool


class AbutmentReport(BaseModel):
    field: str
    shift: Optional[int] = None
    rows: list[AbutmentRow] = PydanticField(default_factory=list)
    mismatches: list[int] = PydanticField(default_factory=list)
    euler_e2: int = 0
    euler_holim: int = 0

    @property
    def euler_holds(self) -> bool:
        return self.euler_e2 == self.euler_holim

    @property
    def holds(self) -> bool:
        return not self.mismatches and self.euler_holds


def abutment_check(
    diagram: DiagramOfComplexes,
    field_: Field = RATIONALS,
    pair: Optional[PosetPair] = None,
    pages: Optional[list[SpectralPage]] = None,
) -> AbutmentReport:
    """E_infinity totals against H_n(holim; field), and against H_(n+m)(Gamma; field) for a ball pair."""
    pages = _stable_pages(diagram, field_, pages)
    infinity = pages[-1]
    e2 = pages[2]
    holim = holim_total(diagram).chain_complex
    holim_homology = homology(holim, field_.characteristic)
    shift = pair.ball_dimension if pair is not None else None
    gamma_homology = None
    if shift is not None:
        gamma_homology = homology(gamma_total_complex(diagram, pair).chain_complex, field_.characteristic)

    report = AbutmentReport(field=field_.name, shift=shift)
    for n in holim.degrees:
        e_inf = infinity.total_dimension(n)
        dim = field_dimension(holim_homology[n], field_)
        gamma = field_dimension(gamma_homology[n + shift], field_) if gamma_homology is not None else None
        match = e_inf == dim and (gamma is None or gamma == dim)
        report.rows.append(AbutmentRow(degree=n, e_infinity=e_inf, holim=dim, gamma=gamma, match=match))
        if not match:
            report.mismatches.append(n)
    report.euler_e2 = e2.euler_characteristic()
    report.euler_holim = sum(
        (-1 if n % 2 else 1) * field_dimension(holim_homology[n], field_) for n in holim.degrees
    )
    logger.info(f"[abutment_check] {field_.name}: mismatches={report.mismatches}, euler_holds={report.euler_holds}")
    return report


def render_table(page: SpectralPage) -> str:
    """Bigraded table of E_r: one line per q (top down), one column per p."""
    if not page.cells:
        return f"E_{page.r}: empty"
    ps = sorted({p for p, _ in page.cells})
    qs = sorted({q for _, q in page.cells}, reverse=True)
    width = max(3, max(len(str(d)) for d in page.cells.values()) + 1)
    lines = [f"E_{page.r} ({page.field.name})"]
    for q in qs:
        entries = "".join(str(page.dim(p, q) or ".").rjust(width) for p in ps)
        lines.append(f"q={q:>3} |{entries}")
    lines.append("      +" + "-" * (width * len(ps)))
    lines.append("   p   " + "".join(str(p).rjust(width) for p in ps))
    return "\n".join(lines)
