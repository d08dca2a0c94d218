"""Compare H_n(holim X) with H_{n+m}(Gamma X) for a ball pair of dimension m."""

from __future__ import annotations

import logging
from typing import Optional

from pydantic import BaseModel, Field

from ..chains import homology
from ..conditions import ConditionReport, classify_pair
from ..errors import ConditionsNotSatisfiedError, InputError
from ..posets import PosetPair
from .diagram import DiagramOfComplexes
from .totals import gamma_total_complex, holim_total


# --- Configure Logging ---
logger = logging.getLogger(__name__)


class GroupRecord(BaseModel):
    free_rank: int = 0
    torsion: list[int] = Field(default_factory=list)


class DegreeComparison(BaseModel):
    degree: int
    holim: GroupRecord
    gamma: GroupRecord
    isomorphic: bool


class EquivalenceReport(BaseModel):
    pair: str = ""
    shift: int
    rows: list[DegreeComparison] = Field(default_factory=list)
    mismatches: list[int] = Field(default_factory=list)
    conditions: Optional[ConditionReport] = None

    @property
    def holds(self) -> bool:
        return not self.mismatches


def verify_ball_equivalence(
    diagram: DiagramOfComplexes,
    pair: PosetPair,
    *,
    require_conditions: bool = True,
    conditions: Optional[ConditionReport] = None,
    shift: Optional[int] = None,
) -> EquivalenceReport:
    """Check H_n(holim X) = H_{n+m}(Gamma X) in every degree where either side can be nonzero.

    Args:
        diagram: a diagram indexed by ``pair.ambient``.
        pair: the poset pair; m defaults to its recorded ball dimension.
        require_conditions: refuse with :class:`ConditionsNotSatisfiedError` when
            (P1) or (P2) fails; with False the mismatches are reported instead.
        conditions: a report already computed for ``pair``.
        shift: overrides m, for pairs without a recorded ball dimension.

    Returns:
        A report with one row per degree n and the list of mismatching degrees.
    """
    m = pair.ball_dimension if shift is None else shift
    if m is None:
        raise InputError(f"pair '{pair.name}' has no ball dimension; pass an explicit shift")
    if conditions is None and require_conditions:
        conditions = classify_pair(pair, exhaustive=False, strong=False)
    if require_conditions and not conditions.satisfied:
        raise ConditionsNotSatisfiedError(f"pair '{pair.name}' fails (P1)/(P2)", conditions)

    holim = holim_total(diagram).chain_complex
    gamma = gamma_total_complex(diagram, pair).chain_complex
    left = homology(holim)
    right = homology(gamma)
    report = EquivalenceReport(pair=pair.name, shift=m, conditions=conditions)
    windows = [(c.lo - s, c.hi - s) for c, s in ((holim, 0), (gamma, m)) if not c.is_zero()]
    lo = min((w[0] for w in windows), default=0)
    hi = max((w[1] for w in windows), default=-1)
    for n in range(lo, hi + 1):
        a, b = left[n], right[n + m]
        row = DegreeComparison(
            degree=n,
            holim=GroupRecord(free_rank=a.free_rank, torsion=list(a.torsion)),
            gamma=GroupRecord(free_rank=b.free_rank, torsion=list(b.torsion)),
            isomorphic=a.is_isomorphic(b),
        )
        report.rows.append(row)
        if not row.isomorphic:
            report.mismatches.append(n)
    logger.info(f"[verify_ball_equivalence] {pair.name}: m={m}, mismatches={report.mismatches}")
    return report
