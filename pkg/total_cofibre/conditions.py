"""Decide (P1) and (P2) for a poset pair, plus homological shadows of (P1')/(P2').

(P1) and (P2) ask for trivial stable cohomotopy of finite pointed complexes.
For finite complexes that is the same as trivial reduced integral homology,
so both are decided here by exact homology:

  (P1)  H_*(N C, N C^F) = 0                for every F in D
  (P2)  H_*(Cone(beta_F)) = 0              for every F in C \\ D

The strong shadows only test that the inclusions N C^F -> N C (F in D) and
N D -> N C^F (F outside D) are homology isomorphisms; they cannot see the
fundamental group and are reported as such.
"""

from __future__ import annotations

import logging
from typing import Optional

from pydantic import BaseModel, Field

from .chains import (
    ChainComplex,
    homology,
    inclusion_chain_map,
    induced_map_on_homology,
    mapping_cone,
    quotient_map_beta,
    relative_chains,
)
from .linalg import SubquotientGroup
from .posets import PosetPair, complement_star


# --- Configure Logging ---
logger = logging.getLogger(__name__)

# --- Constants ---
P1 = "P1"
P2 = "P2"
P1_STRONG = "P1'-h"
P2_STRONG = "P2'-h"


class Witness(BaseModel):
    """A failing element F and the nonzero group that makes it fail."""

    condition: str
    element: str
    degree: int
    free_rank: int
    torsion: list[int] = Field(default_factory=list)
    detail: str = ""

    @classmethod
    def from_group(cls, condition: str, element: str, degree: int, group: SubquotientGroup, detail: str = "") -> "Witness":
        return cls(
            condition=condition,
            element=element,
            degree=degree,
            free_rank=group.free_rank,
            torsion=list(group.torsion),
            detail=detail,
        )


class ConditionVerdicts(BaseModel):
    """Per-element verdicts of one condition; ``complete`` is False after an early exit."""

    condition: str
    verdicts: dict[str, bool] = Field(default_factory=dict)
    witnesses: list[Witness] = Field(default_factory=list)
    complete: bool = True

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())


class OverallVerdict(BaseModel):
    p1: bool
    p2: bool


class ConditionReport(BaseModel):
    pair: str = ""
    p1: dict[str, bool]
    p2: dict[str, bool]
    p1_strong: dict[str, bool] = Field(default_factory=dict)
    p2_strong: dict[str, bool] = Field(default_factory=dict)
    overall: OverallVerdict
    strong_overall: Optional[OverallVerdict] = None
    witnesses: list[Witness] = Field(default_factory=list)
    complete: bool = True
    notes: list[str] = Field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        """Both (P1) and (P2): the holim/total-cofibre comparison is an equivalence."""
        return self.overall.p1 and self.overall.p2


def _acyclicity_witness(condition: str, element: str, complex_: ChainComplex, detail: str) -> Optional[Witness]:
    found = homology(complex_).first_nontrivial()
    if found is None:
        return None
    degree, group = found
    return Witness.from_group(condition, element, degree, group, detail)


def _run(condition: str, elements, witness_for, exhaustive: bool) -> ConditionVerdicts:
    result = ConditionVerdicts(condition=condition)
    for element in elements:
        witness = witness_for(element)
        result.verdicts[element] = witness is None
        logger.info(f"[check_{condition}] F={element}: {'pass' if witness is None else 'fail'}")
        if witness is not None:
            result.witnesses.append(witness)
            if not exhaustive:
                result.complete = False
                break
    return result


def check_p1(pair: PosetPair, exhaustive: bool = True) -> ConditionVerdicts:
    """(P1): N(C)/N(C^F) is acyclic for every F in D."""
    c = pair.ambient

    def witness_for(face: str) -> Optional[Witness]:
        complex_ = relative_chains(c, complement_star(c, face))
        return _acyclicity_witness(P1, face, complex_, "H_*(N C, N C^F)")

    return _run(P1, pair.ideal, witness_for, exhaustive)


def check_p2(pair: PosetPair, exhaustive: bool = True) -> ConditionVerdicts:
    """(P2): beta_F: N(C)/N(D) -> N(C)/N(C^F) is a homology isomorphism for every F outside D."""

    def witness_for(face: str) -> Optional[Witness]:
        cone = mapping_cone(quotient_map_beta(pair, face))
        return _acyclicity_witness(P2, face, cone, "H_*(Cone(beta_F))")

    return _run(P2, pair.outside, witness_for, exhaustive)


def _inclusion_witness(condition: str, face: str, sub, poset) -> Optional[Witness]:
    for degree, map_ in induced_map_on_homology(inclusion_chain_map(sub, poset)).items():
        kernel = map_.kernel()
        if not kernel.is_trivial():
            return Witness.from_group(condition, face, degree, kernel, "kernel of the inclusion on homology")
        cokernel = map_.cokernel()
        if not cokernel.is_trivial():
            return Witness.from_group(condition, face, degree, cokernel, "cokernel of the inclusion on homology")
    return None


def check_strong(pair: PosetPair, exhaustive: bool = True) -> tuple[ConditionVerdicts, ConditionVerdicts]:
    """Homological (P1')/(P2'): inclusions N C^F -> N C and N D -> N C^F induce isomorphisms."""
    c = pair.ambient

    def p1_witness(face: str) -> Optional[Witness]:
        return _inclusion_witness(P1_STRONG, face, complement_star(c, face), c)

    def p2_witness(face: str) -> Optional[Witness]:
        star = complement_star(c, face)
        return _inclusion_witness(P2_STRONG, face, pair.ideal, star)

    return _run(P1_STRONG, pair.ideal, p1_witness, exhaustive), _run(P2_STRONG, pair.outside, p2_witness, exhaustive)


def classify_pair(pair: PosetPair, exhaustive: bool = True, strong: bool = True) -> ConditionReport:
    """Aggregate (P1), (P2) and, unless ``strong=False``, the homological (P1')/(P2') shadows."""
    p1 = check_p1(pair, exhaustive)
    p2 = check_p2(pair, exhaustive)
    witnesses = p1.witnesses + p2.witnesses
    report = ConditionReport(
        pair=pair.name,
        p1=p1.verdicts,
        p2=p2.verdicts,
        overall=OverallVerdict(p1=p1.holds, p2=p2.holds),
        witnesses=witnesses,
        complete=p1.complete and p2.complete,
        notes=[
            "P1/P2 are decided by integral homology of finite complexes",
            "P1'-h/P2'-h test homology isomorphisms only and cannot detect the fundamental group",
        ],
    )
    if strong:
        s1, s2 = check_strong(pair, exhaustive)
        report.p1_strong = s1.verdicts
        report.p2_strong = s2.verdicts
        report.strong_overall = OverallVerdict(p1=s1.holds, p2=s2.holds)
        report.witnesses.extend(s1.witnesses + s2.witnesses)
        report.complete = report.complete and s1.complete and s2.complete
    logger.info(f"[classify_pair] {pair.name or 'pair'}: P1={report.overall.p1} P2={report.overall.p2}")
    return report
