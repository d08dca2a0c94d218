"""Job specifications and their execution.

A :class:`JobSpec` is everything one CLI invocation needs; :func:`run` turns
it into an exit status and a report dictionary. Nothing here touches
``sys.argv`` or the terminal.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..chains import homology, order_complex_chains, relative_chains
from ..conditions import classify_pair
from ..derived_limits import derived_limits, homotopy_groups_diagram, limp
from ..diagrams import (
    DiagramOfComplexes,
    constant_diagram,
    cyclic_complex,
    gamma_total_complex,
    holim_total,
    random_diagram,
    representable,
    verify_ball_equivalence,
)
from ..errors import ConditionsNotSatisfiedError, InputError, ParseError, TotalCofibreError
from ..posets import PosetPair, parse_generator_spec
from ..spectral import Field as CoefficientField, abutment_check, e2_check, ss_pages
from .serialize import envelope, homology_records, parse_diagram_json, parse_poset_json, serialize_poset


# --- Configure Logging ---
logger = logging.getLogger(__name__)

# --- Constants ---
COMMANDS = ("check", "homology", "limp", "gamma", "holim", "verify", "ss")
EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_ERROR = 2

_CONSTANT = re.compile(r"^Z(?:/(?P<order>\d+))?$")
_SEED = re.compile(r"^(?:seed=)?(?P<seed>-?\d+)$")
_WINDOW = re.compile(r"^(?P<lo>-?\d+)\.\.(?P<hi>-?\d+)$")


class JobSpec(BaseModel):
    """One CLI job: a command, exactly one poset source and at most one diagram source."""

    model_config = {"frozen": True}

    command: Literal["check", "homology", "limp", "gamma", "holim", "verify", "ss"]
    poset_path: Optional[Path] = None
    generate: Optional[str] = None
    diagram_path: Optional[Path] = None
    constant: Optional[str] = None
    random_diagram: Optional[str] = None
    representable: Optional[str] = None
    field: str = "q"
    seed: int = 0
    strict: bool = False
    degrees: Optional[tuple[int, int]] = None
    shift: Optional[int] = None
    p: Optional[int] = None
    q: int = 0
    r_max: Optional[int] = Field(default=None, ge=0)

    @field_validator("degrees", mode="before")
    @classmethod
    def _parse_window(cls, value):
        if isinstance(value, str):
            match = _WINDOW.match(value.strip())
            if not match:
                raise ValueError(f"degree window '{value}' is not of the form lo..hi")
            value = (int(match.group("lo")), int(match.group("hi")))
        if value is not None and value[0] > value[1]:
            raise ValueError(f"empty degree window {value[0]}..{value[1]}")
        return value

    @field_validator("constant")
    @classmethod
    def _known_constant(cls, value):
        if value is not None and not _CONSTANT.match(value):
            raise ValueError(f"constant coefficients '{value}' must be Z or Z/n")
        return value

    @model_validator(mode="after")
    def _one_source(self) -> "JobSpec":
        if (self.poset_path is None) == (self.generate is None):
            raise ValueError("give exactly one of --poset and --generate")
        sources = [s for s in (self.diagram_path, self.constant, self.random_diagram, self.representable) if s is not None]
        if len(sources) > 1:
            raise ValueError("give at most one of --diagram, --constant, --random-diagram, --representable")
        return self

    @property
    def coefficient_field(self) -> CoefficientField:
        return CoefficientField.parse(self.field)


# --- Inputs ---
def load_pair(job: JobSpec) -> PosetPair:
    if job.generate is not None:
        return parse_generator_spec(job.generate)
    try:
        text = job.poset_path.read_text()
    except OSError as e:
        raise InputError(f"cannot read poset file '{job.poset_path}': {e.strerror}") from e
    return parse_poset_json(text)


def load_diagram(job: JobSpec, pair: PosetPair) -> DiagramOfComplexes:
    """The job's diagram; constant Z when no diagram source is given."""
    index = pair.ambient
    if job.diagram_path is not None:
        try:
            text = job.diagram_path.read_text()
        except OSError as e:
            raise InputError(f"cannot read diagram file '{job.diagram_path}': {e.strerror}") from e
        return parse_diagram_json(text, pair)
    if job.random_diagram is not None:
        match = _SEED.match(job.random_diagram.strip()) if job.random_diagram.strip() else None
        if job.random_diagram.strip() and not match:
            raise ParseError(f"random diagram spec '{job.random_diagram}' is not of the form seed=N")
        seed = int(match.group("seed")) if match else job.seed
        return random_diagram(index, seed)
    if job.representable is not None:
        return representable(index, job.representable, cyclic_complex(0))
    order = 0
    if job.constant is not None:
        order = int(_CONSTANT.match(job.constant).group("order") or 0)
    return constant_diagram(index, cyclic_complex(order))


def _in_window(job: JobSpec, n: int) -> bool:
    return job.degrees is None or job.degrees[0] <= n <= job.degrees[1]


# --- Commands ---
def _check(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    report = classify_pair(pair, exhaustive=True, strong=True)
    status = "success" if report.satisfied else "failure"
    code = EXIT_FAILURE if job.strict and not report.satisfied else EXIT_SUCCESS
    return code, status, {"pair": serialize_poset(pair), "conditions": report.model_dump(mode="json")}


def _homology(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    absolute = homology(order_complex_chains(pair.ambient))
    relative = homology(relative_chains(pair.ambient, pair.ideal))
    result = {
        "pair": serialize_poset(pair),
        "order_complex": homology_records(absolute, job.degrees),
        "relative": homology_records(relative, job.degrees),
    }
    return EXIT_SUCCESS, "success", result


def _limp(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    diagram = load_diagram(job, pair)
    groups = homotopy_groups_diagram(diagram, job.q)
    if job.p is not None:
        values = {job.p: limp(groups, job.p)}
    else:
        values = derived_limits(groups)
    rows = [
        {"p": p, "q": job.q, "group": g.describe(), **g.to_record()}
        for p, g in sorted(values.items())
        if job.p is not None or not g.is_trivial()
    ]
    return EXIT_SUCCESS, "success", {"lim": rows}


def _total(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    diagram = load_diagram(job, pair)
    total = gamma_total_complex(diagram, pair) if job.command == "gamma" else holim_total(diagram)
    complex_ = total.chain_complex
    result = {
        "kind": total.kind,
        "ranks": {str(n): r for n, r in complex_.ranks().items() if _in_window(job, n)},
        "homology": homology_records(homology(complex_), job.degrees),
    }
    return EXIT_SUCCESS, "success", result


def _verify(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    diagram = load_diagram(job, pair)
    try:
        report = verify_ball_equivalence(diagram, pair, shift=job.shift)
    except ConditionsNotSatisfiedError as e:
        result = {"conditions": e.report.model_dump(mode="json") if e.report is not None else None}
        return EXIT_FAILURE, "failure", {"message": str(e), **result}
    rows = [row.model_dump(mode="json") for row in report.rows if _in_window(job, row.degree)]
    status = "success" if report.holds else "failure"
    code = EXIT_FAILURE if job.strict and not report.holds else EXIT_SUCCESS
    return code, status, {"shift": report.shift, "rows": rows, "mismatches": report.mismatches}


def _ss(job: JobSpec, pair: PosetPair) -> tuple[int, str, dict]:
    diagram = load_diagram(job, pair)
    field = job.coefficient_field
    pages = ss_pages(diagram, field)
    e2 = e2_check(diagram, field, pages)
    abutment = abutment_check(diagram, field, pair if pair.ball_dimension is not None else None, pages)
    if job.r_max is not None:
        pages = pages[: job.r_max + 1]
    holds = e2.holds and abutment.holds
    result = {
        "field": field.name,
        "pages": [
            {
                "r": page.r,
                "cells": [row for row in page.to_rows() if _in_window(job, row["q"] - row["p"])],
                "differentials": {
                    f"{p},{q}": [[str(x) for x in row] for row in d.to_list()]
                    for (p, q), d in sorted(page.differentials.items())
                    if not d.is_zero()
                },
            }
            for page in pages
        ],
        "e2_check": e2.model_dump(mode="json"),
        "abutment_check": {**abutment.model_dump(mode="json"), "euler_holds": abutment.euler_holds},
    }
    code = EXIT_FAILURE if job.strict and not holds else EXIT_SUCCESS
    return code, "success" if holds else "failure", result


_HANDLERS = {
    "check": _check,
    "homology": _homology,
    "limp": _limp,
    "gamma": _total,
    "holim": _total,
    "verify": _verify,
    "ss": _ss,
}


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute ``job``; errors become a report with status "error" and exit status 2 (1 for failed conditions).

    Returns:
        (exit status, report) where the report is the JSON envelope of the command.
    """
    logger.info(f"[run] {job.command}")
    try:
        pair = load_pair(job)
        code, status, result = _HANDLERS[job.command](job, pair)
    except TotalCofibreError as e:
        logger.error(f"[run] {job.command} failed: {e}")
        error = {"message": str(e), "type": type(e).__name__}
        for attribute in ("pair", "line", "column"):
            value = getattr(e, attribute, None)
            if value is not None:
                error[attribute] = list(value) if isinstance(value, tuple) else value
        code = EXIT_FAILURE if isinstance(e, ConditionsNotSatisfiedError) else EXIT_ERROR
        return code, envelope(job.command, "error", {"error": error})
    return code, envelope(job.command, status, result)
