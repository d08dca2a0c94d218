"""JSON interchange: posets, chain complexes, diagrams and the report envelope.

Matrices travel as ``{"rows": r, "cols": c, "triplets": [[i, j, "value"], ...]}``
with values as decimal strings, so integers of any size survive a round trip.

Poset schema::

    {"elements": ["a", "b", "ab"], "covers": [["a", "ab"], ["b", "ab"]], "ideal": ["a", "b"]}

Diagram schema (values keyed by element, one map per covering pair)::

    {"values": {"a": {"bases": {"0": ["e"]}, "differentials": {}}},
     "maps": [{"source": "a", "target": "ab",
               "components": {"0": {"rows": 1, "cols": 1, "triplets": [[0, 0, "1"]]}}}]}
"""

from __future__ import annotations

import json
import logging
from typing import Any, Optional

from pydantic import BaseModel, Field, ValidationError

from ..chains import ChainComplex, ChainMap, HomologySummary
from ..diagrams import DiagramOfComplexes
from ..errors import ParseError
from ..linalg import IntegerMatrix
from ..posets import PosetPair, poset_from_relations


# --- Configure Logging ---
logger = logging.getLogger(__name__)

# --- Constants ---
CONVENTIONS = {
    "chains": "strict chains x_0 < ... < x_p in canonical element order, listed lexicographically by element index",
    "boundary": "d = sum_i (-1)^i d_i (face deletion)",
    "mapping_cone": "Cone(f)_n = T_n + S_(n-1), d = [[d_T, f], [0, -d_S]]",
    "hocolim": "basis (x_0<...<x_p, e in X(x_0)_q) in degree p+q; d = sum_(i>=1) (-1)^i d_i + X(x_0<x_1) d_0 + (-1)^p d_X",
    "gamma": "quotient of hocolim_C by the chains whose top lies in D",
    "holim": "basis (x_0<...<x_p, e in Y(x_p)_q) in degree q-p; D = delta + (-1)^p d_Y",
    "lim_cochains": "A(x_p) on x_0<...<x_p; last face applies A(y_p<y_(p+1)) with sign (-1)^(p+1)",
    "filtration": "F^s spanned by holim basis elements with chain length p >= s; E_r^(p,q) has total degree q-p",
    "matrices": "sparse triplets [row, col, value] with values as decimal strings",
}


class PosetDocument(BaseModel):
    model_config = {"extra": "forbid"}

    elements: list[str]
    covers: list[tuple[str, str]] = Field(default_factory=list)
    ideal: list[str] = Field(default_factory=list)
    ball_dimension: Optional[int] = None
    name: str = ""


class MatrixDocument(BaseModel):
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    triplets: list[tuple[int, int, str]] = Field(default_factory=list)


class ComplexDocument(BaseModel):
    bases: dict[int, list[str]] = Field(default_factory=dict)
    differentials: dict[int, MatrixDocument] = Field(default_factory=dict)


class MapDocument(BaseModel):
    source: str
    target: str
    components: dict[int, MatrixDocument] = Field(default_factory=dict)


class DiagramDocument(BaseModel):
    values: dict[str, ComplexDocument] = Field(default_factory=dict)
    maps: list[MapDocument] = Field(default_factory=list)


def _load(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed {what} JSON: {e.msg}", e.lineno, e.colno) from e


def _validate(model: type[BaseModel], data: Any, what: str):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ParseError(f"invalid {what} document at '{location}': {first['msg']}") from e


# --- Matrices ---
def matrix_to_json(matrix: IntegerMatrix) -> dict:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "triplets": [[i, j, str(value)] for i, j, value in matrix.to_triplets()],
    }


def matrix_from_document(document: MatrixDocument) -> IntegerMatrix:
    triplets = []
    for i, j, value in document.triplets:
        try:
            entry = int(value)
        except ValueError:
            raise ParseError(f"matrix entry '{value}' is not a decimal integer") from None
        if not (0 <= i < document.rows and 0 <= j < document.cols):
            raise ParseError(f"triplet ({i}, {j}) lies outside a {document.rows}x{document.cols} matrix")
        triplets.append((i, j, entry))
    return IntegerMatrix.from_triplets(document.rows, document.cols, triplets)


# --- Posets ---
def parse_poset_json(text: str) -> PosetPair:
    """Parse the poset schema; the covers are closed transitively and the ideal is checked."""
    document = _validate(PosetDocument, _load(text, "poset"), "poset")
    ambient = poset_from_relations(document.elements, document.covers)
    pair = PosetPair(ambient, tuple(document.ideal), ball_dimension=document.ball_dimension, name=document.name)
    logger.info(f"[parse_poset_json] {len(ambient)} elements, ideal of size {len(pair.ideal)}")
    return pair


def serialize_poset(pair: PosetPair) -> dict:
    document = {
        "elements": list(pair.ambient.elements),
        "covers": [list(cover) for cover in pair.ambient.cover_pairs],
        "ideal": list(pair.ideal),
    }
    if pair.ball_dimension is not None:
        document["ball_dimension"] = pair.ball_dimension
    if pair.name:
        document["name"] = pair.name
    return document


# --- Chain complexes and diagrams ---
def serialize_complex(complex_: ChainComplex) -> dict:
    return {
        "bases": {str(n): [str(label) for label in complex_.basis(n)] for n in complex_.degrees},
        "differentials": {
            str(n): matrix_to_json(d) for n, d in complex_.differentials().items() if not d.is_zero()
        },
    }


def _complex_from_document(document: ComplexDocument, where: str) -> ChainComplex:
    bases = {n: tuple(labels) for n, labels in document.bases.items()}
    differentials = {}
    for n, matrix in document.differentials.items():
        expected = (len(bases.get(n - 1, ())), len(bases.get(n, ())))
        if (matrix.rows, matrix.cols) != expected:
            raise ParseError(f"{where}: differential {n} is {matrix.rows}x{matrix.cols}, expected {expected[0]}x{expected[1]}")
        differentials[n] = matrix_from_document(matrix)
    return ChainComplex(bases, differentials)


def parse_diagram_json(text: str, pair: PosetPair) -> DiagramOfComplexes:
    """Parse a diagram indexed by ``pair.ambient``; maps are given on covering pairs only."""
    document = _validate(DiagramDocument, _load(text, "diagram"), "diagram")
    values = {x: _complex_from_document(c, f"value '{x}'") for x, c in document.values.items()}
    for x in values:
        pair.ambient.index(x)
    zero = ChainComplex.zero()
    maps = {}
    for entry in document.maps:
        x, y = entry.source, entry.target
        if (x, y) in maps:
            raise ParseError(f"map for {x} < {y} is given twice")
        matrices = {n: matrix_from_document(m) for n, m in entry.components.items()}
        maps[(x, y)] = ChainMap(values.get(x, zero), values.get(y, zero), matrices)
    return DiagramOfComplexes(pair.ambient, values, maps)


def serialize_diagram(diagram: DiagramOfComplexes) -> dict:
    return {
        "values": {x: serialize_complex(c) for x, c in diagram.values.items() if not c.is_zero()},
        "maps": [
            {"source": x, "target": y, "components": {str(n): matrix_to_json(m) for n, m in f.components().items()}}
            for (x, y), f in diagram.maps.items()
            if not (diagram.values[x].is_zero() or diagram.values[y].is_zero())
        ],
    }


# --- Reports ---
def homology_records(summary: HomologySummary, window: Optional[tuple[int, int]] = None) -> list[dict]:
    records = summary.to_records()
    if window is not None:
        lo, hi = window
        records = [r for r in records if lo <= r["degree"] <= hi]
    return records


def envelope(command: str, status: str, result: dict) -> dict:
    return {"command": command, "status": status, "conventions": CONVENTIONS, "result": result}


def dumps(report: dict) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
