"""Fan documents and machine-readable reports.

Fans are stored as a JSON tree with 1-based vertex indexing and exact
rationals written as integers or "p/q" strings; floats are rejected so that a
parsed fan always reproduces the original data bit for bit. Reports are plain
JSON-safe dictionaries, so rendering and parsing round-trip losslessly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from .czalgebra import CZMat
from .errors import FanParseError, FanStructureError
from .fan import (
    AxiomCheck,
    DependenceWitness,
    DeterminantWitness,
    DisconnectedWitness,
    MultiCoverWitness,
    OverlapWitness,
    SimplicialComplex,
    TopologicalFan,
    UncoveredWitness,
    ValidationReport,
    WallWitness,
)


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_rational(value: Any, position: str) -> Fraction:
    if isinstance(value, bool):
        raise FanParseError("rational must be an integer or 'p/q' string", position)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FanParseError(f"bad rational {value!r}: {exc}", position) from None
    if isinstance(value, float):
        raise FanParseError(
            "floats are not accepted; write an integer or 'p/q' string", position
        )
    raise FanParseError(f"bad rational {value!r}", position)


def _parse_int(value: Any, position: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FanParseError(f"expected an integer, got {value!r}", position)
    return value


def document_to_fan(doc: Any) -> TopologicalFan:
    """Build a fan from a parsed JSON tree, with positioned error messages."""
    if not isinstance(doc, dict):
        raise FanParseError("fan document must be a JSON object", "$")
    for key in ("n", "m", "simplices", "beta"):
        if key not in doc:
            raise FanParseError(f"missing field {key!r}", "$")
    n = _parse_int(doc["n"], "n")
    m = _parse_int(doc["m"], "m")
    if not isinstance(doc["simplices"], list) or not doc["simplices"]:
        raise FanParseError("simplices must be a nonempty list", "simplices")
    simplices = []
    seen = set()
    for idx, raw in enumerate(doc["simplices"]):
        position = f"simplices[{idx}]"
        if not isinstance(raw, list):
            raise FanParseError("simplex must be a list of vertices", position)
        vertices = [_parse_int(v, position) for v in raw]
        if any(v < 1 or v > m for v in vertices):
            raise FanParseError(f"vertex out of range 1..{m}", position)
        if len(set(vertices)) != len(vertices):
            raise FanParseError("repeated vertex in simplex", position)
        key = frozenset(v - 1 for v in vertices)
        if key in seen:
            raise FanParseError("duplicate maximal simplex", position)
        seen.add(key)
        simplices.append(sorted(key))
    if not isinstance(doc["beta"], list) or len(doc["beta"]) != m:
        raise FanParseError(f"beta must list {m} vectors", "beta")
    beta = []
    for i, raw_vec in enumerate(doc["beta"]):
        if not isinstance(raw_vec, list) or len(raw_vec) != n:
            raise FanParseError(f"vector must have {n} components", f"beta[{i}]")
        components = []
        for j, raw in enumerate(raw_vec):
            position = f"beta[{i}][{j}]"
            if not isinstance(raw, list) or len(raw) != 3:
                raise FanParseError("component must be a [b, c, v] triple", position)
            b = _parse_rational(raw[0], position + ".b")
            c = _parse_rational(raw[1], position + ".c")
            v = _parse_int(raw[2], position + ".v")
            components.append(CZMat(b, c, v))
        beta.append(tuple(components))
    try:
        return TopologicalFan(n, SimplicialComplex(m, simplices), tuple(beta))
    except FanStructureError as exc:
        raise FanParseError(str(exc), "$") from None


def parse_fan(text: str) -> TopologicalFan:
    """Parse a JSON fan document; raises FanParseError with a position."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanParseError(
            exc.msg, f"line {exc.lineno} column {exc.colno}"
        ) from None
    return document_to_fan(doc)


def _rational_doc(x: Fraction) -> Any:
    return int(x) if x.denominator == 1 else rational_str(x)


def fan_to_document(fan: TopologicalFan) -> dict:
    return {
        "n": fan.n,
        "m": fan.m,
        "simplices": [[v + 1 for v in s] for s in fan.maximal_simplices()],
        "beta": [
            [
                [_rational_doc(comp.b), _rational_doc(comp.c), comp.v]
                for comp in vector
            ]
            for vector in fan.beta
        ],
    }


def emit_fan(fan: TopologicalFan) -> str:
    return json.dumps(fan_to_document(fan), indent=2) + "\n"


def fan_digest(fan: TopologicalFan) -> str:
    canonical = json.dumps(fan_to_document(fan), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


# ---------------------------------------------------------------------------
# report documents


def czmat_doc(m: CZMat) -> list:
    return [rational_str(m.b), rational_str(m.c), m.v]


def _vector_doc(x: Sequence[Fraction]) -> list[str]:
    return [rational_str(v) for v in x]


def _simplex_doc(s: Sequence[int]) -> list[int]:
    return [v + 1 for v in s]


def witness_doc(witness: object) -> Optional[dict]:
    if witness is None:
        return None
    if isinstance(witness, OverlapWitness):
        return {
            "kind": "overlap",
            "simplex_a": _simplex_doc(witness.simplex_a),
            "simplex_b": _simplex_doc(witness.simplex_b),
            "point": _vector_doc(witness.point),
            "coefficients_a": _vector_doc(witness.coefficients_a),
            "coefficients_b": _vector_doc(witness.coefficients_b),
        }
    if isinstance(witness, UncoveredWitness):
        return {"kind": "uncovered", "direction": _vector_doc(witness.direction)}
    if isinstance(witness, MultiCoverWitness):
        return {
            "kind": "multicover",
            "point": _vector_doc(witness.point),
            "simplices": [_simplex_doc(s) for s in witness.simplices],
        }
    if isinstance(witness, WallWitness):
        return {
            "kind": "wall",
            "wall": _simplex_doc(witness.wall),
            "simplices": [_simplex_doc(s) for s in witness.simplices],
            "reason": witness.reason,
        }
    if isinstance(witness, DeterminantWitness):
        return {
            "kind": "determinant",
            "simplex": _simplex_doc(witness.simplex),
            "determinant": witness.determinant,
        }
    if isinstance(witness, DependenceWitness):
        return {"kind": "dependence", "simplex": _simplex_doc(witness.simplex)}
    if isinstance(witness, DisconnectedWitness):
        return {
            "kind": "disconnected",
            "components": [
                [_simplex_doc(s) for s in component]
                for component in witness.components
            ],
        }
    return {"kind": "other", "repr": repr(witness)}


def _axiom_doc(check: AxiomCheck) -> dict:
    doc: dict[str, Any] = {"passed": check.passed}
    w = witness_doc(check.witness)
    if w is not None:
        doc["witness"] = w
    if check.detail:
        doc["detail"] = check.detail
    return doc


def validation_doc(report: ValidationReport) -> dict:
    return {
        "axioms": {name: _axiom_doc(check) for name, check in report.checks().items()},
        "determinants": [
            {"simplex": _simplex_doc(s), "determinant": d}
            for s, d in report.determinants
        ],
        "seed": report.seed,
        "all_passed": report.all_passed,
    }


def matrix_doc(matrix: Sequence[Sequence]) -> list[list]:
    out = []
    for row in matrix:
        cells: list[Any] = []
        for x in row:
            if isinstance(x, (int, Fraction)):
                cells.append(rational_str(Fraction(x)))
            else:
                cells.append(float(x))
        out.append(cells)
    return out


def make_report(command: str, fan: TopologicalFan, results: dict) -> dict:
    return {
        "command": command,
        "inputs": {"fan_digest": fan_digest(fan)},
        "results": results,
    }


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)
