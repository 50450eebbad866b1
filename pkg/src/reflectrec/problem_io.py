"""Problem files: a small JSON dialect describing one solvable problem.

Three kinds are understood:

    scalar-reflection   sum_e q_e u(k+e) + sum_e p_e u(-k+e) = c(k)
    scalar              a_0 u(k) + ... + a_n u(k+n) = c(k)
    system              F u(k+1) + G u(-k-1) + A u(k) + B u(-k) = c(k)

Shared fields: "field" ("rational" | "complex"), "rhs" (list of
[index, value] pairs), "conditions" (list of {"at": k, "value": h} or
{"terms": [[weight, k], ...], "value": h}), optional "window" [kmin, kmax].

Kind-specific payload: "plain" / "reflected" as [exponent, value] pair
lists; "coefficients" as the list a_0..a_n; "dimension" plus "blocks"
{"F": ..., "G": ..., "A": ..., "B": ...} as dense row-major matrices.

Rational values are integers or "p/q" strings -- floats are rejected, they
have no exact meaning.  Complex values are numbers, [re, im] pairs, or
strings like "1.5-2i".  For the reflection and system kinds the window must
be symmetric around 0, since their equations couple k with -k.

Anything malformed raises ProblemFormatError with a pointer to the
offending field; the CLI maps that onto exit code 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .boundary import BoundaryFunctional, PointTerm, evaluation_at
from .errors import ProblemFormatError
from .field import COMPLEX, RATIONAL, FieldSpec
from .green import RecurrenceOperator
from .laurent import lp_from_pairs
from .operators import ReflectionOperator
from .sequences import Seq, from_pairs
from .systems import MatrixFG

__all__ = ["Problem", "parse_problem", "load_problem", "field_by_name"]

KINDS = ("scalar-reflection", "scalar", "system")


def field_by_name(name: str) -> FieldSpec:
    if name == "rational":
        return RATIONAL
    if name == "complex":
        return COMPLEX
    raise ProblemFormatError(f"unknown field {name!r}; expected 'rational' or 'complex'")


def _parse_value(field: FieldSpec, raw: Any, where: str) -> Any:
    try:
        if field is RATIONAL:
            if isinstance(raw, bool):
                raise ValueError("booleans are not numbers")
            if isinstance(raw, int):
                return Fraction(raw)
            if isinstance(raw, str):
                return field.parse(raw)
            raise ValueError(f"rational values must be integers or 'p/q' strings, got {raw!r}")
        if isinstance(raw, bool):
            raise ValueError("booleans are not numbers")
        if isinstance(raw, (int, float)):
            return complex(raw)
        if isinstance(raw, list) and len(raw) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw
        ):
            return complex(raw[0], raw[1])
        if isinstance(raw, str):
            return field.parse(raw)
        raise ValueError(f"complex values must be numbers, [re, im] pairs or strings, got {raw!r}")
    except ValueError as exc:
        raise ProblemFormatError(f"{where}: {exc}") from None


def _parse_pairs(field: FieldSpec, raw: Any, where: str) -> list[tuple[int, Any]]:
    if not isinstance(raw, list):
        raise ProblemFormatError(f"{where} must be a list of [index, value] pairs")
    out = []
    for i, entry in enumerate(raw):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ProblemFormatError(f"{where}[{i}] must be an [index, value] pair")
        idx, val = entry
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise ProblemFormatError(f"{where}[{i}]: index must be an integer, got {idx!r}")
        out.append((idx, _parse_value(field, val, f"{where}[{i}]")))
    return out


def _parse_matrix(field: FieldSpec, raw: Any, n: int, where: str) -> list[list[Any]]:
    if not (isinstance(raw, list) and len(raw) == n and all(
        isinstance(row, list) and len(row) == n for row in raw
    )):
        raise ProblemFormatError(f"{where} must be a {n} x {n} matrix (list of rows)")
    return [
        [_parse_value(field, v, f"{where}[{i}][{j}]") for j, v in enumerate(row)]
        for i, row in enumerate(raw)
    ]


def _parse_conditions(
    field: FieldSpec, raw: Any, n_comp: int, vector: bool
) -> tuple[list[BoundaryFunctional], list[Any]]:
    if raw is None:
        return [], []
    if not isinstance(raw, list):
        raise ProblemFormatError("conditions must be a list")
    functionals: list[BoundaryFunctional] = []
    values: list[Any] = []
    for i, cond in enumerate(raw):
        where = f"conditions[{i}]"
        if not isinstance(cond, dict) or "value" not in cond:
            raise ProblemFormatError(f"{where} must be an object with a 'value'")
        values.append(_parse_value(field, cond["value"], f"{where}.value"))
        if "at" in cond:
            if vector:
                raise ProblemFormatError(
                    f"{where}: system conditions need explicit weight vectors; use 'terms'"
                )
            k = cond["at"]
            if not isinstance(k, int) or isinstance(k, bool):
                raise ProblemFormatError(f"{where}.at must be an integer")
            functionals.append(evaluation_at(field, k))
            continue
        if "terms" not in cond or not isinstance(cond["terms"], list) or not cond["terms"]:
            raise ProblemFormatError(f"{where} needs either 'at' or a nonempty 'terms' list")
        terms = []
        for j, t in enumerate(cond["terms"]):
            if not (isinstance(t, list) and len(t) == 2):
                raise ProblemFormatError(f"{where}.terms[{j}] must be a [weight, index] pair")
            w_raw, k = t
            if not isinstance(k, int) or isinstance(k, bool):
                raise ProblemFormatError(f"{where}.terms[{j}]: index must be an integer")
            if vector:
                if not (isinstance(w_raw, list) and len(w_raw) == n_comp):
                    raise ProblemFormatError(
                        f"{where}.terms[{j}]: weight must be a list of {n_comp} entries"
                    )
                w = tuple(
                    _parse_value(field, x, f"{where}.terms[{j}].weight[{p}]")
                    for p, x in enumerate(w_raw)
                )
            else:
                w = _parse_value(field, w_raw, f"{where}.terms[{j}].weight")
            terms.append(PointTerm(w, k))
        functionals.append(BoundaryFunctional(tuple(terms)))
    return functionals, values


@dataclass(frozen=True)
class Problem:
    field: FieldSpec
    kind: str
    operator: ReflectionOperator | RecurrenceOperator | MatrixFG
    rhs: Seq
    conditions: list[BoundaryFunctional]
    values: list[Any]
    window: tuple[int, int]


def parse_problem(data: Any, field_override: str | None = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemFormatError("problem file must contain a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ProblemFormatError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    field_name = field_override or data.get("field")
    if field_name is None:
        raise ProblemFormatError("missing 'field' (rational or complex)")
    field = field_by_name(field_name)

    window = data.get("window", [-16, 16])
    if not (
        isinstance(window, list)
        and len(window) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in window)
        and window[0] <= window[1]
    ):
        raise ProblemFormatError("window must be [kmin, kmax] with kmin <= kmax")
    kmin, kmax = window

    n_comp = 1
    operator: Any
    if kind == "scalar-reflection":
        plain = _parse_pairs(field, data.get("plain", []), "plain")
        reflected = _parse_pairs(field, data.get("reflected", []), "reflected")
        P = lp_from_pairs(field, reflected)
        Q = lp_from_pairs(field, plain)
        if P.is_zero() and Q.is_zero():
            raise ProblemFormatError("operator is zero: both 'plain' and 'reflected' are empty")
        operator = ReflectionOperator(P, Q)
    elif kind == "scalar":
        coeffs_raw = data.get("coefficients")
        if not isinstance(coeffs_raw, list) or len(coeffs_raw) < 2:
            raise ProblemFormatError("'coefficients' must list a_0 .. a_n with n >= 1")
        coeffs = [
            _parse_value(field, v, f"coefficients[{i}]") for i, v in enumerate(coeffs_raw)
        ]
        if coeffs[0] == field.zero or coeffs[-1] == field.zero:
            raise ProblemFormatError("a_0 and a_n must be nonzero")
        operator = RecurrenceOperator(field, tuple(coeffs))
    else:
        n_comp = data.get("dimension")
        if not isinstance(n_comp, int) or isinstance(n_comp, bool) or n_comp < 1:
            raise ProblemFormatError("'dimension' must be a positive integer")
        blocks = data.get("blocks")
        if not isinstance(blocks, dict) or set(blocks) != {"F", "G", "A", "B"}:
            raise ProblemFormatError("'blocks' must provide exactly F, G, A and B")
        operator = MatrixFG(
            field,
            n_comp,
            _parse_matrix(field, blocks["F"], n_comp, "blocks.F"),
            _parse_matrix(field, blocks["G"], n_comp, "blocks.G"),
            _parse_matrix(field, blocks["A"], n_comp, "blocks.A"),
            _parse_matrix(field, blocks["B"], n_comp, "blocks.B"),
        )

    if kind in ("scalar-reflection", "system") and kmin != -kmax:
        raise ProblemFormatError(
            f"kind {kind!r} couples k with -k; the window must be symmetric, got [{kmin}, {kmax}]"
        )

    rhs_raw = data.get("rhs", [])
    if not isinstance(rhs_raw, list):
        raise ProblemFormatError("'rhs' must be a list")
    if kind == "system":
        pairs = []
        for i, entry in enumerate(rhs_raw):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ProblemFormatError(f"rhs[{i}] must be an [index, vector] pair")
            idx, vec = entry
            if not isinstance(idx, int) or isinstance(idx, bool):
                raise ProblemFormatError(f"rhs[{i}]: index must be an integer")
            if not (isinstance(vec, list) and len(vec) == n_comp):
                raise ProblemFormatError(f"rhs[{i}]: value must be a list of {n_comp} entries")
            pairs.append(
                (idx, tuple(_parse_value(field, v, f"rhs[{i}][{p}]") for p, v in enumerate(vec)))
            )
        try:
            rhs = from_pairs(field, pairs, width=n_comp)
        except ValueError as exc:
            raise ProblemFormatError(f"rhs: {exc}") from None
    else:
        try:
            rhs = from_pairs(field, _parse_pairs(field, rhs_raw, "rhs"))
        except ValueError as exc:
            raise ProblemFormatError(f"rhs: {exc}") from None

    conditions, values = _parse_conditions(
        field, data.get("conditions"), n_comp, vector=(kind == "system")
    )
    return Problem(
        field=field,
        kind=kind,
        operator=operator,
        rhs=rhs,
        conditions=conditions,
        values=values,
        window=(kmin, kmax),
    )


def load_problem(path: str, field_override: str | None = None) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path} is not valid JSON: {exc}") from None
    return parse_problem(data, field_override)
