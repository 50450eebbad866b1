"""Command-line front end.

    reflectrec reduce PROBLEM.json        show the reflection-free reduction
    reflectrec green PROBLEM.json         tabulate the Green's function
    reflectrec solve PROBLEM.json         solve and print the solution window
    reflectrec solve-system PROBLEM.json  same, restricted to system problems
    reflectrec verify PROBLEM.json SOL.csv   re-check a solution table

Output is CSV by default (LF line endings, stable cell rendering, so two
runs of the same command produce identical bytes); --format pretty gives an
aligned human-readable table instead.  Exit codes: 0 success, 2 malformed
input or unusable request, 3 singular linear algebra (Casoratian, boundary
matrix, pencil block), 4 degenerate reduction, 5 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import oracle
from .errors import (
    DegenerateProblem,
    InputError,
    SingularProblem,
    VerificationFailed,
)
from .field import FieldSpec
from .green import (
    GreenFunction,
    RecurrenceOperator,
    recurrence_from_poly,
    solve_bvp,
    solve_ivp,
    solve_reflection_bvp,
)
from .laurent import lp_render
from .operators import (
    ReflectionOperator,
    normalize_to_poly,
    op_render,
    reduce_gcd,
)
from .problem_io import Problem, load_problem
from .sequences import Seq
from .systems import FirstOrderGreen, MatrixFG, block_pair, fundamental_matrix, solve_system

__all__ = ["main", "cmd_reduce", "cmd_green", "cmd_solve", "cmd_verify"]


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise InputError(f"window must look like KMIN:KMAX, got {text!r}")
    try:
        kmin, kmax = int(lo), int(hi)
    except ValueError:
        raise InputError(f"window bounds must be integers, got {text!r}") from None
    if kmin > kmax:
        raise InputError(f"empty window {text!r}")
    return kmin, kmax


def _effective_window(problem: Problem, args) -> tuple[int, int]:
    if args.window is None:
        return problem.window
    window = _parse_window(args.window)
    if problem.kind in ("scalar-reflection", "system") and window[0] != -window[1]:
        raise InputError(
            f"kind {problem.kind!r} needs a symmetric window, got {window[0]}:{window[1]}"
        )
    return window


def _render_cell(field: FieldSpec, value: Any) -> str:
    if isinstance(value, tuple):
        return ";".join(field.render(x) for x in value)
    return field.render(value)


def _render_matrix_cell(field: FieldSpec, M: list[list[Any]]) -> str:
    return ";".join(field.render(x) for row in M for x in row)


def _table(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(r) for r in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for r in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- reduce --


def cmd_reduce(problem: Problem, fmt: str) -> str:
    if problem.kind != "scalar-reflection":
        raise InputError("reduce applies to scalar-reflection problems only")
    L: ReflectionOperator = problem.operator
    field = problem.field
    Rtilde, S, divisor = reduce_gcd(L)
    Rbar, S_poly, shift_power = normalize_to_poly(L, Rtilde, S)  # may raise DegenerateReduction

    if fmt == "pretty":
        lines = [
            f"operator      : {op_render(L)}",
            f"gcd divisor   : {lp_render(divisor)}",
            f"companion     : {op_render(Rtilde)}",
            f"reduced       : {lp_render(S)}",
            f"shift power   : {shift_power}",
            f"companion(D^k): {op_render(Rbar)}",
            f"reduced poly  : {lp_render(S_poly)}",
        ]
        return "\n".join(lines) + "\n"

    rows: list[list[str]] = []

    def emit_poly(name: str, part: str, poly) -> None:
        for e, cval in poly.terms():
            rows.append([name, part, str(e), field.render(cval)])

    emit_poly("operator", "reflected", L.reflected)
    emit_poly("operator", "plain", L.plain)
    emit_poly("gcd", "", divisor)
    emit_poly("companion", "reflected", Rtilde.reflected)
    emit_poly("companion", "plain", Rtilde.plain)
    emit_poly("reduced", "", S)
    emit_poly("companion_norm", "reflected", Rbar.reflected)
    emit_poly("companion_norm", "plain", Rbar.plain)
    emit_poly("reduced_poly", "", S_poly)
    rows.append(["shift", "", "", str(shift_power)])
    return _table(["name", "part", "exponent", "value"], rows, "csv")


# ----------------------------------------------------------------- green --


def _green_table(field: FieldSpec, cell, window: tuple[int, int], fmt: str) -> str:
    kmin, kmax = window
    header = ["k\\j"] + [str(j) for j in range(kmin, kmax + 1)]
    rows = []
    for k in range(kmin, kmax + 1):
        rows.append([str(k)] + [cell(k, j) for j in range(kmin, kmax + 1)])
    return _table(header, rows, fmt)


def cmd_green(problem: Problem, window: tuple[int, int], fmt: str) -> str:
    field = problem.field
    if problem.kind == "scalar":
        G = GreenFunction(problem.operator)
        return _green_table(field, lambda k, j: field.render(G(k, j)), window, fmt)
    if problem.kind == "scalar-reflection":
        from .operators import reduce_star

        _, S_poly, _ = reduce_star(problem.operator)  # may raise DegenerateReduction
        if S_poly.deg_high() == 0:
            raise InputError(
                "the reduction has order 0: solutions need no Green's function"
            )
        G = GreenFunction(recurrence_from_poly(S_poly))
        return _green_table(field, lambda k, j: field.render(G(k, j)), window, fmt)
    bp = block_pair(problem.operator)
    fm = fundamental_matrix(bp)
    G = FirstOrderGreen(field, fm.T)
    return _green_table(field, lambda k, j: _render_matrix_cell(field, G(k, j)), window, fmt)


# ----------------------------------------------------------------- solve --


def _solution_table(field: FieldSpec, u: Seq, window: tuple[int, int], fmt: str) -> str:
    rows = [[str(k), _render_cell(field, u(k))] for k in range(window[0], window[1] + 1)]
    return _table(["k", "value"], rows, fmt)


def _solve_dispatch(problem: Problem, window: tuple[int, int], tol: float | None) -> Seq:
    if problem.kind == "scalar-reflection":
        return solve_reflection_bvp(
            problem.operator, problem.rhs, problem.conditions, problem.values, window, tol
        )
    if problem.kind == "scalar":
        if problem.conditions:
            return solve_bvp(
                problem.operator, problem.rhs, problem.conditions, problem.values, window
            )
        return solve_ivp(problem.operator, problem.rhs, window)
    return solve_system(
        problem.operator, problem.rhs, problem.conditions, problem.values, window, tol
    )


def _residual_report(problem: Problem, u: Seq, window: tuple[int, int], tol: float | None) -> list[str]:
    if problem.kind == "scalar-reflection":
        res = oracle.residual_reflection(problem.operator, u, problem.rhs, window)
    elif problem.kind == "scalar":
        res = oracle.residual_recurrence(problem.operator, u, problem.rhs, window)
    else:
        res = oracle.residual_block(problem.operator, u, problem.rhs, window)
    field = problem.field
    lines = [f"residual window : {res.checked[0]}..{res.checked[1]}"]
    if res.exact_zero:
        lines.append("residual        : exactly zero")
    else:
        lines.append(f"residual        : max |r| = {res.max_abs:.3e} at k = {res.worst_index}")
    for i, (W, hv) in enumerate(zip(problem.conditions, problem.values)):
        lines.append(f"condition {i}     : W(u) = {field.render(W(u))}, target {field.render(hv)}")
    return lines


def cmd_solve(problem: Problem, window: tuple[int, int], fmt: str, tol: float | None) -> str:
    u = _solve_dispatch(problem, window, tol)
    table = _solution_table(problem.field, u, window, fmt)
    if fmt == "pretty":
        return table + "\n" + "\n".join(_residual_report(problem, u, window, tol)) + "\n"
    return table


def cmd_solve_system(problem: Problem, window: tuple[int, int], fmt: str, tol: float | None) -> str:
    if problem.kind != "system":
        raise InputError("solve-system applies to system problems only")
    return cmd_solve(problem, window, fmt, tol)


# ---------------------------------------------------------------- verify --


def _parse_solution_csv(field: FieldSpec, path: str, width: int | None) -> dict[int, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    except OSError as exc:
        raise InputError(f"cannot read solution file {path}: {exc}") from None
    if not lines or lines[0] != "k,value":
        raise InputError(f"{path}: expected a solution table with header 'k,value'")
    table: dict[int, Any] = {}
    for ln in lines[1:]:
        k_text, sep, cell = ln.partition(",")
        if not sep:
            raise InputError(f"{path}: malformed row {ln!r}")
        try:
            k = int(k_text)
        except ValueError:
            raise InputError(f"{path}: bad index in row {ln!r}") from None
        try:
            if width is None:
                table[k] = field.parse(cell)
            else:
                parts = cell.split(";")
                if len(parts) != width:
                    raise ValueError(f"expected {width} components, got {len(parts)}")
                table[k] = tuple(field.parse(p) for p in parts)
        except ValueError as exc:
            raise InputError(f"{path}: bad value in row {ln!r}: {exc}") from None
    if not table:
        raise InputError(f"{path}: no data rows")
    return table


def _verify_rows(problem: Problem, table: dict[int, Any]) -> tuple[int, Any, int | None]:
    """(rows checked, max |residual|, worst index) over fully covered rows."""
    field = problem.field
    have = set(table)

    def u(k: int) -> Any:
        return table[k]

    checked = 0
    worst = None
    worst_k = None
    if problem.kind == "scalar":
        S: RecurrenceOperator = problem.operator
        n = S.order
        rows = [k for k in have if all(k + l in have for l in range(n + 1))]
        for k in sorted(rows):
            r = sum((a * u(k + l) for l, a in enumerate(S.coeffs)), field.zero) - problem.rhs(k)
            checked += 1
            if worst is None or field.abs(r) > worst:
                worst, worst_k = field.abs(r), k
    elif problem.kind == "scalar-reflection":
        L: ReflectionOperator = problem.operator
        refl = list(L.reflected.terms())
        plain = list(L.plain.terms())
        for k in sorted(have):
            needed = [-k + e for e, _ in refl] + [k + e for e, _ in plain]
            if not all(i in have for i in needed):
                continue
            r = -problem.rhs(k)
            for e, cval in refl:
                r = r + cval * u(-k + e)
            for e, cval in plain:
                r = r + cval * u(k + e)
            checked += 1
            if worst is None or field.abs(r) > worst:
                worst, worst_k = field.abs(r), k
    else:
        M: MatrixFG = problem.operator
        rows = [k for k in have if {k + 1, -k - 1, -k} <= have]
        lookup = table.__getitem__
        for k in sorted(rows):
            res = M.residual(lookup, problem.rhs, k)
            checked += 1
            m = max(field.abs(x) for x in res)
            if worst is None or m > worst:
                worst, worst_k = m, k
    return checked, worst, worst_k


def cmd_verify(problem: Problem, solution_path: str, fmt: str, tol: float | None) -> str:
    field = problem.field
    width = problem.operator.n if problem.kind == "system" else None
    table = _parse_solution_csv(field, solution_path, width)
    checked, worst, worst_k = _verify_rows(problem, table)
    if checked == 0:
        raise InputError("solution table too small: no equation row is fully covered")

    have = set(table)
    cond_checked = 0
    cond_ok = True
    for W, hv in zip(problem.conditions, problem.values):
        if not all(t.index in have for t in W.terms):
            continue
        cond_checked += 1

        class _Tbl:
            field = problem.field

            def __call__(self, k):
                return table[k]

        if not field.eq(W(_Tbl()), hv, tol):
            cond_ok = False

    effective_tol = tol
    if field.exact:
        residual_ok = worst == field.zero if not isinstance(worst, float) else worst == 0
        worst_text = "0" if residual_ok else str(worst)
    else:
        from .field import DEFAULT_TOL

        eps = DEFAULT_TOL if effective_tol is None else effective_tol
        residual_ok = worst <= eps
        worst_text = f"{worst:.6e}"
    verdict = "ok" if (residual_ok and cond_ok) else "FAIL"

    if fmt == "pretty":
        lines = [
            f"rows checked      : {checked}",
            f"max residual      : {worst_text}" + ("" if residual_ok else f" at k = {worst_k}"),
            f"conditions checked: {cond_checked} of {len(problem.conditions)}",
            f"verdict           : {verdict}",
        ]
        text = "\n".join(lines) + "\n"
    else:
        rows = [
            ["rows_checked", str(checked)],
            ["max_residual", worst_text],
            ["conditions_checked", str(cond_checked)],
            ["verdict", verdict],
        ]
        text = "\n".join(",".join(r) for r in rows) + "\n"
    if verdict != "ok":
        raise VerificationFailed(text.rstrip("\n"))
    return text


# ------------------------------------------------------------------ main --


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflectrec",
        description="solve and inspect linear recurrences with reflected arguments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_solution in (
        ("reduce", False),
        ("green", False),
        ("solve", False),
        ("solve-system", False),
        ("verify", True),
    ):
        p = sub.add_parser(name)
        p.add_argument("problem", help="problem description (JSON)")
        if needs_solution:
            p.add_argument("solution", help="solution table (CSV, as printed by solve)")
        p.add_argument("--field", choices=["rational", "complex"], default=None,
                       help="override the field declared in the problem file")
        p.add_argument("--window", default=None, metavar="KMIN:KMAX",
                       help="override the output/verification window")
        p.add_argument("--format", choices=["csv", "pretty"], default="csv")
        p.add_argument("--tolerance", type=float, default=None, metavar="EPS",
                       help="comparison tolerance for inexact fields")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write output to PATH instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        problem = load_problem(args.problem, args.field)
        window = _effective_window(problem, args)
        if args.command == "reduce":
            text = cmd_reduce(problem, args.format)
        elif args.command == "green":
            text = cmd_green(problem, window, args.format)
        elif args.command == "solve":
            text = cmd_solve(problem, window, args.format, args.tolerance)
        elif args.command == "solve-system":
            text = cmd_solve_system(problem, window, args.format, args.tolerance)
        else:
            text = cmd_verify(problem, args.solution, args.format, args.tolerance)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DegenerateProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 5
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
