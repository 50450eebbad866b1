"""Independent brute-force verification.

Nothing in here knows about Green's functions, Casoratians, companions or
fundamental matrices.  Problems are checked by the two dumbest methods that
work:

  * iterate_scalar -- run the recurrence forwards and backwards from an
    initial block, exactly;
  * dense_window_solve -- write every equation row and boundary row that
    fits in a window as one dense linear system and solve it.

The window assemblers handle the coupling between k and -k natively: a
reflection term simply contributes to another column of the same row.  For
reflection problems the equation-row count grows twice as fast as the
unknown count when the window is widened, so the assembler extends a
symmetric requested window [-N, N] upward to [-N, N + delta] (then downward
if needed) until rows + conditions exactly match unknowns.

`residual` re-applies an operator to a candidate solution and reports either
an exact-zero flag (rational field) or the worst absolute deviation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence as PySequence

from .boundary import BoundaryFunctional
from .errors import SingularWindowSystem
from .field import FieldSpec
from .linalg import solve
from .operators import ReflectionOperator, op_apply
from .sequences import Seq, from_pairs, from_rule

__all__ = [
    "iterate_scalar",
    "WindowSystem",
    "window_system_recurrence",
    "window_system_reflection",
    "window_system_block",
    "dense_window_solve",
    "Residual",
    "residual",
    "residual_recurrence",
    "residual_reflection",
    "residual_block",
    "residual_first_order",
]


def iterate_scalar(S, initial: PySequence[Any], c: Seq, window: tuple[int, int] | None = None) -> Seq:
    """Exact bidirectional iteration of sum_l a_l u(k+l) = c(k) from the
    initial block u(0..n-1).  `S` is any object with `coeffs` (a_0..a_n) and
    `order`; the end coefficients must be nonzero."""
    a = list(S.coeffs)
    n = S.order
    field: FieldSpec = c.field
    assert len(initial) == n and n >= 1
    assert a[0] != field.zero and a[n] != field.zero
    values: dict[int, Any] = {j: field.coerce(initial[j]) for j in range(n)}
    span = {"lo": 0, "hi": n - 1}
    inv_hi = field.inv(a[n])
    inv_lo = field.inv(a[0])

    def value_at(m: int) -> Any:
        while span["hi"] < m:
            k = span["hi"] - n + 1
            acc = c(k)
            for l in range(n):
                acc = acc - a[l] * values[k + l]
            values[k + n] = acc * inv_hi
            span["hi"] += 1
        while span["lo"] > m:
            k = span["lo"] - 1
            acc = c(k)
            for l in range(1, n + 1):
                acc = acc - a[l] * values[k + l]
            values[k] = acc * inv_lo
            span["lo"] -= 1
        return values[m]

    u = from_rule(field, value_at)
    if window is not None:
        for k in range(window[0], window[1] + 1):
            u(k)
    return u


@dataclass
class WindowSystem:
    """One dense linear system over the unknowns u(kmin..kmax)."""

    field: FieldSpec
    kmin: int
    kmax: int
    n_comp: int  # 1 for scalar problems, n for n-vector systems
    rows: list[list[Any]]
    rhs: list[Any]

    @property
    def n_unknowns(self) -> int:
        return (self.kmax - self.kmin + 1) * self.n_comp

    def is_square(self) -> bool:
        return len(self.rows) == self.n_unknowns


def _reflection_row_range(
    L: ReflectionOperator, kmin: int, kmax: int
) -> tuple[int, int]:
    """The k for which (L u)(k) only reads u inside [kmin, kmax]."""
    lo, hi = -(10**9), 10**9
    if not L.plain.is_zero():
        lo = max(lo, kmin - L.plain.deg_low())
        hi = min(hi, kmax - L.plain.deg_high())
    if not L.reflected.is_zero():
        # needs -k + j in window for all exponents j of the reflected part
        lo = max(lo, L.reflected.deg_high() - kmax)
        hi = min(hi, L.reflected.deg_low() - kmin)
    return lo, hi


def window_system_recurrence(
    S,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int],
) -> WindowSystem:
    """All rows sum_l a_l u(k+l) = c(k) that fit in the window, plus one row
    per boundary functional.  Square exactly when len(conditions) == order."""
    a = list(S.coeffs)
    n = S.order
    field = c.field
    kmin, kmax = window
    rows, rhs = [], []
    for k in range(kmin, kmax - n + 1):
        row = [field.zero] * (kmax - kmin + 1)
        for l in range(n + 1):
            row[k + l - kmin] += a[l]
        rows.append(row)
        rhs.append(c(k))
    for W, hv in zip(conditions, h, strict=True):
        rows.append(W.dense_row(kmin, kmax, field))
        rhs.append(hv)
    return WindowSystem(field, kmin, kmax, 1, rows, rhs)


def window_system_reflection(
    L: ReflectionOperator,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int],
    max_extension: int = 8,
) -> WindowSystem:
    """Equation rows (L u)(k) = c(k) over the largest k-range the window
    supports, plus condition rows; the window is extended (upper end first)
    until the system is square."""
    field = L.field
    kmin, kmax = window
    for total in range(max_extension + 1):
        for e_hi in range(total, -1, -1):
            lo, hi = kmin - (total - e_hi), kmax + e_hi
            rlo, rhi = _reflection_row_range(L, lo, hi)
            n_rows = max(0, rhi - rlo + 1) + len(conditions)
            if n_rows == hi - lo + 1:
                kmin, kmax = lo, hi
                break
        else:
            continue
        break
    else:
        raise SingularWindowSystem(
            f"cannot make the window system square within {max_extension} extensions"
        )
    rlo, rhi = _reflection_row_range(L, kmin, kmax)
    width = kmax - kmin + 1
    rows, rhs = [], []
    for k in range(rlo, rhi + 1):
        row = [field.zero] * width
        for e, coeff in L.reflected.terms():
            row[-k + e - kmin] += coeff
        for e, coeff in L.plain.terms():
            row[k + e - kmin] += coeff
        rows.append(row)
        rhs.append(c(k))
    for W, hv in zip(conditions, h, strict=True):
        rows.append(W.dense_row(kmin, kmax, field))
        rhs.append(hv)
    return WindowSystem(field, kmin, kmax, 1, rows, rhs)


def window_system_block(
    M,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int],
    max_extension: int = 8,
) -> WindowSystem:
    """Dense system for F x(k+1) + G x(-k-1) + A x(k) + B x(-k) = c(k) with
    n-vector unknowns.  `M` is any object with F, G, A, B and size n."""
    field = c.field
    n = len(M.F)
    kmin, kmax = window

    def block_range(lo: int, hi: int) -> tuple[int, int]:
        return max(lo, -hi), min(hi - 1, -lo - 1)

    for total in range(max_extension + 1):
        for e_hi in range(total, -1, -1):
            lo, hi = kmin - (total - e_hi), kmax + e_hi
            blo, bhi = block_range(lo, hi)
            n_rows = max(0, bhi - blo + 1) * n + len(conditions)
            if n_rows == (hi - lo + 1) * n:
                kmin, kmax = lo, hi
                break
        else:
            continue
        break
    else:
        raise SingularWindowSystem(
            f"cannot make the window system square within {max_extension} extensions"
        )
    blo, bhi = block_range(kmin, kmax)
    width = (kmax - kmin + 1) * n
    col = lambda idx, comp: (idx - kmin) * n + comp

    rows, rhs = [], []
    for k in range(blo, bhi + 1):
        ck = c(k)
        assert isinstance(ck, tuple) and len(ck) == n
        for i in range(n):
            row = [field.zero] * width
            for j in range(n):
                row[col(k + 1, j)] += M.F[i][j]
                row[col(-k - 1, j)] += M.G[i][j]
                row[col(k, j)] += M.A[i][j]
                row[col(-k, j)] += M.B[i][j]
            rows.append(row)
            rhs.append(ck[i])
    for W, hv in zip(conditions, h, strict=True):
        rows.append(W.dense_row(kmin, kmax, field, n_comp=n))
        rhs.append(hv)
    return WindowSystem(field, kmin, kmax, n, rows, rhs)


def dense_window_solve(ws: WindowSystem) -> Seq:
    """Solve the assembled system; the result is zero outside the window."""
    if not ws.is_square():
        raise SingularWindowSystem(
            f"window system is {len(ws.rows)}x{ws.n_unknowns}, not square"
        )
    x = solve(ws.field, ws.rows, ws.rhs)
    if x is None:
        raise SingularWindowSystem("window system matrix is singular")
    if ws.n_comp == 1:
        pairs = [(ws.kmin + i, x[i]) for i in range(len(x))]
        return from_pairs(ws.field, pairs)
    pairs = [
        (ws.kmin + i, tuple(x[i * ws.n_comp : (i + 1) * ws.n_comp]))
        for i in range(ws.kmax - ws.kmin + 1)
    ]
    return from_pairs(ws.field, pairs, width=ws.n_comp)


@dataclass(frozen=True)
class Residual:
    """Outcome of re-applying an operator to a candidate solution."""

    exact_zero: bool
    max_abs: float
    worst_index: int | None
    checked: tuple[int, int]

    def within(self, tol: float) -> bool:
        return self.exact_zero or self.max_abs <= tol


def _collect(field: FieldSpec, diffs: list[tuple[int, Any]], lo: int, hi: int) -> Residual:
    worst, worst_k = 0.0, None
    exact = True
    for k, d in diffs:
        if d != field.zero:
            exact = False
        m = abs(d)
        if m > worst:
            worst, worst_k = float(m), k
    return Residual(exact_zero=exact, max_abs=worst, worst_index=worst_k, checked=(lo, hi))


def residual_recurrence(S, u: Seq, c: Seq, window: tuple[int, int]) -> Residual:
    a = list(S.coeffs)
    n = S.order
    field = u.field
    lo, hi = window
    diffs = []
    for k in range(lo, hi - n + 1):
        acc = -c(k)
        for l in range(n + 1):
            acc = acc + a[l] * u(k + l)
        diffs.append((k, acc))
    return _collect(field, diffs, lo, hi)


def residual_reflection(L: ReflectionOperator, u: Seq, c: Seq, window: tuple[int, int]) -> Residual:
    """Max |(L u)(k) - c(k)| over the k whose rows stay inside the window.

    If u is evaluable everywhere (rule-backed), the full window is checked.
    """
    lo, hi = window
    if u.support is not None:
        rlo, rhi = _reflection_row_range(L, lo, hi)
        rlo, rhi = max(lo, rlo), min(hi, rhi)
    else:
        rlo, rhi = lo, hi
    Lu = op_apply(L, u)
    diffs = [(k, Lu(k) - c(k)) for k in range(rlo, rhi + 1)]
    return _collect(u.field, diffs, rlo, rhi)


def residual_block(M, u: Seq, c: Seq, window: tuple[int, int]) -> Residual:
    """Residual of F x(k+1) + G x(-k-1) + A x(k) + B x(-k) = c(k)."""
    field = u.field
    n = len(M.F)
    lo, hi = window
    if u.support is not None:
        blo = max(lo, -hi)
        bhi = min(hi - 1, -lo - 1)
    else:
        blo, bhi = lo, hi
    diffs = []
    for k in range(blo, bhi + 1):
        ck = c(k)
        xk1, xr1, xk, xr = u(k + 1), u(-k - 1), u(k), u(-k)
        for i in range(n):
            acc = -ck[i]
            for j in range(n):
                acc = acc + M.F[i][j] * xk1[j] + M.G[i][j] * xr1[j]
                acc = acc + M.A[i][j] * xk[j] + M.B[i][j] * xr[j]
            diffs.append((k, acc))
    return _collect(field, diffs, blo, bhi)


def residual(op, u: Seq, c: Seq, window: tuple[int, int]) -> Residual:
    """Dispatch on the operator shape: reflection operator, plain
    recurrence (has coeffs/order), or four-block system."""
    if hasattr(op, "reflected") and hasattr(op, "plain"):
        return residual_reflection(op, u, c, window)
    if hasattr(op, "F") and hasattr(op, "G"):
        return residual_block(op, u, c, window)
    return residual_recurrence(op, u, c, window)


def residual_first_order(K, u: Seq, c: Seq, window: tuple[int, int]) -> Residual:
    """Residual of x(k+1) = K x(k) + c(k) (n x n matrix K, n-vector u, c)."""
    field = u.field
    n = len(K)
    lo, hi = window
    diffs = []
    for k in range(lo, hi):
        xk1, xk, ck = u(k + 1), u(k), c(k)
        for i in range(n):
            acc = xk1[i] - ck[i]
            for j in range(n):
                acc = acc - K[i][j] * xk[j]
            diffs.append((k, acc))
    return _collect(field, diffs, lo, hi)
