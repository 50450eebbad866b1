"""Small dense linear algebra over the two scalar fields.

Matrices are plain lists of row lists.  Over exact rationals, determinants
use fraction-free Bareiss elimination and inverses/nullspaces use exact
Gauss-Jordan; over complex floats everything is partial-pivot elimination
with a relative pivot threshold.  Sizes here are tiny (boundary-condition
matrices, 2n x 2n blocks, dense windows of a few dozen unknowns), so clarity
beats asymptotics.

Singularity is reported by returning None (inverse/solve) or by the rank
coming up short (nullspace); callers translate that into their own error
types.
"""

from __future__ import annotations

from typing import Any

from .field import FieldSpec

__all__ = [
    "mat_identity",
    "mat_mul",
    "mat_vec",
    "mat_add",
    "mat_neg",
    "mat_scale",
    "mat_eq",
    "mat_from_blocks",
    "mat_block",
    "det",
    "inverse",
    "solve",
    "nullspace",
]

Matrix = list[list[Any]]
Vector = list[Any]


def mat_identity(field: FieldSpec, n: int) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(field: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    n, m, p = len(A), len(B), len(B[0])
    assert all(len(row) == m for row in A)
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = field.zero
            for k in range(m):
                s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(field: FieldSpec, A: Matrix, v: Vector) -> Vector:
    assert all(len(row) == len(v) for row in A)
    return [sum((row[j] * v[j] for j in range(len(v))), field.zero) for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(A: Matrix) -> Matrix:
    return [[-a for a in row] for row in A]


def mat_scale(c: Any, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_eq(field: FieldSpec, A: Matrix, B: Matrix, tol: float | None = None) -> bool:
    if len(A) != len(B) or any(len(ra) != len(rb) for ra, rb in zip(A, B)):
        return False
    return all(field.eq(a, b, tol) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_from_blocks(blocks: list[list[Matrix]]) -> Matrix:
    """Assemble from a 2D grid of equally-sized square blocks."""
    out: Matrix = []
    for brow in blocks:
        height = len(brow[0])
        assert all(len(b) == height for b in brow)
        for i in range(height):
            row: list[Any] = []
            for b in brow:
                row.extend(b[i])
            out.append(row)
    return out


def mat_block(A: Matrix, i: int, j: int, n: int) -> Matrix:
    """Extract the n x n block at block-coordinates (i, j)."""
    return [row[j * n : (j + 1) * n] for row in A[i * n : (i + 1) * n]]


def _max_abs(A: Matrix) -> float:
    return max((abs(a) for row in A for a in row), default=0.0)


def det(field: FieldSpec, A: Matrix) -> Any:
    n = len(A)
    assert all(len(row) == n for row in A)
    if n == 0:
        return field.one
    M = [list(row) for row in A]
    if field.exact:
        # Fraction-free Bareiss: every division below is exact.
        sign = field.one
        prev = field.one
        for k in range(n - 1):
            if M[k][k] == field.zero:
                for i in range(k + 1, n):
                    if M[i][k] != field.zero:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return field.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
                M[i][k] = field.zero
            prev = M[k][k]
        return sign * M[n - 1][n - 1]
    # Partial-pivot LU accumulation of the product of pivots.
    result = field.one
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(M[i][k]))
        if M[p][k] == 0:
            return field.zero
        if p != k:
            M[k], M[p] = M[p], M[k]
            result = -result
        result = result * M[k][k]
        inv_p = 1.0 / M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] * inv_p
            if f != 0:
                for j in range(k + 1, n):
                    M[i][j] = M[i][j] - f * M[k][j]
    return result


def _eliminate(field: FieldSpec, M: Matrix, width: int, tol: float | None) -> int:
    """In-place Gauss-Jordan on the first `width` columns; returns rank."""
    rows = len(M)
    if not field.exact:
        scale = max(_max_abs([row[:width] for row in M]), 1.0)
        threshold = (1e-12 if tol is None else tol) * scale
    rank = 0
    for col in range(width):
        if rank == rows:
            break
        if field.exact:
            pivot = next((i for i in range(rank, rows) if M[i][col] != field.zero), None)
        else:
            pivot = max(range(rank, rows), key=lambda i: abs(M[i][col]))
            if abs(M[pivot][col]) <= threshold:
                pivot = None
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv_p = field.inv(M[rank][col])
        M[rank] = [x * inv_p for x in M[rank]]
        for i in range(rows):
            if i != rank and M[i][col] != field.zero:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def inverse(field: FieldSpec, A: Matrix, tol: float | None = None) -> Matrix | None:
    """Exact/pivoted Gauss-Jordan inverse; None if singular."""
    n = len(A)
    M = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A)]
    if _eliminate(field, M, n, tol) < n:
        return None
    # After full elimination the left half is a permutation-free identity.
    return [row[n:] for row in M]


def solve(field: FieldSpec, A: Matrix, b: Vector, tol: float | None = None) -> Vector | None:
    """Solve A x = b; None if A is singular."""
    n = len(A)
    M = [list(row) + [bv] for row, bv in zip(A, b)]
    if _eliminate(field, M, n, tol) < n:
        return None
    return [row[n] for row in M]


def nullspace(field: FieldSpec, A: Matrix, tol: float | None = None) -> list[Vector]:
    """Basis of the right nullspace {x : A x = 0} (may be empty)."""
    if not A:
        return []
    cols = len(A[0])
    M = [list(row) for row in A]
    if not field.exact:
        scale = max(_max_abs(M), 1.0)
        threshold = (1e-9 if tol is None else tol) * scale
    pivot_cols: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == len(M):
            break
        if field.exact:
            pivot = next((i for i in range(rank, len(M)) if M[i][col] != field.zero), None)
        else:
            pivot = max(range(rank, len(M)), key=lambda i: abs(M[i][col]))
            if abs(M[pivot][col]) <= threshold:
                pivot = None
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv_p = field.inv(M[rank][col])
        M[rank] = [x * inv_p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] != field.zero:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        pivot_cols.append(col)
        rank += 1
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivot_cols):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis
