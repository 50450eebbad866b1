"""First-order systems with reflection:

    F u(k+1) + G u(-k-1) + A u(k) + B u(-k) = c(k),   u(k) in F^n.

Stacking the state z(k) = (u(k); u(-k)) turns the pair of rows at k and
-k-1 into a one-step pencil

    Mfwd z(k+1) + Mbwd z(k) = (c(k); c(-k-1)),
    Mfwd = [[F, G], [B, A]],   Mbwd = [[A, B], [G, F]].

When both blocks are invertible the transfer matrix T = -Mfwd^-1 Mbwd drives
everything: homogeneous solutions are u(k) = M(k) u0 with M(k) the sum of
the two upper blocks of T^k, particular solutions come from the first-order
Green's function

    Hbar(k, j) = T^(k-1-j)   for 0 <= j <= k-1,
               = -T^(k-1-j)  for k <= j <= -1,
               = 0           otherwise,

and n-point boundary conditions reduce to a 2n x 2n linear system whose
matrix pairs each functional row with its reflected twin.  The block swap
sigma(x; y) = (y; x) conjugates Mfwd into Mbwd, so det Mfwd = det Mbwd and
sigma T sigma = T^-1; the solver returns states consistent under sigma by
construction and re-verifies the original equation before returning.

`embed_scalar` converts one scalar reflection equation of bandwidth n into
an equivalent 2n-dimensional system of this shape, with helpers mapping
scalar sequences to state sequences, forcings to forcings, and back.
"""

from __future__ import annotations

from dataclasses import dataclass
from threading import Lock
from typing import Any, Callable

from .boundary import BoundaryFunctional
from .errors import (
    ConditionCountMismatch,
    DegenerateLeading,
    InputError,
    SingularBlock,
    SingularK,
    SingularZ,
    VerificationFailed,
)
from .field import FieldSpec
from .linalg import inverse, mat_from_blocks, mat_identity, mat_mul, mat_neg, mat_vec, solve
from .operators import ReflectionOperator
from .sequences import Seq, from_rule

__all__ = [
    "MatrixFG",
    "BlockPair",
    "block_pair",
    "FundamentalMatrix",
    "fundamental_matrix",
    "FirstOrderGreen",
    "first_order_green",
    "condition_system",
    "solve_system",
    "ScalarEmbedding",
    "embed_scalar",
]

Matrix = list[list[Any]]


@dataclass(frozen=True)
class MatrixFG:
    """The four n x n coefficient blocks of one reflection system."""

    field: FieldSpec
    n: int
    F: Matrix
    G: Matrix
    A: Matrix
    B: Matrix

    def __post_init__(self):
        for name in ("F", "G", "A", "B"):
            m = getattr(self, name)
            assert len(m) == self.n and all(len(row) == self.n for row in m), (
                f"block {name} must be {self.n} x {self.n}"
            )

    def residual(self, u: Seq, c: Seq, k: int) -> tuple[Any, ...]:
        """F u(k+1) + G u(-k-1) + A u(k) + B u(-k) - c(k)."""
        acc = mat_vec(self.field, self.F, list(u(k + 1)))
        for blk, v in ((self.G, u(-k - 1)), (self.A, u(k)), (self.B, u(-k))):
            step = mat_vec(self.field, blk, list(v))
            acc = [x + y for x, y in zip(acc, step)]
        return tuple(x - y for x, y in zip(acc, c(k)))


@dataclass(frozen=True)
class BlockPair:
    """Forward/backward pencil blocks of the stacked one-step form."""

    field: FieldSpec
    n: int
    Mfwd: Matrix
    Mbwd: Matrix
    Mfwd_inv: Matrix
    Mbwd_inv: Matrix


def block_pair(M: MatrixFG) -> BlockPair:
    field = M.field
    fwd = mat_from_blocks([[M.F, M.G], [M.B, M.A]])
    bwd = mat_from_blocks([[M.A, M.B], [M.G, M.F]])
    fwd_inv = inverse(field, fwd)
    if fwd_inv is None:
        raise SingularBlock("forward block [[F, G], [B, A]] is singular")
    bwd_inv = inverse(field, bwd)
    if bwd_inv is None:
        raise SingularBlock("backward block [[A, B], [G, F]] is singular")
    return BlockPair(field, M.n, fwd, bwd, fwd_inv, bwd_inv)


class _MatrixPowers:
    """Memoized integer powers of an invertible matrix."""

    def __init__(self, field: FieldSpec, K: Matrix, K_inv: Matrix):
        self.field = field
        self.K = K
        self.K_inv = K_inv
        self._memo: dict[int, Matrix] = {0: mat_identity(field, len(K))}
        self._lock = Lock()

    def power(self, k: int) -> Matrix:
        with self._lock:
            if k in self._memo:
                return self._memo[k]
            step = self.K if k > 0 else self.K_inv
            direction = 1 if k > 0 else -1
            # walk outward from the nearest cached exponent on this side
            m = k
            while m not in self._memo:
                m -= direction
            acc = self._memo[m]
            while m != k:
                m += direction
                acc = mat_mul(self.field, acc, step)
                self._memo[m] = acc
            return acc


class FundamentalMatrix:
    """Transfer matrix T = -Mfwd^-1 Mbwd and the solution family M(k)."""

    def __init__(self, bp: BlockPair):
        self.bp = bp
        field = bp.field
        T = mat_neg(mat_mul(field, bp.Mfwd_inv, bp.Mbwd))
        T_inv = mat_neg(mat_mul(field, bp.Mbwd_inv, bp.Mfwd))
        self.powers = _MatrixPowers(field, T, T_inv)

    @property
    def T(self) -> Matrix:
        return self.powers.K

    def power(self, k: int) -> Matrix:
        return self.powers.power(k)

    def M(self, k: int) -> Matrix:
        """Sum of the two upper blocks of T^k; M(0) = Id, and
        u(k) = M(k) u0 runs over all homogeneous solutions."""
        n = self.bp.n
        Tk = self.power(k)
        return [[Tk[i][j] + Tk[i][n + j] for j in range(n)] for i in range(n)]


def fundamental_matrix(bp: BlockPair) -> FundamentalMatrix:
    return FundamentalMatrix(bp)


class FirstOrderGreen:
    """Hbar(k, j) for z(k+1) = K z(k) + f(k) with z(0) = 0.

    Summing Hbar(k, j) f(j) over j gives the unique solution pinned at 0;
    the two-sided support (positive j fed forward, negative j fed backward
    through K^-1) is what makes the later window checks exact.
    """

    def __init__(self, field: FieldSpec, K: Matrix):
        K_inv = inverse(field, K)
        if K_inv is None:
            raise SingularK("one-step matrix is singular; backward orbit undefined")
        self.field = field
        self.dim = len(K)
        self.powers = _MatrixPowers(field, K, K_inv)

    def __call__(self, k: int, j: int) -> Matrix:
        if 0 <= j <= k - 1:
            return self.powers.power(k - 1 - j)
        if k <= j <= -1:
            return mat_neg(self.powers.power(k - 1 - j))
        return [[self.field.zero] * self.dim for _ in range(self.dim)]

    def particular(self, forcing: dict[int, list[Any]]) -> Callable[[int], list[Any]]:
        """k -> sum_j Hbar(k, j) forcing[j], as plain lists."""

        def at(k: int) -> list[Any]:
            acc = [self.field.zero] * self.dim
            for j, f in forcing.items():
                if 0 <= j <= k - 1 or k <= j <= -1:
                    step = mat_vec(self.field, self(k, j), f)
                    acc = [x + y for x, y in zip(acc, step)]
            return acc

        return at


def first_order_green(field: FieldSpec, K: Matrix) -> FirstOrderGreen:
    return FirstOrderGreen(field, K)


def _functional_terms(W: BoundaryFunctional, n: int) -> list[tuple[tuple[Any, ...], int]]:
    out = []
    for t in W.terms:
        assert t.pre is None, "system conditions must be plain point evaluations"
        w = t.weight if isinstance(t.weight, tuple) else (t.weight,)
        assert len(w) == n
        out.append((w, t.index))
    return out


def condition_system(
    fm: FundamentalMatrix,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    Y_at: Callable[[int], list[Any]],
) -> tuple[Matrix, list[Any]]:
    """The stacked 2n x 2n boundary system determining the free state r.

    Each functional contributes two rows: its action on the upper block of
    k -> T^k at its own points, and on the lower block at the reflected
    points.  With pure evaluations at 0 the result is exactly the identity
    matrix.  The right-hand side subtracts the particular solution Y.
    """
    field = fm.bp.field
    n = fm.bp.n
    Z: list[list[Any]] = []
    rhs: list[Any] = []
    terms = [_functional_terms(W, n) for W in conditions]
    for sign_k, offset in ((1, 0), (-1, n)):
        for i, term_list in enumerate(terms):
            row = [field.zero] * (2 * n)
            val = h[i]
            for w, kt in term_list:
                Tk = fm.power(sign_k * kt)
                yk = Y_at(sign_k * kt)
                for q in range(2 * n):
                    row[q] = row[q] + sum(
                        (w[p] * Tk[offset + p][q] for p in range(n)), field.zero
                    )
                val = val - sum((w[p] * yk[offset + p] for p in range(n)), field.zero)
            Z.append(row)
            rhs.append(val)
    return Z, rhs


def solve_system(
    M: MatrixFG,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int] = (-16, 16),
    tol: float | None = None,
) -> Seq:
    """Solve the reflection system under n scalar boundary functionals.

    The general solution of the stacked pencil is z(k) = T^k r + Y(k) with
    Y built from the first-order Green's function.  Each condition W_i is
    imposed twice -- once through the upper state block at its own points,
    once through the lower block at the reflected points -- which squares
    up the unknown r in F^(2n) and automatically enforces the sigma-
    consistency z(-k) = sigma z(k).  Raises SingularZ when the condition
    matrix degenerates, and VerificationFailed if the assembled candidate
    does not reproduce the input on the window.
    """
    field = M.field
    n = M.n
    if c.support is None:
        raise InputError("right-hand side must have finite support")
    if c.width != n:
        raise InputError(f"right-hand side must be {n}-vector valued")
    if len(conditions) != n or len(h) != n:
        raise ConditionCountMismatch(
            f"{n}-dimensional system needs exactly {n} conditions, got {len(conditions)}"
        )

    bp = block_pair(M)
    fm = fundamental_matrix(bp)
    green = FirstOrderGreen(field, fm.T)
    green.powers = fm.powers  # share the memo; T is the same matrix

    forcing: dict[int, list[Any]] = {}
    rows = set(c.support_indices())
    for k in rows | {-j - 1 for j in rows}:
        stacked = list(c(k)) + list(c(-k - 1))
        if any(x != field.zero for x in stacked):
            forcing[k] = mat_vec(field, bp.Mfwd_inv, stacked)
    Y = green.particular(forcing)
    Y_memo: dict[int, list[Any]] = {}

    def Y_at(k: int) -> list[Any]:
        if k not in Y_memo:
            Y_memo[k] = Y(k)
        return Y_memo[k]

    Z, rhs = condition_system(fm, conditions, h, Y_at)
    r = solve(field, Z, rhs)
    if r is None:
        raise SingularZ("stacked boundary-condition matrix is singular")

    def u_fn(k: int) -> tuple[Any, ...]:
        Tk = fm.power(k)
        y = Y_at(k)
        return tuple(
            sum((Tk[p][q] * r[q] for q in range(2 * n)), field.zero) + y[p]
            for p in range(n)
        )

    u = from_rule(field, u_fn, width=n)

    for k in range(window[0], window[1] + 1):
        res = M.residual(u, c, k)
        if not all(field.is_zero(x, tol) for x in res):
            raise VerificationFailed(f"system candidate fails the equation at k = {k}")
    for W, hv in zip(conditions, h):
        if not field.eq(W(u), hv, tol):
            raise VerificationFailed("system candidate fails a boundary condition")
    return u


@dataclass(frozen=True)
class ScalarEmbedding:
    """A scalar reflection equation recast as a 2n-dimensional system.

    The state gathers an n-window behind k on the plain side and an
    n-window ahead of -k on the reflected side:

        z(k) = (x(k-n), ..., x(k-1);  x(-k+1), ..., x(-k+n)).

    2n - 2 rows of the system are shift-consistency identities; the last
    two impose the scalar equation at k and at k+1.  `forcing_of` and
    `project` translate data and solutions between the two pictures.
    """

    matrix: MatrixFG
    n: int  # scalar bandwidth; the system dimension is 2n
    a: dict[int, Any]
    b: dict[int, Any]

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def leading_pair(self) -> Any:
        """a_n a_-n - b_n b_-n, the embedding's regularity certificate."""
        return self.a[self.n] * self.a[-self.n] - self.b[self.n] * self.b[-self.n]

    def state_of(self, u: Seq, k: int) -> tuple[Any, ...]:
        plus = [u(k - self.n + i) for i in range(self.n)]
        minus = [u(-k + i) for i in range(1, self.n + 1)]
        return tuple(plus + minus)

    def state_seq(self, u: Seq) -> Seq:
        return from_rule(self.field, lambda k: self.state_of(u, k), width=2 * self.n)

    def forcing_of(self, c: Seq) -> Seq:
        """The system right-hand side: zeros except c(k), c(k+1) in the
        two equation slots."""
        assert c.support is not None, "forcing needs a finite-support scalar input"
        field = self.field
        dim = 2 * self.n

        def fn(k: int) -> tuple[Any, ...]:
            out = [field.zero] * dim
            out[dim - 2] = c(k)
            out[dim - 1] = c(k + 1)
            return tuple(out)

        rows = frozenset(c.support) | frozenset(s - 1 for s in c.support)
        return Seq(field, fn, support=rows, width=dim)

    def project(self, z: Seq) -> Seq:
        """Recover the scalar sequence: x(m) sits in slot n-1 of z(m+1)."""
        return from_rule(self.field, lambda m: z(m + 1)[self.n - 1])


def embed_scalar(L: ReflectionOperator) -> ScalarEmbedding:
    """Embed sum_j a_j x(k+j) + b_j x(-k-j) = c(k) as a first-order
    reflection system of dimension 2n, n the larger bandwidth.

    The plain part of L supplies the a_j directly; the reflected part
    P = sum_e p_e D^e acts as (P x)(-k) = sum_e p_e x(-k+e), so b_j = p_-j.
    Requires a_n a_-n - b_n b_-n != 0 (DegenerateLeading otherwise): that
    combination multiplies the extreme state slots and is what keeps the
    stacked pencil's blocks from losing rank for structural reasons.
    """
    field = L.field
    if L.plain.is_zero() and L.reflected.is_zero():
        raise InputError("zero operator cannot be embedded")
    exps: list[int] = []
    if not L.plain.is_zero():
        exps += [L.plain.deg_low(), L.plain.deg_high()]
    if not L.reflected.is_zero():
        exps += [-L.reflected.deg_high(), -L.reflected.deg_low()]
    n = max(abs(e) for e in exps)
    if n < 1:
        raise InputError("bandwidth-0 equations have no shift structure to embed")
    a = {j: L.plain.coeff(j) for j in range(-n, n + 1)}
    b = {j: L.reflected.coeff(-j) for j in range(-n, n + 1)}
    lead = a[n] * a[-n] - b[n] * b[-n]
    if field.is_zero(lead):
        raise DegenerateLeading(
            "a_n a_-n - b_n b_-n vanishes; the embedded pencil is structurally singular"
        )

    dim = 2 * n
    zero = field.zero
    F = [[zero] * dim for _ in range(dim)]
    G = [[zero] * dim for _ in range(dim)]
    A = [[zero] * dim for _ in range(dim)]
    B = [[zero] * dim for _ in range(dim)]

    row = 0
    for i in range(n - 1):  # plain-side shift consistency
        F[row][i] = field.one
        A[row][i + 1] = -field.one
        row += 1
    for j in range(1, n):  # reflected-side shift consistency
        F[row][n + j] = field.one
        A[row][n + j - 1] = -field.one
        row += 1

    u1 = row  # the scalar equation at index k
    for j in range(-n, 0):
        A[u1][n + j] = A[u1][n + j] + a[j]
    F[u1][n - 1] = F[u1][n - 1] + a[0]
    for j in range(1, n + 1):
        B[u1][n + j - 1] = B[u1][n + j - 1] + a[j]
    for j in range(1, n + 1):
        B[u1][n - j] = B[u1][n - j] + b[j]
    F[u1][n] = F[u1][n] + b[0]
    for j in range(-n, 0):
        A[u1][n - 1 - j] = A[u1][n - 1 - j] + b[j]

    u2 = row + 1  # the scalar equation at index k+1
    for j in range(-n, 0):
        F[u2][n + j] = F[u2][n + j] + a[j]
    for j in range(0, n):
        B[u2][n + j] = B[u2][n + j] + a[j]
    G[u2][2 * n - 1] = G[u2][2 * n - 1] + a[n]
    G[u2][0] = G[u2][0] + b[n]
    for j in range(1, n):
        B[u2][n - 1 - j] = B[u2][n - 1 - j] + b[j]
    B[u2][n - 1] = B[u2][n - 1] + b[0]
    F[u2][n] = F[u2][n] + b[-1]
    for j in range(-n, -1):
        F[u2][n - j - 1] = F[u2][n - j - 1] + b[j]

    matrix = MatrixFG(field, dim, F, G, A, B)
    return ScalarEmbedding(matrix=matrix, n=n, a=a, b=b)
