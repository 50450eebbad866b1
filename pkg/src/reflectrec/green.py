"""Green's functions and solvers for scalar recurrences, and the
reduction-based solver for recurrences with reflection.

For a pure recurrence of order n

    (S u)(k) = a_0 u(k) + ... + a_n u(k+n) = c(k),     a_0 a_n != 0,

the delta-normalized fundamental system y_1..y_n (y_j(i) = [i == j] on the
initial block i, j in 0..n-1) yields an explicit Green's function.  Writing
Htilde(k, j) for the n x n determinant whose first row is (y_1(k)..y_n(k))
and whose remaining rows are the fundamental values at j+1..j+n-1, and
C(j) = Htilde(j, j) for the Casoratian, the plane of index pairs splits into
four blocks:

    A1: k > j >= 0          H(k,j) = (-1)^(n-1) Htilde(k,j) / (a_n C(j+1))
    A2: k+1-n <= j < 0      H(k,j) = Htilde(k,j) / (a_0 C(j))
    A3: j < k+1-n, j < 0    H(k,j) = 0
    A4: k <= j, j >= 0      H(k,j) = 0

and u(k) = sum_j H(k,j) c(j) is the unique solution vanishing on the initial
block.  The determinant structure makes the delta property
sum_l a_l H(k+l,j) = [k == j] hold exactly over the rational field; the test
suite checks it region by region, boundary strips included.

General boundary conditions: given n functionals W with W(Phi) invertible,

    u = Phi . W(Phi)^(-1) (h - W(H c)) + H c

solves S u = c, W u = h.  Reflection problems L u = c are solved by reducing
L to a pure recurrence S = L . Rbar (see `operators`), solving an auxiliary
problem for S with the stacked conditions (W, W o Rbar), pushing the result
back through Rbar, and adding the right member of ker L -- which is computed
exactly inside the reduction of the two-sided companion, since that one
commutes with L.  The solver re-verifies L u = c and W u = h before
returning and refuses to hand back unverified output.
"""

from __future__ import annotations

from dataclasses import dataclass
from threading import Lock
from typing import Any

from .boundary import BoundaryFunctional
from .errors import (
    ConditionCountMismatch,
    InputError,
    SingularCasoratian,
    SingularConditions,
    VerificationFailed,
)
from .field import FieldSpec
from .laurent import LaurentPoly
from .linalg import det, nullspace, solve
from .operators import ReflectionOperator, op_apply, reduce_full, reduce_star
from .sequences import Seq, from_rule, seq_scale
from . import roots as _roots

__all__ = [
    "RecurrenceOperator",
    "recurrence_from_poly",
    "FundamentalSystem",
    "fundamental_system",
    "GreenFunction",
    "casoratian",
    "green_eval",
    "classify_region",
    "solve_ivp",
    "solve_bvp",
    "solve_reflection_bvp",
    "CharacteristicRoots",
    "characteristic_roots",
]


@dataclass(frozen=True)
class RecurrenceOperator:
    """sum_l a_l D^l with l = 0..n, a_0 != 0, a_n != 0, n >= 1."""

    field: FieldSpec
    coeffs: tuple[Any, ...]

    def __post_init__(self):
        assert len(self.coeffs) >= 2, "order must be at least 1"
        assert self.coeffs[0] != self.field.zero, "constant coefficient must be nonzero"
        assert self.coeffs[-1] != self.field.zero, "leading coefficient must be nonzero"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, u: Seq) -> Seq:
        from .laurent import lp_apply, lp_from_pairs

        poly = lp_from_pairs(self.field, list(enumerate(self.coeffs)))
        return lp_apply(poly, u)


def recurrence_from_poly(P: LaurentPoly) -> RecurrenceOperator:
    """View an ordinary polynomial with nonzero constant term as a recurrence."""
    assert not P.is_zero() and P.deg_low() == 0 and P.deg_high() >= 1
    n = P.deg_high()
    return RecurrenceOperator(P.field, tuple(P.coeff(l) for l in range(n + 1)))


def _extend_bidirectional(S: RecurrenceOperator, seed: dict[int, Any], c: Seq) -> Seq:
    """The unique solution of S u = c through the contiguous seed block."""
    a = S.coeffs
    n = S.order
    field = S.field
    values = dict(seed)
    lo, hi = min(values), max(values)
    assert set(values) == set(range(lo, hi + 1)) and hi - lo + 1 == n
    span = {"lo": lo, "hi": hi}
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

    return from_rule(field, value_at)


@dataclass(frozen=True)
class FundamentalSystem:
    """Delta-normalized basis of ker S: y_j(i) = [i == j] for i, j < n."""

    S: RecurrenceOperator
    sequences: tuple[Seq, ...]

    def values_at(self, k: int) -> list[Any]:
        return [y(k) for y in self.sequences]


def fundamental_system(S: RecurrenceOperator, window: tuple[int, int] | None = None) -> FundamentalSystem:
    field = S.field
    n = S.order
    zero_c = from_rule(field, lambda k: field.zero)
    seqs = []
    for j in range(n):
        seed = {i: (field.one if i == j else field.zero) for i in range(n)}
        seqs.append(_extend_bidirectional(S, seed, zero_c))
    fs = FundamentalSystem(S, tuple(seqs))
    if window is not None:
        for k in range(window[0], window[1] + 1):
            fs.values_at(k)
    return fs


def classify_region(k: int, j: int, n: int) -> str:
    """Which of the four index blocks (k, j) falls in for order n."""
    assert n >= 1
    if j >= 0:
        return "A1" if k > j else "A4"
    return "A2" if k + 1 - n <= j else "A3"


class GreenFunction:
    """Lazy (k, j) -> H table for one recurrence operator.

    Casoratian values and the per-column cofactor expansions are memoized;
    all evaluation goes through the fundamental system's own caches, so
    repeated window sweeps are cheap.
    """

    def __init__(self, S: RecurrenceOperator, phi: FundamentalSystem | None = None):
        self.S = S
        self.phi = phi if phi is not None else fundamental_system(S)
        self._cofactors: dict[int, list[Any]] = {}
        self._cas: dict[int, Any] = {}
        self._lock = Lock()
        n = S.order
        sign = S.field.one
        for _ in range(n - 1):
            sign = -sign
        self._a1_sign = sign  # (-1)^(n-1)

    def _cofactor_row(self, j: int) -> list[Any]:
        """Expansion coefficients of Htilde(., j) along its first row."""
        with self._lock:
            if j in self._cofactors:
                return self._cofactors[j]
        field = self.S.field
        n = self.S.order
        lower = [self.phi.values_at(j + r) for r in range(1, n)]
        cof = []
        sign = field.one
        for i in range(n):
            minor = [[row[col] for col in range(n) if col != i] for row in lower]
            cof.append(sign * det(field, minor))
            sign = -sign
        with self._lock:
            self._cofactors[j] = cof
        return cof

    def htilde(self, k: int, j: int) -> Any:
        """det of [y(k); y(j+1); ...; y(j+n-1)]."""
        cof = self._cofactor_row(j)
        top = self.phi.values_at(k)
        return sum((c * v for c, v in zip(cof, top)), self.S.field.zero)

    def casoratian(self, j: int) -> Any:
        if j in self._cas:
            return self._cas[j]
        value = self.htilde(j, j)
        if self.S.field.is_zero(value):
            raise SingularCasoratian(f"Casoratian vanished at j = {j}")
        self._cas[j] = value
        return value

    def __call__(self, k: int, j: int) -> Any:
        field = self.S.field
        region = classify_region(k, j, self.S.order)
        if region in ("A3", "A4"):
            return field.zero
        if region == "A1":
            denom = self.S.coeffs[-1] * self.casoratian(j + 1)
            return self._a1_sign * self.htilde(k, j) * field.inv(denom)
        denom = self.S.coeffs[0] * self.casoratian(j)
        return self.htilde(k, j) * field.inv(denom)


def casoratian(G: GreenFunction, j: int) -> Any:
    """The determinant of n consecutive fundamental values starting at j."""
    return G.casoratian(j)


def green_eval(G: GreenFunction, k: int, j: int) -> Any:
    return G(k, j)


def _require_finite_support(c: Seq, what: str) -> list[int]:
    if c.support is None:
        raise InputError(f"{what} must have finite support")
    return c.support_indices()


def solve_ivp(S: RecurrenceOperator, c: Seq, window: tuple[int, int] | None = None) -> Seq:
    """The unique solution of S u = c vanishing on the initial block 0..n-1."""
    support = _require_finite_support(c, "right-hand side")
    G = GreenFunction(S)
    field = S.field

    def fn(k: int) -> Any:
        return sum((G(k, j) * c(j) for j in support), field.zero)

    u = from_rule(field, fn)
    if window is not None:
        for k in range(window[0], window[1] + 1):
            u(k)
    return u


def _condition_matrix(
    conditions: list[BoundaryFunctional], basis: list[Seq]
) -> list[list[Any]]:
    return [[W(y) for y in basis] for W in conditions]


def solve_bvp(
    S: RecurrenceOperator,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int] | None = None,
) -> Seq:
    """Solve S u = c under n boundary functionals W u = h.

    u = z + Phi alpha with z the initial-value solution and
    alpha = W(Phi)^(-1) (h - W(z)); unique iff det W(Phi) != 0.
    """
    n = S.order
    if len(conditions) != n or len(h) != n:
        raise ConditionCountMismatch(
            f"order-{n} recurrence needs exactly {n} boundary conditions, got {len(conditions)}"
        )
    field = S.field
    phi = fundamental_system(S)
    z = solve_ivp(S, c)
    WPhi = _condition_matrix(conditions, list(phi.sequences))
    rhs = [hv - W(z) for W, hv in zip(conditions, h)]
    alpha = solve(field, WPhi, rhs)
    if alpha is None:
        raise SingularConditions("boundary-condition matrix W(Phi) is singular")

    def fn(k: int) -> Any:
        acc = z(k)
        for a_j, y in zip(alpha, phi.sequences):
            acc = acc + a_j * y(k)
        return acc

    u = from_rule(field, fn)
    if window is not None:
        for k in range(window[0], window[1] + 1):
            u(k)
    return u


def _kernel_basis(L: ReflectionOperator) -> list[Seq]:
    """Exact basis of ker L, found inside the kernel of the commuting
    two-sided reduction (which contains it and is L-invariant)."""
    field = L.field
    _, S_full = reduce_full(L)
    assert not S_full.is_zero()
    d = S_full.deg_low()
    from .laurent import lp_monomial, lp_mul

    S_poly = lp_mul(S_full, lp_monomial(field, -d))
    if S_poly.deg_high() == 0:
        return []  # reduction is a nonzero constant: trivial kernel
    Sf = recurrence_from_poly(S_poly)
    phi = fundamental_system(Sf)
    nf = Sf.order
    # Matrix of L restricted to ker Sf in the delta basis: column j holds
    # the window values of L y_j, which are that image's coordinates.
    M = [[op_apply(L, y)(i) for y in phi.sequences] for i in range(nf)]
    basis_coords = nullspace(field, M)
    kernel = []
    for coords in basis_coords:
        def fn(k: int, coords=coords) -> Any:
            return sum(
                (c * y(k) for c, y in zip(coords, phi.sequences)), field.zero
            )
        kernel.append(from_rule(field, fn))
    return kernel


def solve_reflection_bvp(
    L: ReflectionOperator,
    c: Seq,
    conditions: list[BoundaryFunctional],
    h: list[Any],
    window: tuple[int, int] = (-16, 16),
    tol: float | None = None,
) -> Seq:
    """Solve L u = c with boundary data W u = h, L a reflection operator.

    Pipeline: reduce L to a pure recurrence S of order N via the economical
    companion Rbar (raises DegenerateReduction if the reduction vanishes);
    solve the auxiliary problem S w = c with the 2|W| stacked conditions
    (W, W o Rbar) annihilated, so that u_p = Rbar w satisfies L u_p = c and
    W u_p = 0; then add the kernel member fixed by W u = h.  The candidate
    is re-verified on the window before being returned.
    """
    _require_finite_support(c, "right-hand side")
    field = L.field
    Rbar, S_poly, _divisor = reduce_star(L)  # may raise DegenerateReduction
    N = S_poly.deg_high()

    if N == 0:
        if conditions:
            raise ConditionCountMismatch(
                "reduction has no free constants; boundary conditions cannot be imposed"
            )
        u = seq_scale(field.inv(S_poly.coeff(0)), op_apply(Rbar, c))
    else:
        if 2 * len(conditions) != N:
            raise ConditionCountMismatch(
                f"reduced order {N} needs {N} stacked conditions, got {2 * len(conditions)}"
            )
        S2 = recurrence_from_poly(S_poly)
        phi2 = fundamental_system(S2)
        z = solve_ivp(S2, c)
        stacked = list(conditions) + [W.composed_with(Rbar) for W in conditions]
        V_phi = _condition_matrix(stacked, list(phi2.sequences))
        beta = solve(field, V_phi, [V(z) for V in stacked])
        if beta is None:
            raise SingularConditions("stacked condition matrix on the reduced problem is singular")

        def w_fn(k: int) -> Any:
            acc = z(k)
            for b_j, y in zip(beta, phi2.sequences):
                acc = acc - b_j * y(k)
            return acc

        w_aux = from_rule(field, w_fn)
        u_p = op_apply(Rbar, w_aux)

        kernel = _kernel_basis(L)
        if len(kernel) != len(conditions):
            raise SingularConditions(
                f"kernel dimension {len(kernel)} does not match the "
                f"{len(conditions)} boundary conditions"
            )
        if kernel:
            W_ker = _condition_matrix(conditions, kernel)
            rhs = [hv - W(u_p) for W, hv in zip(conditions, h)]
            alpha = solve(field, W_ker, rhs)
            if alpha is None:
                raise SingularConditions("boundary-condition matrix on ker L is singular")

            def u_fn(k: int) -> Any:
                acc = u_p(k)
                for a_t, y in zip(alpha, kernel):
                    acc = acc + a_t * y(k)
                return acc

            u = from_rule(field, u_fn)
        else:
            u = u_p

    # Mandatory re-verification: the reduction only guarantees candidates.
    Lu = op_apply(L, u)
    for k in range(window[0], window[1] + 1):
        if not field.eq(Lu(k), c(k), tol):
            raise VerificationFailed(
                f"candidate violates the equation at k = {k}: "
                f"{field.render(Lu(k))} != {field.render(c(k))}"
            )
    for W, hv in zip(conditions, h):
        if not field.eq(W(u), hv, tol):
            raise VerificationFailed("candidate violates a boundary condition")
    return u


@dataclass(frozen=True)
class CharacteristicRoots:
    """Roots with multiplicities of sum_l a_l t^l (complex field)."""

    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    def basis(self) -> list[Seq]:
        """The classical solutions k^t lambda^k, t < multiplicity."""
        from .field import COMPLEX

        out = []
        for lam, mult in zip(self.roots, self.multiplicities):
            for t in range(mult):
                def fn(k: int, lam=lam, t=t) -> complex:
                    return (k**t) * lam**k
                out.append(from_rule(COMPLEX, fn))
        return out


def characteristic_roots(S: RecurrenceOperator, cluster_tol: float = 1e-8) -> CharacteristicRoots:
    """All roots of the characteristic polynomial, clustered into
    multiplicities (complex field; rational input is coerced)."""
    coeffs = [complex(x) for x in S.coeffs]
    raw = _roots.aberth(coeffs)
    clusters: list[list[complex]] = []
    for r in sorted(raw, key=lambda z: (z.real, z.imag)):
        if clusters and abs(r - clusters[-1][-1]) <= cluster_tol * (1 + abs(r)):
            clusters[-1].append(r)
        else:
            clusters.append([r])
    centers = tuple(sum(cl) / len(cl) for cl in clusters)
    mults = tuple(len(cl) for cl in clusters)
    return CharacteristicRoots(roots=centers, multiplicities=mults)
