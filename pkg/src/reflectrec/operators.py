"""The reflection-operator algebra: operators of the form

    L = phi* . P(D) + Q(D)

acting on sequences by (L u)(k) = (P u)(-k) + (Q u)(k), with P and Q Laurent
polynomials in the shift D and phi* the reflection pullback.  The canonical
(reflected, plain) decomposition is unique, so operator equality is
componentwise.

Composition is NOT commutative; it is computed mechanically by rewriting
atoms with the two defining rules

    (phi*)^2 = Id          D^j . phi* = phi* . D^(-j)

and collecting the resulting atoms back into a (reflected, plain) pair.  No
hand-derived closed form for the composed coefficients is assumed anywhere;
unit tests pin the rewriting against application equivalence.

Reduction: for any L there is a companion R with R.L = L.R a pure Laurent
polynomial S (the reflected parts cancel identically), namely

    R = phi* . P - conj(Q),        S = conj(P).P - conj(Q).Q

where conj substitutes D -> D^-1.  Dividing P and conj(Q) by their Laurent
gcd first gives a cheaper companion Rtilde with L.Rtilde still purely
Laurent (one-sided only) of width  width(S_full) - width(gcd).  Solving
S u = R c then recovers candidates for L u = c of roughly half the order
the full reduction would give.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import DegenerateReduction, ZeroOperator
from .laurent import (
    LaurentPoly,
    gcd_laurent,
    lp_add,
    lp_apply,
    lp_conjugate,
    lp_divide_exact,
    lp_eq,
    lp_monomial,
    lp_mul,
    lp_neg,
    lp_render,
    lp_scale,
    lp_zero,
)
from .sequences import Seq, reflect, seq_add

__all__ = [
    "ReflectionOperator",
    "op_identity",
    "op_reflection",
    "op_apply",
    "op_add",
    "op_sub",
    "op_scale",
    "op_compose",
    "op_eq",
    "op_render",
    "reduce_full",
    "reduce_gcd",
    "normalize_to_poly",
    "reduce_star",
]


@dataclass(frozen=True)
class ReflectionOperator:
    """L = phi* . reflected + plain."""

    reflected: LaurentPoly
    plain: LaurentPoly

    def __post_init__(self):
        assert self.reflected.field.name == self.plain.field.name

    @property
    def field(self):
        return self.plain.field

    def is_zero(self) -> bool:
        return self.reflected.is_zero() and self.plain.is_zero()


def op_identity(field) -> ReflectionOperator:
    return ReflectionOperator(lp_zero(field), lp_monomial(field, 0))


def op_reflection(field) -> ReflectionOperator:
    return ReflectionOperator(lp_monomial(field, 0), lp_zero(field))


def op_apply(L: ReflectionOperator, u: Seq) -> Seq:
    """(L u)(k) = (reflected u)(-k) + (plain u)(k)."""
    return seq_add(reflect(lp_apply(L.reflected, u)), lp_apply(L.plain, u))


def op_add(L1: ReflectionOperator, L2: ReflectionOperator) -> ReflectionOperator:
    return ReflectionOperator(lp_add(L1.reflected, L2.reflected), lp_add(L1.plain, L2.plain))


def op_sub(L1: ReflectionOperator, L2: ReflectionOperator) -> ReflectionOperator:
    return op_add(L1, op_scale(-L1.field.one, L2))


def op_scale(c: Any, L: ReflectionOperator) -> ReflectionOperator:
    return ReflectionOperator(lp_scale(c, L.reflected), lp_scale(c, L.plain))


def _atoms(L: ReflectionOperator):
    """Yield (has_reflection, exponent, coefficient) atoms of L."""
    for e, c in L.reflected.terms():
        yield (1, e, c)
    for e, c in L.plain.terms():
        yield (0, e, c)


def op_compose(L1: ReflectionOperator, L2: ReflectionOperator) -> ReflectionOperator:
    """L1 after L2: (L1 . L2)(u) = L1(L2(u)).

    Each atom pair (phi*)^e1 D^j1 . (phi*)^e2 D^j2 is normalized by pushing
    the inner phi* (if any) leftwards with D^j phi* = phi* D^-j and folding
    (phi*)^2 = Id; scalar coefficients commute with everything.
    """
    field = L1.field
    refl: dict[int, Any] = {}
    plain: dict[int, Any] = {}
    for e1, j1, c1 in _atoms(L1):
        for e2, j2, c2 in _atoms(L2):
            if e2 == 0:
                side, exp = e1, j1 + j2
            else:
                side, exp = 1 - e1, j2 - j1
            bucket = refl if side == 1 else plain
            bucket[exp] = bucket.get(exp, field.zero) + c1 * c2
    mk = lambda d: LaurentPoly(field, {e: c for e, c in d.items() if c != field.zero})
    return ReflectionOperator(mk(refl), mk(plain))


def op_eq(L1: ReflectionOperator, L2: ReflectionOperator, tol: float | None = None) -> bool:
    return lp_eq(L1.reflected, L2.reflected, tol) and lp_eq(L1.plain, L2.plain, tol)


def op_render(L: ReflectionOperator) -> str:
    return f"phi*({lp_render(L.reflected)}) + ({lp_render(L.plain)})"


def _require_laurent(C: ReflectionOperator) -> LaurentPoly:
    """Check a composition landed in the pure-Laurent subalgebra and strip it."""
    zero = lp_zero(C.field)
    assert lp_eq(C.reflected, zero), "reflected part failed to cancel"
    return C.plain


def reduce_full(L: ReflectionOperator) -> tuple[ReflectionOperator, LaurentPoly]:
    """Two-sided companion: R with R.L = L.R = S purely Laurent.

    Because S commutes with L, ker L sits inside the L-invariant space
    ker S; the solver's kernel stage relies on that containment.
    """
    R = ReflectionOperator(L.reflected, lp_neg(lp_conjugate(L.plain)))
    RL = op_compose(R, L)
    LR = op_compose(L, R)
    S = _require_laurent(RL)
    assert lp_eq(S, _require_laurent(LR)), "companion failed to commute"
    return R, S


def reduce_gcd(L: ReflectionOperator) -> tuple[ReflectionOperator, LaurentPoly, LaurentPoly]:
    """Economical companion via the Laurent gcd of P and conj(Q).

    Returns (Rtilde, S, gcd) with L.Rtilde = S purely Laurent.  Only this
    one-sided product is Laurent in general; Rtilde.L keeps a reflected
    remainder unless the gcd is reflection-symmetric.
    """
    if L.is_zero():
        raise ZeroOperator("cannot reduce the zero operator")
    conj_plain = lp_conjugate(L.plain)
    divisor = gcd_laurent(L.reflected, conj_plain)
    p_red = lp_divide_exact(L.reflected, divisor)
    q_red = lp_divide_exact(conj_plain, divisor)
    Rtilde = ReflectionOperator(p_red, lp_neg(q_red))
    S = _require_laurent(op_compose(L, Rtilde))
    return Rtilde, S, divisor


def normalize_to_poly(
    L: ReflectionOperator, Rtilde: ReflectionOperator, S: LaurentPoly
) -> tuple[ReflectionOperator, LaurentPoly, int]:
    """Clear negative exponents: the least k >= 0 with S.D^k an ordinary
    polynomial, returning (Rbar = Rtilde . D^k, S.D^k, k)."""
    if S.is_zero():
        raise DegenerateReduction(
            "the reduced operator is identically zero; the reduction carries "
            "no information (the operator kernel is infinite-dimensional)"
        )
    field = S.field
    k = max(0, -S.deg_low())
    shift = ReflectionOperator(lp_zero(field), lp_monomial(field, k))
    return op_compose(Rtilde, shift), lp_mul(S, lp_monomial(field, k)), k


def reduce_star(
    L: ReflectionOperator,
) -> tuple[ReflectionOperator, LaurentPoly, LaurentPoly]:
    """Reduction normalized so the reduced polynomial has a nonzero constant
    term AND a nonzero leading term (its star part): returns
    (Rbar, Spoly, gcd) with L.Rbar = Spoly, Spoly = S . D^(-deg_low S).

    This is the normalization the boundary-value solver wants, since the
    Green's function of Spoly needs both end coefficients invertible.  It
    differs from normalize_to_poly only when deg_low(S) > 0 (possible for
    purely one-sided operators such as L = D).
    """
    Rtilde, S, divisor = reduce_gcd(L)
    if S.is_zero():
        raise DegenerateReduction(
            "the reduced operator is identically zero; the reduction carries "
            "no information (the operator kernel is infinite-dimensional)"
        )
    field = S.field
    d = S.deg_low()
    shift = ReflectionOperator(lp_zero(field), lp_monomial(field, -d))
    return op_compose(Rtilde, shift), lp_mul(S, lp_monomial(field, -d)), divisor
