"""Laurent polynomials in the shift D, i.e. the commutative algebra of
pure recurrence operators.

A LaurentPoly is a finite exponent -> coefficient map over one of the two
concrete fields; exponents may be negative (D^-1 is the left shift).  The
factorization P = P_* . D^k with P_*(0) != 0 ("star factorization") is the
backbone of divisibility and gcd here: P divides Q exactly when P_* divides
Q_* as ordinary polynomials, so the monomial units D^k never obstruct
division and quotients are allowed to have negative exponents.

The gcd of two Laurent polynomials is

    gcd(P, Q) = gcd(P_*, Q_*) . D^nu(kP, kQ)

with the monic Euclidean gcd of the star parts and nu(ks) = min(ks) if all
exponents are >= 0, max(ks) if all are <= 0, and 0 otherwise.  Over the
complex field a floating-point Euclidean gcd is numerically meaningless, so
gcd falls back to Id unless the inputs are structurally proportional; Id is
always a valid common divisor and downstream reductions stay correct, merely
less economical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .errors import InexactDivision, ZeroPolynomial
from .field import FieldSpec
from .sequences import Seq, _vadd, _vscale

__all__ = [
    "LaurentPoly",
    "StarFactorization",
    "lp_from_pairs",
    "lp_zero",
    "lp_one",
    "lp_monomial",
    "lp_add",
    "lp_sub",
    "lp_neg",
    "lp_scale",
    "lp_mul",
    "lp_apply",
    "lp_conjugate",
    "lp_eq",
    "lp_render",
    "psi_factor",
    "nu",
    "gcd_star",
    "gcd_laurent",
    "lp_divide_exact",
]


class LaurentPoly:
    """Finite-support exponent -> coefficient map; no stored zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: dict[int, Any]):
        # Callers hand over ownership of `coeffs`; zeros already trimmed.
        self.field = field
        self.coeffs = coeffs

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def deg_high(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self.coeffs)

    def deg_low(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return min(self.coeffs)

    def width(self) -> int:
        """deg_high - deg_low; the order of the recurrence it encodes."""
        return self.deg_high() - self.deg_low()

    def coeff(self, exp: int) -> Any:
        return self.coeffs.get(exp, self.field.zero)

    def terms(self) -> list[tuple[int, Any]]:
        """(exponent, coefficient) pairs, exponents ascending."""
        return sorted(self.coeffs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field.name == other.field.name and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.name, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def __repr__(self) -> str:
        return f"LaurentPoly({lp_render(self)})"


@dataclass(frozen=True)
class StarFactorization:
    """P = star . D^power with star(0) != 0."""

    star: LaurentPoly
    power: int


def _trim(field: FieldSpec, coeffs: dict[int, Any]) -> dict[int, Any]:
    return {e: c for e, c in coeffs.items() if c != field.zero}


def lp_from_pairs(field: FieldSpec, pairs: Iterable[tuple[int, Any]]) -> LaurentPoly:
    """Build from (exponent, coefficient) pairs; duplicates are summed."""
    acc: dict[int, Any] = {}
    for e, c in pairs:
        acc[e] = acc.get(e, field.zero) + c
    return LaurentPoly(field, _trim(field, acc))


def lp_zero(field: FieldSpec) -> LaurentPoly:
    return LaurentPoly(field, {})


def lp_one(field: FieldSpec) -> LaurentPoly:
    return LaurentPoly(field, {0: field.one})


def lp_monomial(field: FieldSpec, exp: int, coeff: Any = None) -> LaurentPoly:
    c = field.one if coeff is None else field.coerce(coeff)
    if c == field.zero:
        return lp_zero(field)
    return LaurentPoly(field, {exp: c})


def lp_add(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    acc = dict(P.coeffs)
    for e, c in Q.coeffs.items():
        acc[e] = acc.get(e, P.field.zero) + c
    return LaurentPoly(P.field, _trim(P.field, acc))


def lp_neg(P: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(P.field, {e: -c for e, c in P.coeffs.items()})


def lp_sub(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    return lp_add(P, lp_neg(Q))


def lp_scale(c: Any, P: LaurentPoly) -> LaurentPoly:
    if c == P.field.zero:
        return lp_zero(P.field)
    return LaurentPoly(P.field, _trim(P.field, {e: c * v for e, v in P.coeffs.items()}))


def lp_mul(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    acc: dict[int, Any] = {}
    zero = P.field.zero
    for e1, c1 in P.coeffs.items():
        for e2, c2 in Q.coeffs.items():
            e = e1 + e2
            acc[e] = acc.get(e, zero) + c1 * c2
    return LaurentPoly(P.field, _trim(P.field, acc))


def lp_apply(P: LaurentPoly, u: Seq) -> Seq:
    """(P u)(k) = sum_j p_j u(k+j); acts componentwise on vector sequences."""
    field = u.field
    items = sorted(P.coeffs.items())
    support = None
    if u.support is not None:
        support = frozenset(s - e for s in u.support for e, _ in items)

    def fn(k: int):
        total = None
        for e, c in items:
            term = _vscale(c, u(k + e))
            total = term if total is None else _vadd(total, term)
        if total is None:  # zero polynomial
            return field.zero if u.width is None else tuple(field.zero for _ in range(u.width))
        return total

    return Seq(field, fn, support=support, width=u.width)


def lp_conjugate(P: LaurentPoly) -> LaurentPoly:
    """Replace D by D^-1: coefficient of D^j moves to D^-j.  Involutive;
    realizes P(reflect u) = reflect(conjugate(P) u)."""
    return LaurentPoly(P.field, {-e: c for e, c in P.coeffs.items()})


def lp_eq(P: LaurentPoly, Q: LaurentPoly, tol: float | None = None) -> bool:
    """Coefficientwise equality under the field's comparison policy."""
    field = P.field
    for e in set(P.coeffs) | set(Q.coeffs):
        if not field.eq(P.coeff(e), Q.coeff(e), tol):
            return False
    return True


def lp_render(P: LaurentPoly) -> str:
    """Canonical display string, exponents descending."""
    if P.is_zero():
        return "0"
    parts = []
    for e in sorted(P.coeffs, reverse=True):
        c = P.coeffs[e]
        cs = P.field.render(c)
        if any(ch in cs[1:] for ch in "+-"):
            cs = f"({cs})"
        if e == 0:
            parts.append(cs)
        else:
            de = "D" if e == 1 else f"D^{e}"
            parts.append(de if cs == "1" else f"{cs}*{de}")
    return " + ".join(parts)


def psi_factor(P: LaurentPoly) -> StarFactorization:
    """P = star . D^k with star an ordinary polynomial, star(0) != 0."""
    if P.is_zero():
        raise ZeroPolynomial("cannot star-factor the zero polynomial")
    k = P.deg_low()
    star = LaurentPoly(P.field, {e - k: c for e, c in P.coeffs.items()})
    assert star.coeff(0) != P.field.zero
    return StarFactorization(star=star, power=k)


def nu(ks: list[int]) -> int:
    """Exponent rule for Laurent gcd: min if all >= 0, max if all <= 0, else 0."""
    assert ks, "nu of empty list"
    if all(k >= 0 for k in ks):
        return min(ks)
    if all(k <= 0 for k in ks):
        return max(ks)
    return 0


def _dense(P: LaurentPoly) -> list[Any]:
    """Coefficients a_0..a_n of an ordinary polynomial (exponents >= 0)."""
    assert not P.is_zero() and P.deg_low() >= 0
    n = P.deg_high()
    return [P.coeff(i) for i in range(n + 1)]


def _from_dense(field: FieldSpec, dense: list[Any]) -> LaurentPoly:
    return LaurentPoly(field, _trim(field, {i: c for i, c in enumerate(dense)}))


def _poly_divmod(field: FieldSpec, A: list[Any], B: list[Any]) -> tuple[list[Any], list[Any]]:
    """Dense polynomial long division A = q.B + r, deg r < deg B."""
    assert B and B[-1] != field.zero
    r = list(A)
    q = [field.zero] * max(1, len(A) - len(B) + 1)
    inv_lead = field.inv(B[-1])
    for i in range(len(A) - len(B), -1, -1):
        c = r[i + len(B) - 1] * inv_lead
        q[i] = c
        if c != field.zero:
            for j, b in enumerate(B):
                r[i + j] = r[i + j] - c * b
    while len(r) > 1 and r[-1] == field.zero:
        r.pop()
    return q, r


def _monic(P: LaurentPoly) -> LaurentPoly:
    lead = P.coeffs[P.deg_high()]
    return lp_scale(P.field.inv(lead), P)


def gcd_star(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    """Monic Euclidean gcd of two ordinary polynomials (exponents >= 0)."""
    if P.is_zero() and Q.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    if P.is_zero():
        return _monic(Q)
    if Q.is_zero():
        return _monic(P)
    field = P.field
    A, B = _dense(P), _dense(Q)
    while len(B) > 1 or B[0] != field.zero:
        _, r = _poly_divmod(field, A, B)
        A, B = B, r
        if len(B) == 1 and B[0] == field.zero:
            break
    return _monic(_from_dense(field, A))


def _structurally_proportional(P: LaurentPoly, Q: LaurentPoly) -> bool:
    """Q = lambda . P coefficientwise within tolerance (complex field aid)."""
    if set(P.coeffs) != set(Q.coeffs):
        return False
    e0 = P.deg_high()
    lam = Q.coeff(e0) / P.coeff(e0)
    return lp_eq(lp_scale(lam, P), Q)


def gcd_laurent(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    """gcd via star parts and the nu exponent rule; monic star normalization."""
    if P.is_zero() and Q.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    field = P.field
    if P.is_zero() or Q.is_zero():
        nz = Q if P.is_zero() else P
        f = psi_factor(nz)
        return lp_mul(_monic(f.star), lp_monomial(field, nu([f.power])))
    fP, fQ = psi_factor(P), psi_factor(Q)
    power = nu([fP.power, fQ.power])
    if field.exact:
        g = gcd_star(fP.star, fQ.star)
    elif _structurally_proportional(fP.star, fQ.star):
        g = _monic(fP.star)
    else:
        g = lp_one(field)
    return lp_mul(g, lp_monomial(field, power))


def lp_divide_exact(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    """Exact Laurent quotient P / Q (star parts must divide exactly)."""
    if Q.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if P.is_zero():
        return lp_zero(P.field)
    field = P.field
    fP, fQ = psi_factor(P), psi_factor(Q)
    q, r = _poly_divmod(field, _dense(fP.star), _dense(fQ.star))
    scale = max((abs(c) for c in fP.star.coeffs.values()), default=1) or 1
    for c in r:
        if field.exact:
            if c != field.zero:
                raise InexactDivision(f"remainder {c} in Laurent division")
        elif abs(c) > 1e-9 * float(scale):
            raise InexactDivision(f"remainder {c} in Laurent division")
    return lp_mul(_from_dense(field, q), lp_monomial(field, fP.power - fQ.power))
