"""Laurent polynomial arithmetic, star factorization, gcd, exact division.

Everything here is exercised over the rational field where equality is
structural; a couple of checks repeat over complex to pin the tolerance
behavior of gcd and division.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflectrec import (
    COMPLEX,
    RATIONAL,
    InexactDivision,
    ZeroPolynomial,
    delta,
    from_pairs,
    gcd_laurent,
    gcd_star,
    lp_add,
    lp_apply,
    lp_conjugate,
    lp_divide_exact,
    lp_eq,
    lp_from_pairs,
    lp_monomial,
    lp_mul,
    lp_one,
    lp_render,
    lp_scale,
    lp_sub,
    lp_zero,
    nu,
    psi_factor,
    reflect,
    seq_equal,
    shift,
)


def P(*pairs):
    return lp_from_pairs(RATIONAL, [(e, Fraction(c)) for e, c in pairs])


small_polys = st.lists(
    st.tuples(st.integers(-4, 4), st.fractions(min_value=-6, max_value=6)),
    min_size=0,
    max_size=6,
).map(lambda pairs: lp_from_pairs(RATIONAL, pairs))


def test_construction_merges_and_trims():
    p = P((2, 1), (2, -1), (0, 5))
    assert p.coeffs == {0: 5}
    assert lp_zero(RATIONAL).is_zero()
    with pytest.raises(ZeroPolynomial):
        lp_zero(RATIONAL).deg_high()


def test_degrees_and_width():
    p = P((3, 1), (-2, 4))
    assert p.deg_high() == 3 and p.deg_low() == -2 and p.width() == 5


@settings(max_examples=50, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert lp_eq(lp_add(a, b), lp_add(b, a))
    assert lp_eq(lp_mul(a, b), lp_mul(b, a))
    assert lp_eq(lp_mul(a, lp_add(b, c)), lp_add(lp_mul(a, b), lp_mul(a, c)))
    assert lp_eq(lp_mul(lp_mul(a, b), c), lp_mul(a, lp_mul(b, c)))


def test_apply_matches_shifts():
    p = P((1, 2), (-1, 3), (0, -1))
    u = from_pairs(RATIONAL, [(k, Fraction(k * k + 1)) for k in range(-5, 6)])
    manual = None
    for e, c in p.terms():
        piece = shift(u, e)
        term = from_pairs(RATIONAL, [(k, c * piece(k)) for k in range(-10, 11)])
        manual = term if manual is None else from_pairs(
            RATIONAL, [(k, manual(k) + term(k)) for k in range(-10, 11)]
        )
    assert seq_equal(lp_apply(p, u), manual, -4, 4)


def test_apply_delta_reads_coefficients():
    p = P((2, 7), (0, -3))
    image = lp_apply(p, delta(RATIONAL))
    # (P delta)(k) = p_{-k}
    assert image(-2) == 7 and image(0) == -3 and image(1) == 0


@settings(max_examples=50, deadline=None)
@given(small_polys)
def test_conjugate_is_the_reflection_intertwiner(p):
    u = from_pairs(RATIONAL, [(k, Fraction(3 * k + 1)) for k in range(-6, 7)])
    lhs = lp_apply(p, reflect(u))
    rhs = reflect(lp_apply(lp_conjugate(p), u))
    assert seq_equal(lhs, rhs, -2, 2)
    assert lp_eq(lp_conjugate(lp_conjugate(p)), p)


def test_star_factorization():
    p = P((-2, 3), (1, 1))
    f = psi_factor(p)
    assert f.power == -2
    assert f.star.coeff(0) == 3 and f.star.deg_high() == 3
    assert lp_eq(lp_mul(f.star, lp_monomial(RATIONAL, f.power)), p)


def test_nu_exponent_rule():
    assert nu([2, 3]) == 2
    assert nu([-2, -5]) == -2
    assert nu([-1, 4]) == 0
    assert nu([0, -3]) == 0  # mixed signs include zero


def test_gcd_star_known_factors():
    a = P((2, 1), (1, -5), (0, 6))      # (D-2)(D-3)
    b = P((2, 1), (1, -4), (0, 4))      # (D-2)^2
    g = gcd_star(a, b)
    assert lp_eq(g, P((1, 1), (0, -2)))  # monic D - 2


def test_gcd_star_coprime_gives_one():
    assert lp_eq(gcd_star(P((1, 1), (0, -1)), P((1, 1), (0, 1))), lp_one(RATIONAL))


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys)
def test_gcd_laurent_divides_both(p, q):
    if p.is_zero() and q.is_zero():
        return
    g = gcd_laurent(p, q)
    for target in (p, q):
        if target.is_zero():
            continue
        quotient = lp_divide_exact(target, g)
        assert lp_eq(lp_mul(quotient, g), target)


def test_gcd_laurent_units_are_stripped():
    # Common D-powers only matter when both arguments share the sign of
    # their lowest exponent; a unit mismatch contributes nothing.
    g = gcd_laurent(P((0, 5)), P((-1, 1)))
    assert lp_eq(g, lp_one(RATIONAL))
    g2 = gcd_laurent(P((-1, 1), (-3, 2)), P((-2, 1)))
    assert lp_eq(g2, lp_monomial(RATIONAL, -2))


def test_gcd_laurent_with_zero_argument():
    g = gcd_laurent(lp_zero(RATIONAL), P((-1, 2), (0, 2)))
    assert lp_eq(g, P((-1, 1), (0, 1)))  # monic, unit power kept


def test_divide_exact_detects_remainders():
    with pytest.raises(InexactDivision):
        lp_divide_exact(P((1, 1), (0, 1)), P((1, 1), (0, -1)))
    q = lp_divide_exact(P((2, 1), (0, -4)), P((1, 1), (0, -2)))
    assert lp_eq(q, P((1, 1), (0, 2)))


def test_divide_exact_handles_laurent_shifts():
    num = P((1, 1), (-1, 1))       # D + D^-1
    den = P((2, 1), (0, 1))        # D^2 + 1
    assert lp_eq(lp_divide_exact(num, den), lp_monomial(RATIONAL, -1))


def test_complex_gcd_proportional_detection():
    a = lp_from_pairs(COMPLEX, [(1, 2.0), (0, 2.0)])
    b = lp_from_pairs(COMPLEX, [(1, 3.0), (0, 3.0 + 1e-13)])
    g = gcd_laurent(a, b)
    assert lp_eq(g, lp_from_pairs(COMPLEX, [(1, 1.0), (0, 1.0)]))
    # genuinely different polynomials fall back to a unit
    cpoly = lp_from_pairs(COMPLEX, [(1, 1.0), (0, 5.0)])
    assert lp_eq(gcd_laurent(a, cpoly), lp_one(COMPLEX))


def test_render():
    assert lp_render(P((2, 1), (0, -3), (-1, 2))) == "D^2 + -3 + 2*D^-1"
    assert lp_render(P((1, Fraction(1, 2)))) == "1/2*D"
    assert lp_render(lp_zero(RATIONAL)) == "0"


def test_scale_and_sub():
    p = P((1, 4), (0, -2))
    assert lp_eq(lp_scale(Fraction(1, 2), p), P((1, 2), (0, -1)))
    assert lp_sub(p, p).is_zero()
