"""End-to-end solver for L u = c where L mixes u(k) and u(-k).

The referee throughout is the dense window oracle, which knows nothing
about the reduction: it just assembles every equation row that fits in a
window together with the boundary rows and solves the square system.
"""

import random
from fractions import Fraction

import pytest

from reflectrec import (
    COMPLEX,
    RATIONAL,
    ConditionCountMismatch,
    ReflectionOperator,
    SingularConditions,
    delta,
    dense_window_solve,
    evaluation_at,
    from_pairs,
    lp_from_pairs,
    lp_zero,
    op_apply,
    residual_reflection,
    seq_equal,
    solve_reflection_bvp,
    window_system_reflection,
    zero_seq,
)
from reflectrec.boundary import BoundaryFunctional, PointTerm


def lp(*pairs):
    return lp_from_pairs(RATIONAL, [(e, Fraction(c)) for e, c in pairs])


def shift_minus_one_plus_reflection(m):
    """L = D - Id + m phi*."""
    return ReflectionOperator(lp((0, m)), lp((1, 1), (0, -1)))


# === the workhorse example: L = D - Id + 3 phi* ===


def test_m3_against_dense_oracle():
    L = shift_minus_one_plus_reflection(3)
    rng = random.Random(1618)
    for trial in range(6):
        pts = rng.sample(range(-4, 5), rng.randint(1, 3))
        c = from_pairs(RATIONAL, [(p, Fraction(rng.randint(-6, 6))) for p in pts])
        cond = [evaluation_at(RATIONAL, rng.randint(-3, 3))]
        h = [Fraction(rng.randint(-4, 4))]
        u = solve_reflection_bvp(L, c, cond, h)
        ws = window_system_reflection(L, c, cond, h, (-9, 9))
        ref = dense_window_solve(ws)
        # compare away from the dense window's edge rows
        assert seq_equal(u, ref, -8, 8), trial
        assert residual_reflection(L, u, c, (-12, 12)).exact_zero
        assert cond[0](u) == h[0]


def test_m3_window_independence():
    L = shift_minus_one_plus_reflection(3)
    c = delta(RATIONAL, at=1)
    cond = [evaluation_at(RATIONAL, 0)]
    h = [Fraction(2)]
    u1 = solve_reflection_bvp(L, c, cond, h, window=(-12, 12))
    u2 = solve_reflection_bvp(L, c, cond, h, window=(-16, 16))
    assert seq_equal(u1, u2, -12, 12)


def test_m3_combination_condition():
    L = shift_minus_one_plus_reflection(3)
    c = delta(RATIONAL, at=0)
    W = BoundaryFunctional((PointTerm(Fraction(1), 2), PointTerm(Fraction(5), -1)))
    u = solve_reflection_bvp(L, c, [W], [Fraction(7)])
    assert W(u) == 7
    assert residual_reflection(L, u, c, (-12, 12)).exact_zero


def test_m3_condition_count_mismatch():
    L = shift_minus_one_plus_reflection(3)
    c = zero_seq(RATIONAL)
    with pytest.raises(ConditionCountMismatch):
        solve_reflection_bvp(L, c, [], [])
    two = [evaluation_at(RATIONAL, 0), evaluation_at(RATIONAL, 1)]
    with pytest.raises(ConditionCountMismatch):
        solve_reflection_bvp(L, c, two, [Fraction(0), Fraction(0)])


def test_m3_kernel_blind_condition_rejected():
    # every kernel member satisfies u(1) = -2 u(0), so 2u(0) + u(1)
    # cannot pin the kernel coefficient down
    L = shift_minus_one_plus_reflection(3)
    W = BoundaryFunctional((PointTerm(Fraction(2), 0), PointTerm(Fraction(1), 1)))
    with pytest.raises(SingularConditions):
        solve_reflection_bvp(L, delta(RATIONAL), [W], [Fraction(1)])


# === zero-order reduction: L = D + m phi* ===


def test_m2_needs_no_conditions():
    L = ReflectionOperator(lp((0, 2)), lp((1, 1)))
    u = solve_reflection_bvp(L, delta(RATIONAL), [], [])
    assert u(0) == Fraction(2, 3)
    assert u(1) == Fraction(-1, 3)
    assert all(u(k) == 0 for k in range(-10, 11) if k not in (0, 1))
    assert residual_reflection(L, u, delta(RATIONAL), (-12, 12)).exact_zero


def test_m2_rejects_conditions():
    L = ReflectionOperator(lp((0, 2)), lp((1, 1)))
    with pytest.raises(ConditionCountMismatch):
        solve_reflection_bvp(L, delta(RATIONAL), [evaluation_at(RATIONAL, 0)], [Fraction(1)])


def test_m2_matches_dense_oracle():
    L = ReflectionOperator(lp((0, 2)), lp((1, 1)))
    rng = random.Random(21)
    for _ in range(4):
        pts = rng.sample(range(-4, 5), 3)
        c = from_pairs(RATIONAL, [(p, Fraction(rng.randint(-6, 6))) for p in pts])
        u = solve_reflection_bvp(L, c, [], [])
        ws = window_system_reflection(L, c, [], [], (-10, 10))
        ref = dense_window_solve(ws)
        assert seq_equal(u, ref, -9, 9)


# === no reflected part at all: L = D, u = D^-1 c ===


def test_pure_shift_reduces_to_backshift():
    L = ReflectionOperator(lp_zero(RATIONAL), lp((1, 1)))
    c = from_pairs(RATIONAL, [(0, Fraction(3)), (2, Fraction(-1))])
    u = solve_reflection_bvp(L, c, [], [])
    for k in range(-8, 9):
        assert u(k) == c(k - 1)
    assert residual_reflection(L, u, c, (-10, 10)).exact_zero


# === complex coefficients ===


def test_m3_complex_homogeneous_kernel():
    Lc = ReflectionOperator(
        lp_from_pairs(COMPLEX, [(0, complex(3))]),
        lp_from_pairs(COMPLEX, [(1, complex(1)), (0, complex(-1))]),
    )
    c = zero_seq(COMPLEX)
    u = solve_reflection_bvp(
        Lc, c, [evaluation_at(COMPLEX, 0)], [complex(1)], window=(-10, 10), tol=1e-9
    )
    assert u(0) == pytest.approx(1)
    # the kernel line is u(1) = -2 u(0)
    assert u(1) == pytest.approx(-2)
    Lu = op_apply(Lc, u)
    assert all(abs(Lu(k)) < 1e-8 for k in range(-10, 11))


def test_m3_rational_vs_complex_agree():
    L = shift_minus_one_plus_reflection(3)
    Lc = ReflectionOperator(
        lp_from_pairs(COMPLEX, [(0, complex(3))]),
        lp_from_pairs(COMPLEX, [(1, complex(1)), (0, complex(-1))]),
    )
    c = delta(RATIONAL, at=1)
    cc = delta(COMPLEX, at=1)
    cond_q = [evaluation_at(RATIONAL, 0)]
    cond_c = [evaluation_at(COMPLEX, 0)]
    uq = solve_reflection_bvp(L, c, cond_q, [Fraction(1)])
    uc = solve_reflection_bvp(Lc, cc, cond_c, [complex(1)], tol=1e-9)
    for k in range(-8, 9):
        assert complex(Fraction(uq(k))) == pytest.approx(uc(k), abs=1e-9)
