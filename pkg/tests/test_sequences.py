"""Sequence layer: construction, support tracking, and the projection zoo."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflectrec import (
    COMPLEX,
    RATIONAL,
    alternate_signs,
    delta,
    even_part,
    from_pairs,
    from_rule,
    odd_part,
    project_even,
    project_odd,
    reflect,
    seq_add,
    seq_equal,
    seq_scale,
    seq_sub,
    shift,
    window_values,
    zero_seq,
)


def fr(p, q=1):
    return Fraction(p, q)


# === construction and support ===


def test_from_pairs_drops_zeros_and_rejects_duplicates():
    u = from_pairs(RATIONAL, [(0, fr(1)), (3, fr(0)), (-2, fr(5))])
    assert u.support == {0, -2}
    assert u(3) == 0 and u(100) == 0
    with pytest.raises(ValueError):
        from_pairs(RATIONAL, [(1, fr(1)), (1, fr(2))])


def test_delta_and_window():
    d = delta(RATIONAL, at=2)
    assert window_values(d, 0, 4) == [0, 0, 1, 0, 0]


def test_rule_backed_sequence_is_memoized():
    calls = []

    def fn(k):
        calls.append(k)
        return Fraction(k * k)

    u = from_rule(RATIONAL, fn)
    assert u(5) == 25 and u(5) == 25
    assert calls.count(5) == 1


def test_vector_sequences_zero_fill():
    u = from_pairs(RATIONAL, [(1, (fr(1), fr(2)))], width=2)
    assert u(1) == (1, 2)
    assert u(0) == (0, 0)


# === shift / reflect ===


def test_shift_is_the_right_shift():
    u = from_pairs(RATIONAL, [(0, fr(7))])
    assert shift(u, 1)(-1) == 7  # (Du)(k) = u(k+1)
    assert shift(u, 1).support == {-1}


def test_reflect_involution_and_support():
    u = from_pairs(RATIONAL, [(2, fr(1)), (-1, fr(4))])
    assert reflect(reflect(u))(2) == u(2)
    assert reflect(u).support == {-2, 1}


def test_reflect_shift_intertwine():
    # phi* D = D^-1 phi*, pointwise
    u = from_pairs(RATIONAL, [(k, fr(k + 10)) for k in range(-3, 4)])
    lhs = reflect(shift(u, 1))
    rhs = shift(reflect(u), -1)
    assert seq_equal(lhs, rhs, -6, 6)


# === projections ===

rational_seqs = st.lists(
    st.tuples(st.integers(-20, 20), st.fractions(min_value=-10, max_value=10)),
    min_size=0,
    max_size=12,
    unique_by=lambda t: t[0],
).map(lambda pairs: from_pairs(RATIONAL, pairs))


@settings(max_examples=60, deadline=None)
@given(rational_seqs)
def test_even_odd_projection_split(u):
    E, O = project_even(u), project_odd(u)
    assert seq_equal(seq_add(E, O), u, -20, 20)
    assert seq_equal(project_odd(E), zero_seq(RATIONAL), -20, 20)
    # idempotence
    assert seq_equal(project_even(E), E, -20, 20)


@settings(max_examples=60, deadline=None)
@given(rational_seqs)
def test_index_projections_intertwine_with_shift(u):
    # E D = D O and O D = D E
    D = lambda v: shift(v, 1)
    assert seq_equal(project_even(D(u)), D(project_odd(u)), -20, 20)
    assert seq_equal(project_odd(D(u)), D(project_even(u)), -20, 20)


@settings(max_examples=60, deadline=None)
@given(rational_seqs)
def test_symmetric_parts_split_and_absorb_reflection(u):
    Eb, Ob = even_part(u), odd_part(u)
    assert seq_equal(seq_add(Eb, Ob), u, -20, 20)
    assert seq_equal(even_part(reflect(u)), Eb, -20, 20)
    assert seq_equal(odd_part(reflect(u)), seq_scale(fr(-1), Ob), -20, 20)
    # both parts have the advertised symmetry
    assert seq_equal(reflect(Eb), Eb, -20, 20)
    assert seq_equal(reflect(Ob), seq_scale(fr(-1), Ob), -20, 20)


def test_symmetric_parts_do_NOT_intertwine_like_index_projections():
    """even_part(D u) != D(odd_part u) in general; delta at 0 is a witness."""
    d = delta(RATIONAL)
    lhs = even_part(shift(d, 1))
    rhs = shift(odd_part(d), 1)
    assert not seq_equal(lhs, rhs, -3, 3)
    lhs2 = odd_part(shift(d, 1))
    rhs2 = shift(even_part(d), 1)
    assert not seq_equal(lhs2, rhs2, -3, 3)


@settings(max_examples=60, deadline=None)
@given(rational_seqs)
def test_sign_alternation_involution_anticommutes(u):
    L = alternate_signs
    assert seq_equal(L(L(u)), u, -20, 20)
    lhs = L(shift(u, 1))
    rhs = seq_scale(fr(-1), shift(L(u), 1))
    assert seq_equal(lhs, rhs, -20, 20)


def test_complex_half_in_even_part():
    u = from_pairs(COMPLEX, [(1, 3 + 1j)])
    assert even_part(u)(1) == (3 + 1j) / 2
    assert even_part(u)(-1) == (3 + 1j) / 2


def test_seq_sub_and_equality_tolerance():
    u = from_pairs(COMPLEX, [(0, 1.0 + 0j)])
    v = from_pairs(COMPLEX, [(0, 1.0 + 1e-12j)])
    assert seq_equal(u, v, -2, 2)  # default tolerance absorbs 1e-12
    assert not seq_equal(u, seq_sub(u, v), -2, 2)
