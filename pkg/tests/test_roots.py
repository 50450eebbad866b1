"""Root finding for characteristic polynomials."""

import math
import random
from fractions import Fraction

import pytest

from reflectrec import COMPLEX, RecurrenceOperator, characteristic_roots
from reflectrec.roots import aberth


def assert_root_set(got, expected, tol=1e-9):
    assert len(got) == len(expected)
    rest = list(got)
    for w in expected:
        best = min(rest, key=lambda z: abs(z - w))
        assert abs(best - w) < tol, (w, best)
        rest.remove(best)


def test_aberth_linear():
    assert_root_set(aberth([-6, 2]), [3.0])


def test_aberth_known_factorization():
    # (z - 1)(z - 2)(z + 4) = z^3 + z^2 - 10 z + 8
    assert_root_set(aberth([8, -10, 1, 1]), [1.0, 2.0, -4.0])


def test_aberth_complex_pair():
    # z^2 + 1
    assert_root_set(aberth([1, 0, 1]), [1j, -1j])


def test_aberth_random_products():
    rng = random.Random(5150)
    for _ in range(15):
        roots = [complex(rng.randint(-5, 5), rng.randint(-3, 3)) for _ in range(rng.randint(2, 5))]
        # avoid near-coincident pairs; clustering has its own test
        if min(
            (abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :]),
            default=1.0,
        ) < 1e-3:
            continue
        coeffs = [1.0 + 0j]
        for r in roots:
            coeffs = [0j] + coeffs
            coeffs = [coeffs[i] - r * (coeffs[i + 1] if i + 1 < len(coeffs) else 0) for i in range(len(coeffs))]
        # coeffs now holds prod (z - r) in ascending order
        assert_root_set(aberth(coeffs), roots, tol=1e-6)


def test_aberth_rejects_constants():
    with pytest.raises(ValueError):
        aberth([5])


def test_characteristic_roots_golden_pair():
    # z^2 + 7 z + 1: roots (-7 +- 3 sqrt 5)/2
    S = RecurrenceOperator(COMPLEX, (complex(1), complex(7), complex(1)))
    cr = characteristic_roots(S)
    s5 = math.sqrt(5.0)
    assert_root_set(list(cr.roots), [(-7 - 3 * s5) / 2, (-7 + 3 * s5) / 2])
    assert cr.multiplicities == (1, 1)


def test_characteristic_roots_clusters_double_root():
    # (z - 2)^2 = z^2 - 4 z + 4
    S = RecurrenceOperator(COMPLEX, (complex(4), complex(-4), complex(1)))
    cr = characteristic_roots(S)
    assert cr.multiplicities == (2,)
    assert abs(cr.roots[0] - 2) < 1e-6


def test_root_basis_solves_recurrence():
    S = RecurrenceOperator(COMPLEX, (complex(4), complex(-4), complex(1)))
    cr = characteristic_roots(S)
    basis = cr.basis()
    assert len(basis) == 2  # 2^k and k 2^k
    a = S.coeffs
    for y in basis:
        for k in range(-6, 7):
            acc = sum(a[l] * y(k + l) for l in range(3))
            assert abs(acc) < 1e-7 * max(1.0, abs(y(k)))
