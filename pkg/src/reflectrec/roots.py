"""Simultaneous polynomial root finding (Aberth-Ehrlich).

Small and self-contained: we only ever need the roots of low-degree
characteristic polynomials with nonzero constant term, so a plain
Aberth iteration from a staggered circle of starting points is plenty.
No polishing pass, no scaling tricks -- the stopping rule is a relative
step bound, and failure to settle within the iteration cap is reported
as NoConvergence rather than papered over.
"""

from __future__ import annotations

import cmath

from .errors import NoConvergence

__all__ = ["aberth"]

_MAX_ITER = 200
_STEP_TOL = 1e-10


def _poly_and_derivative(coeffs: list[complex], z: complex) -> tuple[complex, complex]:
    """Horner evaluation of p(z) and p'(z); coeffs are a_0..a_n."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs: list[complex]) -> list[complex]:
    """All n roots (with multiplicity) of sum_l coeffs[l] z^l, degree >= 1."""
    coeffs = [complex(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial must have degree at least 1")
    lead = coeffs[-1]

    # Staggered starting circle: radius a crude root bound, irrational-ish
    # angular offset so no starting point sits on an axis of symmetry.
    radius = 1.0 + max(abs(c / lead) for c in coeffs[:-1])
    z = [
        radius * cmath.exp(2j * cmath.pi * (i + 0.353) / n)
        for i in range(n)
    ]

    for _ in range(_MAX_ITER):
        done = True
        for i in range(n):
            p, dp = _poly_and_derivative(coeffs, z[i])
            if p == 0:
                continue
            if dp == 0:
                # perturb off the stationary point and retry next sweep
                z[i] += 1e-6 * (1 + abs(z[i]))
                done = False
                continue
            newton = p / dp
            repulsion = sum(
                1 / (z[i] - z[j]) for j in range(n) if j != i and z[j] != z[i]
            )
            denom = 1 - newton * repulsion
            step = newton if denom == 0 else newton / denom
            z[i] -= step
            if abs(step) > _STEP_TOL * (1 + abs(z[i])):
                done = False
        if done:
            return z
    raise NoConvergence(f"root iteration did not settle within {_MAX_ITER} sweeps")
