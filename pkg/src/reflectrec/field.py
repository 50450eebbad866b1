"""The two concrete scalar fields: exact rationals and double-precision complex.

A FieldSpec bundles the handful of policy choices that differ between the two
(zero test, equality, parsing, rendering) so the algebra layers can stay
field-generic.  Rational arithmetic is exact `fractions.Fraction`; complex
arithmetic is the builtin `complex` with a combined absolute-plus-relative
tolerance for comparisons (default 1e-9, overridable per call).

Characteristic-2 fields are deliberately unsupported: the even/odd projection
operators divide by 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

__all__ = ["FieldSpec", "RATIONAL", "COMPLEX", "DEFAULT_TOL"]

DEFAULT_TOL = 1e-9

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def _parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def _render_complex(z: complex) -> str:
    # %.12g is stable and compact; the sign of the imaginary part is always
    # written so the output round-trips unambiguously.
    re_part = f"{z.real:.12g}"
    im_part = f"{abs(z.imag):.12g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{re_part}{sign}{im_part}i"


@dataclass(frozen=True)
class FieldSpec:
    """Policy object for one scalar field."""

    name: str
    zero: Any
    one: Any
    exact: bool
    coerce: Callable[[Any], Any]
    parse: Callable[[str], Any]
    render: Callable[[Any], str]

    def from_int(self, n: int) -> Any:
        return self.coerce(n)

    def is_zero(self, x: Any, tol: float | None = None) -> bool:
        if self.exact:
            return x == 0
        t = DEFAULT_TOL if tol is None else tol
        return abs(x) <= t

    def eq(self, a: Any, b: Any, tol: float | None = None) -> bool:
        if self.exact:
            return a == b
        t = DEFAULT_TOL if tol is None else tol
        return abs(a - b) <= t * (1.0 + max(abs(a), abs(b)))

    def inv(self, x: Any) -> Any:
        if self.exact:
            return Fraction(1, 1) / x
        return 1.0 / x

    def abs(self, x: Any):
        return abs(x)


RATIONAL = FieldSpec(
    name="rational",
    zero=Fraction(0),
    one=Fraction(1),
    exact=True,
    coerce=lambda v: v if isinstance(v, Fraction) else Fraction(v),
    parse=_parse_rational,
    render=lambda x: str(x),
)

COMPLEX = FieldSpec(
    name="complex",
    zero=complex(0.0),
    one=complex(1.0),
    exact=False,
    coerce=lambda v: complex(v),
    parse=lambda s: complex(s.replace("i", "j")),
    render=_render_complex,
)
