"""Bi-infinite sequences and the elementary operators that act on them.

A `Seq` is a total function Z -> value, where a value is either a field
scalar or a fixed-width tuple of field scalars (the vector-valued case used
by first-order systems).  Evaluations are memoized, so a sequence defined by
a recursion rule is cheap to sample repeatedly on a window.

Sequences built from finite index/value lists carry their support set, which
downstream solvers use to keep Green's-function sums finite.  Operators that
preserve finite support (shift, reflect, projections, linear combinations)
propagate it; rule-backed sequences have `support = None` ("unknown").

The operator zoo:

    shift(u, j)(k)  = u(k + j)          D = shift by +1
    reflect(u)(k)   = u(-k)             the pullback of k -> -k
    project_even / project_odd          keep only even / odd indices
    even_part / odd_part                (u(k) +- u(-k)) / 2
    alternate_signs(u)(k) = (-1)^k u(k)

These satisfy, pointwise on any window: E+O = Id, EO = OE = 0, ED = DO,
OD = DE; even_part + odd_part = Id; reflect o shift(.,1) = shift(.,-1) o
reflect.  Note that even_part does NOT intertwine with shift the way E does
-- see the tests for the documented non-identities.
"""

from __future__ import annotations

import threading
from typing import Any, Callable, Iterable

from .field import FieldSpec

__all__ = [
    "Seq",
    "from_pairs",
    "delta",
    "zero_seq",
    "constant",
    "from_rule",
    "shift",
    "reflect",
    "seq_add",
    "seq_sub",
    "seq_scale",
    "seq_neg",
    "project_even",
    "project_odd",
    "even_part",
    "odd_part",
    "alternate_signs",
    "window_values",
    "seq_equal",
]


def _is_vector(value: Any) -> bool:
    return isinstance(value, tuple)


def _vadd(a: Any, b: Any) -> Any:
    if _is_vector(a):
        assert _is_vector(b) and len(a) == len(b)
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _vscale(c: Any, a: Any) -> Any:
    if _is_vector(a):
        return tuple(c * x for x in a)
    return c * a


class Seq:
    """A memoized total sequence over Z."""

    __slots__ = ("field", "_fn", "_cache", "_lock", "support", "width")

    def __init__(
        self,
        field: FieldSpec,
        fn: Callable[[int], Any],
        support: frozenset[int] | None = None,
        width: int | None = None,
    ):
        self.field = field
        self._fn = fn
        self._cache: dict[int, Any] = {}
        self._lock = threading.Lock()
        self.support = support
        self.width = width  # None = scalar-valued, n = vectors of length n

    def __call__(self, k: int) -> Any:
        cached = self._cache.get(k)
        if cached is not None:
            return cached
        if self.support is not None and k not in self.support:
            return self._zero_value()
        with self._lock:
            if k not in self._cache:
                self._cache[k] = self._fn(k)
            return self._cache[k]

    def _zero_value(self) -> Any:
        if self.width is None:
            return self.field.zero
        return tuple(self.field.zero for _ in range(self.width))

    @property
    def finitely_supported(self) -> bool:
        return self.support is not None

    def support_indices(self) -> list[int]:
        """Sorted support, for finitely supported sequences only."""
        assert self.support is not None, "sequence has unknown support"
        return sorted(self.support)


def from_pairs(
    field: FieldSpec,
    pairs: Iterable[tuple[int, Any]],
    width: int | None = None,
) -> Seq:
    """Finite-support sequence from (index, value) pairs.

    Duplicate indices are rejected; exact zeros are dropped from the support.
    """
    table: dict[int, Any] = {}
    for k, v in pairs:
        if k in table:
            raise ValueError(f"duplicate index {k} in sequence data")
        if width is not None and not _is_vector(v):
            raise ValueError(f"expected a width-{width} vector value at {k}")
        if _is_vector(v):
            if width is None:
                width = len(v)
            if len(v) != width:
                raise ValueError(f"inconsistent vector width at index {k}")
            if all(x == field.zero for x in v):
                continue
        elif v == field.zero:
            continue
        table[k] = v
    return Seq(
        field,
        lambda k: table[k],
        support=frozenset(table),
        width=width,
    )


def delta(field: FieldSpec, at: int = 0, value: Any = None) -> Seq:
    """The Kronecker sequence: `value` (default 1) at index `at`, else 0."""
    return from_pairs(field, [(at, field.one if value is None else value)])


def zero_seq(field: FieldSpec, width: int | None = None) -> Seq:
    return from_pairs(field, [], width=width)


def constant(field: FieldSpec, value: Any) -> Seq:
    return Seq(field, lambda k: value)


def from_rule(field: FieldSpec, fn: Callable[[int], Any], width: int | None = None) -> Seq:
    return Seq(field, fn, width=width)


def shift(u: Seq, j: int) -> Seq:
    """shift(u, j)(k) = u(k + j).  shift(., 1) is the right-shift D."""
    support = None if u.support is None else frozenset(s - j for s in u.support)
    return Seq(u.field, lambda k: u(k + j), support=support, width=u.width)


def reflect(u: Seq) -> Seq:
    """reflect(u)(k) = u(-k); an involution."""
    support = None if u.support is None else frozenset(-s for s in u.support)
    return Seq(u.field, lambda k: u(-k), support=support, width=u.width)


def seq_add(u: Seq, v: Seq) -> Seq:
    assert u.field is v.field and u.width == v.width
    support = None
    if u.support is not None and v.support is not None:
        support = u.support | v.support
    return Seq(u.field, lambda k: _vadd(u(k), v(k)), support=support, width=u.width)


def seq_scale(c: Any, u: Seq) -> Seq:
    return Seq(u.field, lambda k: _vscale(c, u(k)), support=u.support, width=u.width)


def seq_neg(u: Seq) -> Seq:
    return seq_scale(-u.field.one, u)


def seq_sub(u: Seq, v: Seq) -> Seq:
    return seq_add(u, seq_neg(v))


def project_even(u: Seq) -> Seq:
    """Keep entries at even indices, zero elsewhere."""
    support = None if u.support is None else frozenset(s for s in u.support if s % 2 == 0)
    zero = u.field.zero
    return Seq(
        u.field,
        lambda k: u(k) if k % 2 == 0 else (_vscale(zero, u(k)) if u.width else zero),
        support=support,
        width=u.width,
    )


def project_odd(u: Seq) -> Seq:
    """Keep entries at odd indices, zero elsewhere."""
    support = None if u.support is None else frozenset(s for s in u.support if s % 2 != 0)
    zero = u.field.zero
    return Seq(
        u.field,
        lambda k: u(k) if k % 2 != 0 else (_vscale(zero, u(k)) if u.width else zero),
        support=support,
        width=u.width,
    )


def even_part(u: Seq) -> Seq:
    """(u(k) + u(-k)) / 2: the reflection-symmetric component."""
    half = u.field.inv(u.field.from_int(2))
    support = None if u.support is None else u.support | frozenset(-s for s in u.support)
    return Seq(
        u.field,
        lambda k: _vscale(half, _vadd(u(k), u(-k))),
        support=support,
        width=u.width,
    )


def odd_part(u: Seq) -> Seq:
    """(u(k) - u(-k)) / 2: the reflection-antisymmetric component."""
    half = u.field.inv(u.field.from_int(2))
    support = None if u.support is None else u.support | frozenset(-s for s in u.support)
    return Seq(
        u.field,
        lambda k: _vscale(half, _vadd(u(k), _vscale(-u.field.one, u(-k)))),
        support=support,
        width=u.width,
    )


def alternate_signs(u: Seq) -> Seq:
    """(-1)^k u(k); an involution that anticommutes with shift."""
    one = u.field.one
    return Seq(
        u.field,
        lambda k: u(k) if k % 2 == 0 else _vscale(-one, u(k)),
        support=u.support,
        width=u.width,
    )


def window_values(u: Seq, kmin: int, kmax: int) -> list[Any]:
    """[u(kmin), ..., u(kmax)] inclusive."""
    assert kmin <= kmax
    return [u(k) for k in range(kmin, kmax + 1)]


def seq_equal(u: Seq, v: Seq, kmin: int, kmax: int, tol: float | None = None) -> bool:
    """Pointwise equality on a window (field tolerance rules apply)."""
    fld = u.field
    for k in range(kmin, kmax + 1):
        a, b = u(k), v(k)
        if _is_vector(a) != _is_vector(b):
            return False
        if _is_vector(a):
            if len(a) != len(b) or not all(fld.eq(x, y, tol) for x, y in zip(a, b)):
                return False
        elif not fld.eq(a, b, tol):
            return False
    return True
