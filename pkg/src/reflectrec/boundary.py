"""Boundary functionals: finite linear combinations of point evaluations,
optionally pre-composed with a reflection operator.

    W(u) = sum_t  weight_t * (pre_t u)(index_t)

This is deliberately a small subset of all linear functionals on solution
spaces -- finite combinations are always defined on any total sequence, so
expressions like W(H c) need no well-definedness caveats.  For vector-valued
sequences the weight is a row vector (tuple) and the term contributes its dot
product with the evaluated vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .operators import ReflectionOperator, op_apply
from .sequences import Seq

__all__ = ["PointTerm", "BoundaryFunctional", "evaluation_at"]


@dataclass(frozen=True)
class PointTerm:
    weight: Any  # scalar, or tuple row-vector for vector sequences
    index: int
    pre: ReflectionOperator | None = None


@dataclass(frozen=True)
class BoundaryFunctional:
    terms: tuple[PointTerm, ...]

    def __call__(self, u: Seq) -> Any:
        total = u.field.zero
        for t in self.terms:
            v = (op_apply(t.pre, u) if t.pre is not None else u)(t.index)
            if isinstance(t.weight, tuple):
                assert isinstance(v, tuple) and len(v) == len(t.weight)
                total = total + sum((w * x for w, x in zip(t.weight, v)), u.field.zero)
            else:
                total = total + t.weight * v
        return total

    def composed_with(self, op: ReflectionOperator) -> "BoundaryFunctional":
        """The functional u -> self(op u).  Nested pre-operators compose."""
        from .operators import op_compose

        new_terms = []
        for t in self.terms:
            pre = op if t.pre is None else op_compose(t.pre, op)
            new_terms.append(PointTerm(t.weight, t.index, pre))
        return BoundaryFunctional(tuple(new_terms))

    def dense_row(self, kmin: int, kmax: int, field, n_comp: int = 1) -> list[Any]:
        """Expand into coefficients over the unknowns u(kmin..kmax).

        Scalar case: one coefficient per index.  Vector case: n_comp
        coefficients per index, laid out index-major.  Raises ValueError if
        any referenced index falls outside [kmin, kmax].
        """
        width = (kmax - kmin + 1) * n_comp
        row = [field.zero] * width

        def add(idx: int, comp: int, coeff: Any):
            if not kmin <= idx <= kmax:
                raise ValueError(f"boundary condition reaches index {idx} outside the window")
            row[(idx - kmin) * n_comp + comp] += coeff

        for t in self.terms:
            weights = t.weight if isinstance(t.weight, tuple) else (t.weight,)
            assert len(weights) == n_comp
            if t.pre is None:
                for comp, w in enumerate(weights):
                    if w != field.zero:
                        add(t.index, comp, w)
            else:
                assert n_comp == 1, "pre-operators are for scalar sequences"
                w = weights[0]
                for e, c in t.pre.reflected.terms():
                    add(-t.index + e, 0, w * c)
                for e, c in t.pre.plain.terms():
                    add(t.index + e, 0, w * c)
        return row

    def reach(self) -> list[int]:
        """All sequence indices the functional reads."""
        out: set[int] = set()
        for t in self.terms:
            if t.pre is None:
                out.add(t.index)
            else:
                for e, _ in t.pre.reflected.terms():
                    out.add(-t.index + e)
                for e, _ in t.pre.plain.terms():
                    out.add(t.index + e)
        return sorted(out)


def evaluation_at(field, index: int, weight: Any = None) -> BoundaryFunctional:
    """The functional u -> u(index) (scalar weight defaults to 1)."""
    return BoundaryFunctional((PointTerm(field.one if weight is None else weight, index),))
