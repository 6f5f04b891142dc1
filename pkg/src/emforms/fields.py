"""Scalar fields over 4-coordinate events with exact partial derivatives.

A :class:`ScalarField` wraps a callable of one event ``(x0, x1, x2, x3)``.
The callable must be written in terms of the :mod:`emforms.dual`
elementary functions (or plain arithmetic), so that partial derivatives
come out of a dual-number pass exactly, not from finite differences.

Fields close under arithmetic. Constants are folded so that the zero
constant stays structurally recognisable: form containers drop
structurally zero components, and numeric zero is never inferred from
sampling.
"""

from __future__ import annotations

from typing import Callable, Sequence

from . import dual
from .dual import Dual, real

Event = Sequence[float]


class ScalarField:
    """Real-valued function of an event, differentiable by dual numbers."""

    __slots__ = ("fn", "const")

    def __init__(self, fn: Callable, const: float | None = None):
        self.fn = fn
        self.const = const

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(value: float) -> "ScalarField":
        v = float(value)
        return ScalarField(lambda event: v, const=v)

    @staticmethod
    def zero() -> "ScalarField":
        return ZERO

    @staticmethod
    def one() -> "ScalarField":
        return ONE

    @staticmethod
    def coordinate(axis: int) -> "ScalarField":
        if axis not in (0, 1, 2, 3):
            raise ValueError(f"coordinate axis must be 0..3, got {axis}")
        return ScalarField(lambda event: event[axis])

    # -- evaluation ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.const == 0.0

    def __call__(self, event):
        # dual-friendly entry point; events may carry Dual coordinates
        return self.fn(event)

    def eval(self, event: Event) -> float:
        return float(real(self.fn(event)))

    def partial(self, axis: int, event: Event) -> float:
        tag = dual.fresh_tag()
        seeded = list(event)
        seeded[axis] = Dual(seeded[axis], 1.0, tag)
        return float(real(dual.extract(self.fn(seeded), tag)))

    def partials(self, event: Event) -> tuple[float, float, float, float]:
        return tuple(self.partial(axis, event) for axis in range(4))

    def partial_field(self, axis: int) -> "ScalarField":
        """The partial derivative along one axis, as a field."""
        if self.const is not None:
            return ZERO
        fn = self.fn

        def dfn(event):
            tag = dual.fresh_tag()
            seeded = list(event)
            seeded[axis] = Dual(seeded[axis], 1.0, tag)
            return dual.extract(fn(seeded), tag)

        return ScalarField(dfn)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.const is not None and other.const is not None:
            return ScalarField.constant(self.const + other.const)
        f, g = self.fn, other.fn
        return ScalarField(lambda event: f(event) + g(event))

    __radd__ = __add__

    def __neg__(self):
        if self.const is not None:
            return ScalarField.constant(-self.const)
        f = self.fn
        return ScalarField(lambda event: -f(event))

    def __sub__(self, other):
        return self + (-coerce(other))

    def __rsub__(self, other):
        return coerce(other) + (-self)

    def __mul__(self, other):
        other = coerce(other)
        if self.is_zero or other.is_zero:
            return ZERO
        if self.const is not None and other.const is not None:
            return ScalarField.constant(self.const * other.const)
        if self.const == 1.0:
            return other
        if other.const == 1.0:
            return self
        f, g = self.fn, other.fn
        return ScalarField(lambda event: f(event) * g(event))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = coerce(other)
        if other.const is not None:
            return self * (1.0 / other.const)
        if self.is_zero:
            return ZERO
        f, g = self.fn, other.fn
        return ScalarField(lambda event: f(event) / g(event))

    def __rtruediv__(self, other):
        other = coerce(other)
        if other.is_zero:
            return ZERO
        f, g = other.fn, self.fn
        return ScalarField(lambda event: f(event) / g(event))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("fields support non-negative integer powers only")
        if n == 0:
            return ONE
        if self.const is not None:
            return ScalarField.constant(self.const**n)
        f = self.fn
        return ScalarField(lambda event: f(event) ** n)


ZERO = ScalarField(lambda event: 0.0, const=0.0)
ONE = ScalarField(lambda event: 1.0, const=1.0)


def coerce(x) -> ScalarField:
    if isinstance(x, ScalarField):
        return x
    if isinstance(x, (int, float)):
        return ScalarField.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a scalar field")


def _lift(mf, df):
    """Wrap a dual-aware unary function as a field transformer."""

    def apply(field) -> ScalarField:
        field = coerce(field)
        if field.const is not None:
            return ScalarField.constant(mf(field.const))
        f = field.fn
        return ScalarField(lambda event: df(f(event)))

    return apply


import math as _math  # noqa: E402  (constant folding only)

sin = _lift(_math.sin, dual.sin)
cos = _lift(_math.cos, dual.cos)
tan = _lift(_math.tan, dual.tan)
exp = _lift(_math.exp, dual.exp)
log = _lift(_math.log, dual.log)
sqrt = _lift(_math.sqrt, dual.sqrt)
absolute = _lift(_math.fabs, abs)
