"""Scalar backends and operation counting.

Two backends are supported: ``exact`` (Python ints and
:class:`fractions.Fraction`, always canonical) and ``float`` (IEEE binary64).
Kernels work on raw Python numbers for speed and tally arithmetic on an
:class:`OpCounter`; :class:`Scalar` is the checked, backend-tagged value used
at API boundaries.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import BackendMismatchError

Number = Union[int, Fraction, float]


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"

    def coerce(self, x) -> Number:
        """Explicitly convert ``x`` into this backend's number type."""
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if self is Backend.EXACT:
            if isinstance(x, float):
                if not math.isfinite(x):
                    raise ValueError(f"cannot represent {x!r} exactly")
                return Fraction(x)
            if isinstance(x, Rational):
                return x if isinstance(x, (int, Fraction)) else Fraction(x)
            raise TypeError(f"not a rational number: {x!r}")
        if isinstance(x, (int, float, Rational)):
            return float(x)
        raise TypeError(f"not a real number: {x!r}")

    def zero(self) -> Number:
        return 0 if self is Backend.EXACT else 0.0

    def one(self) -> Number:
        return 1 if self is Backend.EXACT else 1.0

    def div(self, a: Number, b: Number) -> Number:
        # int / int would silently produce a float
        if self is Backend.EXACT:
            return Fraction(a) / b
        return a / b

    def canonical(self, x: Number) -> Number:
        """Exact values come back as Fraction, floats as float."""
        return Fraction(x) if self is Backend.EXACT else float(x)

    def format(self, x: Number) -> str:
        return format_value(x, self)


def infer_backend(values: Iterable) -> Backend:
    """Float if any value is a float, else exact.

    Mixing floats with non-integral rationals is rejected rather than coerced.
    """
    has_float = has_fraction = False
    for v in values:
        if isinstance(v, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(v, float):
            has_float = True
        elif isinstance(v, int):
            pass
        elif isinstance(v, Rational):
            if v.denominator != 1:
                has_fraction = True
        else:
            raise TypeError(f"unsupported scalar type: {type(v).__name__}")
    if has_float and has_fraction:
        raise BackendMismatchError("values mix floats and exact fractions")
    return Backend.FLOAT if has_float else Backend.EXACT


def format_value(x: Number, backend: Backend) -> str:
    """``p/q`` (or ``p``) for exact values, shortest round-trip repr for floats."""
    if backend is Backend.EXACT:
        return str(Fraction(x))
    return repr(float(x))


@dataclass
class OpCounter:
    """Tallies of multiplications/divisions and additions/subtractions."""

    mul_div: int = 0
    add_sub: int = 0

    def mul(self, n: int = 1) -> None:
        self.mul_div += n

    def add(self, n: int = 1) -> None:
        self.add_sub += n

    def absorb(self, other: OpCounter) -> None:
        self.mul_div += other.mul_div
        self.add_sub += other.add_sub

    def as_dict(self) -> dict:
        return {"mul_div": self.mul_div, "add_sub": self.add_sub}


def counter_merge(parts: Iterable[OpCounter]) -> OpCounter:
    total = OpCounter()
    for p in parts:
        total.absorb(p)
    return total


@dataclass(frozen=True)
class Scalar:
    value: Number
    backend: Backend

    def __post_init__(self):
        object.__setattr__(self, "value", self.backend.canonical(self.backend.coerce(self.value)))

    @classmethod
    def exact(cls, x) -> Scalar:
        return cls(x if not isinstance(x, str) else Fraction(x), Backend.EXACT)

    @classmethod
    def floating(cls, x) -> Scalar:
        return cls(x, Backend.FLOAT)

    def __str__(self) -> str:
        return format_value(self.value, self.backend)


def _check(a: Scalar, b: Scalar) -> Backend:
    if a.backend is not b.backend:
        raise BackendMismatchError(f"cannot combine {a.backend.value} and {b.backend.value} scalars")
    return a.backend


def scalar_add(a: Scalar, b: Scalar, counter: OpCounter | None = None) -> Scalar:
    backend = _check(a, b)
    if counter is not None:
        counter.add()
    return Scalar(a.value + b.value, backend)


def scalar_sub(a: Scalar, b: Scalar, counter: OpCounter | None = None) -> Scalar:
    backend = _check(a, b)
    if counter is not None:
        counter.add()
    return Scalar(a.value - b.value, backend)


def scalar_mul(a: Scalar, b: Scalar, counter: OpCounter | None = None) -> Scalar:
    backend = _check(a, b)
    if counter is not None:
        counter.mul()
    return Scalar(a.value * b.value, backend)


def scalar_div(a: Scalar, b: Scalar, counter: OpCounter | None = None) -> Scalar:
    backend = _check(a, b)
    if b.value == 0:
        raise ZeroDivisionError("scalar division by zero")
    if counter is not None:
        counter.mul()
    return Scalar(backend.div(a.value, b.value), backend)
