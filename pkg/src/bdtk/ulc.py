"""Uniformly locally constant functions on Z/SZ.

A UlcFunction is a period-l function stored as one period of values; the
period must divide the ambient supernatural number whenever one is in play.
Every constructor reduces to the minimal period so that structural equality
is canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Supernatural, sn_divides
from .scalars import Scalar, FLOAT_EQ_TOL


@dataclass(frozen=True, eq=False)
class UlcFunction:
    period: int
    values: tuple[Scalar, ...]

    @property
    def is_exact(self) -> bool:
        return all(v.is_exact for v in self.values)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __repr__(self) -> str:
        return f"UlcFunction(l={self.period}, {list(self.values)})"


def ulc(values, period: int | None = None) -> UlcFunction:
    """Build a ULC function from one period of values (minimal-period form)."""
    vals = tuple(Scalar.from_number(v) for v in values)
    if period is not None and period != len(vals):
        raise ValueError("period does not match number of values")
    l = len(vals)
    if l == 0:
        raise ValueError("need at least one value")
    for d in range(1, l + 1):
        if l % d == 0 and all(vals[r].identical(vals[r % d]) for r in range(l)):
            return UlcFunction(d, vals[:d])
    return UlcFunction(l, vals)


def ulc_const(z) -> UlcFunction:
    return ulc([z])


def ulc_zero() -> UlcFunction:
    return ulc([0])


def ulc_eval(f: UlcFunction, k: int) -> Scalar:
    """f(k) with the integer k regarded in Z/SZ (Euclidean remainder)."""
    return f.values[k % f.period]


def ulc_shift(f: UlcFunction, m: int) -> UlcFunction:
    """f composed with m odometer steps: (f o phi^m)(x) = f(x + m)."""
    l = f.period
    return UlcFunction(l, tuple(f.values[(r + m) % l] for r in range(l)))


def ulc_refine(f: UlcFunction, l: int) -> tuple[Scalar, ...]:
    """Values of f listed over a period l that f.period divides."""
    if l % f.period:
        raise ValueError("refinement target must be a multiple of the period")
    return tuple(f.values[r % f.period] for r in range(l))


def _common_period(f: UlcFunction, g: UlcFunction, S: Supernatural | None) -> int:
    l = f.period * g.period // math.gcd(f.period, g.period)
    if S is not None and not sn_divides(l, S):
        raise ValueError(f"combined period {l} does not divide the ambient S")
    return l


def ulc_add(f: UlcFunction, g: UlcFunction, S: Supernatural | None = None) -> UlcFunction:
    l = _common_period(f, g, S)
    fv, gv = ulc_refine(f, l), ulc_refine(g, l)
    return ulc([a + b for a, b in zip(fv, gv)])


def ulc_mul(f: UlcFunction, g: UlcFunction, S: Supernatural | None = None) -> UlcFunction:
    l = _common_period(f, g, S)
    fv, gv = ulc_refine(f, l), ulc_refine(g, l)
    return ulc([a * b for a, b in zip(fv, gv)])


def ulc_conj(f: UlcFunction) -> UlcFunction:
    return ulc([v.conj() for v in f.values])


def ulc_scale(z, f: UlcFunction) -> UlcFunction:
    z = Scalar.from_number(z)
    return ulc([z * v for v in f.values])


def ulc_pointwise(op: str, f: UlcFunction, g=None, S: Supernatural | None = None) -> UlcFunction:
    """Dispatcher for the pointwise algebra: op in {add, mul, conj, scale}."""
    if op == "add":
        return ulc_add(f, g, S)
    if op == "mul":
        return ulc_mul(f, g, S)
    if op == "conj":
        return ulc_conj(f)
    if op == "scale":
        return ulc_scale(g, f)
    raise ValueError(f"unknown pointwise op {op!r}")


def ulc_sup_norm(f: UlcFunction) -> float:
    """sup |f| over Z/SZ, computed in floating point."""
    return max(abs(v) for v in f.values)


def ulc_character(l: int, j: int, exact: bool = False) -> UlcFunction:
    """The character x -> e^{2 pi i j x / l} at level l.

    By default the values are float-tagged.  exact=True stores them as exact
    roots of unity, which the derivation-reconstruction machinery needs in
    order to recover matrix coefficients exactly.
    """
    if l < 1:
        raise ValueError("level must be positive")
    if exact:
        return ulc([Scalar.root_of_unity(j * r, l) for r in range(l)])
    import cmath

    return ulc([Scalar.from_complex(cmath.exp(2j * cmath.pi * j * r / l)) for r in range(l)])


def ulc_equal(f: UlcFunction, g: UlcFunction, tol: float = FLOAT_EQ_TOL) -> bool:
    """Equality: structural when both sides are exact, tolerance otherwise."""
    l = f.period * g.period // math.gcd(f.period, g.period)
    fv, gv = ulc_refine(f, l), ulc_refine(g, l)
    if f.is_exact and g.is_exact:
        return all(a == b for a, b in zip(fv, gv))
    return all(abs(a.to_complex() - b.to_complex()) <= tol for a, b in zip(fv, gv))
