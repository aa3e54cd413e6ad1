"""Independent oracles used by the tests: truncated-window linear algebra and
power-series summation, kept apart from the library's own computation paths."""

from __future__ import annotations

import math

from bdtk.bd import (
    BdElement,
    bd_add,
    bd_element,
    bd_mul,
    bd_one,
    bd_scale,
    bd_sup_coefficient_norm,
)
from bdtk.bdt import bdt_truncate, toeplitz
from bdtk.scalars import Scalar
from bdtk.sparse import ScalarMatrix
from bdtk.ulc import ulc_eval


def window_matrix(b: BdElement, lo: int, hi: int) -> ScalarMatrix:
    """Two-sided window matrix built directly from the band functions."""
    ent = {}
    for n, f in b.bands.items():
        for s in range(lo, hi):
            k = s + n
            if lo <= k < hi:
                v = ulc_eval(f, s)
                if not v.is_zero():
                    ent[(k, s)] = v
    return ScalarMatrix(ent)


def toeplitz_product_window(b1: BdElement, b2: BdElement, window: int) -> ScalarMatrix:
    """T(b1) T(b2) restricted to [0, window)^2, exactly (padding absorbs the
    truncation boundary)."""
    pad = b1.bandwidth + b2.bandwidth + 1
    N = window + pad
    t1 = bdt_truncate(toeplitz(b1), N)
    t2 = bdt_truncate(toeplitz(b2), N)
    return t1.matmul(t2).restrict(range(window), range(window))


def exp_power_series(b: BdElement, terms: int | None = None) -> tuple[BdElement, float]:
    """e^{ib} summed as a power series, with the rigorous tail bound
    ||b||^{K+1}/(K+1)! * e^{||b||} (using the coefficient-mass upper bound for
    ||b||)."""
    S = b.S
    nrm = bd_sup_coefficient_norm(b) * (2 * b.bandwidth + 1)
    if terms is None:
        terms = max(24, int(3 * nrm) + 20)
    ib = bd_scale(Scalar.from_complex(1j), b)
    acc = bd_one(S)
    term = bd_one(S)
    for k in range(1, terms + 1):
        term = bd_scale(1.0 / k, bd_mul(term, ib))
        acc = bd_add(acc, term)
    tail = nrm ** (terms + 1) / math.factorial(terms + 1) * math.exp(nrm)
    return acc, tail
