from fractions import Fraction

import pytest

from bdtk import corpus as cp
from bdtk.arith import Supernatural, INF
from bdtk.bd import bd_element, bd_m, bd_v
from bdtk.bdt import bdt_add, bdt_from_compact, bdt_mul, bdt_one, bdt_u, toeplitz
from bdtk.compact import k_scale, k_units
from bdtk.errors import NotFredholmError, NotInvertibleError
from bdtk.index import fredholm_index, k0_demo, winding
from bdtk.scalars import Scalar
from bdtk.ulc import ulc


def _invertible_ulc(rng, period):
    vals = [
        Scalar.from_fraction(Fraction(rng.choice([1, -1]) * rng.randint(2, 6), 2),
                             Fraction(rng.randint(-1, 1), 4))
        for _ in range(period)
    ]
    return ulc(vals)


def test_index_of_shift(S23):
    r = fredholm_index(bdt_u(S23, 1))
    assert r.index == -1
    assert r.stabilized
    assert all(ker == 0 and coker == 1 for (_, ker, coker) in r.kernel_dims)


def test_index_of_identity(S23):
    assert fredholm_index(bdt_one(S23)).index == 0


def test_index_of_monomials(S23, rng):
    for n in range(-4, 5):
        f = _invertible_ulc(rng, rng.choice([1, 2, 3, 4, 6]))
        b = bd_element(S23, {n: f})
        assert fredholm_index(toeplitz(b)).index == -n


def test_exact_kernel_example(S23):
    f = ulc([Fraction(3, 2), -2, 1, Fraction(5, 4), 1, -1])
    a = toeplitz(bd_element(S23, {-2: f}))
    r = fredholm_index(a)
    assert r.index == 2
    assert all(ker == 2 and coker == 0 for (_, ker, coker) in r.kernel_dims)


def test_not_fredholm(S23):
    with pytest.raises(NotFredholmError):
        fredholm_index(bdt_u(S23, 1) - 1)  # symbol V - 1 vanishes on the circle
    with pytest.raises(NotFredholmError):
        fredholm_index(bdt_from_compact(S23, k_units(0, 0)))


def test_schedule_validation(S23):
    with pytest.raises(ValueError):
        fredholm_index(bdt_u(S23, 1), schedule=(64, 128))


def test_compact_perturbation_invariance(S23, rng):
    for _ in range(8):
        b, w = cp.rand_invertible_bd(rng, S23)
        a = toeplitz(b)
        base = fredholm_index(a, schedule=(64, 128, 256)).index
        assert base == -w
        c = k_scale(Fraction(1, 16), cp.rand_compact(rng, nnz=3, top=4))
        pert = fredholm_index(bdt_add(a, bdt_from_compact(S23, c)),
                              schedule=(64, 128, 256)).index
        assert pert == base


def test_index_additivity(S23, rng):
    pool = [cp.rand_invertible_bd(rng, S23) for _ in range(6)]
    idx = {}
    for j, (b, w) in enumerate(pool):
        idx[j] = fredholm_index(toeplitz(b), schedule=(64, 128, 256)).index
        assert idx[j] == -w
    for _ in range(12):
        j1, j2 = rng.randrange(6), rng.randrange(6)
        prod = bdt_mul(toeplitz(pool[j1][0]), toeplitz(pool[j2][0]))
        assert fredholm_index(prod, schedule=(64, 128, 256)).index == idx[j1] + idx[j2]


def test_winding_examples(S23):
    assert winding(bd_v(S23, 1)) == 1
    f = ulc([Fraction(3, 2), -2, 1])
    assert winding(bd_m(S23, f)) == 0
    assert winding(bd_element(S23, {-3: f})) == -3
    with pytest.raises(NotInvertibleError):
        winding(bd_v(S23, 1) - 1)


def test_winding_index_cross_oracle(S23, rng):
    for _ in range(10):
        b, w = cp.rand_invertible_bd(rng, S23)
        assert fredholm_index(toeplitz(b), schedule=(64, 128, 256)).index == -winding(b)


def test_k0_demo(S23):
    rep = k0_demo(S23)
    assert rep["index_of_shift_generator"] == -1
    assert rep["index_generates_k0_of_compacts"]
    assert all(row["additive"] for row in rep["index_additivity"])
    member = {row["q"]: row["member"] for row in rep["gs_membership"]}
    assert member["1/2"] and member["5/6"]
    assert not member["1/9"]
    assert all(row["trivial_in_quotient"] for row in rep["quotient_demo"])
    S2 = Supernatural({2: INF})
    member2 = {row["q"]: row["member"] for row in k0_demo(S2)["gs_membership"]}
    assert member2["3/8"] and not member2["1/3"]
