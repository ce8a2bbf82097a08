import random

import pytest

from klrverify.cyclotomic import (CycloConfig, CyclotomicAlgebra, CyclotomicError,
                                  build_quotient, cyclo_element, nilpotency_index,
                                  radical_and_simples)
from klrverify.relations import random_element

from conftest import AFF_A1, B2, SL2, SL3, algebra


def quotient(alg, lam, beta, **cfg):
    config = CycloConfig.make(alg.datum, lam, **cfg) if cfg else None
    return CyclotomicAlgebra(alg, beta, lam, config)


def test_cyclo_element(sl2):
    assert cyclo_element(sl2, [1], 1, [1]) == sl2.x(1, 1)
    assert cyclo_element(sl2, [2], 1, [2]) == sl2.x(1, 2, power=2) * sl2.e((0, 0))
    assert cyclo_element(sl2, [2], 1, [0]) == sl2.e((0, 0))


def test_zero_root_has_dim_one():
    for m, lam in [(SL2, [1]), (SL3, [1, 1]), (B2, [1, 0]), (AFF_A1, [1, 0])]:
        assert quotient(algebra(m), lam, [0] * len(m)).dim == 1


@pytest.mark.parametrize("lam, dims", [(1, (1, 1, 0)), (2, (1, 2, 4))])
def test_sl2_dimensions(sl2, lam, dims):
    for b, expected in enumerate(dims):
        A = quotient(sl2, [lam], [b])
        assert A.dim == expected
        assert A.certificates["closure"] and A.certificates["stabilized"]


@pytest.mark.parametrize("lam, beta", [(2, 2), (3, 2), (2, 3)])
def test_dimension_stable_under_larger_bounds(lam, beta):
    # two saturation bounds must give the same basis
    alg = algebra(SL2)
    a = quotient(alg, [lam], [beta], buffer=2, degree_cap=20)
    b = quotient(alg, [lam], [beta], buffer=6, degree_cap=60)
    assert a.basis == b.basis


def test_sl2_dims_are_factorial_binomial():
    # dim R^{l Lambda}(k alpha) = k!^2 binom(l, k)  (number of standard bitableaux)
    from math import comb, factorial
    alg = algebra(SL2)
    for lam in (1, 2, 3):
        for k in range(0, 4):
            assert quotient(alg, [lam], [k]).dim == factorial(k) ** 2 * comb(lam, k)


def test_reduce_kills_cyclotomic_element(sl2):
    A = quotient(sl2, [2], [2])
    assert A.reduce(cyclo_element(sl2, [2], 1, [2])) == {}
    assert A.reduce(sl2.one(2, [2])) == A.unit()


def test_reduce_is_multiplicative(sl3):
    A = quotient(sl3, [1, 1], [1, 1])
    rng = random.Random(11)
    for _ in range(50):
        a = random_element(sl3, 2, rng, beta=[1, 1])
        b = random_element(sl3, 2, rng, beta=[1, 1])
        assert A.reduce(a * b) == A.mult(A.reduce(a), A.reduce(b))


def test_nilpotency(sl2):
    assert nilpotency_index(quotient(sl2, [2], [1]), 1) == 2
    assert nilpotency_index(quotient(sl2, [1], [1]), 1) == 1


def test_radical_and_simples(sl2):
    assert radical_and_simples(quotient(sl2, [1], [1])) == (0, 1)
    assert radical_and_simples(quotient(sl2, [2], [1])) == (1, 1)
    assert radical_and_simples(quotient(sl2, [2], [2]))[1] == 1


def test_polynomial_overrides():
    d = algebra(SL2).datum
    with pytest.raises(CyclotomicError, match="monic"):
        CycloConfig.make(d, [2], polys={"1": [0, 1]})
    with pytest.raises(CyclotomicError, match="not supported"):
        CycloConfig.make(d, [2], polys={"1": [1, 0, 1]}, ungraded=True)
    cfg = CycloConfig.make(d, [2], polys={"1": [0, 0, 1]})
    assert cfg.polys == ((0, 0, 1),)


def test_build_quotient_entry_point():
    A = build_quotient(algebra(SL2).datum, None, [2], [2])
    assert A.dim == 4
    assert A.summary()["certificates"]["closure"]


def test_bound_too_small_raises(sl2):
    with pytest.raises(CyclotomicError, match="bound too small"):
        quotient(sl2, [3], [2], degree_cap=-20)
