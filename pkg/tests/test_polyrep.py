from klrverify import polyrep
from klrverify.polyrep import act, divided_difference, oracle_equal


def test_tau_on_constant_and_linear(sl2):
    t = sl2.tau(1, 2)
    assert act(t, {(0, 0): {(0, 0): 1}}) == {}
    assert act(t, {(0, 0): {(1, 0): 1}}) == {(0, 0): {(0, 0): -1}}


def test_tau_squared_is_q_on_distinct_colours(sl3):
    t = sl3.tau(1, 2)
    f = {(0, 1): {(2, 1): 1}}
    # (x1 + x2) x1^2 x2
    assert act(t, act(t, f)) == {(0, 1): {(3, 1): 1, (2, 2): 1}}


def test_divided_difference():
    v = {(0, 0): {(0, 0): 1}}
    assert divided_difference(1, 2, v) == {}
    assert divided_difference(1, 2, {(0, 0): {(1, 0): 1}}) == {(0, 0): {(0, 0): -1}}
    assert divided_difference(1, 2, {(0, 0): {(1, 1): 1}}) == {}
    # different colours are left out
    assert divided_difference(1, 2, {(0, 1): {(1, 0): 1}}) == {}


def test_oracle_equal(sl2):
    e = sl2.e((0, 0))
    a = sl2.tau(1, 2) * sl2.x(1, 2) * e
    assert oracle_equal(a, a)
    lhs = sl2.element(2, a.terms)
    rhs = sl2.x(2, 2) * sl2.tau(1, 2) * e - e
    assert oracle_equal(lhs, rhs, trials=5)
    assert not oracle_equal(e, sl2.zero(2), trials=5)


def test_faithful_on_small_nonzero_elements(sl3):
    # no nonzero normal form of R(2) acts as zero
    for m in sl3.monomials_of_degree([1, 1], 2) + sl3.monomials_of_degree([1, 1], 0):
        assert not polyrep.acts_as_zero(sl3.element(2, {m: 1}))
