import random

from hypothesis import given, settings
from hypothesis import strategies as st

from klrverify import perms, polyrep
from klrverify.klr import Monomial
from klrverify.relations import FAMILIES, oracle_pairs, random_element, relation_suite

from conftest import AFF_A1, B2, SL2, SL3, algebra


def test_tau_x_relation(sl2):
    e, t, x1, x2 = sl2.e((0, 0)), sl2.tau(1, 2), sl2.x(1, 2), sl2.x(2, 2)
    assert t * x1 * e == x2 * t * e - e


def test_tau_square_same_colour(sl2):
    t, e = sl2.tau(1, 2), sl2.e((0, 0))
    assert not (t * t * e)


def test_braid_defect_sl3(sl3):
    e = sl3.e((0, 1, 0))
    t1, t2 = sl3.tau(1, 3), sl3.tau(2, 3)
    assert (t2 * t1 * t2 - t1 * t2 * t1) * e == e


def test_psi(sl2):
    e = sl2.e((0, 0))
    assert sl2.psi(e) == e
    r = sl2.x(1, 2) * sl2.tau(1, 2) * e
    assert sl2.psi(r) == sl2.tau(1, 2) * sl2.x(1, 2) * e
    assert sl2.psi(r) == sl2.x(2, 2) * sl2.tau(1, 2) * e - e


def test_psi_is_an_involution_and_antihomomorphism(sl3):
    rng = random.Random(7)
    for k in range(50):
        n = 1 + k % 3
        r = random_element(sl3, n, rng)
        assert sl3.psi(sl3.psi(r)) == r
        if k < 15:
            s = random_element(sl3, n, rng)
            assert sl3.psi(r * s) == sl3.psi(s) * sl3.psi(r)


def test_degrees(sl2):
    assert sl2.degree(Monomial((0,), (0,), (0,))) == 0
    assert sl2.x(1, 1).degree() == 2
    assert (sl2.tau(1, 2) * sl2.e((0, 0))).degree() == -2


def test_degree_b2(b2):
    # (alpha_1|alpha_1) = 4, (alpha_1|alpha_2) = -2
    assert (b2.x(1, 1) * b2.e((0,))).degree() == 4
    assert (b2.tau(1, 2) * b2.e((0, 1))).degree() == 2


def test_idempotents(sl2, sl3):
    assert sl2.idempotent([2]) == sl2.e((0, 0))
    assert sl3.idempotent([1, 1]) == sl3.e((0, 1)) + sl3.e((1, 0))
    f = sl3.idempotent_tail([1, 0], 1, 1)
    assert f * f == f == sl3.e((0, 1))


def test_q_elements(sl2, sl3):
    assert not sl2.q_element(1, 2, 2)
    e12 = sl3.e((0, 1))
    assert sl3.q_element(1, 2, 2) * e12 == (sl3.x(1, 2) + sl3.x(2, 2)) * e12
    e121 = sl3.e((0, 1, 0))
    assert sl3.qbar_element(1, 2, 3, 3) * e121 == e121


def test_intertwiners(sl2, sl3):
    e = sl2.e((0, 0))
    phi = sl2.intertwiner(1, 2)
    assert phi * phi * e == e
    assert sl2.x(2, 2) * phi * e == phi * sl2.x(1, 2) * e
    e121 = sl3.e((0, 1, 0))
    p1, p2 = sl3.intertwiner(1, 3), sl3.intertwiner(2, 3)
    assert not ((p1 * p2 * p1 - p2 * p1 * p2) * e121)


def test_associativity_random(sl3):
    rng = random.Random(3)
    for _ in range(20):
        a, b, c = (random_element(sl3, 3, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_relation_suite_all_fixtures():
    for m in (SL2, SL3, B2, AFF_A1):
        rep = relation_suite(algebra(m), n_max=3)
        assert rep.ok, rep.failures
        assert set(rep.checked) == set(FAMILIES)


def test_relation_suite_with_oracle(sl3):
    assert relation_suite(sl3, n_max=3, with_oracle=True).ok


def test_oracle_pairs(b2):
    rep = oracle_pairs(b2, pairs=30)
    assert rep["ok"] and rep["vector_checks"] >= 30


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6), st.permutations([0, 1, 2, 3]))
def test_canonical_word_represents_permutation(word, w):
    w = tuple(w)
    assert perms.from_word(perms.canonical_word(w), 4) == w
    assert len(perms.canonical_word(w)) == perms.length(w)
    v = perms.from_word(word, 4)
    assert perms.compose(v, perms.inverse(v)) == perms.identity(4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_normal_form_agrees_with_representation(seed):
    alg = algebra(SL3)
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    a, b = random_element(alg, n, rng), random_element(alg, n, rng)
    for v in polyrep.probe_vectors(alg, n, max_exp=1, random_count=2, seed=seed)[-3:]:
        assert polyrep.act(a * b, v) == polyrep.act(a, polyrep.act(b, v))
