import pytest

from klrverify.cartan import (CartanError, bilinear, default_q, enumerate_Ibeta, lambda_i,
                              make_q, multinomial, validate_cartan)

from conftest import AFF_A1, B2, SL2, SL3


def test_sl2_datum():
    d = validate_cartan(SL2)
    assert d.rank == 1 and d.symmetrizers == (1,)


def test_sl3_datum_is_symmetric():
    assert validate_cartan(SL3).symmetrizers == (1, 1)


def test_b2_symmetrizer_is_minimal():
    assert validate_cartan(B2).symmetrizers == (2, 1)


@pytest.mark.parametrize("matrix, axiom", [
    ([[2, -1], [0, 2]], "(iii)"),
    ([[2, 0], [-1, 2]], "(iii)"),
    ([[3]], "(i)"),
    ([[2, 1], [1, 2]], "(ii)"),
    ([[2, -1, 0], [-2, 2, -1], [0, -1, 2]], None),
])
def test_axiom_violations(matrix, axiom):
    if axiom is None:
        validate_cartan(matrix)
        return
    with pytest.raises(CartanError, match=r"cartan axiom " + axiom.replace("(", r"\(").replace(")", r"\)")):
        validate_cartan(matrix)


def test_zero_pattern_message():
    with pytest.raises(CartanError, match="a_ij=0 iff a_ji=0 violated"):
        validate_cartan([[2, -1], [0, 2]])


def test_non_symmetrizable():
    # cyclic orientation with product of off-diagonal ratios != 1
    with pytest.raises(CartanError, match=r"\(iv\)"):
        validate_cartan([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])


def test_bad_symmetrizers():
    with pytest.raises(CartanError):
        validate_cartan(B2, symmetrizers=[1, 1])


def test_bilinear():
    assert bilinear(validate_cartan(SL2), 0, 0) == 2
    d = validate_cartan(B2)
    assert bilinear(d, 0, 0) == 4
    assert bilinear(d, 0, 1) == -2 == bilinear(d, 1, 0)


def test_lambda_i():
    sl2 = validate_cartan(SL2)
    assert lambda_i(sl2, [2], [1], 0) == 0
    assert lambda_i(sl2, [1], [0], 0) == 1
    sl3 = validate_cartan(SL3)
    # l_i - sum_j a_ij beta_j; Lambda_2 gives 0 - (-1) = 1, Lambda_1 gives 1 - (-1) = 2
    assert lambda_i(sl3, [0, 1], [0, 1], 0) == 1
    assert lambda_i(sl3, [1, 0], [0, 1], 0) == 2


def test_enumerate_Ibeta():
    sl2 = validate_cartan(SL2)
    assert enumerate_Ibeta(sl2, [2]) == [(0, 0)]
    sl3 = validate_cartan(SL3)
    assert enumerate_Ibeta(sl3, [1, 1]) == [(0, 1), (1, 0)]
    assert len(enumerate_Ibeta(sl3, [2, 1])) == 3 == multinomial((2, 1))


def test_default_q():
    sl3 = default_q(validate_cartan(SL3))
    assert sl3.describe(0, 1) == "u + v"
    assert default_q(validate_cartan(SL2)).terms(0, 0) == ()
    b2 = default_q(validate_cartan(B2))
    assert b2.describe(0, 1) == "u + v^2"
    assert b2.evaluate(0, 1, 3, 2) == b2.evaluate(1, 0, 2, 3)


def test_affine_default_q_is_symmetric_in_swap():
    q = default_q(validate_cartan(AFF_A1))
    for u, v in [(1, 2), (3, 5)]:
        assert q.evaluate(0, 1, u, v) == q.evaluate(1, 0, v, u)


def test_q_override_degree_and_unit_checks():
    d = validate_cartan(SL3)
    with pytest.raises(CartanError, match="nonzero degree"):
        make_q(d, [{"i": "1", "j": "2", "p": 1, "q": 1}])
    with pytest.raises(CartanError, match="unit"):
        make_q(d, [{"i": "1", "j": "2", "p": 0, "q": 1}])
    q = make_q(d, [{"i": "1", "j": "2", "p": 1, "q": 0, "t": 3},
                   {"i": "1", "j": "2", "p": 0, "q": 1, "t": "1/2"}])
    assert q.evaluate(1, 0, 2, 4) == q.evaluate(0, 1, 4, 2)
