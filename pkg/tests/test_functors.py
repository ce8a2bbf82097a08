import pytest

from klrverify.bimodules import Bimodule, identity_map, is_projective, regular_bimodule, tensor_over
from klrverify.functors import (check_eq1, e_kernel, ee_kernel, f_kernel, projectivity, solve_eq2,
                                solve_eq3, tau_endo, verify_zigzag, x_endo)
from klrverify.mackey import verify_mackey

from conftest import SL2, SL3, algebra, functor_case


def test_kernel_dimensions():
    assert f_kernel(functor_case(SL2, [1], [0], 0)).dim == 1
    assert e_kernel(functor_case(SL2, [2], [1], 0)).dim == 4
    # beta + alpha_i has no live sequence at level one
    assert f_kernel(functor_case(SL2, [1], [1], 0)).dim == 0


def test_tensor_over_unit_and_zero():
    case = functor_case(SL2, [2], [0], 0)
    F, E = f_kernel(case), e_kernel(case)
    assert tensor_over(F, E, case.A).dim == 4
    reg = regular_bimodule(case.B)
    assert tensor_over(reg, reg, case.B).dim == case.B.dim
    zero = f_kernel(functor_case(SL2, [1], [1], 0))
    assert tensor_over(zero, e_kernel(functor_case(SL2, [1], [1], 0))).dim == 0


def test_x_endo_nilpotent():
    case = functor_case(SL2, [2], [0], 0)
    x = x_endo(e_kernel(case), case)
    assert not x.is_identity() and x.intertwining_witness() is None
    assert all(not col for col in x.compose(x).columns)


def test_tau_squared_on_double_kernel_vanishes():
    case = functor_case(SL2, [2], [0], 0)
    K = ee_kernel(case)
    t = tau_endo(K, case)
    assert K.dim > 0
    assert all(not col for col in t.compose(t).columns)


def test_sigma():
    case = functor_case(SL2, [2], [1], 0)
    s = case.sigma()
    assert s.is_injective()
    assert s.intertwining_witness() is None
    empty = functor_case(SL2, [2], [0], 0).sigma()
    assert empty.source.dim == 0


@pytest.mark.parametrize("lam, beta, tag_dims", [
    (2, 0, (0, 2)),     # lambda_i = 2: FE = 0, EF = 0 + 2 * dim A
    (2, 1, (4, 4)),     # lambda_i = 0
    (1, 1, (1, 0)),     # lambda_i = -1: FE = EF + dim A
])
def test_rho_bijective(lam, beta, tag_dims):
    case = functor_case(SL2, [lam], [beta], 0)
    d = case.dims()
    assert (d["FE"], d["EF"]) == tag_dims
    assert case.rho().bijective and case.dimension_ledger()


def test_unit_and_counit():
    case = functor_case(SL2, [2], [0], 0)
    eta = case.unit_eta()
    assert eta.columns[0] == case.ef_kernel().coords(case.e_beta_i())
    assert case.triangle_identities() == {"F": True, "E": True}
    assert case.counit_eps().intertwining_witness() is None


def test_hat_eta_zero_case():
    # lambda_i = 0 and FE nonzero: the projection onto FE of rho^{-1}(x^0 ...) is still defined
    case = functor_case(SL2, [2], [1], 0)
    assert case.lam == 0
    assert isinstance(case.hat_eta(), dict)


@pytest.mark.parametrize("matrix, lam, beta, i", [
    (SL2, [1], [0], 0), (SL2, [2], [1], 0), (SL2, [1], [1], 0), (SL2, [2], [0], 0),
    (SL3, [1, 0], [1, 0], 1), (SL3, [1, 1], [1, 1], 0),
])
def test_zigzag(matrix, lam, beta, i):
    z = verify_zigzag(functor_case(matrix, lam, beta, i))
    assert z["zigzagE"]["ok"] and z["zigzagF"]["ok"]


def test_flipped_eta_sign_breaks_zigzag():
    z = verify_zigzag(functor_case(SL2, [2], [0], 0, flip=True))
    assert not (z["zigzagE"]["ok"] and z["zigzagF"]["ok"])
    assert z["zigzagE"]["witness"] == "e(1)"


def test_eq1():
    assert check_eq1(functor_case(SL2, [2], [0], 0)).status == "pass"
    assert check_eq1(functor_case(SL2, [3], [0], 0)).status == "pass"
    assert check_eq1(functor_case(SL2, [1], [0], 0)).status == "skip"


def test_eq2():
    r = solve_eq2(functor_case(SL2, [1], [0], 0))
    assert r.status == "pass"
    assert r.certificate["u"] == {"e(1) (x) e(1)": "1"}
    # lambda_1 = 1 for Lambda_2, beta = alpha_2, i = 1
    assert solve_eq2(functor_case(SL3, [0, 1], [0, 1], 0)).status == "pass"
    assert solve_eq2(functor_case(SL2, [2], [0], 0)).status == "skip"


def test_eq3():
    assert solve_eq3(functor_case(SL2, [2], [1], 0)).status == "pass"
    assert solve_eq3(functor_case(SL2, [1], [1], 0)).status == "pass"
    assert solve_eq3(functor_case(SL2, [2], [0], 0)).status == "skip"


def test_projectivity_of_kernels():
    assert projectivity(functor_case(SL2, [2], [1], 0)) == {"F_right": True, "E_left": True}


def test_projectivity_examples():
    case = functor_case(SL2, [2], [0], 0)
    A = case.B          # k[x]/x^2
    assert is_projective(A, regular_bimodule(A), "right")
    idx = next(j for j, m in enumerate(A.basis) if A.alg.degree(m) == 0)

    def right(j, y):
        c = A.reduce_terms(y).get(idx, 0)
        return {0: c} if c else {}

    simple = Bimodule("k", ["v"], None, A, None, right)
    assert not is_projective(A, simple, "right")


def test_identity_map():
    M = regular_bimodule(functor_case(SL2, [2], [2], 0).A)
    assert identity_map(M).is_bijective()


@pytest.mark.parametrize("matrix, beta, i, D", [
    (SL2, [1], 0, 6), (SL2, [0], 0, 6), (SL3, [1, 0], 1, 6),
])
def test_mackey(matrix, beta, i, D):
    rep = verify_mackey(algebra(matrix), beta, i, D)
    assert rep.ok and rep.failure is None


@pytest.mark.parametrize("matrix, beta, i", [(SL2, [1], 0), (SL2, [2], 0), (SL3, [1, 1], 0)])
def test_mackey_tensor_method_agrees(matrix, beta, i):
    alg = algebra(matrix)
    a = verify_mackey(alg, beta, i, 4, method="coset")
    b = verify_mackey(alg, beta, i, 4, method="tensor")
    assert a.ok and b.ok
    assert a.degrees == b.degrees
