import pytest

from klrverify.kfiltration import (KModule, TruncationError, build_K, check_intertwiner_congruence,
                                   eq10_identity, fil, kernel_checks, p_map, p_map_checks,
                                   P_E_maps, run_all, verify_dirL, verify_grin, verify_grind,
                                   verify_P_E, verify_prop_main)

from conftest import SL2, SL3, functor_case


@pytest.fixture(scope="module")
def k_l1():
    return build_K(functor_case(SL2, [1], [0], 0))


@pytest.fixture(scope="module")
def k_l2():
    return build_K(functor_case(SL2, [2], [1], 0))


def test_truncation_floor():
    with pytest.raises(TruncationError):
        KModule(functor_case(SL2, [1], [0], 0), dx=1)


def test_level_one_blocks(k_l1):
    # tau_1 k[x_2] (x) R(alpha) contributes nothing at beta = 0
    assert not k_l1.v1
    # one vector per layer in each remaining summand (dim R^L(alpha) = 1)
    assert all(len(v) == 1 for v in k_l1.v2.values())
    assert all(len(v) == 1 for v in k_l1.v3.values())
    assert set(k_l1.dims().values()) <= {0, 1, 2}


def test_all_summands_present(k_l2):
    assert k_l2.v1 and k_l2.v2 and k_l2.v3


def test_zero_module():
    K = build_K(functor_case(SL2, [1], [1], 0))
    assert sum(K.dims().values()) == 0
    assert all(r.ok for r in run_all(K))


def test_fil_is_increasing(k_l1, k_l2):
    for K in (k_l1, k_l2):
        assert fil(K, -2).rank == 0
        for k in range(-1, min(K.kmax, K.dx) + 1):
            lower, upper = fil(K, k - 1), fil(K, k)
            assert all(upper.contains(row) for row in lower.rows.values())


def test_fil_beyond_truncation(k_l1):
    with pytest.raises(TruncationError):
        fil(k_l1, k_l1.dx + 1)


def test_fil_minus_one_level_one(k_l1):
    # V1 is empty for beta = 0, so Fil_{-1} is spanned by the tau_{n+1} part in layer 0
    assert k_l1.fil_at(-1).rank == len(k_l1.v2.get(0, []))


def test_dirL(k_l1, k_l2):
    assert verify_dirL(k_l1).ok and verify_dirL(k_l2).ok


def test_grin(k_l1, k_l2):
    for K in (k_l1, k_l2):
        rep = verify_grin(K)
        assert rep.ok, rep.detail
        assert all(rep.detail["iii"].values())
        assert rep.detail["iv"] and rep.detail["iv_literal_inclusion"]


def test_kernel_literal_equality_can_fail(k_l2):
    # modulo e(beta,i^2)R(beta+alpha_i) the kernel is exactly S; literally it may be larger
    kc = kernel_checks(k_l2)
    assert kc["modulo_e"] and kc["literal_inclusion"] and kc["literal_is_P_of_E_kernel"]
    assert kc["literal_equality"] is False


def test_grind(k_l2):
    assert verify_grind(k_l2, samples=10).ok


@pytest.mark.parametrize("lam, beta, i", [([1], [0], 0), ([1], [1], 0)])
def test_congruence_sl2(lam, beta, i):
    assert check_intertwiner_congruence(build_K(functor_case(SL2, lam, beta, i))).ok


def test_congruence_sl3():
    assert check_intertwiner_congruence(build_K(functor_case(SL3, [1, 0], [0, 1], 0))).ok


def test_prop_main(k_l1, k_l2):
    for K in (k_l1, k_l2):
        c, rep = verify_prop_main(K)
        assert rep.ok and c is not None and c != 0
        assert rep.detail["residual_zero"]


def test_P_E(k_l2):
    rep = verify_P_E(k_l2)
    assert rep.ok
    assert rep.detail["P_injective"] and rep.detail["cor_cr"]
    P, E = P_E_maps(k_l2)
    assert callable(P) and callable(E)


def test_p_map(k_l1, k_l2):
    for K in (k_l1, k_l2):
        rep = p_map_checks(K)
        assert rep.ok and rep.detail["kills_T"]
    proj = p_map(k_l2)
    assert proj({}) == {}


def test_eq10(k_l2):
    assert eq10_identity(k_l2).ok


def test_sl3_full_suite():
    K = build_K(functor_case(SL3, [1, 1], [1, 1], 0))
    assert all(r.ok for r in run_all(K))
