"""The functors E and F between cyclotomic quotients and the biadjunction zigzags.

For sl2 at level 2 and beta = 0 we build the kernels, the map rho, and check
that both zigzag composites are identities. Flipping the sign of the lifted
unit breaks them.

Run: python demos/03_functors_and_zigzag.py
"""

from klrverify import KLRAlgebra, validate_cartan
from klrverify.functors import FunctorCase, QuotientCache, solve_eq2, verify_zigzag

alg = KLRAlgebra(validate_cartan([[2]], labels=["i"]))
cache = QuotientCache(alg, [2])

for beta in (0, 1, 2):
    case = FunctorCase(cache, [beta], "i")
    r = case.rho()
    z = verify_zigzag(case)
    print(f"beta={beta}alpha lambda_i={case.lam:+d} dims={case.dims()} "
          f"rho[{r.case}] bijective={r.bijective} "
          f"zigzag E={z['zigzagE']['ok']} F={z['zigzagF']['ok']}")

bad = FunctorCase(cache, [0], "i", flip_eta_sign=True)
print("with the sign flipped:", verify_zigzag(bad))

level1 = FunctorCase(QuotientCache(alg, [1]), [0], "i")
print("eq2 at level 1:", solve_eq2(level1).as_dict())
