"""The truncated module K, its filtration, and the constant c.

Also shows the two readings of the kernel statement: modulo
e(beta,i^2)R(beta+alpha_i) the kernel of x equals S, but literally it can be
larger, as sl2 at level 2 with beta = alpha exhibits.

Run: python demos/04_k_filtration.py
"""

from klrverify import KLRAlgebra, validate_cartan
from klrverify.functors import FunctorCase, QuotientCache
from klrverify.kfiltration import build_K, kernel_checks, run_all, verify_prop_main

alg = KLRAlgebra(validate_cartan([[2]], labels=["i"]))
for level, beta in [(1, 0), (2, 0), (2, 1)]:
    K = build_K(FunctorCase(QuotientCache(alg, [level]), [beta], "i"))
    sizes = {k: K.fil_at(k).rank for k in range(-1, min(K.kmax, 4) + 1)}
    c, _ = verify_prop_main(K)
    print(f"level {level}, beta={beta}alpha: D={K.dx}, dim Fil_k = {sizes}, c = {c}")
    for rep in run_all(K):
        print(f"   {rep.name:24} {'ok' if rep.ok else 'FAILED'}")
    print("   kernel readings:", kernel_checks(K))
