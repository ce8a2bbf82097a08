"""Normal forms in the KLR algebra of type A2 and an independent check by the polynomial action.

Run: python demos/01_klr_relations.py
"""

from klrverify import KLRAlgebra, validate_cartan
from klrverify.polyrep import oracle_equal
from klrverify.relations import relation_suite

alg = KLRAlgebra(validate_cartan([[2, -1], [-1, 2]]))
print("Q_12(u, v) =", alg.qmat.describe(0, 1))

e = alg.e((0, 1, 0))
t1, t2 = alg.tau(1, 3), alg.tau(2, 3)
x1 = alg.x(1, 3)

# straightening a product into the x^a tau_w e(nu) basis
print("tau_1 x_1 e(121)          =", (t1 * x1 * e).render())
print("tau_1 tau_1 e(121)        =", (t1 * t1 * e).render())
# the braid relation picks up a correction term when nu_1 = nu_3
print("(t2 t1 t2 - t1 t2 t1)e(121) =", ((t2 * t1 * t2 - t1 * t2 * t1) * e).render())

# the same identity checked by acting on polynomials rather than by rewriting
print("oracle agrees:", oracle_equal(t2 * t1 * t2 * e, t1 * t2 * t1 * e + e, trials=5))

rep = relation_suite(alg, n_max=3)
print("relation families checked:", rep.checked, "failures:", len(rep.failures))
