"""Dimensions of cyclotomic quotients and the number of their simple modules.

The simple count of R^Lambda(beta) is compared with the weight multiplicity
dim V(Lambda)_{Lambda-beta}, computed here from semistandard tableaux.

Run: python demos/02_cyclotomic_quotients.py
"""

import json
import subprocess
import sys
from pathlib import Path

from klrverify import CyclotomicAlgebra, KLRAlgebra, validate_cartan
from klrverify.cyclotomic import radical_and_simples

script = Path(__file__).resolve().parents[1] / "scripts" / "weight_multiplicities.py"

for level in (1, 2, 3):
    alg = KLRAlgebra(validate_cartan([[2]], labels=["i"]))
    table = json.loads(subprocess.run(
        [sys.executable, str(script), "--lambda", str(level), "--max-height", "4"],
        capture_output=True, text=True, check=True).stdout)["table"]
    print(f"sl2, level {level}")
    for row in table:
        A = CyclotomicAlgebra(alg, row["beta"], [level])
        rad, simples = radical_and_simples(A) if A.dim <= 40 else (None, None)
        print(f"  beta={row['beta'][0]}alpha  dim={A.dim:3}  radical={rad}  "
              f"simples={simples}  weight mult={row['multiplicity']}")
