#!/usr/bin/env python3
"""Weight multiplicities dim V(Lambda)_{Lambda - beta} for sl_{r+1}.

Independent of the klrverify engine: the multiplicity is the Kostka number
K_{lambda, mu}, counted by enumerating semistandard tableaux of shape lambda
and content mu, where

    lambda_j = sum_{k >= j} l_k            (l = Lambda in fundamental weights)
    mu_j     = lambda_j - beta_j + beta_{j-1}   (beta_0 = beta_{r+1} = 0).

Usage:
    weight_multiplicities.py --lambda 1 1 --beta 1 1
    weight_multiplicities.py --lambda 2 --max-height 4      (all beta up to height 4)
Output is JSON on stdout.
"""

import argparse
import itertools
import json
import sys


def shape(lam):
    r = len(lam)
    return [sum(lam[j:]) for j in range(r)] + [0]


def content(lam, beta):
    r = len(lam)
    lam_p = shape(lam)
    b = [0] + list(beta) + [0]
    return [lam_p[j] - b[j + 1] + b[j] for j in range(r + 1)]


def count_ssyt(rows, mu):
    """Semistandard tableaux of the given row lengths with content mu."""
    if any(m < 0 for m in mu) or sum(rows) != sum(mu):
        return 0
    cells = [(r, c) for r, length in enumerate(rows) for c in range(length)]
    filling = {}
    left = list(mu)

    def place(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        total = 0
        for v in range(lo, len(mu) + 1):
            if left[v - 1]:
                left[v - 1] -= 1
                filling[(r, c)] = v
                total += place(k + 1)
                left[v - 1] += 1
        filling.pop((r, c), None)
        return total

    return place(0)


def multiplicity(lam, beta):
    return count_ssyt([x for x in shape(lam) if x], content(lam, beta))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambda", dest="lam", type=int, nargs="+", required=True,
                    help="Lambda as multiplicities of the fundamental weights")
    ap.add_argument("--beta", type=int, nargs="+", help="beta in the simple-root basis")
    ap.add_argument("--max-height", type=int, help="tabulate every beta up to this height")
    args = ap.parse_args(argv)
    lam = args.lam
    if args.beta is not None:
        if len(args.beta) != len(lam):
            ap.error("beta and lambda must have the same length")
        out = {"lambda": lam, "beta": args.beta, "multiplicity": multiplicity(lam, args.beta)}
    elif args.max_height is not None:
        table = []
        for beta in itertools.product(range(args.max_height + 1), repeat=len(lam)):
            if sum(beta) <= args.max_height:
                table.append({"beta": list(beta), "multiplicity": multiplicity(lam, beta)})
        out = {"lambda": lam, "table": table}
    else:
        ap.error("give --beta or --max-height")
    json.dump(out, sys.stdout, sort_keys=True)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
