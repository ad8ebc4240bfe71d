"""Run the bar-coalgebra and Yoneda checks over many random small algebras.

    python scripts/random_axiom_sweep.py --count 50 --seed 7 --pmax 5
"""

import argparse
import time

import numpy as np

from singcat.algebra import random_algebra
from singcat.baryoneda import comultiplication_check, yoneda_cohomology
from singcat.exactlin import Field
from singcat.modrep import simple
from singcat.sgcalc import ext, sg_hom_tor_route, sg_hom_vogel_route


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--pmax", type=int, default=5)
    ap.add_argument("--field", default="F2")
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    F = Field.parse(args.field)
    bad = 0
    for i in range(args.count):
        t0 = time.perf_counter()
        A = random_algebra(rng, F, max_dim=4)
        rep = comultiplication_check(A, args.pmax)
        S = [simple(A, v) for v in range(A.nverts)]
        ext_ok = all(yoneda_cohomology(M, N, t) == ext(M, N, t) for M in S for N in S for t in range(3))
        routes_ok = all(sg_hom_tor_route(M, N, n).value == sg_hom_vogel_route(M, N, n).value
                        for M in S for N in S for n in (-1, 0, 1))
        ok = rep.ok and ext_ok and routes_ok
        bad += not ok
        print(f"{i:3d} dim={A.dim} verts={A.nverts} coalgebra={rep.ok} ext={ext_ok} routes={routes_ok} "
              f"({time.perf_counter() - t0:.2f}s)")
    print(f"{args.count - bad}/{args.count} passed")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
