"""Print sg_hom for every pair of named modules in an algebra file, one column per route.

    python scripts/route_table.py fixtures/r3.alg --window=-3..3 --sy
"""

import argparse
import time

from singcat.algebra import load_file
from singcat.modrep import module_from_spec, simple
from singcat.sgcalc import sg_hom_tor_route, sg_hom_vogel_route, tate_oracle
from singcat.singyoneda import sy_hom


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("path")
    ap.add_argument("--window", default="-3..3")
    ap.add_argument("--sy", action="store_true", help="also run the singular Yoneda route (slow on big Omega towers)")
    ap.add_argument("--oracle", action="store_true", help="compare against a complete resolution when one exists")
    args = ap.parse_args()
    a, b = map(int, args.window.split(".."))
    f = load_file(args.path)
    A = f.algebra
    mods = {k: module_from_spec(A, s) for k, s in f.modules.items()}
    if not mods:
        mods = {f"S{v}": simple(A, i) for i, v in enumerate(A.vertex_names)}
    cols = ["tor", "vogel"] + (["sy"] if args.sy else []) + (["oracle"] if args.oracle else [])
    print("M N n " + " ".join(cols) + " secs")
    for m, M in mods.items():
        for n_, N in mods.items():
            for n in range(a, b + 1):
                t0 = time.perf_counter()
                vals = [sg_hom_tor_route(M, N, n), sg_hom_vogel_route(M, N, n)]
                if args.sy:
                    vals.append(sy_hom(M, N, n))
                cells = [f"{v.value}{'' if v.stabilized else '?'}" for v in vals]
                if args.oracle:
                    try:
                        cells.append(str(tate_oracle(M, N, n)))
                    except ValueError:
                        cells.append("-")
                print(m, n_, n, " ".join(cells), f"{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
