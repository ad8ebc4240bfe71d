"""Singular Yoneda dimensions and the product table of basis classes for one module.

    python scripts/tate_ring.py fixtures/r2.alg k --window=-2..2
"""

import argparse

from singcat.algebra import load_file
from singcat.modrep import module_from_spec
from singcat.singyoneda import sy_ring_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("path")
    ap.add_argument("module")
    ap.add_argument("--window", default="-2..2")
    ap.add_argument("--pmax", type=int)
    args = ap.parse_args()
    a, b = map(int, args.window.split(".."))
    f = load_file(args.path)
    M = module_from_spec(f.algebra, f.modules[args.module])
    T = sy_ring_table(M, (a, b), p_max=args.pmax)
    for line in T.lines():
        print(line)
    units = [(s, t) for (s, t), m in T.products.items() if s + t == 0 and m.any()]
    print("invertible pairs (s, -s):", units or "none")


if __name__ == "__main__":
    main()
