"""Command-line front end.

Machine rows (one per line, space separated):
  sghom <M> <N> <n> <dim> <route> <depth> <yes|no>
  ext <M> <N> <n> <dim>
  tor <M> <N> <n> <dim>           (Tor_n(M*, N), M* the dual right module)
  resolve <M> <n> <dim P_n> <dim Omega^n>
  tate <t> <dim> <yes|no>
  prod <s> <t> <rows of the product matrix>
  gp <M> <verdict...>
  presilting <M> <verdict...>
  buchweitz <n> sg=<dim> stable=<dim> <ok|MISMATCH>

Exit codes: 0 ok, 1 input error, 2 unstabilized value under --strict,
3 presilting-to-window finding, 4 disagreement between independent
computations, 5 self-test failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraError, ParseError, load_file
from .modrep import ModuleError, dual_module, module_from_spec, simple

EXIT_OK, EXIT_INPUT, EXIT_UNSTABLE, EXIT_PRESILTING, EXIT_DISAGREE, EXIT_SELFTEST = range(6)


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    algebra_path: str
    command: str
    window: tuple = (-4, 4)
    depth: Optional[int] = None
    pmax: Optional[int] = None
    strict: bool = False
    fmt: str = "rows"

    def resolved(self, dimA: int) -> "RunConfig":
        depth = self.depth if self.depth is not None else 2 * dimA + 6
        pmax = self.pmax if self.pmax is not None else depth
        a, b = self.window
        if a > b:
            raise InputError(f"empty window {a}..{b}")
        if depth < 1 or pmax < 1:
            raise InputError("depth and pmax must be positive")
        if depth < max(abs(a), abs(b)) + 2:
            raise InputError(f"depth {depth} is too small for window {a}..{b} (need radius + 2)")
        return RunConfig(self.algebra_path, self.command, self.window, depth, pmax, self.strict, self.fmt)


def parse_window(text: str) -> tuple:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a..b, got {text!r}")


class Session:
    """An algebra file with its named modules (plus S<vertex> shorthands)."""

    def __init__(self, path):
        try:
            self.file = load_file(path)
        except FileNotFoundError:
            raise InputError(f"{path}: no such file")
        self.algebra = self.file.algebra
        self._mods = {}

    def module(self, name: str):
        if name in self._mods:
            return self._mods[name]
        A = self.algebra
        if name in self.file.modules:
            M = module_from_spec(A, self.file.modules[name])
        elif name.startswith("S") and name[1:] in A.vertex_names:
            M = simple(A, A.vertex_names.index(name[1:]))
            M.name = name
        else:
            known = ", ".join(sorted(self.file.modules)) or "none"
            raise InputError(f"unknown module {name!r} (file defines: {known}; S<vertex> also accepted)")
        self._mods[name] = M
        return M

    def simples(self):
        out = []
        for v, vn in enumerate(self.algebra.vertex_names):
            M = simple(self.algebra, v)
            M.name = f"S{vn}"
            out.append(M)
        return out


class Output:
    def __init__(self, fmt):
        self.fmt = fmt
        self.rows = []

    def row(self, *fields):
        self.rows.append([str(f) for f in fields])

    def line(self, text):
        self.rows.append([text])

    def flush(self):
        if self.fmt == "table":
            widths = {}
            for r in self.rows:
                if len(r) > 1:
                    for i, f in enumerate(r):
                        widths[(len(r), i)] = max(widths.get((len(r), i), 0), len(f))
            for r in self.rows:
                if len(r) > 1:
                    print("  ".join(f.ljust(widths[(len(r), i)]) for i, f in enumerate(r)).rstrip())
                else:
                    print(r[0])
        else:
            for r in self.rows:
                print(" ".join(r))
        sys.stdout.flush()


# subcommands


def cmd_algebra_check(s: Session, cfg, args, out):
    A = s.algebra
    for ln in A.describe():
        out.line(ln)
    for name in sorted(s.file.modules):
        M = s.module(name)
        out.row("module", name, M.dim, "ok")
    return EXIT_OK


def cmd_resolve(s: Session, cfg, args, out):
    from .resolutions import Resolution, detect_periodicity
    M = s.module(args.M)
    res = Resolution(M).extend(cfg.depth)
    L = res.length()
    top = cfg.depth if L is None else L
    for n in range(top + 1):
        out.row("resolve", M.name, n, res.projective(n).dim, res.syzygy(n).dim)
    out.row("exact", "yes" if res.check_exact(top) else "no")
    if res.minimal:
        out.row("minimal", "yes" if res.check_minimal(top) else "no")
    if L is not None:
        out.row("pd", L)
    else:
        per = detect_periodicity(res, cfg.depth)
        out.row("periodicity", *(("none",) if per is None else (per.offset, per.period)))
    return EXIT_OK


def cmd_ext(s: Session, cfg, args, out):
    from .resolutions import Resolution
    from .sgcalc import ext
    M, N = s.module(args.M), s.module(args.N)
    res = Resolution(M)
    for n in range(0, args.max + 1):
        out.row("ext", M.name, N.name, n, ext(M, N, n, res))
    return EXIT_OK


def cmd_tor(s: Session, cfg, args, out):
    from .resolutions import Resolution
    from .sgcalc import tor
    M, N = s.module(args.M), s.module(args.N)
    Md = dual_module(M)
    res = Resolution(N)
    for n in range(0, args.max + 1):
        out.row("tor", M.name, N.name, n, tor(Md, N, n, res))
    return EXIT_OK


def _route_value(route, M, N, n, cfg):
    from .sgcalc import sg_hom_tor_route, sg_hom_vogel_route
    from .singyoneda import sy_hom
    if route == "tor":
        return sg_hom_tor_route(M, N, n, depth=cfg.depth)
    if route == "vogel":
        return sg_hom_vogel_route(M, N, n, depth=cfg.depth)
    return sy_hom(M, N, n, p_max=cfg.pmax)


def cmd_sghom(s: Session, cfg, args, out):
    M, N = s.module(args.M), s.module(args.N)
    a, b = cfg.window
    routes = ["tor", "vogel", "sy"] if args.route == "all" else [args.route]
    code = EXIT_OK
    for n in range(a, b + 1):
        vals = {r: _route_value(r, M, N, n, cfg) for r in routes}
        if len({v.value for v in vals.values()}) > 1:
            for r, v in vals.items():
                print(f"disagreement at n={n}: {v.row(M.name, N.name)} history={v.history}", file=sys.stderr)
            return EXIT_DISAGREE
        stab = all(v.stabilized for v in vals.values())
        depth = max(v.depth_used for v in vals.values())
        v0 = vals[routes[0]].value
        out.row("sghom", M.name, N.name, n, v0, args.route, depth, "yes" if stab else "no")
        if not stab and cfg.strict:
            code = EXIT_UNSTABLE
    return code


def cmd_tate_table(s: Session, cfg, args, out):
    from .singyoneda import sy_ring_table
    M = s.module(args.module)
    N = s.module(args.against) if args.against else M
    table = sy_ring_table(M, cfg.window, p_max=cfg.pmax, ring=args.ring, N=N)
    for ln in table.lines():
        out.line(ln)
    if cfg.strict and not all(v.stabilized for v in table.dims.values()):
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_bar_selftest(s: Session, cfg, args, out):
    from .baryoneda import comultiplication_check, iota_counit_check
    from .singyoneda import comm_square_check, stalk, theta_checks
    A = s.algebra
    P = args.pmax if args.pmax is not None else 6
    ok = True
    rep = comultiplication_check(A, P)
    for ln in rep.lines():
        out.line(f"{ln} (p<={P})")
    ok &= rep.ok
    mods = [s.module(n) for n in sorted(s.file.modules)] or s.simples()
    for M in mods:
        for r in (iota_counit_check(M, min(P, 4)), theta_checks(stalk(M), samples=20),
                  comm_square_check(M, min(P, 5))):
            for ln in r.lines():
                out.line(f"{ln} [{M.name}]")
            ok &= r.ok
    return EXIT_OK if ok else EXIT_SELFTEST


def _module_list(s: Session, spec: str):
    if spec == "all-simples":
        return s.simples()
    return [s.module(n) for n in spec.split(",") if n]


def cmd_presilting(s: Session, cfg, args, out):
    from .conjlab import presilting_scan
    entries = presilting_scan(_module_list(s, args.modules), n_max=args.nmax, depth=cfg.depth)
    for e in entries:
        out.line(e.line())
    if any(e.verdict == "presilting-to-window" for e in entries):
        return EXIT_PRESILTING
    if cfg.strict and any(e.unstabilized for e in entries):
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_gp_certify(s: Session, cfg, args, out):
    from .conjlab import gproj_certify
    for M in _module_list(s, args.modules):
        out.row("gp", M.name, str(gproj_certify(M, cfg.depth, cfg.window)))
    return EXIT_OK


def cmd_buchweitz(s: Session, cfg, args, out):
    from .conjlab import buchweitz_check
    M, N = s.module(args.M), s.module(args.N)
    try:
        rep = buchweitz_check(M, N, cfg.window, cfg.depth)
    except ValueError as e:
        raise InputError(str(e))
    for ln in rep.lines():
        out.line(ln)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singcat", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window=True):
        sp.add_argument("--algebra", required=True, help="algebra definition file")
        sp.add_argument("--depth", type=int, help="resolution/stage depth (default 2*dim+6)")
        sp.add_argument("--strict", action="store_true", help="exit 2 if any value is unstabilized")
        sp.add_argument("--format", choices=["rows", "table"], default="rows")
        if window:
            sp.add_argument("--window", type=parse_window, default=(-4, 4), help="degree range a..b")
        return sp

    alg = sub.add_parser("algebra", help="algebra utilities")
    asub = alg.add_subparsers(dest="action", required=True)
    common(asub.add_parser("check", help="load, verify and describe an algebra file"), window=False)

    sp = common(sub.add_parser("resolve", help="projective resolution of a module"), window=False)
    sp.add_argument("-M", required=True)

    for name in ("ext", "tor"):
        sp = common(sub.add_parser(name, help=f"classical {name} dimensions"), window=False)
        sp.add_argument("-M", required=True)
        sp.add_argument("-N", required=True)
        sp.add_argument("--max", type=int, default=4)

    sp = common(sub.add_parser("sghom", help="singularity-category Hom dimensions"))
    sp.add_argument("-M", required=True)
    sp.add_argument("-N", required=True)
    sp.add_argument("--route", choices=["tor", "vogel", "sy", "all"], default="tor")
    sp.add_argument("--pmax", type=int)

    sp = common(sub.add_parser("tate-table", help="singular Yoneda dimensions and products"))
    sp.add_argument("--module", required=True)
    sp.add_argument("--against")
    sp.add_argument("--pmax", type=int)
    sp.add_argument("--ring", action="store_true")

    bar = sub.add_parser("bar", help="bar resolution utilities")
    bsub = bar.add_subparsers(dest="action", required=True)
    sp = common(bsub.add_parser("selftest", help="bar/Yoneda axiom report"), window=False)
    sp.add_argument("--pmax", type=int)

    sp = common(sub.add_parser("presilting", help="presilting window scan"), window=False)
    sp.add_argument("--modules", default="all-simples")
    sp.add_argument("--nmax", type=int, default=6)

    sp = common(sub.add_parser("gp-certify", help="Gorenstein projectivity certificates"))
    sp.add_argument("--modules", default="all-simples")

    sp = common(sub.add_parser("buchweitz", help="stable Hom against sg-Hom"))
    sp.add_argument("-M", required=True)
    sp.add_argument("-N", required=True)
    sp.set_defaults(window=(-2, 2))
    return p


COMMANDS = {
    ("algebra", "check"): cmd_algebra_check,
    ("resolve", None): cmd_resolve,
    ("ext", None): cmd_ext,
    ("tor", None): cmd_tor,
    ("sghom", None): cmd_sghom,
    ("tate-table", None): cmd_tate_table,
    ("bar", "selftest"): cmd_bar_selftest,
    ("presilting", None): cmd_presilting,
    ("gp-certify", None): cmd_gp_certify,
    ("buchweitz", None): cmd_buchweitz,
}


def _join_negative_values(argv):
    # "--window -4..4" would otherwise be read as an option
    out, it = [], iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    out = Output(args.format)
    try:
        s = Session(args.algebra)
        cfg = RunConfig(args.algebra, args.command, getattr(args, "window", (-4, 4)), args.depth,
                        getattr(args, "pmax", None), args.strict, args.format).resolved(s.algebra.dim)
        fn = COMMANDS[(args.command, getattr(args, "action", None))]
        code = fn(s, cfg, args, out)
    except (InputError, ParseError, AlgebraError, ModuleError) as e:
        print(f"singcat: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
