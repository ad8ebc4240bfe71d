"""Projective covers, resolutions, syzygies, periodicity and complete resolutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexes import Complex, LazyComplex, cohomology, dual_complex
from .exactlin import Quotient, hstack, nullspace, rank
from .modrep import (ModuleError, ModuleRep, direct_sum, find_isomorphism, generated_submodule,
                     projective_at, radical_of, regular, submodule, zero_module)


class ResolutionError(ValueError):
    pass


def _generators(M: ModuleRep, minimal: bool):
    """Basis indices of M generating it, ordered by vertex then index."""
    F = M.field
    if minimal:
        q = Quotient(F, radical_of(M), M.dim)
        idx = q.complement_idx
    else:
        idx = []
        span = F.zeros((M.dim, 0))
        for i in range(M.dim):
            e = F.zeros((M.dim, 1))
            e[i, 0] = F.scalar(1)
            if span.shape[1] and rank(F, hstack(F, [span, e], M.dim)) == span.shape[1]:
                continue
            idx.append(i)
            span = generated_submodule(M, F.eye(M.dim)[:, idx])
            if span.shape[1] == M.dim:
                break
    return sorted(idx, key=lambda i: (M.vertex[i], i))


def projective_cover(M: ModuleRep, free: bool = False, minimal: Optional[bool] = None):
    """(P, π) with π: P ↠ M.

    ``free=True`` uses copies of the regular module, one per generator.
    Otherwise P is a sum of indecomposable projectives at the generator
    vertices; with a radical complement it is the projective cover.
    """
    A, F = M.algebra, M.field
    if minimal is None:
        minimal = A.radical
    if minimal and not A.radical:
        raise ResolutionError("minimal covers need the complement to be the radical")
    if M.dim == 0:
        Z = zero_module(A, M.side)
        return Z, F.zeros((0, 0))
    gens = _generators(M, minimal)
    parts, cols = [], []
    for g in gens:
        if free:
            Pg = regular(A, M.side)
            idx = range(A.dim)
        else:
            v = M.vertex[g]
            Pg = projective_at(A, v, M.side)
            idx = [b for b in range(A.dim) if (A.rvert[b] if M.side == "left" else A.lvert[b]) == v]
        parts.append(Pg)
        # basis element b of P_g goes to b·g (left) or g·b (right)
        cols.append(M.action[list(idx), :, g].T)
    P = direct_sum(parts, name="+".join(p.name for p in parts))
    pi = F.reduce(np.concatenate(cols, axis=1))
    return P, pi


class Resolution:
    """Projective resolution ... → P_1 → P_0 → M, extended on demand.

    ``syzygies[n]`` is Ω^n(M) with ``inclusions[n]``: Ω^n → P_{n-1};
    ``covers[n]``: P_n ↠ Ω^n and ``diffs[n]`` = inclusions[n]∘covers[n]
    : P_n → P_{n-1}.
    """

    def __init__(self, M: ModuleRep, minimal: Optional[bool] = None, free: bool = False):
        A = M.algebra
        if minimal is None:
            minimal = A.radical and not free
        if minimal and not A.radical:
            raise ResolutionError("minimal resolution requested but the algebra has no radical data")
        self.module = M
        self.minimal = minimal
        self.free = free
        self.projectives = []
        self.covers = []
        self.syzygies = [M]
        self.inclusions = [None]
        self.diffs = [None]

    @property
    def field(self):
        return self.module.field

    @property
    def algebra(self):
        return self.module.algebra

    @property
    def computed(self) -> int:
        """Index of the last computed projective."""
        return len(self.projectives) - 1

    def length(self) -> Optional[int]:
        """Projective dimension if a zero syzygy has been reached."""
        for n, S in enumerate(self.syzygies):
            if S.dim == 0:
                return max(n - 1, 0)
        return None

    def extend(self, depth: int) -> "Resolution":
        """Compute P_0..P_depth (and Ω^{depth+1})."""
        F = self.field
        while self.computed < depth:
            n = len(self.projectives)
            S = self.syzygies[n]
            P, pi = projective_cover(S, free=self.free, minimal=self.minimal)
            P.name = f"P{n}"
            self.projectives.append(P)
            self.covers.append(pi)
            if n > 0:
                self.diffs.append(F.matmul(self.inclusions[n], pi) if P.dim else F.zeros((self.projectives[n - 1].dim, 0)))
            ker = nullspace(F, pi) if P.dim else F.zeros((0, 0))
            K, inc = submodule(P, ker, name=f"Omega{n + 1}", check=False)
            self.syzygies.append(K)
            self.inclusions.append(inc)
        return self

    def projective(self, n: int) -> ModuleRep:
        self.extend(n)
        return self.projectives[n]

    def d(self, n: int) -> np.ndarray:
        """d_n : P_n -> P_{n-1} for n ≥ 1."""
        self.extend(n)
        return self.diffs[n]

    def syzygy(self, n: int) -> ModuleRep:
        if n < 0:
            raise ResolutionError("syzygy index must be nonnegative")
        self.extend(max(n - 1, 0))
        return self.syzygies[n]

    def complex(self, depth: int) -> Complex:
        """P_depth → ... → P_0 in cohomological degrees -depth..0."""
        self.extend(depth)
        terms = [self.projectives[n] for n in range(depth, -1, -1)]
        diffs = [self.diffs[n] for n in range(depth, 0, -1)]
        return Complex(self.field, -depth, terms, diffs, algebra=self.algebra, side=self.module.side,
                       check=False, name=f"res({self.module.name})")

    def lazy(self) -> LazyComplex:
        """The whole resolution, bounded above at 0."""
        L = self.length()
        lo = -L if L is not None else None

        def term(n):
            return self.projective(-n)

        def diff(n):
            return self.d(-n)

        out = LazyComplex(self.field, term, diff, lo=lo, hi=0, algebra=self.algebra,
                          side=self.module.side, name=f"res({self.module.name})")
        out.resolution = self
        return out

    def check_exact(self, depth: int) -> bool:
        """Exactness of P_depth → … → P_0 → M → 0 at every interior spot."""
        F = self.field
        self.extend(depth)
        if rank(F, self.covers[0]) != self.module.dim:
            return False
        for n in range(0, depth):
            dn1 = self.diffs[n + 1]
            kernel = self.covers[0] if n == 0 else self.diffs[n]
            dim_ker = self.projectives[n].dim - rank(F, kernel)
            if rank(F, dn1) != dim_ker:
                return False
            if not F.is_zero(F.matmul(kernel, dn1)):
                return False
        return True

    def check_minimal(self, depth: int) -> bool:
        """im(d_n) ⊆ rad(P_{n-1}) for 1 ≤ n ≤ depth."""
        F = self.field
        self.extend(depth)
        for n in range(1, depth + 1):
            P = self.projectives[n - 1]
            rad = radical_of(P)
            both = hstack(F, [rad, self.diffs[n]], P.dim)
            if rank(F, both) != rad.shape[1]:
                return False
        return True


def resolve(M: ModuleRep, depth: int, minimal: Optional[bool] = None, free: bool = False) -> Resolution:
    return Resolution(M, minimal=minimal, free=free).extend(depth)


def syzygy(M: ModuleRep, n: int, minimal: Optional[bool] = None) -> ModuleRep:
    return Resolution(M, minimal=minimal).syzygy(n)


@dataclass
class Periodicity:
    offset: int
    period: int
    iso: np.ndarray  # Ω^offset → Ω^{offset+period}


def detect_periodicity(res: Resolution, maxdepth: int) -> Optional[Periodicity]:
    """Smallest (o, p) in lexicographic order with Ω^o ≅ Ω^{o+p}, o+p ≤ maxdepth."""
    if maxdepth < 2:
        raise ResolutionError("maxdepth must be at least 2")
    res.extend(maxdepth - 1)
    syz = res.syzygies[:maxdepth + 1]
    F = res.field
    for o in range(0, maxdepth):
        if syz[o].dim == 0:
            break
        for p in range(1, maxdepth - o + 1):
            S, T = syz[o], syz[o + p]
            if T.dim == 0:
                break
            verdict, w = find_isomorphism(S, T)
            if verdict == "iso":
                _verify_iso(S, T, w)
                return Periodicity(o, p, w)
    return None


def _verify_iso(S, T, f):
    F = S.field
    if f.shape[0] != f.shape[1] or rank(F, f) != f.shape[0]:
        raise ResolutionError("periodicity witness is not invertible")
    for a in range(S.algebra.dim):
        if not F.is_zero(F.reduce(F.matmul(T.action[a], f) - F.matmul(f, S.action[a]))):
            raise ResolutionError("periodicity witness is not a module map")


class CompleteResolution:
    """Acyclic complex of projectives C with Z^{1-n}(C) ≅ Ω^n M for n ≥ offset.

    Degrees j ≤ -offset carry P_{-j}; above that the period is spliced in
    through P_o ↠ Ω^o → Ω^{o+p} ↪ P_{o+p-1}.
    """

    def __init__(self, res: Resolution, per: Optional[Periodicity]):
        self.res = res
        self.per = per
        M = res.module
        self.projective_module = per is None
        if per is None:
            # M projective: 0 → M → M → 0 in degrees 0, 1
            self.lazy = LazyComplex(M.field, lambda n: M, lambda n: M.field.eye(M.dim), lo=0, hi=1,
                                    algebra=M.algebra, side=M.side, name=f"cres({M.name})")
            return
        o, p = per.offset, per.period
        F = M.field

        def index(j):
            # resolution index of the term in degree j
            if j <= -o:
                return -j
            return o + p - 1 - ((j + o - 1) % p)

        def term(j):
            return res.projective(index(j))

        def diff(j):
            n = index(j)
            if j >= -o and n == o:
                res.extend(o + p)
                glue = F.matmul(res.inclusions[o + p], F.matmul(per.iso, res.covers[o]))
                return glue
            return res.d(n)

        self.index = index
        self.lazy = LazyComplex(F, term, diff, algebra=M.algebra, side=M.side, name=f"cres({M.name})")

    def window(self, a: int, b: int) -> Complex:
        return self.lazy.window(a, b)

    def verify(self, a: int, b: int):
        """Total acyclicity on the interior of [a, b]; returns the first failing degree or None."""
        C = self.window(a, b)
        C.check()
        for n in range(a + 1, b):
            if cohomology(C, n).dim:
                return ("complex", n)
        D = dual_complex(C)
        for n in range(-b + 1, -a):
            if cohomology(D, n).dim:
                return ("dual", n)
        return None

    def cocycle_module(self, j: int, a: int = None, b: int = None) -> ModuleRep:
        """Z^j(C) as a submodule of C^j."""
        C = self.window(j - 1, j + 1)
        ker = nullspace(C.field, C.d(j)) if C.dim(j + 1) else C.field.eye(C.dim(j))
        Z, _ = submodule(C.term(j), ker, name=f"Z{j}", check=False)
        return Z


def complete_resolution(M: ModuleRep, window=(-4, 4), maxdepth: Optional[int] = None,
                        res: Optional[Resolution] = None, allow_projective: bool = False) -> CompleteResolution:
    """Splice a periodic resolution into a complete resolution and verify it on ``window``.

    A projective M has no periodic syzygies; it is refused unless
    ``allow_projective`` asks for the trivial witness 0 → M → M → 0.
    """
    A = M.algebra
    if maxdepth is None:
        maxdepth = 2 * A.dim + 2
    res = res or Resolution(M)
    res.extend(max(maxdepth, -window[0] + 1))
    if res.syzygies[1].dim == 0 and M.dim:
        if not allow_projective:
            raise ResolutionError("no periodicity found: the module is projective")
        cr = CompleteResolution(res, None)
    else:
        per = detect_periodicity(res, maxdepth)
        if per is None:
            raise ResolutionError(f"no periodicity found up to depth {maxdepth}")
        cr = CompleteResolution(res, per)
    bad = cr.verify(*window)
    if bad is not None:
        kind, n = bad
        what = "complex" if kind == "complex" else "dual complex"
        raise ResolutionError(f"{what} is not acyclic in degree {n}")
    return cr
