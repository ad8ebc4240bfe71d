"""Ext, Tor, stable Hom and Hom groups in the singularity category.

Inputs P, Q for the singularity-category routes are bounded-above
complexes of finitely generated projective left modules, usually
resolutions (see :class:`LazyComplex`).  Two routes are implemented:

* ``tor``: the degreewise cokernel of the canonical map
  (σ_{≥-D}P)* ⊗ σ_{≥-J}Q → Hom(σ_{≥-D}P, Q), stabilised over J;
* ``vogel``: Hom(σ_{≥-D}P, σ_{≤-m}Q), stabilised over m along the
  projections σ_{≤-m}Q → σ_{≤-m-1}Q.

A value is called stabilised only when two consecutive structure maps are
isomorphisms on H^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .complexes import (Cohomology, Complex, GradedMap, HomComplex, LazyComplex, canonical_map, cohomology,
                        dual_complex, hom_complex, induced_map, is_iso, stalk, tensor_complex)
from .exactlin import Quotient, nullspace, rank, solve
from .modrep import (ModuleRep, dual_module, find_isomorphism, hom_space, regular, stable_hom_dim,
                     tensor_over_R)
from .resolutions import Resolution, projective_cover


@dataclass
class StabilizedValue:
    value: int
    depth_used: int
    stabilized: bool
    route: str
    n: int = 0
    history: list = dc_field(default_factory=list)  # (depth, dim) pairs

    def __int__(self):
        return self.value

    def row(self, M="M", N="N"):
        return f"sghom {M} {N} {self.n} {self.value} {self.route} {self.depth_used} {'yes' if self.stabilized else 'no'}"


def _as_lazy(X) -> LazyComplex:
    if isinstance(X, LazyComplex):
        return X
    if isinstance(X, Resolution):
        return X.lazy()
    if isinstance(X, Complex):
        return LazyComplex.from_complex(X)
    if isinstance(X, ModuleRep):
        return Resolution(X).lazy()
    raise TypeError(f"cannot use {type(X).__name__} as a complex")


# classical groups


def ext(M: ModuleRep, N: ModuleRep, n: int, res: Optional[Resolution] = None, basis: bool = False):
    """dim Ext^n(M, N) = H^n Hom(P_M, N)."""
    if n < 0:
        return (0, None) if basis else 0
    res = res or Resolution(M)
    P = res.complex(n + 1)
    H = hom_complex(P, stalk(N), n - 1, n + 1)
    C = cohomology(H.complex, n)
    return (C.dim, C) if basis else C.dim


def tor(Mr: ModuleRep, N: ModuleRep, n: int, res: Optional[Resolution] = None) -> int:
    """dim Tor_n(Mr, N) = H^{-n}(Mr ⊗ P_N)."""
    if n < 0:
        return 0
    res = res or Resolution(N)
    P = res.complex(n + 1)
    T = tensor_complex(stalk(Mr), P, -n - 1, -n + 1)
    return cohomology(T.complex, -n).dim


def hyper_tor(Pstar: Complex, Q: Complex, n: int) -> int:
    """H^{-n} of the total complex Pstar ⊗ Q (both finite windows)."""
    T = tensor_complex(Pstar, Q, -n - 1, -n + 1)
    return cohomology(T.complex, -n).dim


def stable_hom(M: ModuleRep, N: ModuleRep, cover: str = "projective") -> int:
    return stable_hom_dim(M, N, cover)


def phi_map(M: ModuleRep, N: ModuleRep):
    """Matrix of φ: M*⊗N → Hom(M, N), f⊗y ↦ (x ↦ f(x)y)."""
    SM, SN = stalk(M), stalk(N)
    T = tensor_complex(dual_complex(SM), SN, 0, 0)
    H = hom_complex(SM, SN, 0, 0)
    return canonical_map(T, H, 0)


def phi_kernel(M: ModuleRep, N: ModuleRep) -> int:
    m = phi_map(M, N)
    return m.shape[1] - (rank(M.field, m) if m.size else 0)


def perp_R(M: ModuleRep, depth: int, res: Optional[Resolution] = None):
    """First i in 1..depth with Ext^i(M, R) ≠ 0, or None."""
    res = res or Resolution(M)
    R = regular(M.algebra)
    for i in range(1, depth + 1):
        if ext(M, R, i, res) != 0:
            return i
    return None


# the singularity-category routes


def _windows(P: LazyComplex, Q: LazyComplex, n: int, D: int, m: int):
    """X-window and Y-window for computing H^n Hom(σ_{≥-D}P, σ_{≤-m}Q)."""
    top = -m - n + 2
    if P.hi is not None:
        top = min(top, P.hi)
    a = -D if P.lo is None else max(P.lo, -D)
    return (a, top), (a + n - 2, -m)


class VogelStage:
    """H^n Hom(σ_{≥-D}P, σ_{≤-m}Q) at one value of m."""

    def __init__(self, P: LazyComplex, Q: LazyComplex, n: int, D: int, m: int, xwin=None):
        (a, top), (ylo, yhi) = _windows(P, Q, n, D, m)
        if xwin is not None:
            a, top = xwin
        self.X = P.window(a, top) if a <= top else P.window(a, a - 1)
        self.Y = Q.window(ylo, yhi)
        self.H = HomComplex(self.X, self.Y, n - 1, n + 1)
        self.coh = cohomology(self.H.complex, n)
        self.n = n
        self.m = m

    def map_to(self, other: "VogelStage") -> np.ndarray:
        """Matrix on H^n of the projection σ_{≤-m}Q → σ_{≤-m'}Q."""
        F = self.X.field
        H0, H1 = self.H, other.H
        n = self.n
        imgs = []
        for k in range(self.coh.dim):
            f = H0.element(n, self.coh.reps[:, k])
            comps = {p: f.comp(p) for p in f.comps if other.Y.dim(p + n)}
            g = GradedMap(other.X, other.Y, n, comps)
            imgs.append(H1.coords(g))
        if not imgs:
            return F.zeros((other.coh.dim, 0))
        z = np.array(imgs, dtype=F.dtype).T
        return other.coh.coords(z)


def _default_D(P: LazyComplex, n: int, m: int) -> int:
    return m + abs(n) + 4 + max(P.hi or 0, 0)


def sg_hom_vogel_route(M, N, n: int, depth: Optional[int] = None, start: Optional[int] = None,
                       max_stage: Optional[int] = None) -> StabilizedValue:
    """colim_m H^n Hom(P, σ_{≤-m}Q) with an isomorphism certificate."""
    P, Q = _as_lazy(M), _as_lazy(N)
    m = start if start is not None else max(0, -n) + 2
    last = max_stage if max_stage is not None else (depth if depth is not None else m + 6)
    last = max(last, m)
    history = []
    while True:
        D = _default_D(P, n, m + 2)
        stages = [VogelStage(P, Q, n, D, m + i) for i in range(3)]
        maps = [stages[i].map_to(stages[i + 1]) for i in range(2)]
        F = stages[0].X.field
        history.append((m, stages[0].coh.dim))
        if all(is_iso(F, mp) for mp in maps):
            return StabilizedValue(stages[0].coh.dim, m, True, "vogel", n, history)
        if m >= last:
            return StabilizedValue(stages[0].coh.dim, m, False, "vogel", n, history)
        m += 1


class TorStage:
    """Degreewise cokernel of (σ_{≥-D}P)* ⊗ σ_{≥-J}Q → Hom(σ_{≥-D}P, Q) around degree n."""

    def __init__(self, P: LazyComplex, Q: LazyComplex, n: int, D: int, J: int, shared=None):
        if P.hi is None:
            top = (Q.hi if Q.hi is not None else 0) - n + 3
        else:
            top = P.hi
        a = -D if P.lo is None else max(P.lo, -D)
        if shared is None:
            X = P.window(a, top)
            qtop = Q.hi if Q.hi is not None else top + n + 2
            Y = Q.window(a + n - 2, qtop)
            H = HomComplex(X, Y, n - 1, n + 1)
            Xd = dual_complex(X)
            shared = (X, Y, H, Xd)
        X, Y, H, Xd = shared
        self.shared = shared
        self.n = n
        F = X.field
        Yj = Y.restrict(max(Y.lo, -J), Y.hi) if Y.hi >= -J else Y.restrict(-J, -J - 1)
        T = tensor_complex(Xd, Yj, n - 1, n + 1)
        self.alpha = {k: canonical_map(T, H, k) for k in (n - 1, n, n + 1)}
        self.quot = {k: Quotient(F, self.alpha[k], H.size(k)) for k in (n - 1, n, n + 1)}
        dbar = {}
        for k in (n - 1, n):
            q0, q1 = self.quot[k], self.quot[k + 1]
            dbar[k] = F.matmul(q1.projection, F.matmul(H.complex.d(k), q0.section))
        self.coh = Cohomology(F, dbar[n - 1], dbar[n])

    def map_to(self, other: "TorStage") -> np.ndarray:
        F = self.shared[0].field
        q0, q1 = self.quot[self.n], other.quot[self.n]
        if self.coh.dim == 0:
            return F.zeros((other.coh.dim, 0))
        z = F.matmul(q1.projection, F.matmul(q0.section, self.coh.reps))
        return other.coh.coords(z)


def sg_hom_tor_route(M, N, n: int, depth: Optional[int] = None, start: Optional[int] = None,
                     max_stage: Optional[int] = None) -> StabilizedValue:
    P, Q = _as_lazy(M), _as_lazy(N)
    J = start if start is not None else max(0, -n) + 1
    last = max_stage if max_stage is not None else (depth if depth is not None else J + 6)
    last = max(last, J)
    history = []
    while True:
        D = J + 2 + abs(n) + 5
        first = TorStage(P, Q, n, D, J)
        stages = [first] + [TorStage(P, Q, n, D, J + i, shared=first.shared) for i in (1, 2)]
        maps = [stages[i].map_to(stages[i + 1]) for i in range(2)]
        F = first.shared[0].field
        history.append((J, first.coh.dim))
        if all(is_iso(F, mp) for mp in maps):
            return StabilizedValue(first.coh.dim, J, True, "tor", n, history)
        if J >= last:
            return StabilizedValue(first.coh.dim, J, False, "tor", n, history)
        J += 1


def hyper_tor_stabilized(M, N, k: int, start: int = 1, max_stage: int = 12) -> StabilizedValue:
    """H^k(P*⊗Q) = colim_J H^k(P*⊗σ_{≥-J}Q), the hyper-Tor group Tor_{-k}."""
    P, Q = _as_lazy(M), _as_lazy(N)
    J = max(start, -k + 1)
    history = []
    while True:
        D = J + 2 + abs(k) + 5
        a = -D if P.lo is None else max(P.lo, -D)
        Xd = dual_complex(P.window(a, P.hi if P.hi is not None else 0))
        cs = []
        for i in range(3):
            Yj = Q.window(-(J + i), Q.hi if Q.hi is not None else 0)
            T = tensor_complex(Xd, Yj, k - 1, k + 1)
            cs.append((T, cohomology(T.complex, k)))
        F = Xd.field
        maps = []
        for (T0, C0), (T1, C1) in zip(cs, cs[1:]):
            maps.append(induced_map(C0, C1, _tensor_inclusion(T0, T1, k)))
        history.append((J, cs[0][1].dim))
        if all(is_iso(F, mp) for mp in maps):
            return StabilizedValue(cs[0][1].dim, J, True, "hypertor", k, history)
        if J >= max_stage:
            return StabilizedValue(cs[0][1].dim, J, False, "hypertor", k, history)
        J += 1


def _tensor_inclusion(T0, T1, k):
    """Inclusion of total complexes induced by σ_{≥-J}Q ⊂ σ_{≥-J-1}Q in degree k."""
    F = T0.field
    out = F.zeros((T1.size(k), T0.size(k)))
    b1 = {(i, j): off for i, j, off, T in T1.blocks.get(k, [])}
    for i, j, off, T in T0.blocks.get(k, []):
        o1 = b1[(i, j)]
        out[o1:o1 + T.dim, off:off + T.dim] = F.eye(T.dim)
    return out


# long exact sequence


@dataclass
class LESNode:
    kind: str  # "tor", "hom", "sg"
    n: int
    dim: int
    exact: bool
    expected: Optional[int] = None


@dataclass
class LESReport:
    window: tuple
    nodes: list
    ranks: dict

    @property
    def exact(self) -> bool:
        return all(nd.exact for nd in self.nodes)

    @property
    def faithful(self) -> bool:
        return all(nd.expected is None or nd.expected == nd.dim for nd in self.nodes)

    def lines(self):
        out = []
        for nd in self.nodes:
            exp = "" if nd.expected is None else f" expected={nd.expected}"
            out.append(f"les {nd.kind} {nd.n} dim={nd.dim} exact={'yes' if nd.exact else 'no'}{exp}")
        return out


def les_verify(M, N, window=(-3, 3), J: Optional[int] = None, check_values: bool = True) -> LESReport:
    """Exactness of ... → H^n(P*⊗Q) → H^n Hom(P,Q) → H^n Ĥom(P,Q) → H^{n+1}(P*⊗Q) → ...

    A = (σ_{≥-D}P)*⊗σ_{≥-J}Q embeds in B = Hom(σ_{≥-D}P, Q) by the
    canonical map; C = B/A.  The connecting map is the snake: lift through
    the section, apply d_B, solve against the canonical map.
    """
    P, Q = _as_lazy(M), _as_lazy(N)
    a, b = window
    if J is None:
        J = max(0, -a) + 3
    D = J + max(abs(a), abs(b)) + 8
    lo, hi = a - 2, b + 2
    top = P.hi if P.hi is not None else 0
    pa = -D if P.lo is None else max(P.lo, -D)
    X = P.window(pa, top)
    Y = Q.window(pa + lo - 2, Q.hi if Q.hi is not None else 0)
    F = X.field
    H = HomComplex(X, Y, lo, hi)
    Xd = dual_complex(X)
    Yj = Y.restrict(max(Y.lo, -J), Y.hi)
    T = tensor_complex(Xd, Yj, lo, hi)
    alpha = {k: canonical_map(T, H, k) for k in range(lo, hi + 1)}
    for k in range(lo, hi + 1):
        if alpha[k].size and rank(F, alpha[k]) != alpha[k].shape[1]:
            raise ValueError(f"canonical map is not injective in degree {k}")
    for k in range(lo, hi):
        lhs = F.matmul(H.complex.d(k), alpha[k])
        rhs = F.matmul(alpha[k + 1], T.complex.d(k))
        if not F.is_zero(F.reduce(lhs - rhs)):
            raise ValueError(f"canonical map is not a cochain map in degree {k}")
    quot = {k: Quotient(F, alpha[k], H.size(k)) for k in range(lo, hi + 1)}
    dC = {k: F.matmul(quot[k + 1].projection, F.matmul(H.complex.d(k), quot[k].section))
          for k in range(lo, hi)}
    HA = {k: Cohomology(F, T.complex.d(k - 1), T.complex.d(k)) for k in range(lo + 1, hi)}
    HB = {k: Cohomology(F, H.complex.d(k - 1), H.complex.d(k)) for k in range(lo + 1, hi)}
    HC = {k: Cohomology(F, dC[k - 1], dC[k]) for k in range(lo + 1, hi)}
    al, be, de = {}, {}, {}
    for k in range(lo + 1, hi):
        al[k] = induced_map(HA[k], HB[k], alpha[k])
        be[k] = induced_map(HB[k], HC[k], quot[k].projection)
    for k in range(lo + 1, hi - 1):
        # snake: C^k → A^{k+1}
        cols = []
        for r in range(HC[k].dim):
            lift = F.matmul(quot[k].section, HC[k].reps[:, r])
            db = F.matmul(H.complex.d(k), lift)
            pre = solve(F, alpha[k + 1], db)
            if pre is None:
                raise ValueError("snake lift failed")
            cols.append(HA[k + 1].coords(pre))
        de[k] = (np.array(cols, dtype=F.dtype).T if cols else F.zeros((HA[k + 1].dim, 0)))

    def exact_at(into, out, mid_dim):
        # ker(out) = im(into) with out∘into = 0
        r_in = rank(F, into) if into.size else 0
        r_out = rank(F, out) if out.size else 0
        comp_zero = True
        if into.size and out.size:
            comp_zero = F.is_zero(F.matmul(out, into))
        return comp_zero and (mid_dim - r_out == r_in)

    expected = {}
    if check_values:
        res_m = getattr(P, "resolution", None)
        res_n = getattr(Q, "resolution", None)
        for k in range(a, b + 1):
            expected[("tor", k)] = hyper_tor_stabilized(P, Q, k).value
            expected[("sg", k)] = sg_hom_vogel_route(P, Q, k).value
            if res_m is not None and res_n is not None:
                expected[("hom", k)] = ext(res_m.module, res_n.module, k, res_m)

    nodes, ranks = [], {}
    for k in range(a, b + 1):
        nodes.append(LESNode("tor", k, HA[k].dim, exact_at(de[k - 1], al[k], HA[k].dim), expected.get(("tor", k))))
        nodes.append(LESNode("hom", k, HB[k].dim, exact_at(al[k], be[k], HB[k].dim), expected.get(("hom", k))))
        nodes.append(LESNode("sg", k, HC[k].dim, exact_at(be[k], de[k], HC[k].dim), expected.get(("sg", k))))
        ranks[k] = (rank(F, al[k]) if al[k].size else 0, rank(F, be[k]) if be[k].size else 0,
                    rank(F, de[k]) if de[k].size else 0)
    return LESReport((a, b), nodes, ranks)


def les3_table(M: ModuleRep, N: ModuleRep, window=(-4, 4), depth: int = 8):
    """Per-degree values of the four-case formula; requires Ext^i(M,R)=0 for 1 ≤ i ≤ depth."""
    res = Resolution(M)
    bad = perp_R(M, depth, res)
    if bad is not None:
        raise ValueError(f"Ext^{bad}(M, R) != 0: M is not in the left perpendicular of R")
    Md = dual_module(M)
    out = {}
    for n in range(window[0], window[1] + 1):
        if n <= -2:
            out[n] = tor(Md, N, -(n + 1))
        elif n == -1:
            out[n] = phi_kernel(M, N)
        elif n == 0:
            out[n] = stable_hom(M, N)
        else:
            out[n] = ext(M, N, n, res)
    return out


@dataclass
class IsoVerdict:
    verdict: str  # "certified-isomorphic" or "undetermined"
    depth: Optional[int] = None
    witness: Optional[np.ndarray] = None


def sg_iso_test(M: ModuleRep, N: ModuleRep, depth: int = 4, shift: int = 0) -> IsoVerdict:
    """Look for Ω^d(M) ≅ Ω^{d+shift}(N) as modules for 1 ≤ d ≤ depth."""
    rm, rn = Resolution(M), Resolution(N)
    for d in range(1, depth + 1):
        A, B = rm.syzygy(d), rn.syzygy(d + shift)
        verdict, w = find_isomorphism(A, B)
        if verdict == "iso":
            return IsoVerdict("certified-isomorphic", d, w)
    return IsoVerdict("undetermined")


# oracle


def tate_oracle(M: ModuleRep, N: ModuleRep, n: int, cres=None) -> int:
    """H^n Hom(C, N) for a complete resolution C of M."""
    from .resolutions import complete_resolution
    cres = cres or complete_resolution(M, (min(-abs(n) - 3, -4), max(abs(n) + 3, 4)), allow_projective=True)
    C = cres.window(-n - 2, -n + 2)
    H = hom_complex(C, stalk(N), n - 1, n + 1)
    return cohomology(H.complex, n).dim
