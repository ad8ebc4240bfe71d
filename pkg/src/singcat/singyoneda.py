"""Noncommutative differential forms, θ, and the singular Yoneda complexes.

Ω_nc(X) = sΛ̄ ⊗_E X with the twisted action
    a ▶ (s c ⊗ x) = s \\overline{ac} ⊗ x - s ā ⊗ c x.
Its basis is ``pair_basis(A, 1, X.vertex)``, so the basis of
(sΛ̄)^{⊗n} ⊗ Ω_nc(X) is literally the basis of (sΛ̄)^{⊗(n+1)} ⊗ X.  All
maps below (Ω_nc(f), θ, the structure maps of SY) exploit that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .baryoneda import (AxiomReport, BarTensor, YonedaElement, YonedaSpace, bar_products, cup, identity,
                        iota, pair_basis, random_element, stalk_yoneda)
from .complexes import Complex, is_iso
from .exactlin import rank, solve
from .modrep import ModuleRep, zero_module
from .sgcalc import StabilizedValue


class OmegaModule(ModuleRep):
    """Ω_nc(base) with the twisted action; ``p`` counts the iterations."""

    def __init__(self, base: ModuleRep):
        A, F = base.algebra, base.field
        B = pair_basis(A, 1, base.vertex)
        comp = set(A.complement)
        d = B.size
        act = F.zeros((A.dim, d, d))
        for j, (w, i) in enumerate(B.items):
            c = w[0]
            for a in range(A.dim):
                for k, v in bar_products(A, a, c):
                    act[a, B.index[((k,), i)], j] += v
                if a in comp and A.rvert[a] == A.lvert[c]:
                    # c x lies in e_{lvert(c)} X, so s ā ⊗ c x vanishes otherwise
                    col = base.action[c][:, i]
                    for ii in np.nonzero(col)[0]:
                        act[a, B.index[((a,), int(ii))], j] -= col[ii]
        act = F.reduce(act)
        super().__init__(A, "left", d, act, B.lvert.tolist(), name=f"Omega({base.name})", check=True)
        self.base = base
        self.p = getattr(base, "p", 0) + 1


def omega_module(X: ModuleRep) -> ModuleRep:
    c = X.__dict__
    if "_omega" not in c:
        c["_omega"] = OmegaModule(X) if X.dim else _zero_omega(X)
    return c["_omega"]


def _zero_omega(X):
    Z = zero_module(X.algebra)
    Z.base, Z.p = X, getattr(X, "p", 0) + 1
    return Z


def omega_nc(X):
    """Ω_nc of a module or of a complex (terms shift down by one, d ↦ -Id⊗d)."""
    if isinstance(X, ModuleRep):
        return omega_module(X)
    c = X.__dict__
    if "_omega" in c:
        return c["_omega"]
    A, F = X.algebra, X.field
    terms = [omega_module(X.term(q)) for q in range(X.lo, X.hi + 1)]
    diffs = []
    for q in range(X.lo, X.hi):
        S, T = X.term(q), X.term(q + 1)
        Bs, Bt = pair_basis(A, 1, S.vertex), pair_basis(A, 1, T.vertex)
        m = F.zeros((Bt.size, Bs.size))
        dq = X.d(q)
        for j, (w, i) in enumerate(Bs.items):
            col = dq[:, i]
            for ii in np.nonzero(col)[0]:
                m[Bt.index[(w, int(ii))], j] -= col[ii]
        diffs.append(F.reduce(m))
    out = Complex(F, X.lo - 1, terms, diffs, algebra=A, side="left", name=f"Omega({X.name})")
    out.base = X
    c["_omega"] = out
    return out


def omega_power(X, p: int):
    for _ in range(p):
        X = omega_nc(X)
    return X


def stalk(M: ModuleRep, degree: int = 0) -> Complex:
    """Cached stalk complex so that Ω-towers of the same module coincide."""
    c = M.__dict__.setdefault("_stalks", {})
    if degree not in c:
        c[degree] = Complex(M.field, degree, [M], [], algebra=M.algebra, side="left", name=M.name)
    return c[degree]


def omega_nc_map(f: YonedaElement) -> YonedaElement:
    """Ω_nc(f)(s a_1 ⊗ rest ⊗ x) = (-1)^{|f|} s a_1 ⊗ f(rest ⊗ x)."""
    A, F = f.algebra, f.field
    OX, OY = omega_nc(f.X), omega_nc(f.Y)
    sgn = F.scalar(-1 if f.degree % 2 else 1)
    out = {}
    for (n, q), m in f.comps.items():
        src = f.basis(n, q)
        tgt = pair_basis(A, n + 1, f.X.term(q).vertex)  # = basis of W_n(Ω X^q)
        Yt = f.Y.term(q - n + f.degree)
        rows = pair_basis(A, 1, Yt.vertex)
        g = F.zeros((rows.size, tgt.size))
        for j, (w, i) in enumerate(tgt.items):
            col = m[:, src.index[(w[1:], i)]]
            for r in np.nonzero(col)[0]:
                g[rows.index[((w[0],), int(r))], j] = sgn * col[r]
        out[(n, q - 1)] = F.reduce(g)
    return YonedaElement(OX, OY, f.degree, out)


def theta(X: Complex) -> YonedaElement:
    """θ_X ∈ 𝒴_1(X, Ω_nc X): the identity on s ā ⊗ x."""
    F = X.field
    OX = omega_nc(X)
    comps = {}
    for q in range(X.lo, X.hi + 1):
        if X.dim(q):
            n = pair_basis(X.algebra, 1, X.term(q).vertex).size
            if n:
                comps[(1, q)] = F.eye(n)
    return YonedaElement(X, OX, 0, comps)


def theta_checks(X: Complex, rng=None, samples: int = 50, nmax: int = 2) -> AxiomReport:
    """θ closed, natural on random f, and Ω_nc θ_X = θ_{Ω_nc X}."""
    rng = rng or np.random.default_rng(0)
    rep = AxiomReport()
    th = theta(X)
    rep.checks["theta closed"] = th.delta().is_zero()
    rep.checks["omega(theta) = theta(omega)"] = omega_nc_map(th).equal(theta(omega_nc(X)))
    nat = True
    dg = True
    for _ in range(samples):
        n = int(rng.integers(0, nmax + 1))
        t = int(rng.integers(-1, 2))
        f = random_element(rng, X, X, n, t)
        if not cup(theta(X), f).equal(cup(omega_nc_map(f), th)):
            nat = False
        if not omega_nc_map(f.delta()).equal(omega_nc_map(f).delta()):
            dg = False
    rep.checks["theta natural"] = nat
    rep.checks["omega commutes with delta"] = dg
    return rep


def functoriality_check(X: Complex, rng=None, samples: int = 20) -> bool:
    rng = rng or np.random.default_rng(1)
    for _ in range(samples):
        f = random_element(rng, X, X, int(rng.integers(0, 2)), int(rng.integers(-1, 2)))
        g = random_element(rng, X, X, int(rng.integers(0, 2)), int(rng.integers(-1, 2)))
        if not omega_nc_map(cup(g, f)).equal(cup(omega_nc_map(g), omega_nc_map(f))):
            return False
    return True


# singular Yoneda complexes


class SYStage:
    """H^t 𝒴(M, Ω^p N) with the θ-pushforward to the next stage."""

    def __init__(self, M: ModuleRep, N: ModuleRep, t: int, p: int):
        self.M, self.N, self.t, self.p = M, N, t, p
        self.X = stalk(M)
        self.Y = omega_power(stalk(N), p)
        self.space = YonedaSpace(self.X, self.Y, t, max(t + p, 0))
        self.coh = stalk_yoneda(self.X, self.Y, t)

    @property
    def dim(self):
        return self.coh.dim

    def element(self, v) -> YonedaElement:
        return self.space.element(v)

    def class_of(self, f: YonedaElement) -> np.ndarray:
        return self.coh.coords(self.space.coords(f))

    def push(self, f: YonedaElement) -> YonedaElement:
        return cup(theta(self.Y), f)

    def map_to(self, other: "SYStage") -> np.ndarray:
        F = self.X.field
        out = F.zeros((other.dim, self.dim))
        for k in range(self.dim):
            out[:, k] = other.class_of(self.push(self.element(self.coh.reps[:, k])))
        return out


def _stages(M, N, t):
    c = M.__dict__.setdefault("_sy_stages", {})
    key = (id(N), t)
    if key not in c:
        c[key] = {}
    return c[key]


def sy_stage(M, N, t, p) -> SYStage:
    st = _stages(M, N, t)
    if p not in st:
        st[p] = SYStage(M, N, t, p)
    return st[p]


def sy_hom(M: ModuleRep, N: ModuleRep, t: int, p_max: Optional[int] = None,
           start: Optional[int] = None) -> StabilizedValue:
    """colim_p H^t 𝒴(M, Ω_nc^p N), certified by two consecutive isomorphisms."""
    p = start if start is not None else max(0, -t) + 2
    last = p_max if p_max is not None else p + 6
    F = M.field
    history = []
    while True:
        s = [sy_stage(M, N, t, p + i) for i in range(3)]
        maps = [s[0].map_to(s[1]), s[1].map_to(s[2])]
        history.append((p, s[0].dim))
        if all(is_iso(F, m) for m in maps):
            return StabilizedValue(s[0].dim, p, True, "sy", t, history)
        if p >= last:
            return StabilizedValue(s[0].dim, p, False, "sy", t, history)
        p += 1


@dataclass
class SYElement:
    """The class [f; p] of f ∈ 𝒴(M, Ω_nc^p N)."""
    f: YonedaElement
    p: int
    M: ModuleRep
    N: ModuleRep

    @property
    def degree(self):
        return self.f.degree

    def pushed(self, k: int = 1) -> "SYElement":
        f = self.f
        for i in range(k):
            f = cup(theta(omega_power(stalk(self.N), self.p + i)), f)
        return SYElement(f, self.p + k, self.M, self.N)

    def coords(self) -> np.ndarray:
        return sy_stage(self.M, self.N, self.degree, self.p).class_of(self.f)

    def equal(self, other: "SYElement", extra: int = 0) -> bool:
        """Equal classes at a common stage (optionally after more pushes)."""
        if self.degree != other.degree:
            return False
        q = max(self.p, other.p) + extra
        a, b = self.pushed(q - self.p), other.pushed(q - other.p)
        F = self.f.field
        return F.is_zero(F.reduce(a.coords() - b.coords()))


def sy_unit(M: ModuleRep) -> SYElement:
    return SYElement(identity(stalk(M)), 0, M, M)


def sy_compose(g: SYElement, f: SYElement) -> SYElement:
    """[g;q] ⊙ [f;p] = [Ω_nc^p(g) ⊙ f; p+q]."""
    if f.N is not g.M:
        raise ValueError("sy_compose: classes are not composable")
    h = g.f
    for _ in range(f.p):
        h = omega_nc_map(h)
    return SYElement(cup(h, f.f), f.p + g.p, f.M, g.N)


def sy_basis(M: ModuleRep, N: ModuleRep, t: int, p: int) -> list:
    st = sy_stage(M, N, t, p)
    return [SYElement(st.element(st.coh.reps[:, k]), p, M, N) for k in range(st.dim)]


@dataclass
class RingTable:
    dims: dict          # t -> StabilizedValue
    basis_stage: dict   # t -> p used for the basis classes
    products: dict      # (s, t) -> matrix: products of basis classes in the degree s+t basis

    def lines(self):
        out = []
        for t in sorted(self.dims):
            v = self.dims[t]
            out.append(f"tate {t} {v.value} {'yes' if v.stabilized else 'no'}")
        for (s, t), m in sorted(self.products.items()):
            out.append(f"prod {s} {t} " + (";".join(",".join(str(x) for x in row) for row in m.tolist()) or "-"))
        return out


def express(M, N, u: int, f: SYElement, base_stage: int) -> Optional[np.ndarray]:
    """Coordinates of [f] in the degree-u basis chosen at ``base_stage``."""
    F = M.field
    q = max(f.p, base_stage)
    st = sy_stage(M, N, u, q)
    basis = [b.pushed(q - base_stage) for b in sy_basis(M, N, u, base_stage)]
    B = np.array([b.coords() for b in basis], dtype=F.dtype).T if basis else F.zeros((st.dim, 0))
    if B.shape[1] != st.dim or rank(F, B) != st.dim:
        return None
    return solve(F, B, f.pushed(q - f.p).coords())


def sy_ring_table(M: ModuleRep, window=(-4, 4), p_max: Optional[int] = None, ring: bool = True,
                  N: Optional[ModuleRep] = None) -> RingTable:
    """Graded dimensions of SY(M, N) and, for N = M, products of basis classes."""
    N = N if N is not None else M
    a, b = window
    dims, stages = {}, {}
    for t in range(a, b + 1):
        v = sy_hom(M, N, t, p_max=p_max)
        dims[t] = v
        stages[t] = v.depth_used
    prods = {}
    if ring and N is M:
        F = M.field
        for s in range(a, b + 1):
            for t in range(a, b + 1):
                u = s + t
                if u not in dims or not dims[s].value or not dims[t].value:
                    continue
                rows = []
                for g in sy_basis(M, M, s, stages[s]):
                    for f in sy_basis(M, M, t, stages[t]):
                        c = express(M, M, u, sy_compose(g, f), stages[u])
                        rows.append(c if c is not None else F.zeros(dims[u].value))
                prods[(s, t)] = np.array(rows, dtype=F.dtype) if rows else F.zeros((0, 0))
    return RingTable(dims, stages, prods)


# the commutative square relating ι, θ and the bar resolution


def lower_arrow(BX: BarTensor, BO: BarTensor) -> YonedaElement:
    """B ⊗ X → B_{≥1} ⊗ X ≅ B ⊗ Ω_nc(X): (a0, w, x) ↦ (a0, w[:-1], s w[-1] ⊗ x)."""
    A, F = BX.algebra, BX.X.field
    X, OX = BX.X, BO.X
    CX, CO = BX.complex, BO.complex
    comps = {}
    for k in range(CX.lo, CX.hi + 1):
        if not CX.dim(k) or not CO.dim(k):
            continue
        m = F.zeros((CO.dim(k), CX.dim(k)))
        for p, q, off, items in BX.where.get(k, []):
            if p == 0:
                continue
            B1 = pair_basis(A, 1, X.term(q).vertex)
            for j, (a0, w, i) in enumerate(items):
                key = (q - 1, (a0, w[:-1], B1.index[((w[-1],), i)]))
                if key in BO.index:
                    m[BO.index[key][1], off + j] = F.scalar(1)
        comps[(0, k)] = m
    return YonedaElement(CX, CO, 0, comps)


def comm_square_check(M: ModuleRep, p_max: int) -> AxiomReport:
    """ι_{ΩX} ⊙ θ_X against (lower arrow) ⊙ ι_X for X = M, up to filtration p_max."""
    X = stalk(M)
    OX = omega_nc(X)
    BX, BO = BarTensor(X, p_max), BarTensor(OX, max(p_max - 1, 0))
    L = lower_arrow(BX, BO)
    rep = AxiomReport()
    rep.checks["lower arrow closed"] = L.delta().is_zero()
    rep.checks["iota closed"] = iota(X, BX).delta().truncate(p_max).is_zero()
    upper = cup(iota(OX, BO), theta(X))
    lower = cup(L, iota(X, BX))
    for n in range(0, p_max + 1):
        a, b = upper.truncate(n), lower.truncate(n)
        rep.checks[f"square filtration {n}"] = a.equal(b)
    return rep
