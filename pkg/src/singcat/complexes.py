"""Finitely supported cochain complexes and graded maps between them.

Conventions fixed here and used everywhere else:

* shift: (ΣX)^n = X^{n+1} with differential -d_X;
* Hom complex: (df)^p = d_Y f^p - (-1)^n f^{p+1} d_X for f of degree n;
* tensor totalisation: d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

import numpy as np

from .exactlin import Basis, Field, colspace, hstack, nullspace, rank, rref, solve, vstack
from .modrep import ModuleRep, dual_module, hom_space, regular, tensor_over_R, zero_module


class ComplexError(ValueError):
    pass


Term = Union[ModuleRep, int]


class Complex:
    """Terms in degrees lo..hi and differentials d^n : X^n -> X^{n+1}.

    Terms are modules or plain dimensions (vector spaces).  Everything
    outside the support is zero.
    """

    def __init__(self, field: Field, lo: int, terms, diffs=None, algebra=None, side="left",
                 check: bool = True, name: str = ""):
        self.field = field
        self.lo = lo
        self.terms = list(terms)
        self.algebra = algebra
        self.side = side
        self.name = name
        if algebra is None:
            for t in self.terms:
                if isinstance(t, ModuleRep):
                    self.algebra = t.algebra
                    self.side = t.side
                    break
        n = len(self.terms)
        if diffs is None:
            diffs = [field.zeros((self.dimof(self.terms[i + 1]), self.dimof(self.terms[i])))
                     for i in range(n - 1)]
        self.diffs = list(diffs)
        if len(self.diffs) != max(n - 1, 0):
            raise ComplexError("need exactly one differential between consecutive terms")
        if check:
            self.check()

    @staticmethod
    def dimof(t) -> int:
        return t.dim if isinstance(t, ModuleRep) else int(t)

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def is_module_complex(self) -> bool:
        return self.algebra is not None

    def term(self, n: int):
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        if self.is_module_complex:
            return zero_module(self.algebra, self.side)
        return 0

    def dim(self, n: int) -> int:
        return self.dimof(self.term(n))

    def d(self, n: int) -> np.ndarray:
        """d^n : X^n -> X^{n+1}."""
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return self.field.zeros((self.dim(n + 1), self.dim(n)))

    def check(self):
        F = self.field
        for n in range(self.lo, self.hi):
            dn = self.d(n)
            if dn.shape != (self.dim(n + 1), self.dim(n)):
                raise ComplexError(f"differential d^{n} has shape {dn.shape}")
            if n + 1 < self.hi and not F.is_zero(F.matmul(self.d(n + 1), dn)):
                raise ComplexError(f"d^{n + 1} d^{n} != 0")
            s, t = self.term(n), self.term(n + 1)
            if isinstance(s, ModuleRep) and isinstance(t, ModuleRep) and s.dim and t.dim:
                for a in range(s.algebra.dim):
                    if not F.is_zero(F.reduce(F.matmul(t.action[a], dn) - F.matmul(dn, s.action[a]))):
                        raise ComplexError(f"d^{n} is not a module map")

    def total_dim(self) -> int:
        return sum(self.dimof(t) for t in self.terms)

    def support(self):
        """Smallest [a, b] containing all nonzero terms, or None."""
        nz = [n for n in range(self.lo, self.hi + 1) if self.dim(n)]
        return (nz[0], nz[-1]) if nz else None

    def __repr__(self):
        dims = ",".join(str(self.dim(n)) for n in range(self.lo, self.hi + 1))
        return f"Complex[{self.lo}..{self.hi}]({dims})"

    # constructions

    def restrict(self, a: int, b: int) -> "Complex":
        """Terms in degrees a..b (brutal truncation to a window)."""
        if b < a:
            return Complex(self.field, a, [], [], algebra=self.algebra, side=self.side, check=False)
        terms = [self.term(n) for n in range(a, b + 1)]
        diffs = [self.d(n) for n in range(a, b)]
        return Complex(self.field, a, terms, diffs, algebra=self.algebra, side=self.side, check=False,
                       name=self.name)

    def shift(self, k: int) -> "Complex":
        """Σ^k X: (Σ^k X)^m = X^{m+k}, differential (-1)^k d."""
        F = self.field
        sign = -1 if k % 2 else 1
        diffs = [F.reduce(sign * d) for d in self.diffs]
        return Complex(F, self.lo - k, self.terms, diffs, algebra=self.algebra, side=self.side,
                       check=False, name=self.name)

    def equal(self, other: "Complex") -> bool:
        if (self.lo, self.hi) != (other.lo, other.hi):
            return False
        for n in range(self.lo, self.hi + 1):
            if self.dim(n) != other.dim(n):
                return False
        return all(np.array_equal(a, b) for a, b in zip(self.diffs, other.diffs))

    def identity(self) -> "GradedMap":
        F = self.field
        return GradedMap(self, self, 0, {n: F.eye(self.dim(n)) for n in range(self.lo, self.hi + 1)})

    def differential_map(self) -> "GradedMap":
        return GradedMap(self, self, 1, {n: self.d(n) for n in range(self.lo, self.hi)})


def stalk(M: Term, degree: int = 0, field: Optional[Field] = None) -> Complex:
    F = M.field if isinstance(M, ModuleRep) else field
    return Complex(F, degree, [M], [])


def zero_complex(like: Complex) -> Complex:
    return Complex(like.field, 0, [], [], algebra=like.algebra, side=like.side, check=False)


# graded maps


class GradedMap:
    """f = (f^p): X^p -> Y^{p+degree}; missing components are zero."""

    def __init__(self, source: Complex, target: Complex, degree: int, comps=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = {}
        for p, m in (comps or {}).items():
            if source.dim(p) and target.dim(p + degree):
                self.comps[p] = m

    def comp(self, p: int) -> np.ndarray:
        if p in self.comps:
            return self.comps[p]
        return self.source.field.zeros((self.target.dim(p + self.degree), self.source.dim(p)))

    def degrees(self):
        X = self.source
        return [p for p in range(X.lo, X.hi + 1) if X.dim(p) and self.target.dim(p + self.degree)]

    def __add__(self, other):
        F = self.source.field
        assert self.degree == other.degree
        ps = set(self.comps) | set(other.comps)
        return GradedMap(self.source, self.target, self.degree,
                         {p: F.reduce(self.comp(p) + other.comp(p)) for p in ps})

    def scale(self, c):
        F = self.source.field
        return GradedMap(self.source, self.target, self.degree,
                         {p: F.reduce(F.scalar(c) * m) for p, m in self.comps.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def compose(self, g: "GradedMap") -> "GradedMap":
        """self ∘ g."""
        F = self.source.field
        comps = {}
        for p, m in g.comps.items():
            q = p + g.degree
            if q in self.comps:
                comps[p] = F.matmul(self.comps[q], m)
        return GradedMap(g.source, self.target, self.degree + g.degree, comps)

    def differential(self) -> "GradedMap":
        """(df)^p = d_Y f^p - (-1)^n f^{p+1} d_X."""
        F = self.source.field
        X, Y, n = self.source, self.target, self.degree
        sign = -1 if n % 2 else 1
        comps = {}
        for p in range(min(X.lo, Y.lo - n) - 1, max(X.hi, Y.hi - n) + 1):
            if not (X.dim(p) and Y.dim(p + n + 1)):
                continue
            v = F.matmul(Y.d(p + n), self.comp(p)) if Y.dim(p + n) else F.zeros((Y.dim(p + n + 1), X.dim(p)))
            if X.dim(p + 1):
                v = F.reduce(v - sign * F.matmul(self.comp(p + 1), X.d(p)))
            comps[p] = v
        return GradedMap(X, Y, n + 1, comps)

    def is_zero(self) -> bool:
        return all(self.source.field.is_zero(m) for m in self.comps.values())

    def equal(self, other) -> bool:
        return self.degree == other.degree and (self - other).is_zero()

    def is_closed(self) -> bool:
        return self.differential().is_zero()


# truncations and cones


@dataclass
class TruncationTriangle:
    geq: Complex
    lt: Complex
    inc: GradedMap  # σ_{≥n} X -> X
    pr: GradedMap  # X -> σ_{<n} X
    connecting: GradedMap  # σ_{<n} X -> Σ σ_{≥n} X, induced by d^{n-1}


def truncate_geq(X: Complex, n: int) -> Complex:
    lo = max(X.lo, n)
    return X.restrict(lo, X.hi) if lo <= X.hi else Complex(X.field, n, [], [], algebra=X.algebra,
                                                           side=X.side, check=False)


def truncate_lt(X: Complex, n: int) -> Complex:
    hi = min(X.hi, n - 1)
    return X.restrict(X.lo, hi) if hi >= X.lo else Complex(X.field, X.lo, [], [], algebra=X.algebra,
                                                           side=X.side, check=False)


def truncate_leq(X: Complex, n: int) -> Complex:
    return truncate_lt(X, n + 1)


def truncation_triangle(X: Complex, n: int) -> TruncationTriangle:
    F = X.field
    G, L = truncate_geq(X, n), truncate_lt(X, n)
    inc = GradedMap(G, X, 0, {p: F.eye(X.dim(p)) for p in range(max(X.lo, n), X.hi + 1)})
    pr = GradedMap(X, L, 0, {p: F.eye(X.dim(p)) for p in range(X.lo, min(X.hi, n - 1) + 1)})
    SG = G.shift(1)
    conn = GradedMap(L, SG, 0, {n - 1: X.d(n - 1)})
    return TruncationTriangle(G, L, inc, pr, conn)


@dataclass
class Cone:
    C: Complex
    j: GradedMap  # Y -> C, degree 0
    p: GradedMap  # C -> X, degree 1
    s: GradedMap  # X -> C, degree -1
    t: GradedMap  # C -> Y, degree 0

    def identities(self, f: GradedMap) -> dict:
        X, Y, C = self.p.target, self.j.source, self.C
        out = {
            "p∘j=0": self.p.compose(self.j).is_zero(),
            "t∘s=0": self.t.compose(self.s).is_zero(),
            "s∘p+j∘t=Id": (self.s.compose(self.p) + self.j.compose(self.t)).equal(C.identity()),
            "t∘j=Id": self.t.compose(self.j).equal(Y.identity()),
            "p∘s=Id": self.p.compose(self.s).equal(X.identity()),
            "d(j)=0": self.j.is_closed(),
            "d(p)=0": self.p.is_closed(),
            "d(s)=j∘f": self.s.differential().equal(self.j.compose(f)),
            "d(t)=-f∘p": self.t.differential().equal(-(f.compose(self.p))),
        }
        return out


def cone(f: GradedMap) -> Cone:
    """Mapping cone C^n = X^{n+1} ⊕ Y^n with d = [[-d_X, 0], [f, d_Y]]."""
    if f.degree != 0 or not f.is_closed():
        raise ComplexError("cone needs a closed morphism of degree 0")
    X, Y = f.source, f.target
    F = X.field
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    terms, diffs = [], []
    modules = X.is_module_complex or Y.is_module_complex
    from .modrep import direct_sum
    for n in range(lo, hi + 1):
        if modules:
            a, b = X.term(n + 1), Y.term(n)
            parts = [m for m in (a, b) if m.dim]
            terms.append(direct_sum([a, b], name="cone") if parts else a)
        else:
            terms.append(X.dim(n + 1) + Y.dim(n))
    for n in range(lo, hi):
        xa, ya, xb, yb = X.dim(n + 1), Y.dim(n), X.dim(n + 2), Y.dim(n + 1)
        m = F.zeros((xb + yb, xa + ya))
        if xa and xb:
            m[:xb, :xa] = F.reduce(-X.d(n + 1))
        if xa and yb:
            m[xb:, :xa] = f.comp(n + 1)
        if ya and yb:
            m[xb:, xa:] = Y.d(n)
        diffs.append(m)
    C = Complex(F, lo, terms, diffs, algebra=X.algebra or Y.algebra, side=X.side)
    j, p, s, t = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        xa, ya = X.dim(n + 1), Y.dim(n)
        if ya:
            m = F.zeros((xa + ya, ya))
            m[xa:, :] = F.eye(ya)
            j[n] = m
            m = F.zeros((ya, xa + ya))
            m[:, xa:] = F.eye(ya)
            t[n] = m
        if xa:
            m = F.zeros((xa, xa + ya))
            m[:, :xa] = F.eye(xa)
            p[n] = m
            m = F.zeros((xa + ya, xa))
            m[:xa, :] = F.eye(xa)
            s[n + 1] = m
    out = Cone(C, GradedMap(Y, C, 0, j), GradedMap(C, X, 1, p), GradedMap(X, C, -1, s), GradedMap(C, Y, 0, t))
    ids = out.identities(f)
    if not all(ids.values()):
        raise ComplexError(f"cone identities failed: {[k for k, v in ids.items() if not v]}")
    return out


def contraction_of_identity_cone(X: Complex):
    """For C = cone(Id_X) return ε of degree -1 with dε = Id_C."""
    cn = cone(X.identity())
    C = cn.C
    F = X.field
    comps = {}
    for n in range(C.lo, C.hi + 1):
        xa, ya = X.dim(n + 1), X.dim(n)
        xb, yb = X.dim(n), X.dim(n - 1)
        if not (xa + ya) or not (xb + yb):
            continue
        m = F.zeros((xb + yb, xa + ya))
        if ya:
            m[:xb, xa:] = F.eye(ya)
        comps[n] = m
    eps = GradedMap(C, C, -1, comps)
    return cn, eps


# cohomology


class Cohomology:
    """H = ker(d_out) / im(d_in) at one spot of a complex."""

    def __init__(self, field: Field, d_in: np.ndarray, d_out: np.ndarray):
        self.field = F = field
        n = d_out.shape[1]
        self.n = n
        self.B = colspace(F, d_in) if d_in.size else F.zeros((n, 0))
        self.Z = nullspace(F, d_out) if d_out.shape[0] else F.eye(n)
        k = self.B.shape[1]
        both = hstack(F, [self.B, self.Z], n)
        _, piv = rref(F, both)
        reps = [both[:, c] for c in piv if c >= k]
        self.reps = np.array(reps, dtype=F.dtype).T if reps else F.zeros((n, 0))
        self.dim = self.reps.shape[1]
        self._zb = Basis(F, hstack(F, [self.B, self.reps], n))
        self._k = k

    def coords(self, z: np.ndarray) -> np.ndarray:
        """Class of cocycle(s) ``z`` in the representative basis."""
        c = self._zb.coords(z)
        return c[self._k:] if c.ndim == 1 else c[self._k:, :]

    def is_cocycle_space(self, z) -> bool:
        return self._zb.contains(z)


def cohomology(X: Complex, n: int) -> Cohomology:
    return Cohomology(X.field, X.d(n - 1), X.d(n))


def cohomology_dims(X: Complex):
    return {n: cohomology(X, n).dim for n in range(X.lo, X.hi + 1)}


def induced_map(Hs: Cohomology, Ht: Cohomology, f: np.ndarray) -> np.ndarray:
    """Matrix of the map on cohomology induced by a cochain-level map f."""
    F = Hs.field
    if Hs.dim == 0:
        return F.zeros((Ht.dim, 0))
    img = F.matmul(f, Hs.reps)
    return Ht.coords(img)


def is_iso(F: Field, m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


# Hom complexes


class HomComplex:
    """Hom(X, Y) restricted to degrees n0..n1, as a complex of spaces.

    Degree n is the direct sum over p of Hom(X^p, Y^{p+n}) (module maps when
    X and Y are module complexes, all linear maps otherwise).  ``blocks[n]``
    lists ``(p, offset, size, HomSpace|None)``.
    """

    def __init__(self, X: Complex, Y: Complex, n0: Optional[int] = None, n1: Optional[int] = None):
        F = X.field
        self.X, self.Y, self.field = X, Y, F
        lo, hi = Y.lo - X.hi, Y.hi - X.lo
        n0 = lo if n0 is None else n0
        n1 = hi if n1 is None else n1
        self.n0, self.n1 = n0, n1
        modules = X.is_module_complex and Y.is_module_complex
        self.modules = modules
        self.blocks = {}
        self._hs = {}
        for n in range(n0, n1 + 1):
            blk, off = [], 0
            for p in range(X.lo, X.hi + 1):
                if not (X.dim(p) and Y.dim(p + n)):
                    continue
                if modules:
                    key = (p, p + n)
                    if key not in self._hs:
                        self._hs[key] = hom_space(X.term(p), Y.term(p + n))
                    H = self._hs[key]
                    size = H.dim
                else:
                    H = None
                    size = X.dim(p) * Y.dim(p + n)
                if size:
                    blk.append((p, off, size, H))
                    off += size
            self.blocks[n] = blk
        diffs = [self._diff(n) for n in range(n0, n1)]
        self.complex = Complex(F, n0, [self.size(n) for n in range(n0, n1 + 1)], diffs, check=False)

    def size(self, n: int) -> int:
        if n not in self.blocks:
            return 0
        return sum(b[2] for b in self.blocks[n])

    def element(self, n: int, v: np.ndarray) -> GradedMap:
        """Coordinate vector in degree n -> graded map."""
        F = self.field
        comps = {}
        for p, off, size, H in self.blocks.get(n, []):
            c = v[off:off + size]
            if H is None:
                comps[p] = c.reshape(self.Y.dim(p + n), self.X.dim(p))
            else:
                comps[p] = H.element(c)
        return GradedMap(self.X, self.Y, n, comps)

    def coords(self, f: GradedMap) -> np.ndarray:
        F = self.field
        n = f.degree
        v = F.zeros(self.size(n))
        for p, off, size, H in self.blocks.get(n, []):
            m = f.comp(p)
            v[off:off + size] = m.reshape(-1) if H is None else H.coords(m)
        return v

    def _diff(self, n: int) -> np.ndarray:
        F = self.field
        src, tgt = self.size(n), self.size(n + 1)
        out = F.zeros((tgt, src))
        if not src or not tgt:
            return out
        X, Y = self.X, self.Y
        sign = -1 if n % 2 else 1
        tblocks = {p: (off, size, H) for p, off, size, H in self.blocks[n + 1]}
        for p, off, size, H in self.blocks[n]:
            for k in range(size):
                if H is None:
                    m = F.zeros(size)
                    m[k] = F.scalar(1)
                    f = m.reshape(Y.dim(p + n), X.dim(p))
                else:
                    f = H.basis[k]
                # contributes to (df)^p via d_Y f and to (df)^{p-1} via f d_X^{p-1}
                if p in tblocks:
                    toff, tsize, TH = tblocks[p]
                    g = F.matmul(Y.d(p + n), f)
                    out[toff:toff + tsize, off + k] = F.reduce(
                        out[toff:toff + tsize, off + k] + (g.reshape(-1) if TH is None else TH.coords(g)))
                if p - 1 in tblocks:
                    toff, tsize, TH = tblocks[p - 1]
                    g = F.reduce(-sign * F.matmul(f, X.d(p - 1)))
                    out[toff:toff + tsize, off + k] = F.reduce(
                        out[toff:toff + tsize, off + k] + (g.reshape(-1) if TH is None else TH.coords(g)))
        return out

    def cohomology(self, n: int) -> Cohomology:
        """Only meaningful for n0 < n < n1, where both differentials are present."""
        return cohomology(self.complex, n)


def hom_complex(X: Complex, Y: Complex, n0=None, n1=None) -> HomComplex:
    if X.is_module_complex and Y.is_module_complex:
        if X.side != Y.side:
            raise ComplexError("complexes are over different sides")
        if X.algebra is not Y.algebra and not X.algebra.equal(Y.algebra):
            raise ComplexError("complexes are over different algebras")
    return HomComplex(X, Y, n0, n1)


def homotopy_classes_dim(X: Complex, Y: Complex) -> int:
    """dim cochain maps - dim null-homotopic maps, by direct linear systems."""
    H = HomComplex(X, Y, -1, 1)
    F = X.field
    z = nullspace(F, H.complex.d(0)).shape[1] if H.size(1) else H.size(0)
    b = rank(F, H.complex.d(-1)) if H.size(-1) and H.size(0) else 0
    return z - b


# duals and tensor complexes


def dual_complex(P: Complex) -> Complex:
    """P* = Hom(P, Λ) with (P*)^n = (P^{-n})* and d(f) = (-1)^{n+1} f∘d_P."""
    A, F = P.algebra, P.field
    other = "right" if P.side == "left" else "left"
    lo, hi = -P.hi, -P.lo
    duals = [dual_module(P.term(-n)) for n in range(lo, hi + 1)]
    diffs = []
    for i, n in enumerate(range(lo, hi)):
        D0, D1 = duals[i], duals[i + 1]
        m = F.zeros((D1.dim, D0.dim))
        if D0.dim and D1.dim:
            basis = _dual_basis(D1)
            dP = P.d(-n - 1)
            sign = -1 if (n + 1) % 2 else 1
            for k, f in enumerate(D0.maps):
                g = F.reduce(sign * F.matmul(f, dP))
                m[:, k] = basis.coords(g.reshape(-1))
        diffs.append(m)
    out = Complex(F, lo, duals, diffs, algebra=A, side=other, name=f"{P.name}*")
    out.dual_of = P
    return out


def _dual_basis(D: ModuleRep) -> Basis:
    if not hasattr(D, "_basis"):
        cols = np.array([f.reshape(-1) for f in D.maps], dtype=D.field.dtype).T
        D._basis = Basis(D.field, cols)
    return D._basis


class TensorComplex:
    """Total complex of Pr ⊗_Λ Ql (Pr right, Ql left) with Koszul signs.

    ``blocks[n]`` lists ``(i, j, offset, TensorProduct)`` with i + j = n.
    """

    def __init__(self, Pr: Complex, Ql: Complex, n0=None, n1=None):
        F = Pr.field
        self.P, self.Q, self.field = Pr, Ql, F
        lo, hi = Pr.lo + Ql.lo, Pr.hi + Ql.hi
        n0 = lo if n0 is None else n0
        n1 = hi if n1 is None else n1
        self.n0, self.n1 = n0, n1
        self.blocks = {}
        self._tp = {}
        for n in range(n0 - 1, n1 + 2):
            blk, off = [], 0
            for i in range(Pr.lo, Pr.hi + 1):
                j = n - i
                if not (Pr.dim(i) and Ql.dim(j)):
                    continue
                T = self._tensor(i, j)
                if T.dim:
                    blk.append((i, j, off, T))
                    off += T.dim
            self.blocks[n] = blk
        terms = [self.size(n) for n in range(n0, n1 + 1)]
        diffs = [self._diff(n) for n in range(n0, n1)]
        self.complex = Complex(F, n0, terms, diffs)

    def _tensor(self, i, j):
        if (i, j) not in self._tp:
            self._tp[(i, j)] = tensor_over_R(self.P.term(i), self.Q.term(j))
        return self._tp[(i, j)]

    def size(self, n):
        return sum(b[3].dim for b in self.blocks.get(n, []))

    def _diff(self, n):
        F = self.field
        out = F.zeros((self.size(n + 1), self.size(n)))
        tb = {(i, j): (off, T) for i, j, off, T in self.blocks.get(n + 1, [])}
        for i, j, off, T in self.blocks.get(n, []):
            dm, dn = T.dm, T.dn
            if (i + 1, j) in tb:
                toff, TT = tb[(i + 1, j)]
                m = np.kron(self.P.d(i), F.eye(dn))
                blk = F.matmul(TT.projection, F.matmul(F.reduce(m), T.section))
                out[toff:toff + TT.dim, off:off + T.dim] = F.reduce(out[toff:toff + TT.dim, off:off + T.dim] + blk)
            if (i, j + 1) in tb:
                toff, TT = tb[(i, j + 1)]
                sign = -1 if i % 2 else 1
                m = F.reduce(sign * np.kron(F.eye(dm), self.Q.d(j)))
                blk = F.matmul(TT.projection, F.matmul(m, T.section))
                out[toff:toff + TT.dim, off:off + T.dim] = F.reduce(out[toff:toff + TT.dim, off:off + T.dim] + blk)
        return out


def tensor_complex(Pr: Complex, Ql: Complex, n0=None, n1=None) -> TensorComplex:
    if Pr.side != "right" or Ql.side != "left":
        raise ComplexError("tensor_complex needs right modules on the left factor")
    if Pr.algebra is not Ql.algebra and not Pr.algebra.equal(Ql.algebra):
        raise ComplexError("complexes are over different algebras")
    return TensorComplex(Pr, Ql, n0, n1)


def canonical_map(T: TensorComplex, H: HomComplex, n: int) -> np.ndarray:
    """P*⊗Q -> Hom(P, Q) in degree n: f⊗x ↦ (y ↦ (-1)^{|x||y|} f(y) x).

    ``T.P`` must be ``dual_complex(H.X)`` and ``T.Q`` must be ``H.Y``.
    """
    F = T.field
    Pd, Q = T.P, T.Q
    P = H.X
    A = P.algebra
    out = F.zeros((H.size(n), T.size(n)))
    hb = {p: (off, size, HS) for p, off, size, HS in H.blocks.get(n, [])}
    for i, j, off, TP in T.blocks.get(n, []):
        # f in (P^{-i})*, x in Q^j; lands in Hom(P^{-i}, Q^j) = block p=-i
        p = -i
        if p not in hb:
            continue
        hoff, hsize, HS = hb[p]
        D = Pd.term(i)
        dx = Q.dim(j)
        sign = -1 if (i * j) % 2 else 1
        Qact = Q.term(j).action
        for k in range(TP.dim):
            vec = TP.section[:, k]
            g = F.zeros((dx, P.dim(p)))
            for idx in np.nonzero(vec)[0]:
                a, b = divmod(int(idx), dx)
                f = D.maps[a]  # dim Λ × dim P^p
                # column y: f(y) acting on basis vector x_b
                g = F.reduce(g + vec[idx] * np.einsum("ay,ax->xy", f, Qact[:, :, b]))
            g = F.reduce(sign * g)
            out[hoff:hoff + hsize, off + k] = HS.coords(g) if HS is not None else g.reshape(-1)
    return out


# complexes known by a rule


class LazyComplex:
    """A complex given degreewise, possibly unbounded on either side.

    ``term(n)`` returns the module (or dimension) in degree n and ``diff(n)``
    the matrix of d^n.  ``lo``/``hi`` bound the support; None means
    unbounded in that direction.  Only finite windows are ever materialised.
    """

    def __init__(self, field, term, diff, lo=None, hi=None, algebra=None, side="left", name=""):
        self.field = field
        self._term = term
        self._diff = diff
        self.lo = lo
        self.hi = hi
        self.algebra = algebra
        self.side = side
        self.name = name

    @classmethod
    def from_complex(cls, C: Complex) -> "LazyComplex":
        return cls(C.field, C.term, C.d, C.lo, C.hi, algebra=C.algebra, side=C.side, name=C.name)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def clamp(self, a: int, b: int):
        if self.lo is not None:
            a = max(a, self.lo)
        if self.hi is not None:
            b = min(b, self.hi)
        return a, b

    def term(self, n):
        a, b = self.clamp(n, n)
        if a > b:
            return zero_module(self.algebra, self.side) if self.algebra is not None else 0
        return self._term(n)

    def window(self, a: int, b: int) -> Complex:
        """Brutal truncation to degrees a..b."""
        a0, b0 = self.clamp(a, b)
        if a0 > b0:
            return Complex(self.field, a, [], [], algebra=self.algebra, side=self.side, check=False)
        terms = [self._term(n) for n in range(a0, b0 + 1)]
        diffs = [self._diff(n) for n in range(a0, b0)]
        return Complex(self.field, a0, terms, diffs, algebra=self.algebra, side=self.side,
                       check=False, name=self.name)

    def __repr__(self):
        lo = "-inf" if self.lo is None else self.lo
        hi = "+inf" if self.hi is None else self.hi
        return f"LazyComplex({self.name or '?'}, [{lo}, {hi}])"
