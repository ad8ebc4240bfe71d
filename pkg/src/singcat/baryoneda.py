"""The normalised E-relative bar resolution and E-relative Yoneda complexes.

Tensors over E are bookkept with the vertex labels of homogeneous basis
elements: a word (c_1, ..., c_n) of complement basis indices survives in
(sΛ̄)^{⊗n} iff rvert(c_i) = lvert(c_{i+1}).  Bar tensors are keys
``(a0, w1, m1, w2, ..., wr, a_end)`` of Λ ⊗ T ⊗ Λ ⊗ ... ⊗ T ⊗ Λ, which
is how iterated tensor products B ⊗_Λ ... ⊗_Λ B are represented.

A Yoneda element f ∈ 𝒴_n(X, Y) of degree t has one matrix per X-degree q,
mapping the basis of (sΛ̄)^{⊗n} ⊗_E X^q to Y^{q-n+t}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .algebra import Algebra
from .complexes import Complex, cohomology, Cohomology
from .exactlin import Field, rank
from .modrep import ModuleRep, zero_module


# words and pair bases


def _cache(A: Algebra, key: str) -> dict:
    return A.__dict__.setdefault("_by_" + key, {})


def words(A: Algebra, n: int) -> list:
    """E-compatible words of length n in the complement, lexicographic."""
    c = _cache(A, "words")
    if n not in c:
        if n == 0:
            c[0] = [()]
        else:
            out = []
            for w in words(A, n - 1):
                for x in A.complement:
                    if not w or A.rvert[w[-1]] == A.lvert[x]:
                        out.append(w + (x,))
            c[n] = out
    return c[n]


def products(A: Algebra, i: int, j: int):
    """Nonzero (k, coefficient) in b_i b_j."""
    c = _cache(A, "prod")
    if (i, j) not in c:
        row = A.mult[i, j]
        c[(i, j)] = tuple((int(k), row[k]) for k in np.nonzero(row)[0])
    return c[(i, j)]


def bar_products(A: Algebra, i: int, j: int):
    """Complement part of b_i b_j (the class of the product in Λ̄)."""
    comp = set(A.complement)
    return tuple((k, v) for k, v in products(A, i, j) if k in comp)


def factorisations(A: Algebra, k: int):
    """All (a, b, coefficient of b_k in \\overline{ab}) over complement a, b."""
    c = _cache(A, "fact")
    if not c:
        for a in A.complement:
            for b in A.complement:
                for kk, v in bar_products(A, a, b):
                    c.setdefault(kk, []).append((a, b, v))
    return c.get(k, [])


def idempotent_at(A: Algebra, v: int) -> int:
    return v  # vertex idempotents are the first basis elements


class PairBasis:
    """Basis of (sΛ̄)^{⊗n} ⊗_E V for V with vertex labels ``vert``."""

    def __init__(self, A: Algebra, n: int, vert):
        self.n = n
        items = []
        for w in words(A, n):
            for i, v in enumerate(vert):
                if n == 0 or A.rvert[w[-1]] == v:
                    items.append((w, i))
        self.items = items
        self.index = {it: k for k, it in enumerate(items)}
        self.lvert = np.array([A.lvert[w[0]] if w else vert[i] for w, i in items], dtype=np.int64)
        self.size = len(items)


def pair_basis(A: Algebra, n: int, vert) -> PairBasis:
    c = _cache(A, "pairs")
    key = (n, tuple(vert))
    if key not in c:
        c[key] = PairBasis(A, n, vert)
    return c[key]


# sparse vectors keyed by tensors


def _acc(F: Field, d: dict, key, c):
    v = d.get(key, 0) + c
    if F.p:
        v %= F.p
    if v == 0:
        d.pop(key, None)
    else:
        d[key] = v


def _clean(F: Field, d: dict) -> dict:
    return {k: v for k, v in d.items() if (v % F.p if F.p else v) != 0}


def bar_d(A: Algebra, a0: int, w: tuple, a1: int) -> dict:
    """d(a0 ⊗ sw ⊗ a1) as a dict {(b0, v, b1): coeff}."""
    F = A.field
    out = {}
    p = len(w)
    if p == 0:
        return out
    one, neg = F.scalar(1), F.scalar(-1)
    # a0 a1 ⊗ s ā_{2,p} ⊗ a_{p+1}
    for k, c in products(A, a0, w[0]):
        _acc(F, out, (k, w[1:], a1), c)
    # (-1)^p a0 ⊗ s ā_{1,p-1} ⊗ a_p a_{p+1}
    sgn = one if p % 2 == 0 else neg
    for k, c in products(A, w[-1], a1):
        _acc(F, out, (a0, w[:-1], k), sgn * c)
    # inner products, sign (-1)^i for i = 1..p-1
    for i in range(1, p):
        sgn = one if i % 2 == 0 else neg
        for k, c in bar_products(A, w[i - 1], w[i]):
            _acc(F, out, (a0, w[:i - 1] + (k,) + w[i + 1:], a1), sgn * c)
    return out


def tensor_d(A: Algebra, key: tuple) -> dict:
    """Differential of B ⊗_Λ ... ⊗_Λ B on a key, with Koszul signs."""
    F = A.field
    out = {}
    r = (len(key) - 1) // 2
    shift = 0
    for f in range(r):
        a0, w, a1 = key[2 * f], key[2 * f + 1], key[2 * f + 2]
        sgn = F.scalar(-1 if shift % 2 else 1)
        for (b0, v, b1), c in bar_d(A, a0, w, a1).items():
            _acc(F, out, key[:2 * f] + (b0, v, b1) + key[2 * f + 3:], sgn * c)
        shift += len(w)
    return out


def _split_vertex(A: Algebra, left_alg: int, w1: tuple) -> int:
    return A.rvert[w1[-1]] if w1 else A.rvert[left_alg]


def tensor_delta(A: Algebra, key: tuple, f: int) -> dict:
    """Apply Δ to factor f of a key."""
    F = A.field
    out = {}
    a0, w = key[2 * f], key[2 * f + 1]
    for i in range(len(w) + 1):
        v = _split_vertex(A, a0, w[:i])
        new = key[:2 * f + 1] + (w[:i], idempotent_at(A, v), w[i:]) + key[2 * f + 2:]
        _acc(F, out, new, F.scalar(1))
    return out


def tensor_eps(A: Algebra, key: tuple, f: int) -> dict:
    """Apply ε to factor f (zero unless its word is empty); merges neighbours."""
    F = A.field
    if key[2 * f + 1]:
        return {}
    out = {}
    for k, c in products(A, key[2 * f], key[2 * f + 2]):
        _acc(F, out, key[:2 * f] + (k,) + key[2 * f + 3:], c)
    return out


def _apply(A, vec: dict, fn) -> dict:
    F = A.field
    out = {}
    for key, c in vec.items():
        for k2, c2 in fn(key).items():
            _acc(F, out, k2, c * c2)
    return out


# bar slices


class BarSlice:
    """Λ ⊗_E (sΛ̄)^{⊗p} ⊗_E Λ with its differential to slice p-1."""

    def __init__(self, A: Algebra, p: int):
        self.p = p
        items = []
        for w in words(A, p):
            lv = A.lvert[w[0]] if w else None
            rv = A.rvert[w[-1]] if w else None
            for a0 in range(A.dim):
                if w and A.rvert[a0] != lv:
                    continue
                for a1 in range(A.dim):
                    if w and A.lvert[a1] != rv:
                        continue
                    if not w and A.rvert[a0] != A.lvert[a1]:
                        continue
                    items.append((a0, w, a1))
        self.items = items
        self.index = {it: k for k, it in enumerate(items)}
        self.dim = len(items)
        self.d = None  # sparse matrix to slice p-1


def _sparse(F: Field, rows, cols, vals, shape):
    if F.p:
        return sp.csr_matrix((np.array(vals, dtype=np.int64) % F.p, (rows, cols)), shape=shape, dtype=np.int64)
    m = F.zeros(shape)
    for r, c, v in zip(rows, cols, vals):
        m[r, c] += v
    return m


def _sparse_is_zero(F: Field, m) -> bool:
    if F.p:
        m = m.tocoo()
        return not np.any(m.data % F.p)
    return F.is_zero(m)


def _sparse_mul(F: Field, a, b):
    if F.p:
        c = (a @ b).tocsr()
        c.data %= F.p
        c.eliminate_zeros()
        return c
    return F.matmul(a, b)


def bar_truncation(A: Algebra, pmax: int) -> list:
    """Slices 0..pmax with differentials; raises if d² ≠ 0."""
    if pmax < 1:
        raise ValueError("pmax must be at least 1")
    F = A.field
    slices = [BarSlice(A, p) for p in range(pmax + 1)]
    for p in range(1, pmax + 1):
        S, T = slices[p], slices[p - 1]
        rows, cols, vals = [], [], []
        for j, (a0, w, a1) in enumerate(S.items):
            for key, c in bar_d(A, a0, w, a1).items():
                rows.append(T.index[key])
                cols.append(j)
                vals.append(c)
        S.d = _sparse(F, rows, cols, vals, (T.dim, S.dim))
    return slices


def bar_d_squared(F: Field, slices) -> dict:
    """{p: d_{p-1} d_p == 0} for p ≥ 2."""
    out = {}
    for p in range(2, len(slices)):
        out[p] = _sparse_is_zero(F, _sparse_mul(F, slices[p - 1].d, slices[p].d))
    return out


@dataclass
class AxiomReport:
    checks: dict = dc_field(default_factory=dict)  # name -> bool

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self):
        return [f"{'PASS' if v else 'FAIL'} {k}" for k, v in self.checks.items()]


def comultiplication_check(A: Algebra, pmax: int, slices=None) -> AxiomReport:
    """Δ chain map, coassociativity, both counit laws and ε∘d = 0, on every basis tensor."""
    F = A.field
    slices = slices or bar_truncation(A, pmax)
    rep = AxiomReport()
    sq = bar_d_squared(F, slices)
    rep.checks["d^2=0"] = all(sq.values())
    chain = coassoc = counit_l = counit_r = True
    eps_chain = True
    for S in slices:
        for key in S.items:
            dl = _apply(A, {key: F.scalar(1)}, lambda k: tensor_delta(A, k, 0))
            # Δ d = d Δ
            lhs = _apply(A, _apply(A, {key: F.scalar(1)}, lambda k: tensor_d(A, k)),
                         lambda k: tensor_delta(A, k, 0))
            rhs = _apply(A, dl, lambda k: tensor_d(A, k))
            if lhs != rhs:
                chain = False
            if _apply(A, dl, lambda k: tensor_delta(A, k, 0)) != _apply(A, dl, lambda k: tensor_delta(A, k, 1)):
                coassoc = False
            if _apply(A, dl, lambda k: tensor_eps(A, k, 0)) != {key: F.scalar(1)}:
                counit_l = False
            if _apply(A, dl, lambda k: tensor_eps(A, k, 1)) != {key: F.scalar(1)}:
                counit_r = False
            if S.p == 1:
                img = _apply(A, bar_d(A, *key), lambda k: tensor_eps(A, k, 0))
                if img:
                    eps_chain = False
    rep.checks["delta chain map"] = chain
    rep.checks["coassociativity"] = coassoc
    rep.checks["counit left"] = counit_l
    rep.checks["counit right"] = counit_r
    rep.checks["eps chain map"] = eps_chain
    return rep


# B ⊗_Λ X


class BarTensor:
    """B_{≤P} ⊗_Λ X for a complex X, as a complex of left modules.

    The basis of B_p ⊗_Λ X^q is (a0, w, i) with x_i ∈ X^q; total degree
    q - p.  ``where[k]`` lists, for each total degree k, the (p, q) pieces
    with their offsets.
    """

    def __init__(self, X: Complex, P: int):
        A, F = X.algebra, X.field
        self.X, self.P, self.algebra = X, P, A
        pieces = {}
        for p in range(P + 1):
            for q in range(X.lo, X.hi + 1):
                M = X.term(q)
                if not M.dim:
                    continue
                items = []
                for w in words(A, p):
                    for a0 in range(A.dim):
                        if w:
                            if A.rvert[a0] != A.lvert[w[0]]:
                                continue
                            idx = [i for i in range(M.dim) if M.vertex[i] == A.rvert[w[-1]]]
                        else:
                            idx = [i for i in range(M.dim) if M.vertex[i] == A.rvert[a0]]
                        items.extend((a0, w, i) for i in idx)
                if items:
                    pieces.setdefault(q - p, []).append((p, q, items))
        self.where = {}
        terms = {}
        index = {}
        for k, plist in pieces.items():
            off = 0
            lst = []
            for p, q, items in sorted(plist, key=lambda t: t[0]):
                lst.append((p, q, off, items))
                for j, it in enumerate(items):
                    index[(q, it)] = (k, off + j)
                off += len(items)
            self.where[k] = lst
            terms[k] = off
        self.index = index
        if not terms:
            terms = {0: 0}
        lo, hi = min(terms), max(terms)
        mods = []
        for k in range(lo, hi + 1):
            mods.append(self._module(k) if k in self.where else zero_module(A))
        diffs = [self._diff(k, mods[k - lo].dim, mods[k + 1 - lo].dim) for k in range(lo, hi)]
        self.complex = Complex(F, lo, mods, diffs, algebra=A, side="left", name="B(x)X")

    def _module(self, k):
        A, F = self.algebra, self.X.field
        items = [(q, it) for p, q, off, its in self.where[k] for it in its]
        d = len(items)
        act = F.zeros((A.dim, d, d))
        vert = []
        for j, (q, (a0, w, i)) in enumerate(items):
            vert.append(A.lvert[a0])
            for b in range(A.dim):
                for kk, c in products(A, b, a0):
                    _, row = self.index[(q, (kk, w, i))]
                    act[b, row, j] = F.reduce(act[b, row, j] + c)
        return ModuleRep(A, "left", d, act, vert, name=f"BX{k}", check=False)

    def _diff(self, k, dsrc, dtgt):
        A, F, X = self.algebra, self.X.field, self.X
        m = F.zeros((dtgt, dsrc))
        if k not in self.where:
            return m
        for p, q, off, items in self.where[k]:
            M = X.term(q)
            sgn_x = F.scalar(-1 if p % 2 else 1)
            dX = X.d(q)
            for j, (a0, w, i) in enumerate(items):
                col = off + j
                # bar part on a0 ⊗ w ⊗ 1, the right factor absorbed into x
                e = A.rvert[w[-1]] if w else A.rvert[a0]
                for (b0, v, b1), c in bar_d(A, a0, w, e).items():
                    vec = M.action[b1][:, i]
                    for ii in np.nonzero(vec)[0]:
                        key = (q, (b0, v, int(ii)))
                        if key in self.index:
                            kk, row = self.index[key]
                            m[row, col] = F.reduce(m[row, col] + c * vec[ii])
                # (-1)^{-p} (a0 ⊗ w ⊗ 1) ⊗ d_X x
                if X.dim(q + 1):
                    vec = dX[:, i]
                    for ii in np.nonzero(vec)[0]:
                        key = (q + 1, (a0, w, int(ii)))
                        if key in self.index:
                            kk, row = self.index[key]
                            m[row, col] = F.reduce(m[row, col] + sgn_x * vec[ii])
        return m


def bar_resolves(M: ModuleRep, P: int) -> dict:
    """Cohomology of B_{≤P} ⊗_Λ M in degrees -P..0 (should be M at 0, zero at -1..-(P-1))."""
    BT = BarTensor(Complex(M.field, 0, [M], []), P)
    C = BT.complex
    return {k: cohomology(C, k).dim for k in range(-P, 1)}


# Yoneda complexes


class YonedaElement:
    """Element of 𝒴(X, Y) of degree t with components keyed by (n, q)."""

    def __init__(self, X: Complex, Y: Complex, degree: int, comps=None):
        self.X, self.Y, self.degree = X, Y, degree
        self.algebra = X.algebra
        self.comps = {}
        for (n, q), m in (comps or {}).items():
            if m.size:
                self.comps[(n, q)] = m

    @property
    def field(self):
        return self.X.field

    def basis(self, n, q) -> PairBasis:
        return pair_basis(self.algebra, n, self.X.term(q).vertex)

    def block(self, n, q):
        if (n, q) in self.comps:
            return self.comps[(n, q)]
        return self.field.zeros((self.Y.dim(q - n + self.degree), self.basis(n, q).size))

    def filtrations(self):
        return sorted({n for n, q in self.comps})

    def __add__(self, other):
        F = self.field
        keys = set(self.comps) | set(other.comps)
        return YonedaElement(self.X, self.Y, self.degree,
                             {k: F.reduce(self.block(*k) + other.block(*k)) for k in keys})

    def scale(self, c):
        F = self.field
        return YonedaElement(self.X, self.Y, self.degree,
                             {k: F.reduce(F.scalar(c) * m) for k, m in self.comps.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.comps.values())

    def equal(self, other) -> bool:
        return self.degree == other.degree and (self - other).is_zero()

    def truncate(self, nmax: int) -> "YonedaElement":
        return YonedaElement(self.X, self.Y, self.degree,
                             {k: m for k, m in self.comps.items() if k[0] <= nmax})

    def is_E_linear(self) -> bool:
        for (n, q), m in self.comps.items():
            B = self.basis(n, q)
            rv = np.array(self.Y.term(q - n + self.degree).vertex, dtype=np.int64)
            mask = rv[:, None] != B.lvert[None, :]
            if np.any(m[mask] != 0):
                return False
        return True

    # differentials

    def delta_ex(self) -> "YonedaElement":
        A, F = self.algebra, self.field
        t = self.degree
        out = {}
        for (n, q), f in self.comps.items():
            M = self.X.term(q)
            Yq = self.Y.term(q - n + t)
            src = self.basis(n, q)
            tgt = pair_basis(A, n + 1, M.vertex)
            g = F.zeros((Yq.dim, tgt.size))
            s1 = F.scalar(-1 if (t + 1) % 2 else 1)
            s2 = F.scalar(-1 if (t + n) % 2 else 1)
            for j, (w, i) in enumerate(tgt.items):
                a1 = w[0]
                # (-1)^{t+1} a_1 f(s ā_{2,n+1} ⊗ x)
                col = f[:, src.index[(w[1:], i)]]
                g[:, j] += s1 * F.matmul(Yq.action[a1], col)
                # (-1)^{t+n} f(s ā_{1,n} ⊗ a_{n+1} x)
                ax = M.action[w[-1]][:, i]
                for ii in np.nonzero(ax)[0]:
                    key = (w[:-1], int(ii))
                    if key in src.index:
                        g[:, j] += s2 * ax[ii] * f[:, src.index[key]]
                # Σ (-1)^{t+i+1} f(... s\overline{a_i a_{i+1}} ...)
                for pos in range(1, n + 1):
                    si = F.scalar(-1 if (t + pos + 1) % 2 else 1)
                    for k, c in bar_products(A, w[pos - 1], w[pos]):
                        key = (w[:pos - 1] + (k,) + w[pos + 1:], i)
                        g[:, j] += si * c * f[:, src.index[key]]
            out[(n + 1, q)] = F.reduce(g)
        return YonedaElement(self.X, self.Y, t + 1, out)

    def delta_in(self) -> "YonedaElement":
        A, F = self.algebra, self.field
        t = self.degree
        out = {}
        for (n, q), f in self.comps.items():
            y = q - n + t
            if self.Y.dim(y + 1):
                g = F.matmul(self.Y.d(y), f)
                out[(n, q)] = F.reduce(out.get((n, q), 0) + g)
            if self.X.dim(q - 1):
                # -(-1)^{t+n} f(w ⊗ d_X x) for x in X^{q-1}
                dX = self.X.d(q - 1)
                src = self.basis(n, q)
                tgt = pair_basis(A, n, self.X.term(q - 1).vertex)
                g = F.zeros((f.shape[0], tgt.size))
                sg = F.scalar(1 if (t + n) % 2 else -1)
                for j, (w, i) in enumerate(tgt.items):
                    col = dX[:, i]
                    for ii in np.nonzero(col)[0]:
                        key = (w, int(ii))
                        if key in src.index:
                            g[:, j] += sg * col[ii] * f[:, src.index[key]]
                out[(n, q - 1)] = F.reduce(out.get((n, q - 1), 0) + g)
        return YonedaElement(self.X, self.Y, t + 1, out)

    def delta(self) -> "YonedaElement":
        return self.delta_in() + self.delta_ex()

    def is_closed(self, nmax: Optional[int] = None) -> bool:
        d = self.delta()
        if nmax is not None:
            d = d.truncate(nmax)
        return d.is_zero()


def cup(g: YonedaElement, f: YonedaElement) -> YonedaElement:
    """(g⊙f)(s ā_{1,m+n} ⊗ x) = (-1)^{m|f|} g(s ā_{1,m} ⊗ f(s ā_{m+1,m+n} ⊗ x))."""
    if f.Y is not g.X:
        raise ValueError("cup: target of f is not the source of g")
    A, F = f.algebra, f.field
    out = {}
    for (n, q), fm in f.comps.items():
        qy = q - n + f.degree
        Yq = f.Y.term(qy)
        fsrc = f.basis(n, q)
        for (m, q2), gm in g.comps.items():
            if q2 != qy:
                continue
            gsrc = pair_basis(A, m, Yq.vertex)
            tgt = pair_basis(A, m + n, f.X.term(q).vertex)
            sgn = F.scalar(-1 if (m * f.degree) % 2 else 1)
            h = out.get((m + n, q))
            if h is None:
                h = F.zeros((g.Y.dim(q - m - n + f.degree + g.degree), tgt.size))
            for c2, (w2, i) in enumerate(fsrc.items):
                v = fm[:, c2]
                nz = np.nonzero(v)[0]
                if not len(nz):
                    continue
                lv = fsrc.lvert[c2]
                for w1 in words(A, m):
                    if w1 and A.rvert[w1[-1]] != lv:
                        continue
                    cols = [gsrc.index[(w1, int(j))] for j in nz]
                    val = F.matmul(gm[:, cols], v[nz])
                    tj = tgt.index[(w1 + w2, i)]
                    h[:, tj] = F.reduce(h[:, tj] + sgn * val)
            out[(m + n, q)] = F.reduce(h)
    return YonedaElement(f.X, g.Y, f.degree + g.degree, out)


def identity(X: Complex) -> YonedaElement:
    F = X.field
    return YonedaElement(X, X, 0, {(0, q): F.eye(X.dim(q)) for q in range(X.lo, X.hi + 1) if X.dim(q)})


def from_module_map(X: Complex, Y: Complex, f) -> YonedaElement:
    """Θ: a cochain map (dict q -> matrix) as an element of filtration 0."""
    return YonedaElement(X, Y, 0, {(0, q): m for q, m in f.items()})


def random_element(rng, X: Complex, Y: Complex, n: int, t: int, density: float = 0.7) -> YonedaElement:
    """Random E-linear element of 𝒴_n(X, Y) of degree t."""
    F = X.field
    comps = {}
    for q in range(X.lo, X.hi + 1):
        if not X.dim(q) or not Y.dim(q - n + t):
            continue
        B = pair_basis(X.algebra, n, X.term(q).vertex)
        rv = np.array(Y.term(q - n + t).vertex, dtype=np.int64)
        m = F.random(rng, (len(rv), B.size), density)
        m[rv[:, None] != B.lvert[None, :]] = F.scalar(0)
        comps[(n, q)] = m
    return YonedaElement(X, Y, t, comps)


# coordinates


class YonedaSpace:
    """𝒴^t(X, Y) restricted to filtrations ≤ nmax, as coordinates."""

    def __init__(self, X: Complex, Y: Complex, t: int, nmax: int):
        A = X.algebra
        self.X, self.Y, self.t, self.nmax = X, Y, t, nmax
        self.blocks = []
        off = 0
        for n in range(0, nmax + 1):
            for q in range(X.lo, X.hi + 1):
                y = q - n + t
                if not X.dim(q) or not Y.dim(y):
                    continue
                B = pair_basis(A, n, X.term(q).vertex)
                rv = np.array(Y.term(y).vertex, dtype=np.int64)
                rows, cols = np.nonzero(rv[:, None] == B.lvert[None, :])
                if len(rows):
                    self.blocks.append((n, q, off, rows, cols, (len(rv), B.size)))
                    off += len(rows)
        self.dim = off

    def element(self, v) -> YonedaElement:
        F = self.X.field
        comps = {}
        for n, q, off, rows, cols, shape in self.blocks:
            m = F.zeros(shape)
            m[rows, cols] = v[off:off + len(rows)]
            comps[(n, q)] = m
        return YonedaElement(self.X, self.Y, self.t, comps)

    def coords(self, f: YonedaElement) -> np.ndarray:
        F = self.X.field
        v = F.zeros(self.dim)
        for n, q, off, rows, cols, shape in self.blocks:
            if (n, q) in f.comps:
                v[off:off + len(rows)] = f.comps[(n, q)][rows, cols]
        return v

    def basis_element(self, k) -> YonedaElement:
        F = self.X.field
        v = F.zeros(self.dim)
        v[k] = F.scalar(1)
        return self.element(v)


def delta_matrix_reference(S: YonedaSpace, T: YonedaSpace, part: str = "all") -> np.ndarray:
    """δ from S = 𝒴^t to T = 𝒴^{t+1}, one basis element at a time."""
    F = S.X.field
    out = F.zeros((T.dim, S.dim))
    for k in range(S.dim):
        f = S.basis_element(k)
        d = {"in": f.delta_in, "ex": f.delta_ex}.get(part, f.delta)()
        out[:, k] = T.coords(d.truncate(T.nmax))
    return out


def _coord_index(S: YonedaSpace) -> dict:
    idx = {}
    for n, q, off, rows, cols, shape in S.blocks:
        m = np.full(shape, -1, dtype=np.int64)
        m[rows, cols] = off + np.arange(len(rows))
        idx[(n, q)] = m
    return idx


def delta_matrix(S: YonedaSpace, T: YonedaSpace, part: str = "all") -> np.ndarray:
    """Matrix of δ (or δ_in / δ_ex) from S = 𝒴^t to T = 𝒴^{t+1}, assembled entrywise."""
    X, Y, t = S.X, S.Y, S.t
    A, F = X.algebra, X.field
    IS, IT = _coord_index(S), _coord_index(T)
    R, C, V = [], [], []

    def emit(tgt_idx, src_idx, val):
        ok = (tgt_idx >= 0) & (src_idx >= 0)
        if np.any(ok):
            R.append(tgt_idx[ok])
            C.append(src_idx[ok])
            V.append(np.full(int(ok.sum()), val, dtype=object))

    for (n, q), Is in IS.items():
        y = q - n + t
        Mq = X.term(q)
        src = pair_basis(A, n, Mq.vertex)
        if part in ("all", "ex") and (n + 1, q) in IT:
            It = IT[(n + 1, q)]
            Yq = Y.term(y)
            tgt = pair_basis(A, n + 1, Mq.vertex)
            s1 = -1 if (t + 1) % 2 else 1
            s2 = -1 if (t + n) % 2 else 1
            for j, (w, i) in enumerate(tgt.items):
                c = src.index[(w[1:], i)]
                rho = Yq.action[w[0]]
                for r2, r in zip(*np.nonzero(rho)):
                    emit(It[r2:r2 + 1, j], Is[r:r + 1, c], s1 * rho[r2, r])
                ax = Mq.action[w[-1]][:, i]
                for ii in np.nonzero(ax)[0]:
                    key = (w[:-1], int(ii))
                    if key in src.index:
                        emit(It[:, j], Is[:, src.index[key]], s2 * ax[ii])
                for pos in range(1, n + 1):
                    si = -1 if (t + pos + 1) % 2 else 1
                    for k, v in bar_products(A, w[pos - 1], w[pos]):
                        emit(It[:, j], Is[:, src.index[(w[:pos - 1] + (k,) + w[pos + 1:], i)]], si * v)
        if part in ("all", "in"):
            if (n, q) in IT and Y.dim(y + 1):
                It = IT[(n, q)]
                dY = Y.d(y)
                for r2, r in zip(*np.nonzero(dY)):
                    emit(It[r2, :], Is[r, :], dY[r2, r])
            if (n, q - 1) in IT and X.dim(q - 1):
                It = IT[(n, q - 1)]
                dX = X.d(q - 1)
                tgt = pair_basis(A, n, X.term(q - 1).vertex)
                sg = 1 if (t + n) % 2 else -1
                for j, (w, i) in enumerate(tgt.items):
                    col = dX[:, i]
                    for ii in np.nonzero(col)[0]:
                        key = (w, int(ii))
                        if key in src.index:
                            emit(It[:, j], Is[:, src.index[key]], sg * col[ii])
    out = F.zeros((T.dim, S.dim))
    if R:
        rows, cols, vals = np.concatenate(R), np.concatenate(C), np.concatenate(V)
        if F.p:
            acc = np.zeros((T.dim, S.dim), dtype=np.int64)
            np.add.at(acc, (rows, cols), np.array([int(v) % F.p for v in vals], dtype=np.int64))
            out = F.reduce(acc)
        else:
            for r, c, v in zip(rows, cols, vals):
                out[r, c] += v
            out = F.reduce(out)
    return out


class YonedaComplex:
    """𝒴(X, Y) in degrees t0..t1 (filtrations ≤ nmax) with δ matrices."""

    def __init__(self, X: Complex, Y: Complex, t0: int, t1: int, nmax: Optional[int] = None):
        if nmax is None:
            nmax = max(t1 + 1 + X.hi - Y.lo, 0)
        self.X, self.Y, self.t0, self.t1, self.nmax = X, Y, t0, t1, nmax
        self.spaces = {t: YonedaSpace(X, Y, t, nmax + (t - t0)) for t in range(t0, t1 + 1)}
        self.d = {t: delta_matrix(self.spaces[t], self.spaces[t + 1]) for t in range(t0, t1)}

    def cohomology(self, t: int) -> Cohomology:
        F = self.X.field
        if not self.t0 < t < self.t1:
            raise ValueError("degree must be interior to the computed window")
        return Cohomology(F, self.d[t - 1], self.d[t])


def yoneda_cohomology(M: ModuleRep, N: ModuleRep, t: int) -> int:
    """dim H^t 𝒴(M, N) for stalk modules (filtration t carries degree t)."""
    X, Y = Complex(M.field, 0, [M], []), Complex(N.field, 0, [N], [])
    return stalk_yoneda(X, Y, t).dim


def stalk_yoneda(X: Complex, Y: Complex, t: int) -> Cohomology:
    """H^t 𝒴(X, Y) for stalks; Y may sit in any degree."""
    F = X.field
    spaces = {s: YonedaSpace(X, Y, s, max(s + X.hi - Y.lo, 0)) for s in (t - 1, t, t + 1)}
    d0 = delta_matrix(spaces[t - 1], spaces[t]) if spaces[t - 1].dim else F.zeros((spaces[t].dim, 0))
    d1 = delta_matrix(spaces[t], spaces[t + 1]) if spaces[t].dim else F.zeros((spaces[t + 1].dim, 0))
    return Cohomology(F, d0, d1)


# ι and the counit


def iota(X: Complex, BT: BarTensor) -> YonedaElement:
    """(ι_X)_p(s ā_{1,p} ⊗ x) = (1 ⊗ s ā_{1,p} ⊗ 1) ⊗ x for p ≤ P."""
    A, F = X.algebra, X.field
    comps = {}
    for p in range(BT.P + 1):
        for q in range(X.lo, X.hi + 1):
            if not X.dim(q):
                continue
            src = pair_basis(A, p, X.term(q).vertex)
            k = q - p
            m = F.zeros((BT.complex.dim(k), src.size))
            for j, (w, i) in enumerate(src.items):
                e = A.lvert[w[0]] if w else X.term(q).vertex[i]
                _, row = BT.index[(q, (e, w, i))]
                m[row, j] = F.scalar(1)
            if src.size:
                comps[(p, q)] = m
    return YonedaElement(X, BT.complex, 0, comps)


def counit_map(X: Complex, BT: BarTensor) -> YonedaElement:
    """ε ⊗ Id_X ∈ 𝒴_0(B ⊗ X, X)."""
    A, F = X.algebra, X.field
    C = BT.complex
    comps = {}
    for k in range(C.lo, C.hi + 1):
        if not C.dim(k) or not X.dim(k):
            continue
        m = F.zeros((X.dim(k), C.dim(k)))
        for p, q, off, items in BT.where.get(k, []):
            if p != 0:
                continue
            M = X.term(q)
            for j, (a0, w, i) in enumerate(items):
                m[:, off + j] = M.action[a0][:, i]
        comps[(0, k)] = m
    return YonedaElement(C, X, 0, comps)


def iota_counit_check(M: ModuleRep, pmax: int) -> AxiomReport:
    X = Complex(M.field, 0, [M], [])
    BT = BarTensor(X, pmax)
    io = iota(X, BT)
    rep = AxiomReport()
    rep.checks["iota closed"] = io.delta().truncate(pmax).is_zero()
    lhs = cup(counit_map(X, BT), io)
    rep.checks["counit after iota = Id"] = lhs.equal(identity(X))
    rep.checks["counit closed"] = counit_map(X, BT).delta().truncate(pmax).is_zero()
    return rep
