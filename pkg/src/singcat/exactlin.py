"""Exact linear algebra over F_p and Q.

Matrices are plain numpy arrays: ``int64`` holding canonical residues
0..p-1 for prime fields, ``object`` holding :class:`fractions.Fraction`
for the rationals.  Row reduction pivots on the leftmost nonzero column
and the topmost nonzero row, so every basis returned here is a
deterministic function of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` prime) or the rationals (``p == 0``)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        if t.startswith("GF") and t[2:].isdigit():
            return cls(int(t[2:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def dtype(self):
        return object if self.p == 0 else np.int64

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    # scalars

    def scalar(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    # arrays

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if self.p == 0:
            out = np.empty(a.shape, dtype=object)
            flat = out.reshape(-1)
            for i, x in enumerate(a.reshape(-1)):
                flat[i] = Fraction(x)
            return out
        return np.array([self.scalar(x) for x in a.reshape(-1)], dtype=np.int64).reshape(a.shape)

    def zeros(self, shape) -> np.ndarray:
        if self.p == 0:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def reduce(self, a):
        if self.p == 0:
            return a
        return np.mod(a, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0 or (a.ndim == 2 and a.shape[0] == 0) or b.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return self.zeros(shape)
        if self.p == 0:
            return np.dot(a, b)
        if (self.p - 1) ** 2 * a.shape[-1] < 2**62:
            return np.mod(a @ b, self.p)
        return np.mod(np.dot(a.astype(object), b.astype(object)), self.p).astype(np.int64)

    def dot(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def random(self, rng: np.random.Generator, shape, density: float = 1.0) -> np.ndarray:
        q = self.p if self.p else 5
        vals = rng.integers(0, q, size=shape)
        if self.p == 0:
            vals = vals - 2
        if density < 1.0:
            vals = vals * (rng.random(size=shape) < density)
        return self.array(vals)

    def is_zero(self, a: np.ndarray) -> bool:
        if a.size == 0:
            return True
        return not np.any(a != 0)


# row reduction


def _rref_gf2(a: np.ndarray):
    m, n = a.shape
    weights = [1 << j for j in range(n)]
    rows = []
    for i in range(m):
        v = 0
        for j in np.nonzero(a[i])[0]:
            v |= weights[j]
        rows.append(v)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        bit = weights[c]
        piv = -1
        for i in range(r, m):
            if rows[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(m):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(r):
        v = rows[i]
        j = 0
        while v:
            if v & 1:
                out[i, j] = 1
            v >>= 1
            j += 1
    return out, pivots


def _rref_generic(field: Field, a: np.ndarray):
    a = a.copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(a[r, c])
        a[r, c:] = field.reduce(a[r, c:] * inv)
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col != 0)[0]
        if len(rows):
            a[rows, c:] = field.reduce(a[rows, c:] - np.outer(col[rows], a[r, c:]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(field: Field, a: np.ndarray):
    """Reduced row echelon form and pivot columns."""
    a = np.asarray(a)
    if a.size == 0:
        return field.zeros(a.shape), []
    if field.p == 2:
        return _rref_gf2(a)
    return _rref_generic(field, a)


def rank(field: Field, a: np.ndarray) -> int:
    return len(rref(field, a)[1])


def nullspace(field: Field, a: np.ndarray) -> np.ndarray:
    """Columns spanning the kernel of ``a``."""
    m, n = a.shape
    if m == 0:
        return field.eye(n)
    r, pivots = rref(field, a)
    free = [j for j in range(n) if j not in set(pivots)]
    out = field.zeros((n, len(free)))
    for k, f in enumerate(free):
        out[f, k] = field.scalar(1)
        for i, pc in enumerate(pivots):
            out[pc, k] = field.reduce(-r[i, f])
    return out


def colspace(field: Field, a: np.ndarray) -> np.ndarray:
    """Pivot columns of ``a``: a basis of its column space."""
    if a.size == 0:
        return field.zeros((a.shape[0], 0))
    _, pivots = rref(field, a)
    return a[:, pivots]


def rank_nullspace(field: Field, a: np.ndarray):
    """Return ``(rank, kernel_basis, image_basis)`` with bases as columns."""
    a = np.asarray(a)
    m, n = a.shape
    if a.size == 0:
        return 0, field.eye(n), field.zeros((m, 0))
    r, pivots = rref(field, a)
    pset = set(pivots)
    free = [j for j in range(n) if j not in pset]
    ker = field.zeros((n, len(free)))
    for k, f in enumerate(free):
        ker[f, k] = field.scalar(1)
        for i, pc in enumerate(pivots):
            ker[pc, k] = field.reduce(-r[i, f])
    return len(pivots), ker, a[:, pivots]


def solve(field: Field, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Some ``x`` with ``a @ x == b``, or None when ``b`` is not in the image.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    if a.shape[0] != bb.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} vs rhs {b.shape}")
    m, n = a.shape
    k = bb.shape[1]
    if m == 0:
        x = field.zeros((n, k))
        return x.reshape(-1) if vec else x
    aug = np.concatenate([a, bb], axis=1)
    r, pivots = rref(field, aug)
    x = field.zeros((n, k))
    for i, pc in enumerate(pivots):
        if pc >= n:
            return None
        x[pc, :] = r[i, n:]
    return x.reshape(-1) if vec else x


def inverse(field: Field, a: np.ndarray) -> Optional[np.ndarray]:
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    if n == 0:
        return field.zeros((0, 0))
    x = solve(field, a, field.eye(n))
    return x


def hstack(field: Field, mats, rows: int) -> np.ndarray:
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return field.zeros((rows, 0))
    return np.concatenate(mats, axis=1)


def vstack(field: Field, mats, cols: int) -> np.ndarray:
    mats = [m for m in mats if m.shape[0]]
    if not mats:
        return field.zeros((0, cols))
    return np.concatenate(mats, axis=0)


class Basis:
    """An ordered basis of a subspace of F^n, stored as columns.

    ``coords`` expresses vectors of the subspace in this basis; it raises
    if the vector is outside.
    """

    def __init__(self, field: Field, cols: np.ndarray):
        self.field = field
        self.cols = cols
        self.ambient, self.dim = cols.shape
        if self.dim:
            # independent rows give a square invertible block
            _, rows = rref(field, cols.T.copy())
            if len(rows) != self.dim:
                raise ValueError("basis columns are linearly dependent")
            self._rows = rows
            self._inv = inverse(field, cols[rows, :])
        else:
            self._rows = []
            self._inv = field.zeros((0, 0))

    def coords(self, v: np.ndarray, check: bool = True) -> np.ndarray:
        vec = v.ndim == 1
        vv = v.reshape(-1, 1) if vec else v
        if not self.dim:
            if check and not self.field.is_zero(vv):
                raise ValueError("vector not in subspace")
            c = self.field.zeros((0, vv.shape[1]))
        else:
            c = self.field.matmul(self._inv, vv[self._rows, :])
            if check and not self.field.is_zero(self.field.reduce(self.field.matmul(self.cols, c) - vv)):
                raise ValueError("vector not in subspace")
        return c.reshape(-1) if vec else c

    def contains(self, v: np.ndarray) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True


class Quotient:
    """The quotient V/S of F^n by the span of the columns of ``sub``.

    The quotient basis is the standard basis vectors not absorbed by ``sub``
    under leftmost-pivot extension; ``project`` sends V to quotient coords.
    """

    def __init__(self, field: Field, sub: np.ndarray, n: int):
        self.field = field
        self.n = n
        sub_basis = colspace(field, sub) if sub.size else field.zeros((n, 0))
        self.sub = sub_basis
        full = hstack(field, [sub_basis, field.eye(n)], n)
        _, piv = rref(field, full)
        k = sub_basis.shape[1]
        self.complement_idx = [p - k for p in piv if p >= k]
        self.dim = len(self.complement_idx)
        comp = field.zeros((n, self.dim))
        for j, i in enumerate(self.complement_idx):
            comp[i, j] = field.scalar(1)
        self.section = comp
        change = hstack(field, [sub_basis, comp], n)
        inv = inverse(field, change)
        self.projection = inv[k:, :] if inv is not None else field.zeros((0, n))

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.projection, v)
