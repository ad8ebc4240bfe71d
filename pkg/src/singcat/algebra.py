"""Finite-dimensional algebras Λ = E ⊕ Λ̄ with split semisimple E.

Two inputs are supported: a quiver with relations, compiled by path
reduction, and an explicit structure-constant table.  In both cases the
stored basis is *homogeneous*: every basis vector b satisfies
e_l b e_r = b for a unique pair of vertices (l, r).  Tensor products over
E then reduce to matching vertex labels.

Multiplication convention for quivers: the algebra product is composition
of paths, so a path p from s to t satisfies p = e_t p e_s and Λe_s is
spanned by paths starting at s.  In the file syntax ``a*b`` (declared
``compose: left-to-right``) is the path that traverses a and then b, i.e.
the algebra element b·a.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactlin import Field, colspace, rank, rref, solve


class AlgebraError(ValueError):
    pass


class ParseError(AlgebraError):
    def __init__(self, msg, line=None, col=None, path=None):
        self.msg, self.line, self.col, self.path = msg, line, col, path
        where = ""
        if line is not None:
            where = f"{path or '<input>'}:{line}:{col}: "
        super().__init__(where + msg)


class Algebra:
    """Structure constants plus the E-bimodule bookkeeping.

    ``mult[i, j, k]`` is the coefficient of b_k in b_i b_j.  Basis vectors
    ``0..r-1`` are the primitive idempotents, the rest span Λ̄.
    """

    def __init__(self, field: Field, labels, mult, nverts: int, lvert, rvert,
                 vertex_names=None, radical: Optional[bool] = None, name: str = "",
                 quiver=None, check: bool = True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mult = mult
        self.nverts = nverts
        self.lvert = tuple(int(v) for v in lvert)
        self.rvert = tuple(int(v) for v in rvert)
        self.vertex_names = list(vertex_names or [str(i + 1) for i in range(nverts)])
        self.name = name
        self.quiver = quiver
        self.complement = tuple(range(nverts, self.dim))
        if check:
            self.check()
        self.radical = self._complement_is_radical() if radical is None else radical
        self._lmat = None
        self._rmat = None

    # construction helpers

    @property
    def unit(self) -> np.ndarray:
        u = self.field.zeros(self.dim)
        for i in range(self.nverts):
            u[i] = self.field.scalar(1)
        return u

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.scalar(1)
        return v

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        F = self.field
        return F.reduce(np.einsum("i,j,ijk->k", u, v, self.mult)) if F.p else np.einsum("i,j,ijk->k", u, v, self.mult)

    def product(self, i: int, j: int) -> np.ndarray:
        return self.mult[i, j]

    @property
    def left_mats(self) -> np.ndarray:
        """``L[a]`` is the matrix of x ↦ b_a x."""
        if self._lmat is None:
            self._lmat = np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))
        return self._lmat

    @property
    def right_mats(self) -> np.ndarray:
        """``R[a]`` is the matrix of x ↦ x b_a."""
        if self._rmat is None:
            self._rmat = np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))
        return self._rmat

    def vertex_index(self, name) -> int:
        s = str(name)
        if s in self.vertex_names:
            return self.vertex_names.index(s)
        raise AlgebraError(f"unknown vertex {name!r}; vertices are {', '.join(self.vertex_names)}")

    # invariants

    def check(self):
        F = self.field
        n, r = self.dim, self.nverts
        if self.mult.shape != (n, n, n):
            raise AlgebraError("structure constant table has wrong shape")
        m = self.mult
        # associativity: (b_i b_j) b_k = b_i (b_j b_k)
        left = np.einsum("ijm,mkl->ijkl", m, m)
        right = np.einsum("jkm,iml->ijkl", m, m)
        if not F.is_zero(F.reduce(left - right)):
            bad = np.argwhere(F.reduce(left - right) != 0)[0]
            raise AlgebraError(f"multiplication is not associative at basis triple {tuple(bad[:3])}")
        u = self.unit
        eye = F.eye(n)
        if not F.is_zero(F.reduce(np.einsum("i,ijk->jk", u, m) - eye)) or \
                not F.is_zero(F.reduce(np.einsum("j,ijk->ik", u, m) - eye)):
            raise AlgebraError("sum of idempotents is not a two-sided unit")
        for i in range(r):
            for j in range(r):
                want = eye[i] if i == j else F.zeros(n)
                if not F.is_zero(F.reduce(m[i, j] - want)):
                    raise AlgebraError(f"idempotents {i + 1},{j + 1} are not orthogonal")
        for b in range(n):
            l, rv = self.lvert[b], self.rvert[b]
            for i in range(r):
                want = eye[b] if i == l else F.zeros(n)
                if not F.is_zero(F.reduce(m[i, b] - want)):
                    raise AlgebraError(f"basis element {self.labels[b]} is not homogeneous on the left")
                want = eye[b] if i == rv else F.zeros(n)
                if not F.is_zero(F.reduce(m[b, i] - want)):
                    raise AlgebraError(f"basis element {self.labels[b]} is not homogeneous on the right")
        for b in range(r):
            if self.lvert[b] != b or self.rvert[b] != b:
                raise AlgebraError("idempotent vertex labels are inconsistent")

    def _complement_is_radical(self) -> bool:
        """True when span(Λ̄ basis) is a nilpotent two-sided ideal."""
        r, n = self.nverts, self.dim
        if n == r:
            return True
        m = self.mult
        F = self.field
        # ideal: products with a complement factor have no idempotent part
        if not F.is_zero(m[r:, :, :r]) or not F.is_zero(m[:, r:, :r]):
            return False
        cur = [self.basis_vector(i) for i in range(r, n)]
        for _ in range(n + 1):
            nxt = []
            for v in cur:
                for c in range(r, n):
                    w = self.mul(v, self.basis_vector(c))
                    if not F.is_zero(w):
                        nxt.append(w)
            if not nxt:
                return True
            cur = list(colspace(F, np.array(nxt, dtype=nxt[0].dtype).T).T)
        return False

    # derived algebras

    def opposite(self) -> "Algebra":
        opp = Algebra(self.field, self.labels, np.ascontiguousarray(np.transpose(self.mult, (1, 0, 2))),
                      self.nverts, self.rvert, self.lvert, self.vertex_names,
                      radical=self.radical, name=(self.name + "^op") if self.name else "",
                      check=False)
        opp._opp_of = self
        return opp

    def equal(self, other: "Algebra") -> bool:
        return (self.field == other.field and self.labels == other.labels
                and self.lvert == other.lvert and self.rvert == other.rvert
                and np.array_equal(self.mult, other.mult))

    def radical_layers(self):
        """Loewy-style layer sizes of Λ̄ (only meaningful when radical)."""
        out = []
        F = self.field
        cur = F.eye(self.dim)[:, self.nverts:]
        while cur.shape[1]:
            out.append(cur.shape[1])
            prods = []
            for j in range(cur.shape[1]):
                for c in self.complement:
                    prods.append(F.matmul(self.left_mats[c], cur[:, j]))
            if not prods:
                break
            cur = colspace(F, np.array(prods).T)
            if cur.shape[1] >= out[-1]:
                break
        return out

    def describe(self) -> list[str]:
        lines = [f"algebra {self.name or '<anon>'} over {self.field}: dim {self.dim}, "
                 f"{self.nverts} vertices, radical complement {'yes' if self.radical else 'no'}"]
        for b, lab in enumerate(self.labels):
            lines.append(f"  b{b} {lab} : {self.vertex_names[self.rvert[b]]} -> {self.vertex_names[self.lvert[b]]}")
        return lines


# quiver presentations


@dataclass
class Arrow:
    name: str
    source: int
    target: int


@dataclass
class QuiverPresentation:
    field: Field
    vertices: list
    arrows: list
    relations: list  # list of dict: word tuple (traversal order) -> Fraction
    bound: int = 8
    name: str = ""

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise AlgebraError(f"unknown arrow {name!r}")


def _word_ends(q: QuiverPresentation, word):
    s = q.arrows[word[0]].source
    t = s
    for a in word:
        if q.arrows[a].source != t:
            return None
        t = q.arrows[a].target
    return s, t


def _paths(q: QuiverPresentation, maxlen: int):
    """All nontrivial paths of length ≤ maxlen as arrow tuples in traversal order."""
    out = []
    frontier = [(i,) for i in range(len(q.arrows))]
    length = 1
    while frontier and length <= maxlen:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            t = q.arrows[w[-1]].target
            for i, a in enumerate(q.arrows):
                if a.source == t:
                    nxt.append(w + (i,))
        frontier = nxt
        length += 1
    return out


def compile_quiver(q: QuiverPresentation) -> Algebra:
    F = q.field
    L = q.bound
    if L < 1:
        raise AlgebraError("bound must be at least 1")
    r = len(q.vertices)
    words = _paths(q, L)
    index = {w: i for i, w in enumerate(words)}
    ends = {w: _word_ends(q, w) for w in words}

    # split relations into vertex-homogeneous pieces and check admissibility
    rels = []
    for rel in q.relations:
        pieces = {}
        for w, c in rel.items():
            if len(w) < 2:
                raise AlgebraError(f"relation term {'*'.join(q.arrows[a].name for a in w)} has length < 2; "
                                   "relations must lie in the square of the arrow ideal")
            e = _word_ends(q, w)
            if e is None:
                raise AlgebraError(f"relation term {'*'.join(q.arrows[a].name for a in w)} is not a path")
            pieces.setdefault(e, {})[w] = c
        rels.extend(pieces.values())

    gens = []
    by_target = {}
    by_source = {}
    for w in words:
        s, t = ends[w]
        by_target.setdefault(t, []).append(w)
        by_source.setdefault(s, []).append(w)
    for rel in rels:
        s, t = _word_ends(q, next(iter(rel)))
        prefixes = [()] + by_target.get(s, [])
        suffixes = [()] + by_source.get(t, [])
        minlen = min(len(w) for w in rel)
        for u in prefixes:
            for v in suffixes:
                if len(u) + len(v) + minlen > L:
                    continue
                row = {}
                for w, c in rel.items():
                    full = u + w + v
                    if len(full) <= L:
                        row[index[full]] = row.get(index[full], 0) + c
                if row:
                    gens.append(row)

    n = len(words)
    # columns ordered largest path first so that pivots eat large paths
    order = sorted(range(n), key=lambda i: (len(words[i]), words[i]), reverse=True)
    pos = {w: k for k, w in enumerate(order)}
    if gens:
        mat = F.zeros((len(gens), n))
        for i, row in enumerate(gens):
            for j, c in row.items():
                mat[i, pos[j]] = F.reduce(mat[i, pos[j]] + F.scalar(c))
        red, pivots = rref(F, mat)
        red = red[:len(pivots)]
    else:
        red, pivots = F.zeros((0, n)), []
    pivot_set = set(pivots)
    for k in range(n):
        if len(words[order[k]]) == L and k not in pivot_set:
            raise AlgebraError(f"not finite-dimensional within bound {L}: path "
                               f"{'*'.join(q.arrows[a].name for a in words[order[k]])} survives")
    free = sorted((order[k] for k in range(n) if k not in pivot_set),
                  key=lambda i: (len(words[i]), words[i]))
    dim = r + len(free)
    basis_pos = {w_idx: r + j for j, w_idx in enumerate(free)}
    # normal form of every path of length ≤ L as a vector in the basis
    pivot_row = {pivots[i]: i for i in range(len(pivots))}

    def normal_form(w):
        v = F.zeros(dim)
        if len(w) > L:
            return v
        wi = index[w]
        if wi in basis_pos:
            v[basis_pos[wi]] = F.scalar(1)
            return v
        row = red[pivot_row[pos[wi]]]
        for k in np.nonzero(row)[0]:
            if k == pos[wi]:
                continue
            v[basis_pos[order[k]]] = F.reduce(-row[k])
        return v

    labels = [f"e{v}" for v in q.vertices]
    lv = list(range(r))
    rv = list(range(r))
    bwords = [None] * r
    for wi in free:
        w = words[wi]
        labels.append("*".join(q.arrows[a].name for a in w))
        s, t = ends[w]
        lv.append(t)
        rv.append(s)
        bwords.append(w)
    mult = F.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            # b_i b_j: first b_j then b_i
            if i < r and j < r:
                if i == j:
                    mult[i, j, i] = F.scalar(1)
            elif i < r:
                if lv[j] == i:
                    mult[i, j, j] = F.scalar(1)
            elif j < r:
                if rv[i] == j:
                    mult[i, j, i] = F.scalar(1)
            elif rv[i] == lv[j]:
                mult[i, j] = normal_form(bwords[j] + bwords[i])
    return Algebra(F, labels, mult, r, lv, rv, [str(v) for v in q.vertices],
                   radical=True, name=q.name, quiver=(q, bwords))


def from_table(field: Field, labels, consts, unit, idempotents, complement, name="") -> Algebra:
    """Build an algebra from user structure constants.

    ``idempotents`` are coordinate vectors of orthogonal idempotents summing
    to ``unit``; ``complement`` lists basis indices spanning an E-bimodule
    complement of E.  The basis is changed to idempotents followed by a
    homogeneous basis of the complement.
    """
    F = field
    n = len(labels)
    m = F.zeros((n, n, n))
    for (i, j, k, v) in consts:
        for x in (i, j, k):
            if not 0 <= x < n:
                raise AlgebraError(f"structure constant index {x} out of range 0..{n - 1}")
        m[i, j, k] = F.reduce(m[i, j, k] + F.scalar(v))
    unit = F.array(unit)
    idem = [F.array(e) for e in idempotents]
    r = len(idem)
    if r == 0:
        raise AlgebraError("at least one idempotent is required")
    if not F.is_zero(F.reduce(sum(idem) - unit)):
        raise AlgebraError("idempotents do not sum to the unit")

    def mul(u, v):
        return F.reduce(np.einsum("i,j,ijk->k", u, v, m))

    comp = sorted(set(complement))
    if len(comp) != n - r:
        raise AlgebraError(f"complement must have {n - r} basis indices, got {len(comp)}")
    cvecs = [F.eye(n)[c] for c in comp]
    # Peirce pieces e_a C e_b
    newvecs, newlab, lv, rv = [], [], [], []
    for a in range(r):
        for b in range(r):
            piece = [mul(mul(idem[a], c), idem[b]) for c in cvecs]
            mat = np.array(piece, dtype=F.dtype).T if piece else F.zeros((n, 0))
            cols = colspace(F, mat) if mat.size else mat
            for j in range(cols.shape[1]):
                v = cols[:, j]
                nz = np.nonzero(v)[0]
                if len(nz) == 1 and v[nz[0]] == F.scalar(1) and nz[0] in comp:
                    lab = labels[nz[0]]
                else:
                    lab = f"c{len(newlab) + 1}"
                newvecs.append(v)
                newlab.append(lab)
                lv.append(a)
                rv.append(b)
    if len(newvecs) != n - r:
        raise AlgebraError("complement is not an E-bimodule complement of E")
    basis = np.array(idem + newvecs, dtype=F.dtype).T
    if rank(F, basis) != n:
        raise AlgebraError("idempotents and complement do not span the algebra")
    # express products in the new basis
    newm = F.zeros((n, n, n))
    cols = [basis[:, i] for i in range(n)]
    prods = []
    for i in range(n):
        for j in range(n):
            prods.append(mul(cols[i], cols[j]))
    coords = solve(F, basis, np.array(prods, dtype=F.dtype).T)
    for i in range(n):
        for j in range(n):
            newm[i, j] = coords[:, i * n + j]
    idem_labels = []
    for a in range(r):
        nz = np.nonzero(idem[a])[0]
        if len(nz) == 1 and idem[a][nz[0]] == F.scalar(1):
            idem_labels.append(labels[nz[0]])
        else:
            idem_labels.append(f"e{a + 1}")
    return Algebra(F, idem_labels + newlab, newm, r, list(range(r)) + lv, list(range(r)) + rv,
                   name=name)


# parser

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[:;,*+\-/()\[\]|=])
""", re.VERBOSE)

KEYWORDS = {"field", "compose", "vertices", "arrows", "relations", "bound", "module", "act",
            "basis", "const", "unit", "idempotent", "idempotents", "complement", "name"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, path=None):
    toks = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, col, path)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            toks.append(Token("sep", "\n", line, col))
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(s)
        else:
            if kind == "punct" and s == ";":
                kind = "sep"
            toks.append(Token(kind, s, line, col))
            col += len(s)
        i = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass
class ModuleSpec:
    name: str
    kind: str  # simple | proj | explicit | regular
    vertex: Optional[str] = None
    vertices: list = dc_field(default_factory=list)
    acts: dict = dc_field(default_factory=dict)
    line: int = 0


@dataclass
class AlgebraFile:
    algebra: Algebra
    modules: dict
    path: Optional[str] = None


class _Parser:
    def __init__(self, text, path=None):
        self.path = path
        self.toks = tokenize(text, path)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        shown = "end of input" if tok.kind == "eof" else ("newline" if tok.text == "\n" else repr(tok.text))
        raise ParseError(f"{msg} (found {shown})", tok.line, tok.col, self.path)

    def expect(self, text=None, kind=None, what=None):
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            self.error(f"expected {what or repr(text) if text else what or kind}")
        return self.next()

    def at_sep(self):
        return self.peek().kind in ("sep", "eof")

    def skip_seps(self):
        while self.peek().kind == "sep":
            self.next()

    def at_statement_start(self):
        # a keyword followed by ':' or an argument opens a new statement
        t = self.peek()
        return t.kind == "ident" and t.text in KEYWORDS

    def colon(self):
        if self.peek().text == ":":
            self.next()

    # grammar pieces

    def name_token(self, what="name"):
        t = self.peek()
        if t.kind not in ("ident", "num"):
            self.error(f"expected {what}")
        return self.next()

    def number(self):
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        t = self.expect(kind="num", what="number")
        val = Fraction(int(t.text))
        if self.peek().text == "/":
            self.next()
            d = self.expect(kind="num", what="denominator")
            if int(d.text) == 0:
                self.error("zero denominator", d)
            val /= int(d.text)
        return sign * val

    def name_list(self, what):
        out = [self.name_token(what)]
        while self.peek().text == ",":
            self.next()
            out.append(self.name_token(what))
        return out

    def number_list(self):
        out = [self.number()]
        while self.peek().text == "," or self.peek().kind == "num" or self.peek().text == "-":
            if self.peek().text == ",":
                self.next()
            out.append(self.number())
        return out

    def term(self):
        """[coef [*]] word, returns (coef, [arrow tokens])."""
        coef = Fraction(1)
        if self.peek().kind == "num":
            coef = self.number()
            if self.peek().text == "*":
                self.next()
            if self.peek().kind != "ident":
                return coef, []
        word = [self.expect(kind="ident", what="arrow name")]
        while self.peek().text == "*":
            self.next()
            word.append(self.expect(kind="ident", what="arrow name"))
        return coef, word

    def expr(self):
        terms = []
        sign = Fraction(1)
        if self.peek().text in "+-" and self.peek().kind == "punct":
            sign = Fraction(-1) if self.next().text == "-" else Fraction(1)
        c, w = self.term()
        terms.append((sign * c, w))
        while self.peek().text in ("+", "-"):
            sign = Fraction(-1) if self.next().text == "-" else Fraction(1)
            c, w = self.term()
            terms.append((sign * c, w))
        return terms

    def matrix_rows(self):
        rows = [self.number_list()]
        while self.peek().text == "|":
            self.next()
            rows.append(self.number_list())
        return rows

    # top level

    def parse(self):
        st = {"field": None, "compose": None, "vertices": None, "arrows": [], "relations": [],
              "bound": None, "modules": {}, "basis": None, "const": [], "unit": None,
              "idempotents": [], "complement": None, "name": ""}
        last = None
        self.skip_seps()
        while self.peek().kind != "eof":
            t = self.peek()
            if not self.at_statement_start():
                if last in ("relations", "const", "idempotents"):
                    self.continue_list(last, st)
                else:
                    self.error("expected a statement keyword")
            else:
                last = self.statement(st)
            if not self.at_sep():
                self.error("expected end of statement")
            self.skip_seps()
        return st

    def continue_list(self, key, st):
        if key == "relations":
            st["relations"].append(self.expr())
        elif key == "const":
            st["const"].extend(self.const_items())
        else:
            st["idempotents"].append(self.number_list())

    def const_items(self):
        items = []
        while self.peek().text == "(":
            open_tok = self.next()
            vals = [self.number()]
            for _ in range(3):
                self.expect(",")
                vals.append(self.number())
            self.expect(")")
            for v in vals[:3]:
                if v.denominator != 1 or v < 0:
                    self.error("structure constant indices must be nonnegative integers", open_tok)
            items.append((int(vals[0]), int(vals[1]), int(vals[2]), vals[3]))
            if self.peek().text == ",":
                self.next()
        if not items:
            self.error("expected '(i,j,k,value)'")
        return items

    def statement(self, st):
        kw = self.next()
        k = kw.text
        if k == "field":
            self.colon()
            t = self.name_token("field name")
            try:
                st["field"] = Field.parse(t.text)
            except ValueError as e:
                raise ParseError(str(e), t.line, t.col, self.path)
        elif k == "name":
            self.colon()
            st["name"] = self.name_token().text
        elif k == "compose":
            self.colon()
            a = self.name_token("composition convention")
            if a.text != "left":
                self.error("only 'left-to-right' composition is supported", a)
            self.expect("-")
            self.expect("to")
            self.expect("-")
            self.expect("right")
            st["compose"] = "left-to-right"
        elif k == "vertices":
            self.expect(":", what="':' after 'vertices'")
            names = self.name_list("vertex name")
            seen = set()
            for n in names:
                if n.text in seen:
                    self.error(f"duplicate vertex {n.text!r}", n)
                seen.add(n.text)
            st["vertices"] = [n.text for n in names]
            st["_vtok"] = names
        elif k == "arrows":
            self.expect(":", what="':' after 'arrows'")
            while True:
                nm = self.expect(kind="ident", what="arrow name")
                self.expect(":", what="':' after arrow name")
                s = self.name_token("source vertex")
                self.expect("->", what="'->'")
                tg = self.name_token("target vertex")
                if any(a[0].text == nm.text for a in st["arrows"]):
                    raise ParseError(f"duplicate arrow name {nm.text!r}", nm.line, nm.col, self.path)
                st["arrows"].append((nm, s, tg))
                if self.peek().text != ",":
                    break
                self.next()
        elif k == "relations":
            self.expect(":", what="':' after 'relations'")
            if self.peek().text == "(":
                self.next()
                self.expect("none")
                self.expect(")")
            else:
                st["relations"].append(self.expr())
        elif k == "bound":
            self.colon()
            t = self.expect(kind="num", what="bound")
            st["bound"] = int(t.text)
        elif k == "module":
            nm = self.name_token("module name")
            self.expect(":", what="':' after module name")
            kind = self.expect(kind="ident", what="simple, proj, regular or explicit")
            spec = ModuleSpec(nm.text, kind.text, line=nm.line)
            if kind.text in ("simple", "proj"):
                spec.vertex = self.name_token("vertex").text
            elif kind.text == "explicit":
                spec.vertices = [t.text for t in self.name_list("vertex")] if not self.at_sep() else []
            elif kind.text != "regular":
                self.error("expected simple, proj, regular or explicit", kind)
            if nm.text in st["modules"]:
                self.error(f"duplicate module {nm.text!r}", nm)
            st["modules"][nm.text] = spec
        elif k == "act":
            mod = self.name_token("module name")
            gen = self.name_token("generator")
            self.expect(":", what="':'")
            if mod.text not in st["modules"] or st["modules"][mod.text].kind != "explicit":
                self.error(f"'act' refers to unknown explicit module {mod.text!r}", mod)
            st["modules"][mod.text].acts[gen.text] = (self.matrix_rows(), gen)
        elif k == "basis":
            self.colon()
            st["basis"] = [t.text for t in self.name_list("basis label")]
        elif k == "const":
            self.colon()
            st["const"].extend(self.const_items())
        elif k == "unit":
            self.colon()
            st["unit"] = self.number_list()
        elif k in ("idempotent", "idempotents"):
            self.colon()
            st["idempotents"].append(self.number_list())
            k = "idempotents"
        elif k == "complement":
            self.colon()
            st["complement"] = [int(x) for x in self.number_list()]
        return k


def parse_text(text: str, path=None) -> dict:
    return _Parser(text, path).parse()


def parse_quiver(text: str, path=None) -> QuiverPresentation:
    st = parse_text(text, path)
    return _presentation(st, path)


def _presentation(st, path=None) -> QuiverPresentation:
    if st["vertices"] is None:
        raise ParseError("missing 'vertices' statement", path=path)
    verts = st["vertices"]
    arrows = []
    for nm, s, t in st["arrows"]:
        for v in (s, t):
            if v.text not in verts:
                raise ParseError(f"arrow {nm.text!r} uses unknown vertex {v.text!r}", v.line, v.col, path)
        arrows.append(Arrow(nm.text, verts.index(s.text), verts.index(t.text)))
    names = {a.name: i for i, a in enumerate(arrows)}
    rels = []
    for terms in st["relations"]:
        rel = {}
        for c, word in terms:
            if not word:
                raise ParseError("relation contains a bare scalar", path=path)
            idx = []
            for tok in word:
                if tok.text not in names:
                    raise ParseError(f"relation references unknown arrow {tok.text!r}", tok.line, tok.col, path)
                idx.append(names[tok.text])
            w = tuple(idx)
            q0 = QuiverPresentation(Field(0), verts, arrows, [])
            if _word_ends(q0, w) is None:
                raise ParseError(f"relation term {'*'.join(t.text for t in word)} is not a path",
                                 word[0].line, word[0].col, path)
            rel[w] = rel.get(w, 0) + c
        rels.append(rel)
    return QuiverPresentation(st["field"] or Field(2), verts, arrows, rels,
                              bound=st["bound"] or 8, name=st["name"])


def load_text(text: str, path=None) -> AlgebraFile:
    st = parse_text(text, path)
    if st["basis"] is not None:
        F = st["field"] or Field(2)
        n = len(st["basis"])
        if st["unit"] is None:
            raise ParseError("table stanza needs a 'unit' statement", path=path)
        if st["complement"] is None:
            raise ParseError("table stanza needs a 'complement' statement", path=path)
        for v in [st["unit"]] + st["idempotents"]:
            if len(v) != n:
                raise ParseError(f"vector of length {len(v)} does not match basis size {n}", path=path)
        alg = from_table(F, st["basis"], st["const"], st["unit"], st["idempotents"],
                         st["complement"], name=st["name"])
    else:
        alg = compile_quiver(_presentation(st, path))
    return AlgebraFile(alg, st["modules"], path)


def load_file(path) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return load_text(text, str(path))


def parse_algebra(text: str) -> Algebra:
    return load_text(text).algebra


# small constructors used by fixtures and tests


def truncated_polynomial(p: int, n: int) -> Algebra:
    """k[x]/(x^n) over F_p (p = 0 for Q)."""
    fld = "Q" if p == 0 else f"F{p}"
    return parse_algebra(f"field {fld}\nvertices: 1\narrows: x:1->1\nrelations: {'*'.join(['x'] * n)}\n"
                         f"bound: {n}\nname: x{n}_F{p}")


def path_algebra_A(n: int, p: int = 2) -> Algebra:
    """Path algebra of the linearly oriented A_n quiver 1 -> 2 -> ... -> n."""
    fld = "Q" if p == 0 else f"F{p}"
    verts = ",".join(str(i) for i in range(1, n + 1))
    arrows = ",".join(f"a{i}:{i}->{i + 1}" for i in range(1, n))
    text = f"field {fld}\nvertices: {verts}\n"
    text += f"arrows: {arrows}\n" if n > 1 else ""
    text += f"relations: (none)\nbound: {n}\nname: A{n}"
    return parse_algebra(text)


def upper_triangular_subalgebra(field: Field, size: int, colour, gens, name="") -> Algebra:
    """Subalgebra of size×size matrices spanned by vertex idempotents and gens.

    ``colour[i]`` is the vertex of row/column i; every generator must be a
    strictly upper triangular matrix supported on a single colour block
    pair.  The generated algebra is closed under products.
    """
    F = field
    r = max(colour) + 1
    idem = []
    for a in range(r):
        e = F.zeros((size, size))
        for i in range(size):
            if colour[i] == a:
                e[i, i] = F.scalar(1)
        idem.append(e)
    pieces = {}

    def add(a, b, h):
        cur = pieces.setdefault((a, b), [])
        mat = np.array([x.reshape(-1) for x in cur + [h]], dtype=F.dtype).T
        if rank(F, mat) > len(cur):
            cur.append(h)
            return True
        return False

    for g in gens:
        g = F.array(g)
        for a in range(r):
            for b in range(r):
                h = F.matmul(F.matmul(idem[a], g), idem[b])
                if not F.is_zero(h):
                    add(a, b, h)
    grew = True
    while grew:
        grew = False
        items = [(k, x) for k, xs in sorted(pieces.items()) for x in xs]
        for (a, b), x in items:
            for (c, d), y in items:
                if b == c:
                    z = F.matmul(x, y)
                    if not F.is_zero(z) and add(a, d, z):
                        grew = True
    elems = list(idem)
    labels = [f"e{a + 1}" for a in range(r)]
    lv, rv = list(range(r)), list(range(r))
    for (a, b) in sorted(pieces):
        for h in pieces[(a, b)]:
            elems.append(h)
            labels.append(f"j{len(labels) - r + 1}")
            lv.append(a)
            rv.append(b)
    n = len(elems)
    basis = np.array([x.reshape(-1) for x in elems], dtype=F.dtype).T
    prods = np.array([F.matmul(elems[i], elems[j]).reshape(-1) for i in range(n) for j in range(n)],
                     dtype=F.dtype).T
    coords = solve(F, basis, prods)
    if coords is None:
        raise AlgebraError("generated span is not closed under multiplication")
    mult = F.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            mult[i, j] = coords[:, i * n + j]
    return Algebra(F, labels, mult, r, lv, rv, name=name)


def random_algebra(rng: np.random.Generator, field: Field, max_dim: int = 4, max_size: int = 4,
                   tries: int = 200) -> Algebra:
    """A random basic algebra of dimension ≤ max_dim, given as upper triangular matrices.

    Rows/columns are coloured by vertices; generators are random strictly
    upper triangular matrices restricted to one colour block pair.
    """
    for _ in range(tries):
        size = int(rng.integers(2, max_size + 1))
        r = int(rng.integers(1, size + 1))
        colour = sorted(int(c) for c in rng.integers(0, r, size=size))
        used = sorted(set(colour))
        colour = [used.index(c) for c in colour]
        r = len(used)
        gens = []
        for _ in range(int(rng.integers(1, 3))):
            a, b = int(rng.integers(0, r)), int(rng.integers(0, r))
            g = field.zeros((size, size))
            for i in range(size):
                for j in range(i + 1, size):
                    if colour[i] == a and colour[j] == b and rng.random() < 0.7:
                        g[i, j] = field.scalar(int(rng.integers(1, field.p or 3)))
            gens.append(g)
        A = upper_triangular_subalgebra(field, size, colour, gens, name="random")
        if A.dim <= max_dim:
            return A
    raise AlgebraError("no random algebra of the requested size found")
