"""Gorenstein-projectivity certificates, Buchweitz consistency and presilting scans."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .modrep import ModuleRep
from .resolutions import CompleteResolution, Resolution, ResolutionError, complete_resolution
from .sgcalc import StabilizedValue, perp_R, sg_hom_tor_route, stable_hom


@dataclass
class PerpResult:
    holds: bool
    depth: int
    failing: Optional[int] = None

    def __str__(self):
        return f"holds-to-depth {self.depth}" if self.holds else f"fails({self.failing})"


def perp_R_certify(M: ModuleRep, depth: int, res: Optional[Resolution] = None) -> PerpResult:
    """Check Ext^i(M, R) = 0 for 1 ≤ i ≤ depth."""
    bad = perp_R(M, depth, res)
    return PerpResult(bad is None, depth, bad)


@dataclass
class GPCertificate:
    verdict: str  # certified-GP | certified-not | unknown
    depth: int
    witness: Optional[CompleteResolution] = None
    failing: Optional[int] = None
    window: tuple = (-4, 4)

    def __str__(self):
        if self.verdict == "certified-GP":
            per = self.witness.per
            what = "projective" if per is None else f"offset {per.offset} period {per.period}"
            return f"certified-GP ({what}, window {self.window[0]}..{self.window[1]})"
        if self.verdict == "certified-not":
            return f"certified-not (Ext^{self.failing}(M,R) != 0)"
        return f"unknown(depth {self.depth})"

    def reverify(self) -> bool:
        """Re-check total acyclicity of the witness on its window."""
        return self.witness is not None and self.witness.verify(*self.window) is None


def gproj_certify(M: ModuleRep, depth: int = 8, window=(-4, 4)) -> GPCertificate:
    res = Resolution(M)
    bad = perp_R(M, depth, res)
    if bad is not None:
        return GPCertificate("certified-not", depth, failing=bad, window=window)
    try:
        cr = complete_resolution(M, window, maxdepth=depth, res=res, allow_projective=True)
    except ResolutionError:
        return GPCertificate("unknown", depth, window=window)
    return GPCertificate("certified-GP", depth, witness=cr, window=window)


@dataclass
class BuchweitzRow:
    n: int
    sg: StabilizedValue
    stable: int

    @property
    def ok(self) -> bool:
        return self.sg.stabilized and self.sg.value == self.stable

    def line(self):
        return f"buchweitz {self.n} sg={self.sg.value} stable={self.stable} {'ok' if self.ok else 'MISMATCH'}"


@dataclass
class BuchweitzReport:
    rows: list = dc_field(default_factory=list)
    base_ok: bool = True  # stable_hom(M,N) = sg_hom(M,N,0)

    @property
    def ok(self) -> bool:
        return self.base_ok and all(r.ok for r in self.rows)

    def lines(self):
        return [r.line() for r in self.rows] + [f"buchweitz base {'ok' if self.base_ok else 'MISMATCH'}"]


def buchweitz_check(M: ModuleRep, N: ModuleRep, window=(-2, 2), depth: int = 8) -> BuchweitzReport:
    """sg_hom(M, N, n) against stable Hom(Z^{1-n}(C), N) for a complete resolution C of M."""
    cm, cn = gproj_certify(M, depth), gproj_certify(N, depth)
    if cm.verdict != "certified-GP" or cn.verdict != "certified-GP":
        raise ValueError("buchweitz_check needs Gorenstein projective inputs")
    cr = cm.witness
    if cr.per is not None and cr.per.offset != 0:
        raise ValueError("the complete resolution does not start at M (nonzero periodicity offset)")
    rep = BuchweitzReport()
    for n in range(window[0], window[1] + 1):
        stable = 0 if cr.per is None else stable_hom(cr.cocycle_module(1 - n), N)
        rep.rows.append(BuchweitzRow(n, sg_hom_tor_route(M, N, n), stable))
    rep.base_ok = stable_hom(M, N) == sg_hom_tor_route(M, N, 0).value
    return rep


@dataclass
class PresiltingEntry:
    name: str
    verdict: str  # zero object | nonzero at n | presilting-to-window
    n: Optional[int] = None
    unstabilized: list = dc_field(default_factory=list)

    def line(self):
        tail = f" (unstabilized: {','.join(map(str, self.unstabilized))})" if self.unstabilized else ""
        if self.verdict == "nonzero":
            return f"presilting {self.name} nonzero at n={self.n}{tail}"
        return f"presilting {self.name} {self.verdict}{tail}"


def presilting_scan(modules, n_max: int = 6, depth: Optional[int] = None) -> list:
    """Report per module: zero object, the least n with sg_hom(M,M,n) ≠ 0, or a window finding."""
    out = []
    for M in modules:
        A = M.algebra
        d = depth if depth is not None else 2 * A.dim + 6
        res = Resolution(M).extend(d)
        if res.length() is not None:
            out.append(PresiltingEntry(M.name, "zero object"))
            continue
        entry = PresiltingEntry(M.name, "presilting-to-window")
        for n in range(1, n_max + 1):
            v = sg_hom_tor_route(M, M, n)
            if not v.stabilized:
                entry.unstabilized.append(n)
            if v.value:
                entry.verdict, entry.n = "nonzero", n
                break
        out.append(entry)
    return out
