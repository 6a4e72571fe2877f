"""Tensor products of graded quotient rings and modules over a field.

R1 (x) R2 lives in the polynomial ring on the disjoint union of variables
with defining ideal I1 + I2; a Groebner basis of the sum is the union of the
two bases, which the constructor re-derives and asserts. Tor is multiplicative
over such products, so graded Betti numbers of M1 (x) M2 are convolutions of
the factors' tables; verify_tensor_bounds recomputes both sides on a shared
window and also checks the induced shift and regularity bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import AlgebraError, InternalCheckError
from .groebner import QuotientRing, quotient_ring
from .modules import Presentation, presentation_from_rows
from .poly import PolyRing, Polynomial
from .resolution import BettiTable, betti, resolve


def _tensor_ambient(A1: PolyRing, A2: PolyRing) -> Tuple[PolyRing, List[int], List[int]]:
    if A1.p != A2.p:
        raise AlgebraError("tensor factors must share the coefficient field")
    if A1.order.name != A2.order.name:
        raise AlgebraError("tensor factors must use the same monomial order")
    names1, names2 = list(A1.names), list(A2.names)
    if set(names1) & set(names2):
        names1 = [nm + "_1" for nm in names1]
        names2 = [nm + "_2" for nm in names2]
    S = PolyRing(A1.field, names1 + names2, A1.order)
    map1 = list(range(A1.n))
    map2 = [A1.n + i for i in range(A2.n)]
    return S, map1, map2


@dataclass(frozen=True)
class TensorRing:
    ring: QuotientRing
    embed1: "EmbedMap"
    embed2: "EmbedMap"


class EmbedMap:
    """Variable-renaming inclusion of one factor's ambient ring into the product's."""

    def __init__(self, source: PolyRing, target: PolyRing, var_map: List[int]):
        self.source = source
        self.target = target
        self.var_map = tuple(var_map)

    def __call__(self, f: Polynomial) -> Polynomial:
        return f.map_vars(self.target, self.var_map)


def tensor_rings(R1: QuotientRing, R2: QuotientRing) -> TensorRing:
    """R1 (x) R2 as a quotient of the polynomial ring on all variables.

    Colliding variable names get factor suffixes. The reduced basis of the
    combined ideal must be the union of the factors' bases; this is asserted.
    """
    S, map1, map2 = _tensor_ambient(R1.ambient, R2.ambient)
    e1 = EmbedMap(R1.ambient, S, map1)
    e2 = EmbedMap(R2.ambient, S, map2)
    gens = [e1(g) for g in R1.gb.polys] + [e2(g) for g in R2.gb.polys]
    RT = quotient_ring(S, gens)
    expected = {e1(g).lead_monomial() for g in R1.gb.polys}
    expected |= {e2(g).lead_monomial() for g in R2.gb.polys}
    got = set(RT.gb.lead_monomials())
    if expected != got:
        raise InternalCheckError(
            "the combined defining ideal is not the union of the factor bases"
        )
    return TensorRing(ring=RT, embed1=e1, embed2=e2)


def tensor_modules(T: TensorRing, P1: Presentation, P2: Presentation) -> Presentation:
    """Presentation of M1 (x)_k M2 over the tensor ring.

    Generators are pairs (a, b) in row-major order with shift s_a + s_b;
    relations are the first factor's relations paired with every second
    generator, then every first generator paired with the second's relations.
    """
    if P1.ring.ambient != T.embed1.source or P2.ring.ambient != T.embed2.source:
        raise AlgebraError("module presentations must live over the tensor factors")
    r1, r2 = P1.f0.rank, P2.f0.rank
    shifts = []
    for a in range(r1):
        for b in range(r2):
            shifts.append(P1.f0.shifts[a] + P2.f0.shifts[b])
    amb = T.ring.ambient
    cols: List[List[Polynomial]] = []
    for c in range(P1.f1.rank):
        for b in range(r2):
            col = [amb.zero()] * (r1 * r2)
            for r in range(r1):
                entry = P1.matrix.entry(r, c)
                if not entry.is_zero():
                    col[r * r2 + b] = T.embed1(entry)
            cols.append(col)
    for a in range(r1):
        for c in range(P2.f1.rank):
            col = [amb.zero()] * (r1 * r2)
            for r in range(r2):
                entry = P2.matrix.entry(r, c)
                if not entry.is_zero():
                    col[a * r2 + r] = T.embed2(entry)
            cols.append(col)
    return presentation_from_rows(T.ring, shifts, cols)


def convolve_betti(tab1: BettiTable, tab2: BettiTable, hmax: int, dmax: int) -> Dict[Tuple[int, int], int]:
    """The predicted table of the tensor product: entrywise convolution."""
    out: Dict[Tuple[int, int], int] = {}
    for (i1, j1), b1 in tab1.entries.items():
        for (i2, j2), b2 in tab2.entries.items():
            i, j = i1 + i2, j1 + j2
            if i <= hmax and j <= dmax:
                out[i, j] = out.get((i, j), 0) + b1 * b2
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class TensorReport:
    ring: QuotientRing
    betti_tensor: BettiTable
    betti_expected: Dict[Tuple[int, int], int]
    kunneth_holds: bool
    kunneth_mismatches: Tuple[Tuple[int, int, int, int], ...]  # (i, j, got, expected)
    shift_bound_holds: bool
    reg_bound_holds: bool
    hmax: int
    dmax: int

    @property
    def all_hold(self) -> bool:
        return self.kunneth_holds and self.shift_bound_holds and self.reg_bound_holds

    def to_dict(self) -> dict:
        return {
            "kunneth_holds": self.kunneth_holds,
            "kunneth_mismatches": [list(m) for m in self.kunneth_mismatches],
            "shift_bound_holds": self.shift_bound_holds,
            "reg_bound_holds": self.reg_bound_holds,
            "hmax": self.hmax,
            "dmax": self.dmax,
            "betti_tensor": {f"{i},{j}": b for (i, j), b in sorted(self.betti_tensor.entries.items())},
            "betti_expected": {f"{i},{j}": b for (i, j), b in sorted(self.betti_expected.items())},
        }


def verify_tensor_bounds(
    R1: QuotientRing,
    R2: QuotientRing,
    P1: Presentation,
    P2: Presentation,
    hmax: int,
    dmax: int,
    pair_budget=None,
) -> TensorReport:
    """Resolve both factors and their tensor product on one window and compare.

    Checks, degree by degree within the window: the convolution identity for
    Betti numbers, t_n <= max(t_i + t_j) over i + j = n, and additivity of the
    regularity bound max(t_i - i).
    """
    T = tensor_rings(R1, R2)
    MT = tensor_modules(T, P1, P2)
    tab1 = betti(resolve(P1, hmax, dmax, pair_budget))
    tab2 = betti(resolve(P2, hmax, dmax, pair_budget))
    tabT = betti(resolve(MT, hmax, dmax, pair_budget))
    hwin = min(tab1.hmax, tab2.hmax, tabT.hmax, hmax)
    expected = convolve_betti(tab1, tab2, hwin, dmax)

    mismatches: List[Tuple[int, int, int, int]] = []
    keys = {k for k in expected} | {k for k in tabT.entries if k[0] <= hwin and k[1] <= dmax}
    for i, j in sorted(keys):
        got = tabT.entries.get((i, j), 0)
        want = expected.get((i, j), 0)
        if got != want:
            mismatches.append((i, j, got, want))

    shift_ok = True
    for n in range(hwin + 1):
        lhs = tabT.t(n)
        rhs = max(tab1.t(i) + tab2.t(n - i) for i in range(n + 1))
        if lhs > rhs:
            shift_ok = False

    reg1 = max(tab1.t(i) - i for i in range(hwin + 1))
    reg2 = max(tab2.t(i) - i for i in range(hwin + 1))
    regT = max(tabT.t(i) - i for i in range(hwin + 1))
    return TensorReport(
        ring=T.ring,
        betti_tensor=tabT,
        betti_expected=expected,
        kunneth_holds=not mismatches,
        kunneth_mismatches=tuple(mismatches),
        shift_bound_holds=shift_ok,
        reg_bound_holds=regT <= reg1 + reg2,
        hmax=hwin,
        dmax=dmax,
    )
