"""Hilbert series of R = S/I and of presented modules.

The series is read off the leading-term module of a Groebner basis: the
standard monomials in each free position form a K-basis degree by degree.
Numerators are computed over Z by the pivot-variable recursion
N(J) = N(J + (x)) + z * N(J : x) on monomial ideals, with the complete
intersection product as base case. The closed form is only reported when the
underlying basis saturated completely; a truncated basis yields coefficients
that are exact on the window and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .errors import AlgebraError
from .groebner import ModuleGB, QuotientRing
from .modules import Presentation
from .order import Mono, mono_divides


def _minimalize_monos(monos: Sequence[Mono]) -> List[Mono]:
    out = []
    for m in sorted(set(monos), key=lambda m: (sum(m), m)):
        if not any(mono_divides(q, m) for q in out):
            out.append(m)
    return out


def _poly_mul_z(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add_z(a: List[int], b: List[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _strip(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def monomial_numerator(gens: Sequence[Mono], n: int) -> List[int]:
    """Coefficients of N(z) with H_{S/(gens)} = N(z)/(1-z)^n, over Z."""
    gens = _minimalize_monos(gens)
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return []  # the whole ring: N = 0
    pure = [m for m in gens if sum(1 for e in m if e) == 1]
    if len(pure) == len(gens):
        out = [1]
        for m in gens:
            d = sum(m)
            factor = [1] + [0] * (d - 1) + [-1]
            out = _poly_mul_z(out, factor)
        return _strip(out)
    # pivot: variable occurring most across the non-pure generators
    counts = [0] * n
    for m in gens:
        if sum(1 for e in m if e) > 1:
            for i, e in enumerate(m):
                counts[i] += e
    piv = counts.index(max(counts))
    colon = [tuple(e - 1 if i == piv and e > 0 else e for i, e in enumerate(m)) for m in gens]
    var = tuple(1 if i == piv else 0 for i in range(n))
    plus = [var] + [m for m in gens if m[piv] == 0]
    n_colon = monomial_numerator(colon, n)
    n_plus = monomial_numerator(plus, n)
    return _strip(_poly_add_z(n_plus, [0] + n_colon))


def _expand(numerator: List[int], n: int, dmax: int) -> List[int]:
    """Coefficients of numerator / (1-z)^n up to degree dmax."""
    coeffs = list(numerator[: dmax + 1]) + [0] * max(0, dmax + 1 - len(numerator))
    for _ in range(n):
        for i in range(1, dmax + 1):
            coeffs[i] += coeffs[i - 1]
    return coeffs


@dataclass(frozen=True)
class HilbertSeries:
    """Window of a Hilbert function, with a closed form when certified exact."""

    coeffs: Tuple[int, ...]
    dmax: int
    exact: bool
    numerator: Optional[Tuple[int, ...]]
    nvars: int

    def coefficient(self, j: int) -> int:
        if j < 0:
            return 0
        if j <= self.dmax:
            return self.coeffs[j]
        if not self.exact:
            raise AlgebraError(f"degree {j} outside the computed window {self.dmax}")
        return _expand(list(self.numerator), self.nvars, j)[j]

    def reduced_numerator(self) -> Tuple[List[int], int]:
        """(Q, d): H = Q(z)/(1-z)^d with Q(1) != 0; requires the exact form."""
        if not self.exact:
            raise AlgebraError("closed form unavailable: the basis was truncated")
        q = _strip(list(self.numerator))
        d = self.nvars
        if not q:
            return [], 0
        while sum(q) == 0:
            # synthetic division by (1 - z)
            out = []
            acc = 0
            for c in q[:-1]:
                acc += c
                out.append(acc)
            q = _strip(out)
            d -= 1
        return q, d

    def dimension(self) -> int:
        """Krull dimension (pole order at z = 1); -1 for the zero module."""
        q, d = self.reduced_numerator()
        if not q:
            return -1
        return d

    def multiplicity(self) -> int:
        q, d = self.reduced_numerator()
        return sum(q)

    def is_artinian(self) -> bool:
        return self.dimension() <= 0

    def top_degree(self) -> int:
        """Largest j with a nonzero coefficient; requires Artinian, exact."""
        if not self.is_artinian():
            raise AlgebraError("top degree requires an Artinian module")
        q, _ = self.reduced_numerator()
        return len(q) - 1

    def to_dict(self) -> dict:
        return {
            "coefficients": list(self.coeffs),
            "dmax": self.dmax,
            "exact": self.exact,
            "numerator": list(self.numerator) if self.numerator is not None else None,
            "denominator_power": self.nvars,
        }


def hilbert_series(
    obj: Union[QuotientRing, Presentation],
    dmax: int = 20,
    gb_dbound: Optional[int] = None,
) -> HilbertSeries:
    """Hilbert series of a quotient ring or of a presented module.

    gb_dbound optionally truncates the internal Groebner run; the closed form
    is then withheld and only the window coefficients (still exact up to
    min(dmax, gb_dbound)) are reported.
    """
    if dmax < 0:
        raise AlgebraError("dmax must be >= 0")
    if isinstance(obj, QuotientRing):
        R = obj
        leads = [(0, m) for m in R.gb.lead_monomials()]
        shifts = (0,)
        truncated = False
    else:
        P = obj
        R = P.ring
        shifts = P.f0.shifts
        if shifts and min(shifts) < 0:
            raise AlgebraError("hilbert_series requires nonnegative generator degrees")
        mgb = ModuleGB(R.ambient, shifts, dbound=gb_dbound)
        for c in range(P.f1.rank):
            mgb.add_input(P.matrix.column_vec(c))
        for f in R.gens:
            for k in range(P.f0.rank):
                mgb.add_input({k: dict(f.terms)})
        mgb.saturate()
        truncated = mgb.truncated
        leads = mgb.lead_terms()
    n = R.n
    numerator: List[int] = []
    for k, d in enumerate(shifts):
        nk = monomial_numerator([m for pos, m in leads if pos == k], n)
        numerator = _poly_add_z(numerator, [0] * d + nk)
    numerator = _strip(numerator)
    window = dmax if not truncated else min(dmax, gb_dbound)
    coeffs = _expand(numerator, n, window)
    exact = not truncated
    return HilbertSeries(
        coeffs=tuple(coeffs),
        dmax=window,
        exact=exact,
        numerator=tuple(numerator) if exact else None,
        nvars=n,
    )


def multiplicity(h: HilbertSeries) -> int:
    """Normalized leading coefficient e(M) = Q(1) with H = Q/(1-z)^dim."""
    return h.multiplicity()
