"""Regularity, rate and related invariants read off Betti table windows.

Conventions: t_i = 0 whenever beta_i = 0, also inside the rate suprema.
reg(M) = sup(t_i - i); rate_R(M) = sup_{i>=1} t_i / i; the ring's Backelin
rate is Rate(R) = sup_{i>=2} (t_i(K) - 1)/(i - 1), computed from the Koszul
complex of K = R/m and cross-checked against rate_R(m(1)), which must agree.

A window computation only ever certifies a lower bound for the suprema; a
result is promoted to exact when the resolution terminated or when an upper
bound certificate (Artinian bound, filtration bound) matches the window value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .errors import AlgebraError, InternalCheckError
from .groebner import QuotientRing, minimal_generators_mod
from .hilbert import hilbert_series
from .linalg import nullspace
from .modules import (
    Presentation,
    cyclic_presentation,
    presentation_from_rows,
    residue_field_presentation,
)
from .oracle import RingTable
from .resolution import BettiTable, betti, resolve, submodule_presentation, trim


@dataclass(frozen=True)
class RateCertificate:
    """An a-priori upper bound for a rate, with its provenance."""

    bound: Fraction
    source: str
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RateReport:
    kind: str  # "rate" or "backelin"
    value: Fraction
    ratios: Tuple[Tuple[int, int, Fraction], ...]  # (i, t_i, ratio)
    certified: str  # "exact" or "lower-bound"
    hmax: int
    dmax: Optional[int]
    certificate: Optional[RateCertificate] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": [self.value.numerator, self.value.denominator],
            "value_str": str(self.value),
            "ratios": [[i, t, str(r)] for i, t, r in self.ratios],
            "certified": self.certified,
            "hmax": self.hmax,
            "dmax": self.dmax,
            "certificate": None
            if self.certificate is None
            else {"bound": str(self.certificate.bound), "source": self.certificate.source},
        }


@dataclass(frozen=True)
class RegularityReport:
    value: int
    certified: bool
    hmax: int
    dmax: Optional[int]

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "certified": self.certified,
            "hmax": self.hmax,
            "dmax": self.dmax,
        }


def regularity_from_table(tab: BettiTable) -> RegularityReport:
    value = 0
    for i in range(tab.hmax + 1):
        value = max(value, tab.t(i) - i)
    return RegularityReport(value=value, certified=tab.finite, hmax=tab.hmax, dmax=tab.dmax)


def regularity(P: Presentation, hmax: int, dmax: Optional[int], pair_budget=None) -> RegularityReport:
    """reg(M) over the window; certified only when the resolution terminated."""
    return regularity_from_table(betti(resolve(P, hmax, dmax, pair_budget)))


def _apply_certificate(
    value: Fraction, exact: bool, cert: Optional[RateCertificate], what: str
) -> str:
    if exact:
        if cert is not None and value > Fraction(cert.bound):
            raise InternalCheckError(
                f"{what}: certified upper bound {cert.bound} below the exact value {value}"
            )
        return "exact"
    if cert is None:
        return "lower-bound"
    bound = Fraction(cert.bound)
    if value > bound:
        raise InternalCheckError(f"{what}: window value {value} exceeds certified bound {bound}")
    return "exact" if value == bound else "lower-bound"


def rate_from_table(tab: BettiTable, cert: Optional[RateCertificate] = None) -> RateReport:
    ratios = []
    for i in range(1, tab.hmax + 1):
        t = tab.t(i)
        ratios.append((i, t, Fraction(t, i)))
    value = max((r for _, _, r in ratios), default=Fraction(0))
    certified = _apply_certificate(value, tab.finite, cert, "rate")
    return RateReport(
        kind="rate",
        value=value,
        ratios=tuple(ratios),
        certified=certified,
        hmax=tab.hmax,
        dmax=tab.dmax,
        certificate=cert,
    )


def rate(
    P: Presentation,
    hmax: int,
    dmax: Optional[int],
    certificate: Optional[RateCertificate] = None,
    pair_budget=None,
) -> RateReport:
    """rate_R(M) = sup t_i/i over 1 <= i <= hmax (window value)."""
    if hmax < 1:
        raise AlgebraError("rate needs hmax >= 1")
    return rate_from_table(betti(resolve(P, hmax, dmax, pair_budget)), certificate)


def maximal_ideal_presentation(R: QuotientRing, dmax: Optional[int] = None) -> Presentation:
    """m(1) as an R-module: the irrelevant ideal, generators moved to degree 0."""
    vecs = [{0: dict(g.terms)} for g in R.maximal_ideal_gens()]
    sub = submodule_presentation(R, (0,), vecs, dmax=dmax)
    return sub.presentation.twist(1)


def backelin_rate(
    R: QuotientRing,
    hmax: int,
    dmax: Optional[int],
    certificate: Optional[RateCertificate] = None,
    pair_budget=None,
) -> RateReport:
    """Rate(R) = sup_{i>=2} (t_i(K) - 1)/(i - 1) over the window.

    Always recomputed a second way, as rate_R(m(1)) on the matching window;
    the two routes must agree on their common window or an internal check
    error is raised. Rows with beta_i = 0 contribute 0 to both suprema, and
    the final value is floored at 1: every standard graded algebra has
    Rate >= 1, the floor only matters when no syzygy row is visible (for
    example a polynomial ring in one variable, whose Koszul complex stops
    before homological degree 2).
    """
    if hmax < 2:
        raise AlgebraError("Backelin rate needs hmax >= 2")
    if R.n < 1:
        raise AlgebraError("Backelin rate needs at least one ring variable")
    tab = betti(resolve(residue_field_presentation(R), hmax, dmax, pair_budget))
    m_dmax = None if dmax is None else dmax - 1
    m_pres = maximal_ideal_presentation(R, dmax=m_dmax)
    m_tab = betti(resolve(m_pres, hmax - 1, m_dmax, pair_budget))

    hwin = min(tab.hmax, m_tab.hmax + 1)
    ratios = []
    for i in range(2, hwin + 1):
        t = tab.t(i)
        ratio = Fraction(t - 1, i - 1) if tab.total(i) else Fraction(0)
        ratios.append((i, t, ratio))
    value = max((r for _, _, r in ratios), default=Fraction(0))
    m_value = max(
        (Fraction(m_tab.t(i), i) for i in range(1, hwin)), default=Fraction(0)
    )
    if m_value != value:
        raise InternalCheckError(
            f"Backelin rate {value} disagrees with rate of the irrelevant ideal {m_value}"
        )
    value = max(value, Fraction(1))
    certified = _apply_certificate(value, tab.finite, certificate, "Backelin rate")
    return RateReport(
        kind="backelin",
        value=value,
        ratios=tuple(ratios),
        certified=certified,
        hmax=hwin,
        dmax=tab.dmax,
        certificate=certificate,
    )


def artinian_rate_bound(R: QuotientRing, P: Optional[Presentation] = None) -> RateCertificate:
    """Upper bound rate_R(M) <= t_0(M) + t - 1 for Artinian R with R_t = 0.

    With P omitted the bound is for K (t_0 = 0), so it also bounds
    Rate(R) = rate_R(m(1)) via t_0(m(1)) = 0.
    """
    h = hilbert_series(R)
    if not h.is_artinian():
        raise AlgebraError("the Artinian rate bound needs an Artinian ring")
    t = h.top_degree() + 1
    t0 = 0
    if P is not None:
        t0 = max(trim(P).f0.shifts, default=0)
    return RateCertificate(
        bound=Fraction(t0 + t - 1),
        source="artinian-bound",
        detail={"socle_bound": t, "t0": t0},
    )


@dataclass(frozen=True)
class AnnihilatorReport:
    """The colon ideal (0 : m) of an Artinian ring, degree by degree."""

    tau: int
    dims: Tuple[int, ...]  # dim (0:m)_j for j = 0..top degree
    gens: Tuple

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "dims": list(self.dims),
            "gens": [str(g) for g in self.gens],
        }


def linear_annihilator(R: QuotientRing) -> AnnihilatorReport:
    """Socle (0 :_R m) of an Artinian R: total dimension tau and generators."""
    h = hilbert_series(R)
    if not h.is_artinian():
        raise AlgebraError("the socle computation needs an Artinian ring")
    top = h.top_degree()
    rt = RingTable(R, top + 1)
    p = R.p
    dims: List[int] = []
    polys = []
    for j in range(top + 1):
        dj = rt.dims[j]
        if dj == 0:
            dims.append(0)
            continue
        stacked = np.concatenate([rt.mult[j][i] for i in range(R.n)], axis=0) if R.n else np.zeros((0, dj), dtype=np.int64)
        kern = nullspace(stacked, p)
        dims.append(len(kern))
        for v in kern:
            pd = {}
            for k, m in enumerate(rt.std[j]):
                if v[k]:
                    pd[m] = int(v[k])
            if pd:
                polys.append(R.ambient.from_dict(pd))
    gens = minimal_generators_mod(R, polys)
    return AnnihilatorReport(tau=sum(dims), dims=tuple(dims), gens=tuple(gens))


def is_koszul_up_to(R: QuotientRing, hmax: int, dmax: Optional[int] = None) -> bool:
    """Necessary condition for Koszulness on a window: beta_{i,j}(K) = 0 for j != i.

    Only degrees j <= dmax are inspected, so this can miss shifts beyond the
    window; a False answer is conclusive, a True answer holds for the window.
    """
    if dmax is None:
        dmax = hmax + 2
    tab = betti(resolve(residue_field_presentation(R), hmax, dmax))
    return all(i == j for (i, j) in tab.entries if i <= tab.hmax)


@dataclass(frozen=True)
class ChangeOfRingsReport:
    """Window check of the surjection transfer bounds for rates."""

    rate_r_m: RateReport
    rate_s_m: RateReport
    rate_r_s: RateReport
    t0_s_m: int
    bound_down_holds: bool  # rate_R(M) <= max(rate_S(M), rate_R(S)) + max(t_0, 0)
    bound_up_holds: Optional[bool]  # rate_S(M) <= max(rate_R(M), rate_R(S)); None if skipped
    bound_up_skipped_reason: Optional[str]
    equality_case_applies: bool
    equality_holds: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "rate_R_M": self.rate_r_m.to_dict(),
            "rate_S_M": self.rate_s_m.to_dict(),
            "rate_R_S": self.rate_r_s.to_dict(),
            "t0_S_M": self.t0_s_m,
            "bound_down_holds": self.bound_down_holds,
            "bound_up_holds": self.bound_up_holds,
            "bound_up_skipped_reason": self.bound_up_skipped_reason,
            "equality_case_applies": self.equality_case_applies,
            "equality_holds": self.equality_holds,
        }

    @property
    def all_hold(self) -> bool:
        ok = self.bound_down_holds
        if self.bound_up_holds is not None:
            ok = ok and self.bound_up_holds
        if self.equality_holds is not None:
            ok = ok and self.equality_holds
        return ok


def check_change_of_rings(
    R: QuotientRing,
    S: QuotientRing,
    P_over_S: Presentation,
    hmax: int,
    dmax: Optional[int],
    pair_budget=None,
) -> ChangeOfRingsReport:
    """Rates of M along a graded surjection R ->> S = R/J, window semantics.

    R and S must share the ambient polynomial ring with I_R contained in I_S,
    so the quotient map is the identity in degree 1.
    """
    if R.ambient != S.ambient:
        raise AlgebraError("R and S must share the ambient polynomial ring")
    for g in R.gens:
        if not S.is_zero(g):
            raise AlgebraError("the defining ideal of R is not contained in that of S")
    if P_over_S.ring != S:
        raise AlgebraError("the module presentation must be over S")

    # M over R: same generators, relations plus J * (each generator)
    rel_cols: List[List] = []
    f0rank = P_over_S.f0.rank
    amb = R.ambient
    for c in range(P_over_S.f1.rank):
        rel_cols.append([P_over_S.matrix.entry(r, c) for r in range(f0rank)])
    for g in S.gens:
        if R.is_zero(g):
            continue
        for k in range(f0rank):
            col = [amb.zero()] * f0rank
            col[k] = g
            rel_cols.append(col)
    P_over_R = presentation_from_rows(R, P_over_S.f0.shifts, rel_cols)

    trimmed_s = trim(P_over_S)
    t0 = max(trimmed_s.f0.shifts, default=0)
    min_shift = min(trimmed_s.f0.shifts, default=0)

    rate_r_m = rate(P_over_R, hmax, dmax, pair_budget=pair_budget)
    rate_s_m = rate(P_over_S, hmax, dmax, pair_budget=pair_budget)
    rate_r_s = rate(cyclic_presentation(R, list(S.gens)), hmax, dmax, pair_budget=pair_budget)

    down_rhs = max(rate_s_m.value, rate_r_s.value) + max(t0, 0)
    bound_down = rate_r_m.value <= down_rhs
    if min_shift < 0:
        bound_up = None
        reason = "module not nonnegatively graded"
    else:
        bound_up = rate_s_m.value <= max(rate_r_m.value, rate_r_s.value)
        reason = None
    applies = t0 == 0 and rate_r_s.value == 1
    equality = (rate_r_m.value == rate_s_m.value) if applies else None
    return ChangeOfRingsReport(
        rate_r_m=rate_r_m,
        rate_s_m=rate_s_m,
        rate_r_s=rate_r_s,
        t0_s_m=t0,
        bound_down_holds=bound_down,
        bound_up_holds=bound_up,
        bound_up_skipped_reason=reason,
        equality_case_applies=applies,
        equality_holds=equality,
    )
