"""Koszul-type filtration certificates and the rate bounds they justify.

A filtration certificate lists ideals U_0, U_1, ... of a quotient ring R with
U_0 = 0 and the irrelevant maximal ideal m somewhere in the family. Every
other member U_k carries a witness (j, x, c) asserting

    U_k = U_j + (x),  x not in U_j,  (U_j : x) = U_c,  m(U_j) <= m(U_k),

with j strictly earlier than k (so families are built up one element at a
time) while c may point anywhere. A verified certificate with generator
degrees bounded by d yields t_i(K) <= d(i - 1) + 1, hence Rate(R) <= d.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import AlgebraError, BudgetExceededError, InternalCheckError
from .field import DEFAULT_PRIME
from .groebner import (
    QuotientRing,
    colon,
    ideal_contains,
    ideal_equal,
    minimal_generators_mod,
    quotient_ring,
)
from .invariants import RateCertificate
from .order import ORDERS, mono_deg, mono_divides
from .poly import PolyRing, Polynomial, monomials_of_degree, parse_polys


@dataclass(frozen=True)
class Witness:
    j: int
    gen: Polynomial
    colon: int


@dataclass(frozen=True)
class FiltrationCertificate:
    ring: QuotientRing
    ideals: Tuple[Tuple[Polynomial, ...], ...]
    witnesses: Tuple[Optional[Witness], ...]
    bound: Optional[int] = None

    def __post_init__(self):
        if len(self.ideals) != len(self.witnesses):
            raise AlgebraError("one witness slot per family member is required")

    @property
    def size(self) -> int:
        return len(self.ideals)

    def to_json(self) -> str:
        amb = self.ring.ambient
        doc = {
            "schema": "gradedres/filtration/v1",
            "ring": {
                "p": amb.p,
                "vars": list(amb.names),
                "order": amb.order.name,
                "ideal": [str(g) for g in self.ring.gens],
            },
            "ideals": [[str(g) for g in member] for member in self.ideals],
            "witnesses": [
                None if w is None else {"j": w.j, "gen": str(w.gen), "colon": w.colon}
                for w in self.witnesses
            ],
            "bound": self.bound,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "FiltrationCertificate":
        doc = json.loads(text)
        if doc.get("schema") != "gradedres/filtration/v1":
            raise AlgebraError(f"unknown certificate schema {doc.get('schema')!r}")
        rd = doc["ring"]
        amb = PolyRing(rd["p"], rd["vars"], ORDERS[rd["order"]])
        R = quotient_ring(amb, parse_polys(amb, rd["ideal"]))
        ideals = tuple(tuple(parse_polys(amb, member)) for member in doc["ideals"])
        wits: List[Optional[Witness]] = []
        for w in doc["witnesses"]:
            if w is None:
                wits.append(None)
            else:
                (g,) = parse_polys(amb, [w["gen"]])
                wits.append(Witness(j=int(w["j"]), gen=g, colon=int(w["colon"])))
        bound = doc.get("bound")
        return FiltrationCertificate(R, ideals, tuple(wits), None if bound is None else int(bound))


@dataclass(frozen=True)
class FiltrationReport:
    status: str  # "verified", "failed", or "unverifiable"
    bound: Optional[int]
    size: int
    failures: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "bound": self.bound,
            "size": self.size,
            "failures": list(self.failures),
        }


def _member_degree(R: QuotientRing, gens: Sequence[Polynomial]) -> int:
    mins = minimal_generators_mod(R, gens)
    return max((g.homogeneous_degree() for g in mins), default=0)


def verify_filtration(cert: FiltrationCertificate) -> FiltrationReport:
    """Check every clause of the certificate by direct ideal arithmetic."""
    R = cert.ring
    failures: List[str] = []
    unverifiable: List[str] = []
    n = len(cert.ideals)
    if n < 2:
        failures.append("family must contain the zero ideal and the maximal ideal")
    if n >= 1 and any(not R.is_zero(g) for g in cert.ideals[0]):
        failures.append("member 0 is not the zero ideal")
    if n >= 1 and cert.witnesses[0] is not None:
        failures.append("the zero ideal must not carry a witness")

    mgens = R.maximal_ideal_gens()
    if not any(ideal_equal(R, list(member), mgens) for member in cert.ideals):
        failures.append("the maximal ideal is not in the family")

    degs = [0] * n
    for k in range(1, n):
        degs[k] = _member_degree(R, cert.ideals[k])
    for k in range(1, n):
        w = cert.witnesses[k]
        where = f"member {k}"
        if w is None:
            failures.append(f"{where}: missing witness")
            continue
        if not (0 <= w.colon < n):
            failures.append(f"{where}: colon index {w.colon} out of range")
            continue
        if not (0 <= w.j < n):
            failures.append(f"{where}: witness index {w.j} out of range")
            continue
        if w.j >= k:
            unverifiable.append(f"{where}: witness index {w.j} is not strictly earlier")
            continue
        gen = R.nf(w.gen)
        if gen.is_zero() or not gen.is_homogeneous():
            failures.append(f"{where}: witness element must be homogeneous and nonzero")
            continue
        J = list(cert.ideals[w.j])
        if ideal_contains(R, J, w.gen):
            failures.append(f"{where}: witness element already lies in member {w.j}")
            continue
        if not ideal_equal(R, J + [w.gen], list(cert.ideals[k])):
            failures.append(f"{where}: member {w.j} plus the witness element is not member {k}")
            continue
        col = colon(R, J, w.gen)
        if not ideal_equal(R, col, list(cert.ideals[w.colon])):
            failures.append(f"{where}: colon ideal does not match member {w.colon}")
            continue
        if degs[w.j] > degs[k]:
            failures.append(
                f"{where}: witness member has generator degree {degs[w.j]} above {degs[k]}"
            )
    bound = max(degs, default=0)
    if cert.bound is not None and not failures and bound > cert.bound:
        failures.append(f"stated bound {cert.bound} is below the generator degree {bound}")
    if failures:
        return FiltrationReport("failed", None, n, tuple(failures))
    if unverifiable:
        return FiltrationReport("unverifiable", None, n, tuple(unverifiable))
    return FiltrationReport("verified", bound, n, ())


def rate_bound_from_filtration(report: FiltrationReport) -> RateCertificate:
    if report.status != "verified":
        raise AlgebraError(f"cannot extract a bound from a {report.status} certificate")
    return RateCertificate(
        bound=Fraction(report.bound),
        source="koszul-filtration",
        detail={"members": report.size},
    )


def _antichains(elements: Sequence, divides: Callable, limit: int) -> List[Tuple]:
    """All antichains of a finite divisibility poset, as tuples in element order."""
    out: List[Tuple] = []
    n = len(elements)

    def walk(start: int, chosen: List):
        out.append(tuple(chosen))
        if len(out) > limit:
            raise BudgetExceededError(f"filtration family exceeds {limit} members", partial=None)
        for i in range(start, n):
            e = elements[i]
            if any(divides(c, e) or divides(e, c) for c in chosen):
                continue
            chosen.append(e)
            walk(i + 1, chosen)
            chosen.pop()

    walk(0, [])
    return out


def truncation_filtration(h: int, t: int, p: int = DEFAULT_PRIME, max_members: int = 20000):
    """A verified-by-construction filtration for R = F_p[x_1..x_h]/m^t.

    The family is every ideal of R generated by monomials of degree below t,
    indexed by antichains. The witness for a member drops one generator of
    maximal degree; the colon of a monomial member by a monomial is again in
    the family, so the certificate closes up with bound t - 1.

    Returns (ring, certificate).
    """
    if h < 1 or t < 2:
        raise AlgebraError("truncation rings need h >= 1 and t >= 2")
    S = PolyRing(p, [f"x{i}" for i in range(1, h + 1)])
    power_gens = [S.monomial(m) for m in monomials_of_degree(h, t)]
    R = quotient_ring(S, power_gens)

    monos = []
    for d in range(1, t):
        monos.extend(sorted(monomials_of_degree(h, d), key=S.order.key))
    families = _antichains(monos, mono_divides, max_members)
    families.sort(key=lambda fam: (len(fam), tuple(S.order.key(m) for m in fam)))
    index = {fam: i for i, fam in enumerate(families)}
    if () not in index or index[()] != 0:
        raise InternalCheckError("the empty antichain must be member 0")

    def colon_member(fam: Tuple, a) -> Tuple:
        """Minimal generators of ((fam) : a) in R as an antichain."""
        cand = [tuple(max(e - f, 0) for e, f in zip(g, a)) for g in fam]
        cand.extend(monomials_of_degree(h, t - mono_deg(a)))
        keep = []
        for m in sorted(set(cand), key=lambda mm: (mono_deg(mm), S.order.key(mm))):
            if not any(mono_divides(k, m) for k in keep):
                keep.append(m)
        return tuple(sorted(keep, key=lambda mm: monos.index(mm)))

    ideals: List[Tuple[Polynomial, ...]] = []
    witnesses: List[Optional[Witness]] = []
    for fam in families:
        ideals.append(tuple(S.monomial(m) for m in fam))
        if not fam:
            witnesses.append(None)
            continue
        ordered = sorted(fam, key=lambda mm: (mono_deg(mm), S.order.key(mm)))
        dropped = ordered[-1]
        smaller = tuple(m for m in fam if m != dropped)
        j = index[smaller]
        cfam = colon_member(smaller, dropped)
        witnesses.append(Witness(j=j, gen=S.monomial(dropped), colon=index[cfam]))
    cert = FiltrationCertificate(R, tuple(ideals), tuple(witnesses), bound=t - 1)
    return R, cert


@dataclass(frozen=True)
class LinearQuotient:
    """R/(l) presented on one fewer variable, with maps in both directions."""

    ring: QuotientRing
    eliminated: int
    form: Polynomial
    project: Callable[[Polynomial], Polynomial]
    embed: Callable[[Polynomial], Polynomial]


def quotient_by_linear(R: QuotientRing, l: Polynomial) -> LinearQuotient:
    """Rewrite R/(l) as a quotient ring in the remaining variables.

    The lex-first variable with a nonzero coefficient in l is eliminated by
    substituting the solved linear relation into the defining ideal.
    """
    amb = R.ambient
    l = R.nf(l)
    if l.is_zero() or not l.is_homogeneous() or l.homogeneous_degree() != 1:
        raise AlgebraError("the section must be a nonzero linear form")
    coeffs = [0] * amb.n
    for m, c in l.terms.items():
        coeffs[m.index(1)] = c
    k = next(i for i, c in enumerate(coeffs) if c)
    inv = pow(coeffs[k], amb.p - 2, amb.p)
    T = PolyRing(amb.field, tuple(nm for i, nm in enumerate(amb.names) if i != k), amb.order)

    proj_images: List[Polynomial] = []
    tpos = 0
    tvars = T.gens()
    for i in range(amb.n):
        if i == k:
            img = T.zero()
            for i2, c in enumerate(coeffs):
                if i2 == k or c == 0:
                    continue
                pos = i2 if i2 < k else i2 - 1
                img = img - tvars[pos] * ((c * inv) % amb.p)
            proj_images.append(img)
        else:
            proj_images.append(tvars[tpos])
            tpos += 1
    embed_images = [amb.gen(i) for i in range(amb.n) if i != k]

    def project(f: Polynomial) -> Polynomial:
        return f.substitute(T, proj_images)

    def embed(f: Polynomial) -> Polynomial:
        return f.substitute(amb, embed_images)

    Rq = quotient_ring(T, [project(g) for g in R.gens])
    return LinearQuotient(ring=Rq, eliminated=k, form=l, project=project, embed=embed)


def classify_linear_annihilator(R: QuotientRing, l: Polynomial) -> Tuple[str, List[Polynomial]]:
    """Classify (0 :_R l) as "zero", "maximal", "principal" (= (l)), or "other"."""
    ann = colon(R, [], l)
    if not ann:
        return "zero", ann
    if ideal_equal(R, ann, [l]):
        return "principal", ann
    if ideal_equal(R, ann, R.maximal_ideal_gens()):
        return "maximal", ann
    return "other", ann


def lift_filtration(R: QuotientRing, l: Polynomial, cert: FiltrationCertificate) -> FiltrationCertificate:
    """Pull a filtration certificate for R/(l) back to one for R.

    Requires (0 :_R l) to be 0, (l), or the maximal ideal; anything else is
    rejected since the preimage family then has no witness for (l). Member
    U' of the input becomes (l) + preimage generators, shifted one slot to
    make room for the zero ideal of R.
    """
    lq = quotient_by_linear(R, l)
    if cert.ring != lq.ring:
        raise AlgebraError(
            "the certificate is not over R/(l) presented on the remaining variables"
        )
    kind, ann = classify_linear_annihilator(R, l)
    if kind == "other":
        raise AlgebraError(
            "(0 : l) is none of 0, (l), m; the lifted family has no witness for (l): "
            + ", ".join(str(g) for g in ann)
        )

    mgens = lq.ring.maximal_ideal_gens()
    zero_slot = None
    maximal_slot = None
    for i, member in enumerate(cert.ideals):
        if all(lq.ring.is_zero(g) for g in member):
            zero_slot = i
        elif maximal_slot is None and ideal_equal(lq.ring, list(member), mgens):
            maximal_slot = i
    if zero_slot != 0:
        raise AlgebraError("the input certificate must list the zero ideal first")
    if kind == "maximal" and maximal_slot is None:
        raise AlgebraError("the input certificate does not contain the maximal ideal")

    if kind == "zero":
        colon_of_l = 0
    elif kind == "principal":
        colon_of_l = 1
    else:
        colon_of_l = 1 + maximal_slot

    ideals: List[Tuple[Polynomial, ...]] = [()]
    witnesses: List[Optional[Witness]] = [None]
    for i, member in enumerate(cert.ideals):
        lifted = (l,) + tuple(lq.embed(g) for g in member)
        ideals.append(lifted)
        if i == 0:
            witnesses.append(Witness(j=0, gen=l, colon=colon_of_l))
            continue
        w = cert.witnesses[i]
        if w is None:
            raise AlgebraError(f"input member {i} has no witness to lift")
        witnesses.append(Witness(j=1 + w.j, gen=lq.embed(w.gen), colon=1 + w.colon))
    bound = None if cert.bound is None else max(cert.bound, 1)
    return FiltrationCertificate(R, tuple(ideals), tuple(witnesses), bound)
