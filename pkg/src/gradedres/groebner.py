"""Buchberger machinery for graded submodules of free modules, with syzygies.

Vectors of a free module F = sum_k R(-d_k) are sparse dicts {position: poly
dict}. The module order is position-over-term: a term at a lower position is
larger, ties resolved by the ring's monomial order. S-pairs are processed in
increasing internal degree, so cutting the queue at a degree bound yields a
basis whose span agrees with the full module in all degrees <= bound.

With track=True every basis element carries coordinates over the original
input generators, and every reduction to zero is recorded as a syzygy of the
inputs. No pair-skipping criteria run in tracked mode; the product criterion
would silently drop the Koszul syzygy of the skipped pair.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AlgebraError,
    BudgetExceededError,
    HomogeneityError,
    LinearGeneratorError,
    RingMismatchError,
)
from .order import (
    Mono,
    mono_deg,
    mono_div,
    mono_divides,
    mono_is_coprime,
    mono_lcm,
)
from .poly import PolyDict, PolyRing, Polynomial, pd_iadd_term, pd_scale

Vec = Dict[int, PolyDict]


def vec_iadd_scaled(dst: Vec, src: Vec, c: int, mono: Mono, p: int) -> None:
    """dst += c * x^mono * src, in place, dropping zero entries."""
    for pos, pd in src.items():
        tgt = dst.setdefault(pos, {})
        for m, a in pd.items():
            key = tuple(x + y for x, y in zip(m, mono))
            v = (tgt.get(key, 0) + a * c) % p
            if v:
                tgt[key] = v
            else:
                tgt.pop(key, None)
        if not tgt:
            del dst[pos]


def vec_copy(v: Vec) -> Vec:
    return {pos: dict(pd) for pos, pd in v.items()}


def vec_scale(v: Vec, c: int, p: int) -> Vec:
    return {pos: pd_scale(pd, c, p) for pos, pd in v.items()} if c % p else {}


def vec_lead(v: Vec, order) -> Tuple[int, Mono, int]:
    pos = min(v)
    pd = v[pos]
    mono = max(pd, key=order.key)
    return pos, mono, pd[mono]


def vec_degree(v: Vec, shifts: Sequence[int]) -> Optional[int]:
    """Common degree of a homogeneous vector, None if zero; raises if mixed."""
    degs = set()
    for pos, pd in v.items():
        for m in pd:
            degs.add(mono_deg(m) + shifts[pos])
    if not degs:
        return None
    if len(degs) > 1:
        raise HomogeneityError(f"vector is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


class _Elem:
    __slots__ = ("vec", "lead_pos", "lead_mono", "coords", "degree")

    def __init__(self, vec, lead_pos, lead_mono, coords, degree):
        self.vec = vec
        self.lead_pos = lead_pos
        self.lead_mono = lead_mono
        self.coords = coords
        self.degree = degree


class ModuleGB:
    """Incremental Buchberger run over a fixed free module.

    Inputs enter through add_input; saturate() drives the degree-ordered work
    queue. Membership questions in degree d are valid once saturate(d) has
    returned, which is what the incremental minimal-generator routines rely on.
    """

    def __init__(
        self,
        ring: PolyRing,
        shifts: Sequence[int],
        dbound: Optional[int] = None,
        track: bool = False,
        pair_budget: Optional[int] = None,
    ):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.dbound = dbound
        self.track = track
        self.pair_budget = pair_budget
        self.basis: List[_Elem] = []
        self.syzygies: List[Vec] = []  # coordinate vectors over input indices
        self.truncated = False
        self.n_inputs = 0
        self._by_pos: Dict[int, List[int]] = {}
        self._heap: list = []
        self._counter = itertools.count()
        self._steps = 0

    # -- queue -------------------------------------------------------------

    def add_input(self, vec: Vec) -> int:
        """Queue a homogeneous input vector; returns its input index."""
        idx = self.n_inputs
        self.n_inputs += 1
        vec = {pos: {m: c % self.ring.p for m, c in pd.items() if c % self.ring.p} for pos, pd in vec.items()}
        vec = {pos: pd for pos, pd in vec.items() if pd}
        for pos in vec:
            if not 0 <= pos < len(self.shifts):
                raise AlgebraError(f"vector position {pos} out of range")
        deg = vec_degree(vec, self.shifts)
        if deg is None:
            if self.track:
                self.syzygies.append({idx: {(0,) * self.ring.n: 1}})
            return idx
        heapq.heappush(self._heap, (deg, 0, next(self._counter), ("gen", idx, vec)))
        return idx

    def _push_pair(self, i: int, j: int) -> None:
        gi, gj = self.basis[i], self.basis[j]
        lcm = mono_lcm(gi.lead_mono, gj.lead_mono)
        deg = mono_deg(lcm) + self.shifts[gi.lead_pos]
        if self.dbound is not None and deg > self.dbound:
            self.truncated = True
            return
        if not self.track and len(self.shifts) == 1 and mono_is_coprime(gi.lead_mono, gj.lead_mono):
            return  # product criterion, safe only when no syzygy is wanted
        heapq.heappush(self._heap, (deg, 1, next(self._counter), ("pair", i, j, lcm)))

    def saturate(self, to_degree: Optional[int] = None) -> None:
        bound = to_degree
        if self.dbound is not None:
            bound = self.dbound if bound is None else min(bound, self.dbound)
        while self._heap and (bound is None or self._heap[0][0] <= bound):
            self._step()
        if self._heap and self.dbound is not None:
            if to_degree is None or to_degree >= self.dbound:
                self.truncated = True

    # -- reduction ---------------------------------------------------------

    def _find_reducer(self, pos: int, mono: Mono) -> Optional[_Elem]:
        for i in self._by_pos.get(pos, ()):
            g = self.basis[i]
            if mono_divides(g.lead_mono, mono):
                return g
        return None

    def _reduce_full(self, vec: Vec, coords: Optional[Vec]) -> Tuple[Vec, Optional[Vec]]:
        """Full normal form; largest reducible term first, first stored divisor wins."""
        p = self.ring.p
        order = self.ring.order
        out: Vec = {}
        work = vec_copy(vec)
        while work:
            pos, mono, c = vec_lead(work, order)
            red = self._find_reducer(pos, mono)
            if red is None:
                out.setdefault(pos, {})[mono] = c
                pd = work[pos]
                del pd[mono]
                if not pd:
                    del work[pos]
                continue
            shift = mono_div(mono, red.lead_mono)
            vec_iadd_scaled(work, red.vec, -c, shift, p)
            if coords is not None and red.coords is not None:
                vec_iadd_scaled(coords, red.coords, -c, shift, p)
        return out, coords

    def normal_form_vec(self, vec: Vec) -> Vec:
        nf, _ = self._reduce_full(vec, None)
        return nf

    # -- main loop ---------------------------------------------------------

    def _insert(self, vec: Vec, coords: Optional[Vec]) -> None:
        pos, mono, c = vec_lead(vec, self.ring.order)
        if c != 1:
            inv = self.ring.field.inv(c)
            vec = vec_scale(vec, inv, self.ring.p)
            if coords is not None:
                coords = vec_scale(coords, inv, self.ring.p)
        deg = mono_deg(mono) + self.shifts[pos]
        elem = _Elem(vec, pos, mono, coords, deg)
        self.basis.append(elem)
        t = len(self.basis) - 1
        for i in self._by_pos.get(pos, ()):
            self._push_pair(i, t)
        self._by_pos.setdefault(pos, []).append(t)

    def _step(self) -> None:
        if self.pair_budget is not None and self._steps >= self.pair_budget:
            raise BudgetExceededError(
                f"pair budget {self.pair_budget} exhausted after {self._steps} reductions"
            )
        self._steps += 1
        _, _, _, payload = heapq.heappop(self._heap)
        p = self.ring.p
        if payload[0] == "gen":
            _, idx, vec = payload
            coords = {idx: {(0,) * self.ring.n: 1}} if self.track else None
            nf, coords = self._reduce_full(vec, coords)
        else:
            _, i, j, lcm = payload
            gi, gj = self.basis[i], self.basis[j]
            spair: Vec = {}
            vec_iadd_scaled(spair, gi.vec, 1, mono_div(lcm, gi.lead_mono), p)
            vec_iadd_scaled(spair, gj.vec, -1, mono_div(lcm, gj.lead_mono), p)
            coords = None
            if self.track:
                coords = {}
                if gi.coords:
                    vec_iadd_scaled(coords, gi.coords, 1, mono_div(lcm, gi.lead_mono), p)
                if gj.coords:
                    vec_iadd_scaled(coords, gj.coords, -1, mono_div(lcm, gj.lead_mono), p)
            nf, coords = self._reduce_full(spair, coords)
        if not nf:
            if self.track and coords:
                self.syzygies.append(coords)
            return
        self._insert(nf, coords)

    # -- outputs -----------------------------------------------------------

    def lead_terms(self) -> List[Tuple[int, Mono]]:
        return [(g.lead_pos, g.lead_mono) for g in self.basis]

    def reduced_vectors(self) -> List[Vec]:
        """Reduced basis: minimal leads, tails reduced, monic, sorted by lead."""
        order = self.ring.order
        keep = []
        for i, g in enumerate(self.basis):
            redundant = False
            for j, h in enumerate(self.basis):
                if i == j or h.lead_pos != g.lead_pos:
                    continue
                if mono_divides(h.lead_mono, g.lead_mono) and (
                    h.lead_mono != g.lead_mono or j < i
                ):
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        out = []
        for g in keep:
            others = [h for h in keep if h is not g]
            red = ModuleGB(self.ring, self.shifts)
            red.basis = others
            red._by_pos = {}
            for t, h in enumerate(others):
                red._by_pos.setdefault(h.lead_pos, []).append(t)
            nf, _ = red._reduce_full(g.vec, None)
            out.append(nf)
        out.sort(key=lambda v: (vec_lead(v, order)[0], order.key(vec_lead(v, order)[1])))
        return out


# -- polynomial (rank one) conveniences -------------------------------------


def _poly_to_vec(f: Polynomial) -> Vec:
    return {0: dict(f.terms)} if f.terms else {}


def _vec_to_poly(ring: PolyRing, v: Vec) -> Polynomial:
    return ring.from_dict(v.get(0, {}))


def normal_form(f: Polynomial, gens: Sequence[Polynomial]) -> Polynomial:
    """Remainder of full division of f by the listed polynomials, in order.

    The divisor chosen for each reduction is the first listed whose leading
    monomial divides the target, and the target is always the largest still
    reducible term, so the result is deterministic (and unique when the list
    is a Groebner basis).
    """
    ring = f.ring
    p = ring.p
    order = ring.order
    gl = []
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("divisor from a different ring")
        if not g.is_zero():
            gl.append((g.lead_monomial(), g.lead_coeff(), g.terms))
    work = dict(f.terms)
    out: PolyDict = {}
    while work:
        mono = max(work, key=order.key)
        c = work.pop(mono)
        hit = None
        for lm, lc, terms in gl:
            if mono_divides(lm, mono):
                hit = (lm, lc, terms)
                break
        if hit is None:
            out[mono] = c
            continue
        lm, lc, terms = hit
        work[mono] = c  # reinsert, the subtraction clears it
        q = (c * ring.field.inv(lc)) % p
        shift = mono_div(mono, lm)
        for m, a in terms.items():
            pd_iadd_term(work, tuple(x + y for x, y in zip(m, shift)), -a * q, p)
    return Polynomial(ring, out)


class GroebnerBasis:
    """A reduced Groebner basis of an ideal, possibly degree-truncated."""

    __slots__ = ("ring", "polys", "dbound", "truncated")

    def __init__(self, ring, polys, dbound, truncated):
        self.ring = ring
        self.polys = tuple(polys)
        self.dbound = dbound
        self.truncated = truncated

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys)

    def contains(self, f: Polynomial) -> bool:
        """Membership; only conclusive for deg f <= dbound when truncated."""
        if self.truncated and not f.is_zero() and f.degree() > self.dbound:
            raise AlgebraError(
                f"membership in degree {f.degree()} undecidable with basis truncated at {self.dbound}"
            )
        return self.normal_form(f).is_zero()

    def lead_monomials(self) -> List[Mono]:
        return [g.lead_monomial() for g in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        flag = f", truncated at {self.dbound}" if self.truncated else ""
        return f"GroebnerBasis({len(self.polys)} elements{flag})"


def buchberger(
    gens: Sequence[Polynomial],
    dbound: Optional[int] = None,
    pair_budget: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal the homogeneous gens generate."""
    ring = None
    for g in gens:
        if ring is None:
            ring = g.ring
        elif g.ring != ring:
            raise RingMismatchError("generators from different rings")
        if not g.is_homogeneous():
            raise HomogeneityError(f"generator is not homogeneous: {g}")
    if ring is None:
        raise AlgebraError("cannot infer the ring from an empty generator list")
    mgb = ModuleGB(ring, (0,), dbound=dbound, pair_budget=pair_budget)
    for g in gens:
        mgb.add_input(_poly_to_vec(g))
    mgb.saturate()
    polys = [_vec_to_poly(ring, v) for v in mgb.reduced_vectors()]
    return GroebnerBasis(ring, polys, dbound, mgb.truncated)


def _minimal_generators_impl(
    ring: PolyRing,
    gens: Sequence[Polynomial],
    background: Sequence[Polynomial] = (),
    dbound: Optional[int] = None,
) -> List[Polynomial]:
    """Subset of gens minimally generating (gens + background) over background.

    Candidates are scanned in increasing degree (stable within a degree); each
    is kept iff it is not already in the span of the background plus the
    previously kept ones, decided by degreewise-saturated Groebner membership.
    """
    mgb = ModuleGB(ring, (0,), dbound=dbound)
    for b in background:
        if not b.is_zero():
            mgb.add_input(_poly_to_vec(b))
    ordered = sorted(
        [g for g in gens if not g.is_zero()],
        key=lambda g: g.homogeneous_degree(),
    )
    kept = []
    for g in ordered:
        d = g.homogeneous_degree()
        if dbound is not None and d > dbound:
            raise AlgebraError(f"generator degree {d} exceeds bound {dbound}")
        mgb.saturate(d)
        nf = mgb.normal_form_vec(_poly_to_vec(g))
        if nf:
            kept.append(g.monic())
            mgb.add_input(_poly_to_vec(g))
    return kept


def minimalize_generators(gens: Sequence[Polynomial], allow_linear: bool = False) -> List[Polynomial]:
    """Minimal homogeneous generating subset of an ideal's generator list.

    Presentation convention: generators of degree < 2 are rejected unless
    allow_linear is set (internal callers manipulating arbitrary ideals).
    """
    ring = None
    for g in gens:
        if ring is None:
            ring = g.ring
        elif g.ring != ring:
            raise RingMismatchError("generators from different rings")
        if g.is_zero():
            continue
        d = g.homogeneous_degree()
        if d < 2 and not allow_linear:
            raise LinearGeneratorError(
                f"generator {g} has degree {d}; defining ideals must be generated in degree >= 2"
            )
        if d < 1:
            raise AlgebraError(f"generator {g} is a unit")
    if ring is None:
        return []
    return _minimal_generators_impl(ring, gens)


class QuotientRing:
    """Standard graded algebra R = S/I with I homogeneous, indeg(I) >= 2.

    I = 0 is allowed and models the polynomial ring itself. The reduced
    Groebner basis of I is computed once, in full, at construction.
    """

    __slots__ = ("ambient", "gens", "gb", "_lead")

    def __init__(self, ambient: PolyRing, gens: Sequence[Polynomial]):
        self.ambient = ambient
        for g in gens:
            if g.ring != ambient:
                raise RingMismatchError("defining generator from a different ring")
        minimal = minimalize_generators([g for g in gens if not g.is_zero()])
        minimal.sort(key=lambda g: (g.homogeneous_degree(), ambient.order.key(g.lead_monomial())))
        self.gens = tuple(minimal)
        if self.gens:
            self.gb = buchberger(self.gens)
        else:
            self.gb = GroebnerBasis(ambient, (), None, False)
        self._lead = tuple(g.lead_monomial() for g in self.gb.polys)

    # -- structure ----------------------------------------------------------

    @property
    def field(self):
        return self.ambient.field

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def n(self) -> int:
        return self.ambient.n

    @property
    def names(self):
        return self.ambient.names

    @property
    def order(self):
        return self.ambient.order

    def is_polynomial_ring(self) -> bool:
        return not self.gens

    def max_gen_degree(self) -> int:
        """m(I): largest degree of a minimal generator of I (0 when I = 0)."""
        return max((g.homogeneous_degree() for g in self.gens), default=0)

    def initial_degree(self) -> int:
        """indeg(I): smallest degree of a minimal generator (0 when I = 0)."""
        return min((g.homogeneous_degree() for g in self.gens), default=0)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    # -- arithmetic mod I ----------------------------------------------------

    def nf(self, f: Polynomial) -> Polynomial:
        """Normal form mod the reduced Groebner basis of I."""
        if f.ring != self.ambient:
            raise RingMismatchError("element from a different ambient ring")
        if not self.gens:
            return f
        return self.gb.normal_form(f)

    def is_zero(self, f: Polynomial) -> bool:
        return self.nf(f).is_zero()

    def std_monomials(self, d: int) -> List[Mono]:
        """Monomials of degree d outside LT(I), descending in the ring order."""
        out = []
        for m in self.ambient.monomials_of_degree(d):
            if not any(mono_divides(lm, m) for lm in self._lead):
                out.append(m)
        return out

    def dim_in_degree(self, d: int) -> int:
        return len(self.std_monomials(d))

    def maximal_ideal_gens(self) -> List[Polynomial]:
        return self.ambient.gens()

    def poly(self, text: str) -> Polynomial:
        return self.nf(self.ambient.poly(text))

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and self.gb.polys == other.gb.polys
        )

    def __hash__(self):
        return hash((self.ambient, self.gb.polys))

    def __repr__(self):
        if not self.gens:
            return f"QuotientRing({self.ambient!r} / 0)"
        return f"QuotientRing({self.ambient!r} / ({', '.join(str(g) for g in self.gens)}))"


def quotient_ring(ambient: PolyRing, gens: Sequence[Polynomial]) -> QuotientRing:
    return QuotientRing(ambient, gens)


# -- ideal utilities over a quotient ring ------------------------------------


def ideal_groebner(R, gens: Sequence[Polynomial], dbound=None) -> GroebnerBasis:
    """Reduced Groebner basis in the ambient ring of (gens) + I.

    R may be a QuotientRing or a plain PolyRing (taken as I = 0).
    """
    if isinstance(R, PolyRing):
        ambient, background = R, []
        allg = [g for g in gens if not g.is_zero()]
    else:
        ambient, background = R.ambient, list(R.gb.polys)
        allg = [R.nf(g) for g in gens if not R.is_zero(g)]
    allg.extend(background)
    if not allg:
        return GroebnerBasis(ambient, (), dbound, False)
    return buchberger(allg, dbound=dbound)


def ideal_contains(R, gens: Sequence[Polynomial], f: Polynomial) -> bool:
    gb = ideal_groebner(R, gens)
    return gb.normal_form(f).is_zero()


def ideal_equal(R, gens_a: Sequence[Polynomial], gens_b: Sequence[Polynomial]) -> bool:
    """Equality of (gens_a) + I and (gens_b) + I as ideals of the ambient ring."""
    gb_a = ideal_groebner(R, gens_a)
    gb_b = ideal_groebner(R, gens_b)
    return all(gb_a.normal_form(f).is_zero() for f in gens_b) and all(
        gb_b.normal_form(f).is_zero() for f in gens_a
    )


def minimal_generators_mod(R: QuotientRing, gens: Sequence[Polynomial]) -> List[Polynomial]:
    """Minimal generators of the R-ideal generated by gens (linear gens allowed)."""
    cand = []
    for g in gens:
        if g.ring != R.ambient:
            raise RingMismatchError("generator from a different ambient ring")
        g = R.nf(g)
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise HomogeneityError(f"generator is not homogeneous: {g}")
        cand.append(g)
    return _minimal_generators_impl(R.ambient, cand, background=R.gb.polys)


def colon(R: QuotientRing, gens: Sequence[Polynomial], f: Polynomial) -> List[Polynomial]:
    """Minimal generators of the ideal quotient ((gens) : f) in R."""
    if f.ring != R.ambient:
        raise RingMismatchError("colon divisor from a different ambient ring")
    f = R.nf(f)
    if f.is_zero():
        raise AlgebraError("colon by zero")
    if not f.is_homogeneous():
        raise HomogeneityError(f"colon divisor is not homogeneous: {f}")
    gens = [R.nf(g) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if not g.is_homogeneous():
            raise HomogeneityError(f"ideal generator is not homogeneous: {g}")

    if f.is_monomial() and all(g.is_monomial() for g in gens) and R.is_monomial():
        fm = f.lead_monomial()
        out = []
        for g in list(gens) + list(R.gens):
            gm = g.lead_monomial()
            out.append(R.ambient.monomial(tuple(max(e - q, 0) for e, q in zip(gm, fm))))
        return minimal_generators_mod(R, out)

    # Syzygy route: project syzygies of (f, gens..., defining gens...) onto
    # the f coordinate; the projection generates ((gens) + I : f).
    mgb = ModuleGB(R.ambient, (0,), track=True)
    mgb.add_input(_poly_to_vec(f))
    for g in gens:
        mgb.add_input(_poly_to_vec(g))
    for g in R.gens:
        mgb.add_input(_poly_to_vec(g))
    mgb.saturate()
    projections = []
    for syz in mgb.syzygies:
        if 0 in syz:
            projections.append(R.ambient.from_dict(syz[0]))
    return minimal_generators_mod(R, projections)
