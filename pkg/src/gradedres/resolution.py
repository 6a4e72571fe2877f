"""Minimal graded free resolutions over R = S/I and their Betti tables.

resolve() iterates syzygy computation on the presentation matrix. Syzygies
over R are obtained in the ambient polynomial ring by adjoining f * e_k for
every defining generator f and basis position k, then projecting the tracked
syzygies back onto the column coordinates.

Minimality bookkeeping: a redundant column of step i surfaces as a unit entry
among step i+1's syzygy candidates. Eliminating unit entries (with the
corresponding column of step i deleted) until none remain leaves a unit-free
generating set, which certifies that step i's columns were minimal. Only the
final differential, which never gets a successor pass, needs an explicit
membership-based minimalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AlgebraError,
    BudgetExceededError,
    HomogeneityError,
    InternalCheckError,
    PresentationError,
)
from .groebner import ModuleGB, QuotientRing, Vec, vec_degree
from .modules import (
    FreeModule,
    GradedMatrix,
    Presentation,
    matrix_from_columns,
)
from .poly import Polynomial


def _vec_canonical_key(v: Vec):
    return tuple(sorted((pos, tuple(sorted(pd.items()))) for pos, pd in v.items()))


def _nf_vec(R: QuotientRing, v: Vec) -> Vec:
    out: Vec = {}
    for pos, pd in v.items():
        f = R.nf(R.ambient.from_dict(pd))
        if not f.is_zero():
            out[pos] = dict(f.terms)
    return out


def _syzygy_candidates(
    R: QuotientRing,
    matrix: GradedMatrix,
    dmax: Optional[int],
    pair_budget: Optional[int],
) -> Tuple[List[Vec], List[int], bool]:
    """Generating syzygies of the matrix columns over R, degree-sorted.

    Returns (vectors over the column positions, their degrees, truncated).
    """
    shifts = matrix.codomain.shifts
    r = matrix.domain.rank
    mgb = ModuleGB(R.ambient, shifts, dbound=dmax, track=True, pair_budget=pair_budget)
    for c in range(r):
        mgb.add_input(matrix.column_vec(c))
    for f in R.gens:
        for k in range(matrix.codomain.rank):
            mgb.add_input({k: dict(f.terms)})
    mgb.saturate()
    seen = set()
    cands: List[Tuple[int, Vec]] = []
    for syz in mgb.syzygies:
        proj = {pos: pd for pos, pd in syz.items() if pos < r}
        proj = _nf_vec(R, proj)
        if not proj:
            continue
        key = _vec_canonical_key(proj)
        if key in seen:
            continue
        seen.add(key)
        deg = vec_degree(proj, matrix.domain.shifts)
        cands.append((deg, proj))
    cands.sort(key=lambda t: t[0])  # stable: discovery order within a degree
    return [v for _, v in cands], [d for d, _ in cands], mgb.truncated


def _minimalize_vectors(
    R: QuotientRing,
    shifts: Sequence[int],
    vecs: Sequence[Vec],
    dmax: Optional[int],
    background: Sequence[Vec] = (),
) -> List[Vec]:
    """Subset of vecs minimally generating their span inside sum R(-shifts).

    Optional extra background vectors are treated as already present, so the
    result generates the span only modulo them.
    """
    mgb = ModuleGB(R.ambient, shifts, dbound=dmax)
    for f in R.gens:
        for k in range(len(shifts)):
            mgb.add_input({k: dict(f.terms)})
    for b in background:
        if b:
            mgb.add_input(b)
    ordered = sorted(vecs, key=lambda v: vec_degree(v, shifts))
    kept: List[Vec] = []
    for v in ordered:
        d = vec_degree(v, shifts)
        if dmax is not None and d > dmax:
            raise AlgebraError(f"vector degree {d} exceeds the degree bound {dmax}")
        mgb.saturate(d)
        if mgb.normal_form_vec(v):
            kept.append(v)
            mgb.add_input(v)
    return kept


def _eliminate_units(
    R: QuotientRing,
    rows: List[List[Polynomial]],
    row_shifts: List[int],
    col_shifts: List[int],
) -> Tuple[List[List[Polynomial]], List[int], List[int], List[int]]:
    """Gaussian elimination at unit entries, deleting the pivot row and column.

    Returns (rows, row_shifts, col_shifts, deleted_original_row_indices).
    Column operations preserve the column span; deleting the pivot row is the
    change of basis that removes the corresponding redundant generator.
    """
    field_ = R.field
    orig_rows = list(range(len(rows)))
    deleted_rows: List[int] = []
    while True:
        pivot = None
        for k, row in enumerate(rows):
            for l, e in enumerate(row):
                if not e.is_zero() and e.degree() == 0:
                    pivot = (k, l)
                    break
            if pivot:
                break
        if pivot is None:
            break
        k, l = pivot
        inv = field_.inv(rows[k][l].constant_coeff())
        for m in range(len(col_shifts)):
            if m == l:
                continue
            q = rows[k][m] * inv
            if q.is_zero():
                continue
            for r in range(len(rows)):
                rows[r][m] = R.nf(rows[r][m] - q * rows[r][l])
        deleted_rows.append(orig_rows[k])
        del rows[k], row_shifts[k], orig_rows[k]
        for row in rows:
            del row[l]
        del col_shifts[l]
    # zero columns carry no information
    keep = [c for c in range(len(col_shifts)) if any(not rows[r][c].is_zero() for r in range(len(rows)))]
    if len(keep) != len(col_shifts):
        rows = [[row[c] for c in keep] for row in rows]
        col_shifts = [col_shifts[c] for c in keep]
    return rows, row_shifts, col_shifts, deleted_rows


def trim(P: Presentation) -> Presentation:
    """Equivalent presentation with a minimal generating set for F_0.

    Unit entries of the matrix are eliminated by column operations and the
    pivot generator is dropped; zero relation columns are discarded.
    """
    R = P.ring
    rows = [list(row) for row in P.matrix.rows]
    rshifts = list(P.f0.shifts)
    cshifts = list(P.f1.shifts)
    rows, rshifts, cshifts, _ = _eliminate_units(R, rows, rshifts, cshifts)
    f0 = FreeModule(R, tuple(rshifts))
    f1 = FreeModule(R, tuple(cshifts))
    return Presentation(GradedMatrix(f0, f1, rows))


def is_trimmed(P: Presentation) -> bool:
    return P.matrix.is_minimal() and all(P.matrix.column_vec(c) for c in range(P.f1.rank))


def syzygy(
    P: Presentation,
    dmax: Optional[int] = None,
    pair_budget: Optional[int] = None,
) -> "SyzygyStep":
    """Minimal generators of the first syzygy module of M = coker(P).

    Requires a trimmed presentation. The result's matrix has the (possibly
    column-reduced) F_1 as codomain; its columns generate Omega^1(M) and its
    domain shifts are the syzygy degrees. When a redundant relation of P is
    exposed by a unit syzygy, it is removed and reduced_input reflects that.
    """
    if not is_trimmed(P):
        raise PresentationError("syzygy requires a trimmed presentation; call trim() first")
    cands, cshifts, truncated = _syzygy_candidates(P.ring, P.matrix, dmax, pair_budget)
    cands = _minimalize_vectors(P.ring, P.f1.shifts, cands, dmax)
    cshifts = [vec_degree(v, P.f1.shifts) for v in cands]
    rows = [[P.ring.ambient.from_dict(v.get(r, {})) for v in cands] for r in range(P.f1.rank)]
    rows2, rshifts2, cshifts2, deleted = _eliminate_units(
        P.ring, [list(r) for r in rows], list(P.f1.shifts), list(cshifts)
    )
    new_prev_cols = [c for c in range(P.f1.rank) if c not in deleted]
    prev_rows = [[row[c] for c in new_prev_cols] for row in P.matrix.rows]
    new_f1 = FreeModule(P.ring, tuple(rshifts2))
    mat = GradedMatrix(new_f1, FreeModule(P.ring, tuple(cshifts2)), rows2)
    reduced_prev = GradedMatrix(P.f0, new_f1, prev_rows)
    return SyzygyStep(mat, Presentation(reduced_prev), truncated)


@dataclass(frozen=True)
class SyzygyStep:
    """Syzygy generator matrix plus the possibly-reduced input presentation."""

    matrix: GradedMatrix
    reduced_input: Presentation
    truncated: bool

    @property
    def shifts(self) -> Tuple[int, ...]:
        return self.matrix.domain.shifts


@dataclass
class Resolution:
    """A minimal graded free resolution window of a presented module."""

    f0: FreeModule
    diffs: List[GradedMatrix]
    hmax: int
    dmax: Optional[int]
    truncated: bool
    finite: bool
    budget_exceeded: bool = False

    @property
    def ring(self) -> QuotientRing:
        return self.f0.ring

    @property
    def achieved(self) -> int:
        return len(self.diffs)

    def module(self, i: int) -> FreeModule:
        if i == 0:
            return self.f0
        return self.diffs[i - 1].domain

    def shifts(self, i: int) -> Tuple[int, ...]:
        return self.module(i).shifts

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.diffs)

    def check_complex(self) -> bool:
        """d_i o d_{i+1} = 0 over R, verified entrywise."""
        R = self.ring
        for a, b in zip(self.diffs, self.diffs[1:]):
            for r in range(a.codomain.rank):
                for c in range(b.domain.rank):
                    s = R.ambient.zero()
                    for k in range(a.domain.rank):
                        s = s + a.entry(r, k) * b.entry(k, c)
                    if not R.is_zero(s):
                        return False
        return True

    def __repr__(self):
        ranks = [self.f0.rank] + [d.domain.rank for d in self.diffs]
        tail = "finite" if self.finite else ("truncated" if self.truncated else "window")
        return f"Resolution(ranks {ranks}, {tail})"


def resolve(
    P: Presentation,
    hmax: int,
    dmax: Optional[int] = None,
    pair_budget: Optional[int] = None,
) -> Resolution:
    """Minimal free resolution of coker(P) to homological degree hmax.

    Over a proper quotient ring the resolution is usually infinite; dmax
    bounds the internal degrees considered, and the result is flagged
    truncated unless every syzygy computation drained its pair queue.
    """
    if hmax < 0:
        raise AlgebraError(f"hmax must be >= 0, got {hmax}")
    if dmax is not None and dmax < 0:
        raise AlgebraError(f"dmax must be >= 0 when given, got {dmax}")
    P0 = trim(P)
    if dmax is not None:
        top = max(tuple(P0.f0.shifts) + tuple(P0.f1.shifts), default=0)
        if top > dmax:
            raise AlgebraError(f"dmax={dmax} is below the presentation degrees (up to {top})")
    R = P0.ring
    diffs: List[GradedMatrix] = [] if hmax == 0 else [P0.matrix]
    truncated = False
    finite = False
    budget_exceeded = False
    if hmax == 0:
        finite = False  # nothing beyond beta_0 is claimed
    while diffs and len(diffs) < hmax:
        last = diffs[-1]
        if last.domain.rank == 0:
            diffs.pop()  # a zero map adds nothing; the resolution stopped before it
            finite = True
            break
        try:
            cands, cshifts, trunc = _syzygy_candidates(R, last, dmax, pair_budget)
        except BudgetExceededError:
            # the last differential's columns were never verified minimal
            budget_exceeded = True
            diffs.pop()
            break
        truncated = truncated or trunc
        if not cands:
            finite = not truncated
            break
        rows = [[R.ambient.from_dict(v.get(r, {})) for v in cands] for r in range(last.domain.rank)]
        rows, rshifts, cshifts, deleted = _eliminate_units(
            R, rows, list(last.domain.shifts), list(cshifts)
        )
        if deleted:
            keep = [c for c in range(last.domain.rank) if c not in deleted]
            prev_rows = [[row[c] for c in keep] for row in last.rows]
            last = GradedMatrix(last.codomain, FreeModule(R, tuple(rshifts)), prev_rows)
            diffs[-1] = last
        if not cshifts:
            finite = not truncated
            break
        diffs.append(
            GradedMatrix(last.domain, FreeModule(R, tuple(cshifts)),
                         [[rows[r][c] for c in range(len(cshifts))] for r in range(len(rshifts))])
        )
    else:
        # loop exhausted hmax steps; the last differential never got a
        # successor pass, so minimalize its columns by membership
        if diffs and diffs[-1].domain.rank:
            last = diffs[-1]
            cols = last.columns()
            kept = _minimalize_vectors(R, last.codomain.shifts, cols, dmax)
            if len(kept) != len(cols):
                shifts = [vec_degree(v, last.codomain.shifts) for v in kept]
                diffs[-1] = matrix_from_columns(last.codomain, shifts, kept)
    if diffs and diffs[-1].domain.rank == 0:
        diffs.pop()
        finite = True
    res = Resolution(
        f0=P0.f0,
        diffs=diffs,
        hmax=hmax,
        dmax=dmax,
        truncated=truncated,
        finite=finite,
        budget_exceeded=budget_exceeded,
    )
    for d in res.diffs:
        if not d.is_minimal():
            raise InternalCheckError("resolution differential has a unit entry after trimming")
    return res


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} on a homological/internal degree window.

    finite means the resolution terminated, so every row beyond the window is
    identically zero and shifts follow the t_i = 0 convention there.
    """

    entries: Dict[Tuple[int, int], int]
    hmax: int
    dmax: Optional[int]
    finite: bool

    def beta(self, i: int, j: int) -> int:
        if i < 0:
            return 0
        if i > self.hmax and not self.finite:
            raise AlgebraError(f"beta({i},{j}) outside the computed window hmax={self.hmax}")
        if self.dmax is not None and j > self.dmax:
            raise AlgebraError(f"beta({i},{j}) outside the computed window dmax={self.dmax}")
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        if i > self.hmax and not self.finite:
            raise AlgebraError(f"beta_{i} outside the computed window hmax={self.hmax}")
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def t(self, i: int) -> int:
        """Maximal shift t_i; 0 when beta_i = 0."""
        if i > self.hmax and not self.finite:
            raise AlgebraError(f"t({i}) outside the computed window hmax={self.hmax}")
        return max((j for (a, j) in self.entries if a == i), default=0)

    def rows(self) -> List[int]:
        return list(range(self.hmax + 1))

    def max_degree(self) -> int:
        return max((j for (_, j) in self.entries), default=0)

    def to_dict(self) -> dict:
        return {
            "hmax": self.hmax,
            "dmax": self.dmax,
            "finite": self.finite,
            "betti": {f"{i},{j}": v for (i, j), v in sorted(self.entries.items())},
        }

    def pretty(self) -> str:
        if not self.entries:
            return "beta = 0 on the window"
        jmax = self.max_degree()
        jmin = min(j for (_, j) in self.entries)
        head = ["i\\j"] + [str(j) for j in range(jmin, jmax + 1)] + ["t_i"]
        lines = [head]
        for i in range(self.hmax + 1):
            row = [str(i)]
            for j in range(jmin, jmax + 1):
                v = self.entries.get((i, j), 0)
                row.append(str(v) if v else ".")
            row.append(str(self.t(i)))
            lines.append(row)
        widths = [max(len(l[c]) for l in lines) for c in range(len(head))]
        return "\n".join("  ".join(s.rjust(w) for s, w in zip(l, widths)) for l in lines)


def betti(res: Resolution) -> BettiTable:
    """Betti table of a minimal resolution window; rejects non-minimal input."""
    if not res.is_minimal():
        raise PresentationError("betti requires a minimal resolution")
    entries: Dict[Tuple[int, int], int] = {}
    for d in res.f0.shifts:
        entries[(0, d)] = entries.get((0, d), 0) + 1
    for i, diff in enumerate(res.diffs, start=1):
        for d in diff.domain.shifts:
            entries[(i, d)] = entries.get((i, d), 0) + 1
    hmax = res.hmax if (res.finite or not res.budget_exceeded) else res.achieved
    return BettiTable(
        entries=entries,
        hmax=hmax,
        dmax=None if res.finite else res.dmax,
        finite=res.finite,
    )


@dataclass(frozen=True)
class SubmoduleData:
    presentation: Presentation
    generators: Tuple[Vec, ...]
    ambient_shifts: Tuple[int, ...]


def submodule_presentation(
    R: QuotientRing,
    ambient_shifts: Sequence[int],
    vectors: Sequence[Vec],
    dmax: Optional[int] = None,
    pair_budget: Optional[int] = None,
    modulo: Sequence[Vec] = (),
) -> SubmoduleData:
    """Presentation of the submodule of sum R(-shifts) the vectors generate.

    The vectors are minimalized by membership first; generators of the
    presentation correspond to the kept vectors in order. With modulo given,
    the ambient module is the quotient of the free module by the span of
    those vectors, so relations hold modulo them and membership ignores them.
    """
    shifts = tuple(ambient_shifts)
    cleaned = []
    for v in vectors:
        v = _nf_vec(R, v)
        if v:
            vec_degree(v, shifts)  # homogeneity check
            cleaned.append(v)
    background = []
    for v in modulo:
        v = _nf_vec(R, v)
        if v:
            vec_degree(v, shifts)
            background.append(v)
    kept = _minimalize_vectors(R, shifts, cleaned, dmax, background=background)
    gen_shifts = [vec_degree(v, shifts) for v in kept]
    col_shifts = gen_shifts + [vec_degree(v, shifts) for v in background]
    mat = matrix_from_columns(FreeModule(R, shifts), col_shifts, kept + background)
    raw, _, truncated = _syzygy_candidates(R, mat, dmax, pair_budget)
    seen = set()
    cands: List[Vec] = []
    for v in raw:
        proj = _nf_vec(R, {pos: pd for pos, pd in v.items() if pos < len(kept)})
        if not proj:
            continue
        key = _vec_canonical_key(proj)
        if key not in seen:
            seen.add(key)
            cands.append(proj)
    cands = _minimalize_vectors(R, tuple(gen_shifts), cands, dmax)
    cshifts = [vec_degree(v, tuple(gen_shifts)) for v in cands]
    for v in cands:
        for pd in v.values():
            for m, c in pd.items():
                if sum(m) == 0:
                    raise InternalCheckError("unit syzygy among membership-minimal generators")
    pres = Presentation(
        matrix_from_columns(FreeModule(R, tuple(gen_shifts)), cshifts, cands)
    )
    return SubmoduleData(pres, tuple(kept), shifts)
