"""Graded free modules, homogeneous matrices and cokernel presentations.

A free module is written F = sum_k R(-d_k); the tuple (d_k) is the shifts.
A matrix entry in row r, column c must be homogeneous of degree
domain.shifts[c] - codomain.shifts[r], which makes the columns homogeneous
elements of the codomain. A Presentation stores the matrix F_1 -> F_0 whose
cokernel is the module being presented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PresentationError, RingMismatchError
from .groebner import QuotientRing, Vec, vec_degree
from .poly import Polynomial


@dataclass(frozen=True)
class FreeModule:
    ring: QuotientRing
    shifts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(d) for d in self.shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def __repr__(self):
        return f"FreeModule(rank {self.rank}, shifts {list(self.shifts)})"


class GradedMatrix:
    """Homogeneous matrix between free modules; entries kept in normal form mod I."""

    __slots__ = ("codomain", "domain", "rows")

    def __init__(self, codomain: FreeModule, domain: FreeModule, rows: Sequence[Sequence[Polynomial]]):
        if codomain.ring != domain.ring:
            raise RingMismatchError("matrix between modules over different rings")
        R = codomain.ring
        if len(rows) != codomain.rank:
            raise PresentationError(f"expected {codomain.rank} rows, got {len(rows)}")
        normalized: List[Tuple[Polynomial, ...]] = []
        for r, row in enumerate(rows):
            if len(row) != domain.rank:
                raise PresentationError(f"row {r}: expected {domain.rank} entries, got {len(row)}")
            out = []
            for c, entry in enumerate(row):
                if entry.ring != R.ambient:
                    raise RingMismatchError(f"entry ({r},{c}) from a different ring")
                entry = R.nf(entry)
                if not entry.is_zero():
                    want = domain.shifts[c] - codomain.shifts[r]
                    got = entry.homogeneous_degree()
                    if got != want:
                        raise PresentationError(
                            f"entry ({r},{c}) has degree {got}, grading requires {want}"
                        )
                out.append(entry)
            normalized.append(tuple(out))
        self.codomain = codomain
        self.domain = domain
        self.rows = tuple(normalized)

    @property
    def ring(self) -> QuotientRing:
        return self.codomain.ring

    def entry(self, r: int, c: int) -> Polynomial:
        return self.rows[r][c]

    def column_vec(self, c: int) -> Vec:
        """Column c as a sparse vector {row position: poly dict}."""
        out: Vec = {}
        for r in range(self.codomain.rank):
            e = self.rows[r][c]
            if not e.is_zero():
                out[r] = dict(e.terms)
        return out

    def columns(self) -> List[Vec]:
        return [self.column_vec(c) for c in range(self.domain.rank)]

    def is_minimal(self) -> bool:
        """No entry has a unit (nonzero constant) component."""
        return all(e.constant_coeff() == 0 for row in self.rows for e in row)

    def transpose_entries(self) -> List[List[Polynomial]]:
        return [[self.rows[r][c] for r in range(self.codomain.rank)] for c in range(self.domain.rank)]

    def __repr__(self):
        return f"GradedMatrix({self.codomain.rank} x {self.domain.rank})"

    def pretty(self) -> str:
        if not self.rows or not self.rows[0]:
            return f"[{self.codomain.rank} x {self.domain.rank} empty]"
        cells = [[str(e) for e in row] for row in self.rows]
        widths = [max(len(cells[r][c]) for r in range(len(cells))) for c in range(len(cells[0]))]
        lines = []
        for row in cells:
            lines.append("[ " + "  ".join(s.rjust(w) for s, w in zip(row, widths)) + " ]")
        return "\n".join(lines)


@dataclass(frozen=True)
class Presentation:
    """M = coker(matrix : F_1 -> F_0)."""

    matrix: GradedMatrix

    @property
    def ring(self) -> QuotientRing:
        return self.matrix.ring

    @property
    def f0(self) -> FreeModule:
        return self.matrix.codomain

    @property
    def f1(self) -> FreeModule:
        return self.matrix.domain

    def twist(self, a: int) -> "Presentation":
        """M(a): all generator and relation degrees drop by a."""
        f0 = FreeModule(self.ring, tuple(d - a for d in self.f0.shifts))
        f1 = FreeModule(self.ring, tuple(d - a for d in self.f1.shifts))
        return Presentation(GradedMatrix(f0, f1, self.matrix.rows))

    def __repr__(self):
        return f"Presentation(F0 shifts {list(self.f0.shifts)}, {self.f1.rank} relations)"


def matrix_from_columns(
    codomain: FreeModule, col_shifts: Sequence[int], cols: Sequence[Vec]
) -> GradedMatrix:
    R = codomain.ring
    zero = R.ambient.zero()
    rows = []
    for r in range(codomain.rank):
        row = []
        for v in cols:
            pd = v.get(r)
            row.append(R.ambient.from_dict(pd) if pd else zero)
        rows.append(row)
    domain = FreeModule(R, tuple(col_shifts))
    return GradedMatrix(codomain, domain, rows)


def presentation_from_rows(
    R: QuotientRing,
    gen_shifts: Sequence[int],
    relation_columns: Sequence[Sequence[Polynomial]],
) -> Presentation:
    """Presentation from generator degrees and a list of relation columns."""
    f0 = FreeModule(R, tuple(gen_shifts))
    cols: List[Vec] = []
    shifts: List[int] = []
    for col in relation_columns:
        if len(col) != f0.rank:
            raise PresentationError(f"relation column has {len(col)} entries, expected {f0.rank}")
        v: Vec = {}
        deg = None
        for r, entry in enumerate(col):
            entry = R.nf(entry)
            if entry.is_zero():
                continue
            d = entry.homogeneous_degree() + f0.shifts[r]
            if deg is None:
                deg = d
            elif deg != d:
                raise PresentationError(f"relation column mixes degrees {deg} and {d}")
            v[r] = dict(entry.terms)
        if deg is None:
            continue  # zero relation carries no information
        cols.append(v)
        shifts.append(deg)
    return Presentation(matrix_from_columns(f0, shifts, cols))


def cyclic_presentation(R: QuotientRing, gens: Sequence[Polynomial]) -> Presentation:
    """R/(gens) as a module over R, generated in degree 0."""
    return presentation_from_rows(R, (0,), [[g] for g in gens])


def residue_field_presentation(R: QuotientRing) -> Presentation:
    """K = R/m with m the irrelevant maximal ideal."""
    return cyclic_presentation(R, R.maximal_ideal_gens())


def free_presentation(R: QuotientRing, shifts: Sequence[int]) -> Presentation:
    return Presentation(matrix_from_columns(FreeModule(R, tuple(shifts)), (), ()))


def augment_relations(P: Presentation, extra: Sequence[Vec]) -> Presentation:
    """The quotient of coker(P) by the images of extra vectors.

    Same generators; the extra vectors join the relation columns.
    """
    R = P.ring
    cols: List[Vec] = [P.matrix.column_vec(c) for c in range(P.f1.rank)]
    shifts = list(P.f1.shifts)
    for v in extra:
        w: Vec = {}
        for pos, pd in v.items():
            f = R.nf(Polynomial(R.ambient, dict(pd)))
            if not f.is_zero():
                w[pos] = dict(f.terms)
        if not w:
            continue
        deg = vec_degree(w, P.f0.shifts)
        cols.append(w)
        shifts.append(deg)
    return Presentation(matrix_from_columns(P.f0, shifts, cols))
