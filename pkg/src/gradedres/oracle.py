"""Independent Betti number oracle via degreewise linear algebra.

This path never touches the Buchberger engine: graded pieces of R = S/I are
coordinatized by row-reducing the spans of the defining generators' multiples
degree by degree, minimal generator counts come from dim(V_j) - dim((mV)_j),
and successive syzygy modules are plain numpy kernels. It exists so the
resolution engine can be checked against an implementation that shares no
code with it beyond polynomial storage.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import AlgebraError
from .groebner import QuotientRing
from .linalg import RowSpace, nullspace
from .modules import Presentation
from .poly import PolyDict
from .resolution import BettiTable


class RingTable:
    """Degreewise monomial coordinates for R = S/I up to a degree bound.

    For each degree e the standard basis is the set of non-pivot monomial
    columns after row reduction of I_e (columns sorted descending in the ring
    order); it is closed under divisibility, which the multiplication tables
    rely on.
    """

    def __init__(self, R: QuotientRing, dmax: int):
        if dmax < 0:
            raise AlgebraError("oracle requires a nonnegative degree bound")
        self.R = R
        self.p = R.p
        self.dmax = dmax
        amb = R.ambient
        self.monos: List[list] = []
        self.mono_index: List[dict] = []
        self.std: List[list] = []
        self.std_index: List[dict] = []
        self.dims: List[int] = []
        self._ispan: List[RowSpace] = []
        for e in range(dmax + 1):
            monos = amb.monomials_of_degree(e)
            index = {m: i for i, m in enumerate(monos)}
            span = RowSpace(len(monos), self.p)
            for g in R.gens:
                dg = g.homogeneous_degree()
                if dg > e:
                    continue
                for m in amb.monomials_of_degree(e - dg):
                    row = np.zeros(len(monos), dtype=np.int64)
                    for gm, c in g.terms.items():
                        key = tuple(a + b for a, b in zip(gm, m))
                        row[index[key]] = c
                    span.add(row)
            piv = set(span.pivots)
            std = [m for i, m in enumerate(monos) if i not in piv]
            self.monos.append(monos)
            self.mono_index.append(index)
            self._ispan.append(span)
            self.std.append(std)
            self.std_index.append({m: i for i, m in enumerate(std)})
            self.dims.append(len(std))
        self.mult: List[List[np.ndarray]] = []
        n = amb.n
        for e in range(dmax):
            mats = []
            for i in range(n):
                mat = np.zeros((self.dims[e + 1], self.dims[e]), dtype=np.int64)
                for k, m in enumerate(self.std[e]):
                    up = tuple(a + (1 if j == i else 0) for j, a in enumerate(m))
                    vec = np.zeros(len(self.monos[e + 1]), dtype=np.int64)
                    vec[self.mono_index[e + 1][up]] = 1
                    mat[:, k] = self._project(e + 1, vec)
                mats.append(mat)
            self.mult.append(mats)

    def _project(self, e: int, full_vec: np.ndarray) -> np.ndarray:
        red = self._ispan[e].reduce(full_vec)
        idx = [self.mono_index[e][m] for m in self.std[e]]
        return red[idx]

    def project_poly(self, e: int, terms: PolyDict) -> np.ndarray:
        """Coordinates of a degree-e polynomial in the standard basis of R_e."""
        vec = np.zeros(len(self.monos[e]), dtype=np.int64)
        for m, c in terms.items():
            if sum(m) != e:
                raise AlgebraError(f"term of degree {sum(m)} in a degree-{e} slot")
            vec[self.mono_index[e][m]] = c
        return self._project(e, vec)


class FreeTable:
    """Degreewise coordinates of a free module F = sum_k R(-d_k)."""

    def __init__(self, rt: RingTable, shifts: Sequence[int]):
        self.rt = rt
        self.shifts = tuple(shifts)
        self._mult_cache: Dict[int, List[np.ndarray]] = {}

    def block_dims(self, j: int) -> List[int]:
        return [self.rt.dims[j - d] if 0 <= j - d <= self.rt.dmax else 0 for d in self.shifts]

    def dim(self, j: int) -> int:
        return sum(self.block_dims(j))

    def offsets(self, j: int) -> List[int]:
        out = [0]
        for b in self.block_dims(j):
            out.append(out[-1] + b)
        return out

    def vector(self, j: int, entries: Dict[int, PolyDict]) -> np.ndarray:
        """Coordinates at degree j of a vector given as {position: poly dict}."""
        off = self.offsets(j)
        out = np.zeros(self.dim(j), dtype=np.int64)
        for pos, pd in entries.items():
            e = j - self.shifts[pos]
            coords = self.rt.project_poly(e, pd)
            out[off[pos] : off[pos] + coords.size] = coords
        return out

    def mult_maps(self, j: int) -> List[np.ndarray]:
        """Matrices of multiplication by each variable, F_j -> F_{j+1}."""
        if j in self._mult_cache:
            return self._mult_cache[j]
        n = self.rt.R.n
        dj, dj1 = self.dim(j), self.dim(j + 1)
        offs, offs1 = self.offsets(j), self.offsets(j + 1)
        bd, bd1 = self.block_dims(j), self.block_dims(j + 1)
        mats = []
        for i in range(n):
            mat = np.zeros((dj1, dj), dtype=np.int64)
            for k, d in enumerate(self.shifts):
                e = j - d
                if bd[k] == 0 or bd1[k] == 0 or not (0 <= e < self.rt.dmax):
                    continue
                blk = self.rt.mult[e][i]
                mat[offs1[k] : offs1[k] + bd1[k], offs[k] : offs[k] + bd[k]] = blk
            mats.append(mat)
        self._mult_cache[j] = mats
        return mats

    def push(self, v: np.ndarray, j: int) -> List[List[np.ndarray]]:
        """Images of v under every standard monomial: result[t][k] = std[t][k] * v.

        Walks the divisibility-closed standard monomial sets, one variable at
        a time, so each image costs one matrix-vector product.
        """
        out: List[List[np.ndarray]] = [[v % self.rt.p]]
        level: Dict[tuple, np.ndarray] = {(0,) * self.rt.R.n: out[0][0]}
        for t in range(1, self.rt.dmax - j + 1):
            nxt: Dict[tuple, np.ndarray] = {}
            row: List[np.ndarray] = []
            mats = self.mult_maps(j + t - 1)
            for m in self.rt.std[t]:
                i = next(a for a, e in enumerate(m) if e)
                below = tuple(e - (1 if a == i else 0) for a, e in enumerate(m))
                prev = level.get(below)
                if prev is None:
                    # below fell out of the standard set only if it is zero in R,
                    # which cannot happen for a standard monomial's divisor
                    raise AlgebraError("standard monomial set not divisibility-closed")
                vec = mats[i] @ prev % self.rt.p
                nxt[m] = vec
                row.append(vec)
            out.append(row)
            level = nxt
        return out


def oracle_betti(P: Presentation, hmax: int, dmax: Optional[int]) -> BettiTable:
    """Graded Betti numbers of coker(P) by degreewise rank computations."""
    if dmax is None:
        raise AlgebraError("oracle_betti requires a finite degree bound")
    if hmax < 0 or dmax < 0:
        raise AlgebraError("oracle_betti requires nonnegative bounds")
    R = P.ring
    p = R.p
    rt = RingTable(R, dmax)
    ft = FreeTable(rt, P.f0.shifts)
    if P.f0.shifts and min(P.f0.shifts) < 0:
        raise AlgebraError("oracle_betti requires nonnegative generator degrees")
    if any(d > dmax for d in tuple(P.f0.shifts) + tuple(P.f1.shifts)):
        raise AlgebraError(f"presentation degrees exceed dmax={dmax}")

    # span of the relations, degree by degree, closed under multiplication
    U: List[RowSpace] = [RowSpace(ft.dim(j), p) for j in range(dmax + 1)]
    cols = [(P.f1.shifts[c], P.matrix.column_vec(c)) for c in range(P.f1.rank)]
    for j in range(dmax + 1):
        if j > 0:
            mats = ft.mult_maps(j - 1)
            for row in U[j - 1].echelon_rows():
                for mat in mats:
                    U[j].add(mat @ row % p)
        for d, vec in cols:
            if d == j:
                U[j].add(ft.vector(j, vec))

    entries: Dict[Tuple[int, int], int] = {}

    # homological degree 0: minimal generators of M = F/U
    gens: List[Tuple[int, np.ndarray]] = []
    for j in range(dmax + 1):
        big = RowSpace(ft.dim(j), p)
        if j > 0:
            mats = ft.mult_maps(j - 1)
            for mat in mats:
                for col in range(mat.shape[1]):
                    big.add(mat[:, col])
        for row in U[j].echelon_rows():
            big.add(row)
        free_coords = big.nonpivot_coords()
        if free_coords:
            entries[(0, j)] = len(free_coords)
            for c in free_coords:
                v = np.zeros(ft.dim(j), dtype=np.int64)
                v[c] = 1
                gens.append((j, v))

    amb_ft = ft
    rel_spans: Optional[List[RowSpace]] = U
    for i in range(1, hmax + 1):
        if not gens:
            break
        pushes = [amb_ft.push(v, j) for j, v in gens]
        gen_degs = [j for j, _ in gens]
        new_ft = FreeTable(rt, gen_degs)
        V: List[List[np.ndarray]] = [[] for _ in range(dmax + 1)]
        for j in range(dmax + 1):
            nA = new_ft.dim(j)
            if nA == 0:
                continue
            colvecs: List[np.ndarray] = []
            for g, dg in enumerate(gen_degs):
                t = j - dg
                if t < 0:
                    continue
                colvecs.extend(pushes[g][t])
            B = np.stack(colvecs, axis=1) if colvecs else np.zeros((amb_ft.dim(j), 0), dtype=np.int64)
            nU = rel_spans[j].dim if rel_spans is not None else 0
            if nU:
                Ucols = np.stack(rel_spans[j].echelon_rows(), axis=1)
                A = np.concatenate([B, Ucols], axis=1)
            else:
                A = B
            canon = RowSpace(nA, p)
            for kv in nullspace(A, p):
                canon.add(kv[:nA])
            V[j] = canon.echelon_rows()
        new_gens: List[Tuple[int, np.ndarray]] = []
        for j in range(dmax + 1):
            mV = RowSpace(new_ft.dim(j), p)
            if j > 0 and V[j - 1]:
                mats = new_ft.mult_maps(j - 1)
                for row in V[j - 1]:
                    for mat in mats:
                        mV.add(mat @ row % p)
            count = 0
            for row in V[j]:
                if mV.add(row):
                    count += 1
                    new_gens.append((j, row))
            if count:
                entries[(i, j)] = count
        gens = new_gens
        amb_ft = new_ft
        rel_spans = None  # later kernels sit inside free modules

    return BettiTable(entries=entries, hmax=hmax, dmax=dmax, finite=False)


def module_dimensions(P: Presentation, dmax: int) -> List[int]:
    """Hilbert function of coker(P) on 0..dmax, by the same degreewise route."""
    R = P.ring
    p = R.p
    rt = RingTable(R, dmax)
    ft = FreeTable(rt, P.f0.shifts)
    dims = []
    U_prev: Optional[RowSpace] = None
    cols = [(P.f1.shifts[c], P.matrix.column_vec(c)) for c in range(P.f1.rank)]
    for j in range(dmax + 1):
        U = RowSpace(ft.dim(j), p)
        if j > 0 and U_prev is not None:
            mats = ft.mult_maps(j - 1)
            for row in U_prev.echelon_rows():
                for mat in mats:
                    U.add(mat @ row % p)
        for d, vec in cols:
            if d == j:
                U.add(ft.vector(j, vec))
        dims.append(ft.dim(j) - U.dim)
        U_prev = U
    return dims


def ring_dimensions(R: QuotientRing, dmax: int) -> List[int]:
    """Hilbert function of R itself on 0..dmax (rref route, no Groebner)."""
    rt = RingTable(R, dmax)
    return list(rt.dims)


def differential_rank(res, i: int, j: int, rt: Optional[RingTable] = None) -> Tuple[int, int, int]:
    """(dim source, dim target, rank) of the degree-j piece of d_i.

    Used by exactness tests: the complex is exact at step i in degree j iff
    rank d_i + rank d_{i+1} = dim F_i in that degree.
    """
    R = res.ring
    if rt is None:
        rt = RingTable(R, j)
    diff = res.diffs[i - 1]
    src = FreeTable(rt, diff.domain.shifts)
    tgt = FreeTable(rt, diff.codomain.shifts)
    nsrc, ntgt = src.dim(j), tgt.dim(j)
    # push each column through the standard monomials of complementary degree
    colvecs = []
    for c in range(diff.domain.rank):
        d = diff.domain.shifts[c]
        t = j - d
        if t < 0 or d > rt.dmax or t > rt.dmax - d:
            continue
        vec = tgt.vector(d, diff.column_vec(c))
        colvecs.extend(tgt.push(vec, d)[t])
    span = RowSpace(ntgt, R.p)
    for v in colvecs:
        span.add(v)
    return nsrc, ntgt, span.dim
