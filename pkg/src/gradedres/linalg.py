"""Dense exact linear algebra mod p on int64 numpy arrays.

Values stay in [0, p); intermediate products are bounded by p^2 times a row
length, which the field module caps well below 2^63.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


class RowSpace:
    """A subspace of F_p^n kept as reduced echelon rows, built incrementally."""

    __slots__ = ("n", "p", "rows", "pivots")

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows: List[np.ndarray] = []
        self.pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Fully reduce v against the stored rows; returns the residual."""
        v = np.asarray(v, dtype=np.int64) % self.p
        v = v.copy()
        for pc, row in zip(self.pivots, self.rows):
            c = v[pc]
            if c:
                v = (v - c * row) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def add(self, v: np.ndarray) -> bool:
        """Insert v's residual if independent; keeps rows reduced. True if dim grew."""
        r = self.reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        r = (r * _inv(r[pc], self.p)) % self.p
        for i, row in enumerate(self.rows):
            c = row[pc]
            if c:
                self.rows[i] = (row - c * r) % self.p
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pc:
            at += 1
        self.rows.insert(at, r)
        self.pivots.insert(at, pc)
        return True

    def add_all(self, vectors) -> None:
        for v in vectors:
            self.add(v)

    def nonpivot_coords(self) -> List[int]:
        piv = set(self.pivots)
        return [c for c in range(self.n) if c not in piv]

    def echelon_rows(self) -> List[np.ndarray]:
        return [row.copy() for row in self.rows]


def rref(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column list)."""
    A = np.array(A, dtype=np.int64) % p
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    m, n = A.shape
    r = 0
    pivots: List[int] = []
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * _inv(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def rank(A: np.ndarray, p: int) -> int:
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> List[np.ndarray]:
    """Basis of {v : A v = 0}, one vector per free column, deterministic."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 else 0
    if n == 0:
        return []
    if A.shape[0] == 0:
        return [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in piv]
    out = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(piv):
            c = R[i, fc]
            if c:
                v[pc] = (-c) % p
        out.append(v)
    return out
