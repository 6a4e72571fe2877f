"""Macaulay bounds, lex-segment ideals, and stretched Artinian algebras.

A finite Hilbert function h_0, h_1, ... is admissible when h_0 = 1 and each
h_{d+1} is at most the Macaulay bound h_d^<d>. For every admissible function
there is a unique lex-segment monomial ideal realizing it; lex_ideal builds
that ideal degree by degree and checks the segment shadows along the way.
"""

from __future__ import annotations

from math import comb
from typing import List, Optional, Sequence, Tuple

from .errors import AlgebraError, InternalCheckError
from .groebner import QuotientRing, quotient_ring
from .order import LEX, Mono, mono_mul
from .poly import PolyRing, monomials_of_degree


def macaulay_rep(a: int, d: int) -> List[Tuple[int, int]]:
    """The d-th Macaulay representation of a >= 0.

    Returns pairs (k_i, i) with a = sum C(k_i, i), k_d > k_{d-1} > ... and
    k_i >= i, found greedily from the top index d.
    """
    if d < 1:
        raise AlgebraError("Macaulay representation needs d >= 1")
    if a < 0:
        raise AlgebraError("Macaulay representation needs a >= 0")
    rep: List[Tuple[int, int]] = []
    rem = a
    i = d
    while rem > 0:
        if i < 1:
            raise InternalCheckError("greedy Macaulay representation did not terminate")
        k = i
        while comb(k + 1, i) <= rem:
            k += 1
        rep.append((k, i))
        rem -= comb(k, i)
        i -= 1
    return rep


def macaulay_bound(a: int, d: int) -> int:
    """a^<d>: the largest value allowed in degree d+1 when degree d has dimension a."""
    return sum(comb(k + 1, i + 1) for k, i in macaulay_rep(a, d))


def hf_is_admissible(n: int, hf: Sequence[int]) -> Tuple[bool, Optional[str]]:
    """Whether hf extended by zeros is the Hilbert function of some quotient of
    an n-variable polynomial ring with no linear forms in the defining ideal."""
    hf = list(hf)
    if not hf or hf[0] != 1:
        return False, "h_0 must be 1"
    if any(v < 0 for v in hf):
        return False, "negative value"
    while hf and hf[-1] == 0:
        hf.pop()
    if len(hf) == 1:
        return False, "h_1 = 0 needs linear forms in the ideal"
    if hf[1] != n:
        return False, f"h_1 = {hf[1]} but the ring has {n} variables (no linear forms allowed)"
    for d in range(1, len(hf)):
        nxt = hf[d + 1] if d + 1 < len(hf) else 0
        if nxt > macaulay_bound(hf[d], d):
            return False, f"h_{d + 1} = {nxt} exceeds the Macaulay bound {macaulay_bound(hf[d], d)}"
    return True, None


def lex_segment(n: int, d: int, count: int) -> List[Mono]:
    """The count lex-largest monomials of degree d in n variables."""
    monos = sorted(monomials_of_degree(n, d), key=LEX.key, reverse=True)
    if count > len(monos):
        raise AlgebraError(f"degree {d} has only {len(monos)} monomials, not {count}")
    return monos[:count]


def lex_ideal(S: PolyRing, hf: Sequence[int]) -> QuotientRing:
    """The lex-segment ideal whose Artinian quotient has Hilbert function hf.

    The list is read as the complete Hilbert function (zero past the end), so
    the quotient is Artinian. h_1 must equal the number of variables since
    defining ideals here contain no linear forms.
    """
    n = S.n
    ok, reason = hf_is_admissible(n, hf)
    if not ok:
        raise AlgebraError(f"inadmissible Hilbert function {list(hf)}: {reason}")
    values = list(hf)
    while values and values[-1] == 0:
        values.pop()
    dmax = len(values)  # first degree with h = 0
    gens: List[Mono] = []
    prev_seg: List[Mono] = []
    for d in range(2, dmax + 1):
        hd = values[d] if d < len(values) else 0
        seg = lex_segment(n, d, comb(n + d - 1, d) - hd)
        seg_set = set(seg)
        shadow = set()
        for m in prev_seg:
            for i in range(n):
                shadow.add(mono_mul(m, tuple(1 if j == i else 0 for j in range(n))))
        if not shadow <= seg_set:
            raise InternalCheckError(
                f"lex segment shadow escapes in degree {d} despite an admissible Hilbert function"
            )
        gens.extend(m for m in seg if m not in shadow)
        prev_seg = seg
    return quotient_ring(S, [S.monomial(m) for m in gens])


def stretched_hilbert_function(h: int, s: int) -> Tuple[int, ...]:
    """1, h, then s ones: the Hilbert function of the stretched algebra."""
    return (1, h) + (1,) * s


def stretched_algebra(p: int, h: int, s: int) -> QuotientRing:
    """The stretched Artinian algebra with embedding dimension h and socle degree s + 1.

    Over F_p[x_1..x_h] the defining ideal is generated by every quadratic
    monomial except x_h^2, together with x_h^(s+2). The Hilbert function is
    1, h, 1, ..., 1 with s ones after the linear degree.
    """
    if h < 1 or s < 1:
        raise AlgebraError("stretched algebras need h >= 1 and s >= 1")
    S = PolyRing(p, [f"x{i}" for i in range(1, h + 1)])
    xs = S.gens()
    gens = []
    for i in range(h):
        for j in range(i, h):
            if i == h - 1 and j == h - 1:
                continue
            gens.append(xs[i] * xs[j])
    gens.append(xs[h - 1] ** (s + 2))
    return quotient_ring(S, gens)
