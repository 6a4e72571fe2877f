"""Seeded random generators for rings, modules, and short exact sequences.

Every function takes a random.Random so callers control reproducibility; the
generators only produce inputs the rest of the package accepts (homogeneous,
defining ideals with no linear forms, Artinian where stated).
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .groebner import QuotientRing, Vec, quotient_ring
from .modules import Presentation, augment_relations, cyclic_presentation, presentation_from_rows
from .poly import PolyRing, Polynomial, monomials_of_degree
from .resolution import SubmoduleData, submodule_presentation


def random_monomial(rng: random.Random, n: int, d: int):
    return rng.choice(sorted(monomials_of_degree(n, d)))


def random_homogeneous(rng: random.Random, S: PolyRing, d: int, max_terms: int = 3) -> Polynomial:
    """A nonzero homogeneous polynomial of degree d with a few random terms."""
    monos = sorted(monomials_of_degree(S.n, d))
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    f = S.zero()
    for m in chosen:
        f = f + S.from_dict({m: rng.randrange(1, S.p)})
    return f if not f.is_zero() else S.monomial(monos[0])


def random_artinian_monomial_ring(
    rng: random.Random,
    p: int,
    nvars: int,
    min_pow: int = 2,
    max_pow: int = 4,
    extra: int = 2,
) -> QuotientRing:
    """A monomial quotient containing a power of every variable."""
    S = PolyRing(p, [f"x{i}" for i in range(1, nvars + 1)])
    gens: List[Polynomial] = []
    for i in range(nvars):
        e = rng.randint(min_pow, max_pow)
        gens.append(S.gen(i) ** e)
    for _ in range(rng.randint(0, extra)):
        d = rng.randint(2, max_pow)
        gens.append(S.monomial(random_monomial(rng, nvars, d)))
    return quotient_ring(S, gens)


def random_graded_ring(
    rng: random.Random,
    p: int,
    nvars: int,
    ngens: int = 2,
    degrees: Sequence[int] = (2, 3),
) -> QuotientRing:
    """A quotient by random homogeneous forms of the given degrees."""
    S = PolyRing(p, [f"x{i}" for i in range(1, nvars + 1)])
    gens = [random_homogeneous(rng, S, rng.choice(list(degrees))) for _ in range(ngens)]
    return quotient_ring(S, gens)


def random_cyclic_monomial_module(
    rng: random.Random,
    R: QuotientRing,
    max_gens: int = 3,
    degrees: Sequence[int] = (1, 2),
) -> Presentation:
    """R/J for a random monomial ideal J (zero relations are dropped)."""
    S = R.ambient
    rels = []
    for _ in range(rng.randint(1, max_gens)):
        d = rng.choice(list(degrees))
        rels.append(S.monomial(random_monomial(rng, S.n, d)))
    return cyclic_presentation(R, rels)


def random_presentation(
    rng: random.Random,
    R: QuotientRing,
    max_rank: int = 2,
    max_rels: int = 3,
    max_rel_degree: int = 3,
) -> Presentation:
    """A random graded presentation with small ranks and degrees."""
    rank = rng.randint(1, max_rank)
    shifts = sorted(rng.randint(0, 1) for _ in range(rank))
    cols: List[List[Polynomial]] = []
    for _ in range(rng.randint(1, max_rels)):
        d = rng.randint(max(shifts) + 1, max(shifts) + max_rel_degree)
        col = []
        for s in shifts:
            if rng.random() < 0.3:
                col.append(R.ambient.zero())
            else:
                col.append(random_homogeneous(rng, R.ambient, d - s))
        cols.append(col)
    return presentation_from_rows(R, shifts, cols)


def random_vector(rng: random.Random, R: QuotientRing, shifts: Sequence[int], d: int) -> Vec:
    """A homogeneous degree-d element of the free module with the given shifts."""
    v: Vec = {}
    for pos, s in enumerate(shifts):
        if d - s < 0 or rng.random() < 0.4:
            continue
        f = random_homogeneous(rng, R.ambient, d - s)
        v[pos] = dict(f.terms)
    return v


def random_ses(
    rng: random.Random,
    R: QuotientRing,
    dmax: int,
    max_tries: int = 8,
) -> Optional[Tuple[Presentation, Presentation, Presentation]]:
    """A short exact sequence 0 -> A -> B -> C -> 0 of graded R-modules.

    B is a random presentation, A the submodule generated by random elements
    of B, and C the quotient. Returns None when no try produces a nonzero
    proper submodule.
    """
    for _ in range(max_tries):
        B = random_presentation(rng, R)
        bcols = [B.matrix.column_vec(c) for c in range(B.f1.rank)]
        top = max(B.f0.shifts)
        vecs = []
        for _ in range(rng.randint(1, 2)):
            d = rng.randint(top, top + 2)
            v = random_vector(rng, R, B.f0.shifts, d)
            if v:
                vecs.append(v)
        if not vecs:
            continue
        sub = submodule_presentation(R, B.f0.shifts, vecs, dmax=dmax, modulo=bcols)
        if sub.presentation.f0.rank == 0:
            continue
        A = sub.presentation
        C = augment_relations(B, list(sub.generators))
        return A, B, C
    return None
