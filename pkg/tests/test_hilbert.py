"""Tests for Hilbert series of rings and presented modules."""

import random
from math import comb

import pytest

from gradedres import (
    PolyRing,
    cyclic_presentation,
    hilbert_series,
    module_dimensions,
    multiplicity,
    parse_polys,
    presentation_from_rows,
    quotient_ring,
    ring_dimensions,
)
from gradedres.errors import AlgebraError
from gradedres.randgen import random_artinian_monomial_ring, random_presentation

P = 32003


def test_polynomial_ring_series():
    for n in (1, 2, 3):
        S = PolyRing(P, [f"x{i}" for i in range(n)])
        h = hilbert_series(quotient_ring(S, []), dmax=8)
        assert h.exact
        assert list(h.coeffs) == [comb(n - 1 + d, d) for d in range(9)]
        assert h.dimension() == n
        assert h.multiplicity() == 1
        assert not h.is_artinian()


def test_truncation_ring_series():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, [S.monomial(m) for m in S.monomials_of_degree(3)])
    h = hilbert_series(R, dmax=6)
    assert list(h.coeffs) == [1, 2, 3, 0, 0, 0, 0]
    assert h.is_artinian()
    assert h.top_degree() == 2
    assert h.multiplicity() == 6
    assert multiplicity(h) == 6


def test_stretched_series():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, parse_polys(S, ["x^2", "x*y", "y^4"]))
    h = hilbert_series(R, dmax=8)
    assert list(h.coeffs) == [1, 2, 1, 1, 0, 0, 0, 0, 0]
    assert h.top_degree() == 3
    assert h.multiplicity() == 5


def test_hypersurface_series():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, parse_polys(S, ["x^3 - y^3"]))
    h = hilbert_series(R, dmax=8)
    assert list(h.coeffs) == [1, 2, 3, 3, 3, 3, 3, 3, 3]
    assert h.dimension() == 1
    assert h.multiplicity() == 3
    # the closed form extends the window
    assert h.coefficient(50) == 3


def test_module_series_of_cyclic_quotient():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, [S.monomial(m) for m in S.monomials_of_degree(3)])
    pres = cyclic_presentation(R, [S.gen(0)])
    h = hilbert_series(pres, dmax=6)
    assert list(h.coeffs) == [1, 1, 1, 0, 0, 0, 0]


def test_shifted_generators():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, [])
    pres = presentation_from_rows(R, [0, 2], [])
    h = hilbert_series(pres, dmax=4)
    # free module R + R(-2)
    assert list(h.coeffs) == [1, 2, 4, 6, 8]
    with pytest.raises(AlgebraError):
        hilbert_series(presentation_from_rows(R, [-1], []), dmax=4)


def test_series_matches_oracle_on_random_inputs():
    rng = random.Random(71)
    for _ in range(8):
        R = random_artinian_monomial_ring(rng, P, rng.randint(1, 3))
        h = hilbert_series(R, dmax=8)
        assert list(h.coeffs) == ring_dimensions(R, 8)
        pres = random_presentation(rng, R)
        hm = hilbert_series(pres, dmax=8)
        assert list(hm.coeffs) == module_dimensions(pres, 8)


def test_truncated_basis_withholds_closed_form():
    S = PolyRing(P, ["x", "y"])
    R = quotient_ring(S, parse_polys(S, ["x^2 + y^2", "x*y"]))
    pres = cyclic_presentation(R, [S.gen(0) ** 2])
    h = hilbert_series(pres, dmax=10, gb_dbound=2)
    assert not h.exact
    assert h.numerator is None
    assert h.dmax <= 2
    with pytest.raises(AlgebraError):
        h.coefficient(5)
    with pytest.raises(AlgebraError):
        h.reduced_numerator()


def test_zero_module_series():
    S = PolyRing(P, ["x"])
    R = quotient_ring(S, [])
    pres = cyclic_presentation(R, [S.one()])
    h = hilbert_series(pres, dmax=4)
    assert list(h.coeffs) == [0, 0, 0, 0, 0]
    assert h.dimension() == -1
