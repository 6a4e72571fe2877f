"""Tests for regularity, rate, Backelin rate, socle and change of rings.

Window values below were computed independently with the dense linear
algebra oracle before being frozen into assertions.
"""

import random
from fractions import Fraction

import pytest

from gradedres.errors import AlgebraError, InternalCheckError
from gradedres.groebner import QuotientRing
from gradedres.invariants import (
    RateCertificate,
    artinian_rate_bound,
    backelin_rate,
    check_change_of_rings,
    is_koszul_up_to,
    linear_annihilator,
    maximal_ideal_presentation,
    rate,
    regularity,
)
from gradedres.modules import cyclic_presentation, residue_field_presentation
from gradedres.poly import PolyRing, parse_poly, parse_polys
from gradedres.randgen import random_artinian_monomial_ring
from gradedres.resolution import betti, resolve

P_DEFAULT = 32003


def ring(names, gens):
    S = PolyRing(P_DEFAULT, names)
    return QuotientRing(S, parse_polys(S, gens))


def test_regularity_finite_certified():
    # S/(x^2, y^3) over the polynomial ring: t = (0, 3, 5), reg = 3.
    R = ring(["x", "y"], [])
    P = cyclic_presentation(R, parse_polys(R.ambient, ["x^2", "y^3"]))
    rep = regularity(P, 4, None)
    assert rep.value == 3
    assert rep.certified is True
    assert rep.to_dict()["value"] == 3


def test_regularity_window_uncertified():
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    rep = regularity(residue_field_presentation(R), 4, 10)
    assert rep.value == 2
    assert rep.certified is False


def test_rate_window_values():
    # K over F_p[x,y]/m^3: t = (0, 1, 3, 4, 6) on the window.
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    rep = rate(residue_field_presentation(R), 4, 10)
    assert rep.value == Fraction(3, 2)
    assert rep.certified == "lower-bound"
    assert rep.ratios == (
        (1, 1, Fraction(1)),
        (2, 3, Fraction(3, 2)),
        (3, 4, Fraction(4, 3)),
        (4, 6, Fraction(3, 2)),
    )


def test_rate_of_twisted_module_shifts_ratios():
    # t_i(M(-1)) = t_i(M) + 1, so the ratios become (t_i + 1)/i.
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    rep = rate(residue_field_presentation(R).twist(-1), 4, 11)
    assert rep.value == Fraction(2)
    assert rep.ratios[0] == (1, 2, Fraction(2))
    assert rep.ratios[2] == (3, 5, Fraction(5, 3))


def test_rate_certificate_not_promoted_when_strictly_larger():
    # Artinian bound 2 for K over m^3, window value 3/2: still a lower bound.
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    cert = artinian_rate_bound(R)
    assert cert.bound == Fraction(2)
    assert cert.detail == {"socle_bound": 3, "t0": 0}
    rep = rate(residue_field_presentation(R), 4, 10, certificate=cert)
    assert rep.value == Fraction(3, 2)
    assert rep.certified == "lower-bound"


def test_rate_rejects_certificate_below_window_value():
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    bad = RateCertificate(bound=Fraction(1), source="made-up")
    with pytest.raises(InternalCheckError):
        rate(residue_field_presentation(R), 4, 10, certificate=bad)


def test_rate_rejects_certificate_below_exact_value():
    # Finite resolution with exact rate 1; a bound of 1/2 is inconsistent.
    R = ring(["x", "y"], [])
    bad = RateCertificate(bound=Fraction(1, 2), source="made-up")
    with pytest.raises(InternalCheckError):
        rate(residue_field_presentation(R), 3, None, certificate=bad)


def test_rate_needs_positive_hmax():
    R = ring(["x", "y"], [])
    with pytest.raises(AlgebraError):
        rate(residue_field_presentation(R), 0, 4)


def test_backelin_rate_truncation_ring():
    # F_p[x,y]/m^3 has Rate 2; the Artinian bound 2 certifies exactness.
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    rep = backelin_rate(R, 4, 10, certificate=artinian_rate_bound(R))
    assert rep.value == Fraction(2)
    assert rep.certified == "exact"
    assert rep.ratios[0] == (2, 3, Fraction(2))
    assert rep.hmax == 4
    d = rep.to_dict()
    assert d["value_str"] == "2"
    assert d["certificate"]["source"] == "artinian-bound"


def test_backelin_rate_stretched_ring():
    # F_p[x,y]/(x^2, xy, y^4): t_2(K) = 4, so Rate = 3, certified by top
    # socle degree 3 giving the Artinian bound 3.
    R = ring(["x", "y"], ["x^2", "x*y", "y^4"])
    cert = artinian_rate_bound(R)
    assert cert.bound == Fraction(3)
    rep = backelin_rate(R, 4, 12, certificate=cert)
    assert rep.value == Fraction(3)
    assert rep.certified == "exact"
    assert rep.ratios[0] == (2, 4, Fraction(3))


def test_backelin_rate_koszul_floor():
    # Polynomial rings are Koszul with Rate exactly 1, including n = 1 where
    # the Koszul complex stops before homological degree 2.
    for names in (["x"], ["x", "y"], ["x", "y", "z"]):
        R = ring(names, [])
        rep = backelin_rate(R, 4, None)
        assert rep.value == Fraction(1)
        assert rep.certified == "exact"


def test_backelin_rate_rejects_small_certificate():
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    bad = RateCertificate(bound=Fraction(1), source="made-up")
    with pytest.raises(InternalCheckError):
        backelin_rate(R, 4, 10, certificate=bad)


def test_backelin_rate_argument_validation():
    R = ring(["x", "y"], ["x^2"])
    with pytest.raises(AlgebraError):
        backelin_rate(R, 1, 6)
    R0 = QuotientRing(PolyRing(P_DEFAULT, []), [])
    with pytest.raises(AlgebraError):
        backelin_rate(R0, 2, 6)


def test_artinian_rate_bound_shifts_with_t0():
    R = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    cert = artinian_rate_bound(R, residue_field_presentation(R).twist(-1))
    assert cert.bound == Fraction(3)
    assert cert.detail == {"socle_bound": 3, "t0": 1}


def test_artinian_rate_bound_needs_artinian_ring():
    R = ring(["x", "y"], ["x^2"])
    with pytest.raises(AlgebraError):
        artinian_rate_bound(R)


def test_linear_annihilator_examples():
    st = ring(["x", "y"], ["x^2", "x*y", "y^4"])
    rep = linear_annihilator(st)
    assert rep.tau == 2
    assert rep.dims == (0, 1, 0, 1)
    assert [str(g) for g in rep.gens] == ["x", "y^3"]

    m3 = ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"])
    rep = linear_annihilator(m3)
    assert rep.tau == 3
    assert rep.dims == (0, 0, 3)
    assert [str(g) for g in rep.gens] == ["x^2", "x*y", "y^2"]

    x4 = ring(["x"], ["x^4"])
    rep = linear_annihilator(x4)
    assert rep.tau == 1
    assert rep.dims == (0, 0, 0, 1)
    assert [str(g) for g in rep.gens] == ["x^3"]
    assert rep.to_dict()["gens"] == ["x^3"]


def test_linear_annihilator_needs_artinian_ring():
    R = ring(["x", "y"], ["x^2"])
    with pytest.raises(AlgebraError):
        linear_annihilator(R)


def test_is_koszul_up_to_window():
    assert is_koszul_up_to(ring(["x", "y"], ["x^2", "x*y", "y^2"]), 4)
    assert is_koszul_up_to(ring(["x", "y"], []), 3)
    assert not is_koszul_up_to(ring(["x", "y"], ["x^3", "x^2*y", "x*y^2", "y^3"]), 4)
    assert not is_koszul_up_to(ring(["x", "y"], ["x^2", "x*y", "y^4"]), 3)


def test_maximal_ideal_presentation_polynomial_ring():
    R = ring(["x", "y"], [])
    P = maximal_ideal_presentation(R)
    assert P.f0.shifts == (0, 0)
    assert P.f1.shifts == (1,)
    tab = betti(resolve(P, 2, 6))
    assert dict(tab.entries) == {(0, 0): 2, (1, 1): 1}


def test_change_of_rings_bounds_hold():
    S2 = PolyRing(P_DEFAULT, ["x", "y"])
    R = QuotientRing(S2, [parse_poly(S2, "x^2")])
    S = QuotientRing(S2, parse_polys(S2, ["x^2", "y^2"]))
    rep = check_change_of_rings(R, S, residue_field_presentation(S), 4, 10)
    assert rep.rate_r_m.value == Fraction(1)
    assert rep.rate_s_m.value == Fraction(1)
    # S = R/(y^2) with y^2 a nonzerodivisor on R, so rate_R(S) = 2.
    assert rep.rate_r_s.value == Fraction(2)
    assert rep.t0_s_m == 0
    assert rep.bound_down_holds
    assert rep.bound_up_holds
    assert not rep.equality_case_applies
    assert rep.equality_holds is None
    assert rep.all_hold
    assert rep.to_dict()["bound_up_skipped_reason"] is None


def test_change_of_rings_skips_bound_up_for_negative_shifts():
    S2 = PolyRing(P_DEFAULT, ["x", "y"])
    R = QuotientRing(S2, [parse_poly(S2, "x^2")])
    S = QuotientRing(S2, parse_polys(S2, ["x^2", "y^2"]))
    rep = check_change_of_rings(R, S, residue_field_presentation(S).twist(1), 3, 9)
    assert rep.t0_s_m == -1
    assert rep.bound_up_holds is None
    assert rep.bound_up_skipped_reason == "module not nonnegatively graded"
    assert rep.bound_down_holds


def test_change_of_rings_argument_validation():
    S2 = PolyRing(P_DEFAULT, ["x", "y"])
    S3 = PolyRing(P_DEFAULT, ["x", "y", "z"])
    R2 = QuotientRing(S2, [parse_poly(S2, "x^2")])
    R3 = QuotientRing(S3, [parse_poly(S3, "x^2")])
    S = QuotientRing(S2, parse_polys(S2, ["x^2", "y^2"]))
    with pytest.raises(AlgebraError):
        check_change_of_rings(R3, S, residue_field_presentation(S), 2, 6)
    # x^3 does not lie in (y^2): not a surjection R ->> S.
    Rbad = QuotientRing(S2, [parse_poly(S2, "x^3")])
    Sbad = QuotientRing(S2, [parse_poly(S2, "y^2")])
    with pytest.raises(AlgebraError):
        check_change_of_rings(Rbad, Sbad, residue_field_presentation(Sbad), 2, 6)
    with pytest.raises(AlgebraError):
        check_change_of_rings(R2, S, residue_field_presentation(R2), 2, 6)


def test_rate_at_most_regularity_plus_one_on_windows():
    # t_i <= reg + i gives t_i/i <= reg + 1 for i >= 1 on any shared window.
    rng = random.Random(911)
    for _ in range(6):
        R = random_artinian_monomial_ring(rng, P_DEFAULT, rng.choice([1, 2]))
        P = residue_field_presentation(R)
        tab = betti(resolve(P, 3, 9))
        reg = regularity(P, 3, 9)
        rat = rate(P, 3, 9)
        assert rat.hmax == reg.hmax == tab.hmax
        assert rat.value <= Fraction(reg.value + 1)
