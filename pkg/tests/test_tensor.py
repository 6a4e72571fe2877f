"""Tests for tensor products of rings and modules and the convolution identity."""

import pytest

from gradedres.errors import AlgebraError
from gradedres.groebner import QuotientRing
from gradedres.modules import (
    cyclic_presentation,
    free_presentation,
    residue_field_presentation,
)
from gradedres.order import DEGLEX
from gradedres.poly import PolyRing, parse_poly
from gradedres.resolution import BettiTable, betti, resolve
from gradedres.tensorprod import (
    convolve_betti,
    tensor_modules,
    tensor_rings,
    verify_tensor_bounds,
)

P_DEFAULT = 32003


def hypersurface(name, power):
    S = PolyRing(P_DEFAULT, [name])
    return QuotientRing(S, [parse_poly(S, f"{name}^{power}")])


def test_tensor_rings_disjoint_names():
    T = tensor_rings(hypersurface("x", 2), hypersurface("y", 2))
    assert T.ring.ambient.names == ("x", "y")
    assert sorted(str(g) for g in T.ring.gens) == ["x^2", "y^2"]


def test_tensor_rings_renames_colliding_variables():
    T = tensor_rings(hypersurface("x", 2), hypersurface("x", 3))
    assert T.ring.ambient.names == ("x_1", "x_2")
    assert sorted(str(g) for g in T.ring.gens) == ["x_1^2", "x_2^3"]


def test_tensor_rings_compatibility_checks():
    R1 = hypersurface("x", 2)
    with pytest.raises(AlgebraError):
        tensor_rings(R1, QuotientRing(PolyRing(101, ["y"]), []))
    with pytest.raises(AlgebraError):
        tensor_rings(R1, QuotientRing(PolyRing(P_DEFAULT, ["y"], DEGLEX), []))


def test_tensor_modules_row_major_layout():
    R1, R2 = hypersurface("x", 2), hypersurface("y", 2)
    T = tensor_rings(R1, R2)
    M = tensor_modules(T, free_presentation(R1, (0, 1)), free_presentation(R2, (0, 2)))
    assert M.f0.shifts == (0, 2, 1, 3)


def test_tensor_modules_requires_factor_rings():
    R1, R2 = hypersurface("x", 2), hypersurface("y", 2)
    T = tensor_rings(R1, R2)
    with pytest.raises(AlgebraError):
        tensor_modules(T, residue_field_presentation(R2), residue_field_presentation(R2))


def test_residue_field_over_two_quadric_hypersurfaces():
    # beta_{n,n} = n + 1 for K over F_p[x,y]/(x^2, y^2), by convolution of
    # two periodic rank-one tables.
    R1, R2 = hypersurface("x", 2), hypersurface("y", 2)
    T = tensor_rings(R1, R2)
    M = tensor_modules(T, residue_field_presentation(R1), residue_field_presentation(R2))
    tab = betti(resolve(M, 5, 10))
    assert dict(tab.entries) == {(n, n): n + 1 for n in range(6)}


def test_convolve_betti_small_tables():
    t1 = BettiTable(entries={(0, 0): 1, (1, 2): 1}, hmax=1, dmax=4, finite=True)
    t2 = BettiTable(entries={(0, 0): 1, (1, 1): 2}, hmax=1, dmax=4, finite=True)
    assert convolve_betti(t1, t2, 2, 4) == {(0, 0): 1, (1, 1): 2, (1, 2): 1, (2, 3): 2}
    # The window drops pairs landing outside it.
    assert convolve_betti(t1, t2, 1, 2) == {(0, 0): 1, (1, 1): 2, (1, 2): 1}


def test_verify_tensor_bounds_koszul_pair():
    R1, R2 = hypersurface("x", 2), hypersurface("y", 2)
    rep = verify_tensor_bounds(
        R1, R2, residue_field_presentation(R1), residue_field_presentation(R2), 5, 10
    )
    assert rep.all_hold
    assert rep.kunneth_holds and rep.kunneth_mismatches == ()
    assert rep.shift_bound_holds and rep.reg_bound_holds
    assert rep.hmax == 5
    assert rep.ring.ambient.names == ("x", "y")
    assert rep.to_dict()["betti_tensor"]["5,5"] == 6


def test_verify_tensor_bounds_free_factor_leaves_table_unchanged():
    R1, R2 = hypersurface("x", 2), hypersurface("y", 2)
    rep = verify_tensor_bounds(
        R1, R2, residue_field_presentation(R1), free_presentation(R2, (0,)), 4, 8
    )
    assert rep.all_hold
    tab1 = betti(resolve(residue_field_presentation(R1), 4, 8))
    assert rep.betti_tensor.entries == tab1.entries


def test_verify_tensor_bounds_finite_complete_intersection():
    Sx = PolyRing(P_DEFAULT, ["x"])
    Sy = PolyRing(P_DEFAULT, ["y"])
    Rx, Ry = QuotientRing(Sx, []), QuotientRing(Sy, [])
    P1 = cyclic_presentation(Rx, [parse_poly(Sx, "x^2")])
    P2 = cyclic_presentation(Ry, [parse_poly(Sy, "y^3")])
    rep = verify_tensor_bounds(Rx, Ry, P1, P2, 4, 10)
    assert rep.all_hold
    assert dict(rep.betti_tensor.entries) == {(0, 0): 1, (1, 2): 1, (1, 3): 1, (2, 5): 1}
    assert rep.betti_expected == dict(rep.betti_tensor.entries)


def test_verify_tensor_bounds_mixed_powers():
    R1, R2 = hypersurface("x", 3), hypersurface("y", 2)
    rep = verify_tensor_bounds(
        R1, R2, residue_field_presentation(R1), residue_field_presentation(R2), 4, 10
    )
    assert rep.all_hold
    assert rep.hmax == 4
