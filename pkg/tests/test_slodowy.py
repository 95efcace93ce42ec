"""Principal triples, slices, and the slice-orbit Newton solver."""

from fractions import Fraction

import numpy as np
import pytest

from argshift import (EXACT, FLOAT, SolverError, bracket, borel_membership,
                      build_algebra, fundamental_invariants, intersect_orbit,
                      is_regular, principal_sl2, slodowy_slice,
                      ad_h_eigen_check, random_regular)
from argshift.exact import QC
from argshift.invariants import eval_all
from argshift.slodowy import _basis_grades


def test_sl3_triple_oracle():
    L = build_algebra("A", 2)
    T = principal_sl2(L.chevalley)
    H = T.h.realize()
    assert [H[i][i] for i in range(3)] == [-2, 0, 2]
    assert sorted(T.coefficients.values()) == [Fraction(2), Fraction(2)]


def test_sl2_triple_and_slice():
    L = build_algebra("A", 1)
    T = principal_sl2(L.chevalley)
    H = T.h.realize()
    assert [H[0][0], H[1][1]] == [-1, 1]
    S = slodowy_slice(L, T)
    assert S.dimension == 1
    v = S.kernel_basis[0].realize()
    assert v[0][1] != 0 and v[1][0] == 0 and v[0][0] == 0


@pytest.mark.parametrize("tl,rk", [("A", 2), ("B", 2), ("C", 3)])
def test_triple_identities_exact(tl, rk):
    L = build_algebra(tl, rk)
    T = principal_sl2(L.chevalley)
    assert bracket(L, T.h, T.xi).coords == (2 * T.xi).coords
    assert bracket(L, T.h, T.eta).coords == ((-2) * T.eta).coords
    assert bracket(L, T.xi, T.eta).coords == T.h.coords
    assert is_regular(L, T.xi)


@pytest.mark.parametrize("tl,rk", [("A", 3), ("B", 3), ("C", 2)])
def test_slice_kernel_properties(tl, rk):
    L = build_algebra(tl, rk)
    T = principal_sl2(L.chevalley)
    S = slodowy_slice(L, T)
    assert S.dimension == L.r
    for v in S.kernel_basis:
        assert all(c == QC.of(0) for c in bracket(L, T.eta, v).coords)
        assert borel_membership(L.chevalley, v)
    assert ad_h_eigen_check(L, T)


def test_sl3_kernel_grades():
    L = build_algebra("A", 2)
    T = principal_sl2(L.chevalley)
    S = slodowy_slice(L, T)
    grades = _basis_grades(L, T)
    seen = set()
    for v in S.kernel_basis:
        gs = {grades[t] for t, c in enumerate(v.coords) if c != QC.of(0)}
        assert len(gs) == 1  # each kernel vector is homogeneous
        seen |= gs
    assert seen == {-2, -4}


def test_newton_roundtrip():
    L = build_algebra("A", 2)
    T = principal_sl2(L.chevalley)
    Sl = slodowy_slice(L, T)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(41)
    x = random_regular(L, rng, FLOAT)
    target = eval_all(S, x)
    sol = intersect_orbit(L, Sl, target, seed=41)
    got = np.array(eval_all(S, sol))
    assert np.max(np.abs(got - np.array(target))) <= 1e-10


def test_newton_zero_target_is_xi():
    L = build_algebra("A", 2)
    T = principal_sl2(L.chevalley)
    Sl = slodowy_slice(L, T)
    sol = intersect_orbit(L, Sl, [0.0, 0.0], seed=42)
    assert np.max(np.abs(sol.coords - T.xi.to_float().coords)) <= 1e-10


def test_newton_reports_disagreement():
    L = build_algebra("A", 2)
    T = principal_sl2(L.chevalley)
    Sl = slodowy_slice(L, T)
    with pytest.raises(SolverError):
        intersect_orbit(L, Sl, [1.0, 0.5], seed=1, agree_tol=1e-300)
    with pytest.raises(SolverError):
        intersect_orbit(L, Sl, [1.0, 0.5], seed=1, residual_tol=1e-300)
