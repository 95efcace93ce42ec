"""Shifted families: coefficient extraction, gradients, commutativity."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from argshift import (EXACT, FLOAT, ConfigurationError, NonRegularError,
                      ambient_rank, build_algebra, eval_mf,
                      fundamental_invariants, mf_family, mf_gradient,
                      random_element, random_regular)
from argshift.exact import QC
from argshift.invariants import eval_all, eval_invariant
from argshift.shift import eval_all_mf, gradient_rows
from conftest import central_diff_all, lie_poisson


def test_sl2_coefficient_oracle():
    # f(x) = tr(x^2); with a = e the linear coefficient is 2 * gamma
    # for x = [[alpha, beta], [gamma, -alpha]].
    L = build_algebra("A", 1)
    S = fundamental_invariants(L)
    a = L.element([0, 1, 0], EXACT)
    F = mf_family(S, a)
    x = L.element([Fraction(5), Fraction(-3), Fraction(7)], EXACT)
    assert eval_mf(F, 1, 0, x) == eval_invariant(S, 1, x)
    assert eval_mf(F, 1, 1, x) == QC.of(14)


def test_exact_reconstruction_off_node():
    L = build_algebra("A", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(31)
    a = random_regular(L, rng, EXACT)
    F = mf_family(S, a)
    x = random_element(L, rng, EXACT)
    lam = Fraction(22, 3)  # far outside the node set 0..d-1
    shifted = x + QC.of(lam) * a
    direct = eval_all(S, shifted)
    for i, d in enumerate(S.degrees, start=1):
        acc = QC.of(F.shift_values[i - 1]) * QC.of(lam ** d)
        for j in range(d):
            acc = acc + eval_mf(F, i, j, x) * QC.of(lam ** j)
        assert acc == direct[i - 1]


def test_leading_and_constant_terms():
    L = build_algebra("B", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(32)
    a = random_regular(L, rng, FLOAT)
    F = mf_family(S, a)
    x = random_element(L, rng, FLOAT)
    vals = eval_all(S, x)
    for i in range(1, L.r + 1):
        assert abs(eval_mf(F, i, 0, x) - vals[i - 1]) < 1e-9


def test_index_set_ordering():
    L = build_algebra("A", 3)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(33)
    F = mf_family(S, random_regular(L, rng, FLOAT))
    assert F.index_set == tuple((i, j) for i, d in
                                enumerate(S.degrees, start=1)
                                for j in range(d))
    assert len(F.index_set) == F.ell == 9


def test_mf_gradients_match_finite_differences():
    L = build_algebra("C", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(34)
    F = mf_family(S, random_regular(L, rng, FLOAT))
    x = random_element(L, rng, FLOAT)
    G = gradient_rows(F, x)
    fd = central_diff_all(L, lambda p: eval_all_mf(F, p), x)
    paired = L.killing_np @ G.T
    scale = max(1.0, float(np.max(np.abs(paired))))
    assert np.max(np.abs(fd - paired)) < 1e-6 * scale
    # single-generator accessor agrees with the stacked rows
    k = F.index_set.index((2, 1))
    assert np.allclose(mf_gradient(F, 2, 1, x).coords, G[k])


def test_ambient_rank_full_at_generic_points():
    L = build_algebra("C", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(35)
    F = mf_family(S, random_regular(L, rng, FLOAT))
    for _ in range(3):
        assert ambient_rank(F, random_element(L, rng, FLOAT)) == F.ell


def test_ambient_rank_deficient_on_singular_line():
    L = build_algebra("A", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(36)
    a = random_regular(L, rng, FLOAT)
    F = mf_family(S, a)
    z = L.element(L.realization.coords_np(np.diag([1.0, 1.0, -2.0])), FLOAT)
    for lam in (0.0, 0.5, 1.3 + 0.2j):
        assert ambient_rank(F, z + lam * a) < F.ell


def test_poisson_commutativity_all_pairs():
    L = build_algebra("A", 2)
    S = fundamental_invariants(L)
    rng = np.random.default_rng(37)
    F = mf_family(S, random_regular(L, rng, FLOAT))
    for _ in range(5):
        x = random_element(L, rng, FLOAT)
        G = gradient_rows(F, x)
        els = [L.element(row, FLOAT) for row in G]
        for p, q in combinations(range(F.ell), 2):
            assert abs(lie_poisson(L, x, els[p], els[q])) <= 1e-8


def test_rejects_bad_shifts():
    L = build_algebra("A", 2)
    S = fundamental_invariants(L)
    sing = L.element(L.realization.coords_np(np.diag([1.0, 1.0, -2.0])), FLOAT)
    with pytest.raises(NonRegularError):
        mf_family(S, sing)
    other = build_algebra("B", 2)
    rng = np.random.default_rng(38)
    with pytest.raises(ConfigurationError):
        mf_family(S, random_regular(other, rng, FLOAT))
