"""Root systems, Chevalley bases, and structure constants."""

from fractions import Fraction

import pytest

from argshift import (ConfigurationError, borel_membership, build_root_system,
                      chevalley_basis, export_structure_constants)
from argshift.exact import mat_commutator
from argshift.realization import build_realization


def _realize(real, vec):
    mats = {}
    N = real.N
    M = [[Fraction(0)] * N for _ in range(N)]
    for t, c in enumerate(vec):
        if not c:
            continue
        for (i, j, w) in real.entries[t]:
            M[i][j] += c * w
    return M


POSITIVE_COUNTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6,
                   ("B", 2): 4, ("B", 3): 9, ("C", 2): 4, ("C", 3): 9}


@pytest.mark.parametrize("tl,rk", sorted(POSITIVE_COUNTS))
def test_root_counts(tl, rk):
    rs = build_root_system(tl, rk)
    p = POSITIVE_COUNTS[(tl, rk)]
    assert len(rs.positive_roots) == p
    assert len(rs.roots) == 2 * p
    assert len(rs.simple_roots) == rk
    # negatives mirror positives exactly
    assert {tuple(-c for c in rs.roots[i]) for i in rs.positive_roots} == \
        {rs.roots[i] for i in rs.negative_roots}


CARTAN_ORACLES = {
    ("A", 1): [[2]],
    ("A", 2): [[2, -1], [-1, 2]],
    ("B", 2): [[2, -2], [-1, 2]],
    ("C", 2): [[2, -1], [-2, 2]],
}


@pytest.mark.parametrize("tl,rk", sorted(CARTAN_ORACLES))
def test_cartan_matrices(tl, rk):
    rs = build_root_system(tl, rk)
    assert [list(row) for row in rs.cartan_matrix] == CARTAN_ORACLES[(tl, rk)]


def test_cartan_matrix_from_coroot_pairing():
    rs = build_root_system("B", 3)
    cb = chevalley_basis(rs)
    for i, ai in enumerate(rs.simple_roots):
        for j, aj in enumerate(rs.simple_roots):
            h = cb.coroots[rs.roots[aj]][:rs.rank]
            assert rs.evaluate(ai, h) == rs.cartan_matrix[i][j]


def test_root_vectors_are_weight_vectors():
    rs = build_root_system("C", 2)
    cb = chevalley_basis(rs)
    real = build_realization("C", 2)
    for k in range(rs.rank):
        H = _realize(real, cb.cartan_basis[k])
        for alpha in rs.roots:
            E = _realize(real, cb.root_vectors[alpha])
            val = rs.evaluate(alpha, [Fraction(int(k == m))
                                      for m in range(rs.rank)])
            lhs = mat_commutator(H, E)
            assert lhs == [[val * E[i][j] for j in range(real.N)]
                           for i in range(real.N)]


def test_sl2_subalgebras_normalized():
    # [e_a, e_-a] = h_a with a(h_a) = 2, for every positive root
    for tl, rk in [("A", 3), ("B", 2), ("C", 3)]:
        rs = build_root_system(tl, rk)
        cb = chevalley_basis(rs)
        real = build_realization(tl, rk)
        for i in rs.positive_roots:
            alpha = rs.roots[i]
            neg = tuple(-c for c in alpha)
            com = mat_commutator(_realize(real, cb.root_vectors[alpha]),
                                 _realize(real, cb.root_vectors[neg]))
            h = cb.coroots.get(alpha)
            if h is None:
                continue  # coroots stored for simple roots only
            assert com == _realize(real, h)
            assert rs.evaluate(alpha, h[:rk]) == 2


def test_structure_constants_match_commutators():
    rs = build_root_system("C", 2)
    core = rs.core
    real = core.real
    n = rs.dimension
    basis = [_realize(real, [Fraction(int(t == s)) for t in range(n)])
             for s in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            com = mat_commutator(basis[i], basis[j])
            acc = [[Fraction(0)] * real.N for _ in range(real.N)]
            for k, c in core.struct.get((i, j), ()):
                bm = basis[k]
                for a in range(real.N):
                    for b in range(real.N):
                        acc[a][b] += c * bm[a][b]
            assert com == acc


def test_jacobi_identity_sampled():
    import numpy as np
    rs = build_root_system("B", 2)
    L = rs.dimension
    rng = np.random.default_rng(11)
    real = rs.core.real
    basis = [_realize(real, [Fraction(int(t == s)) for t in range(L)])
             for s in range(L)]
    idx = rng.integers(0, L, size=(15, 3))
    for i, j, k in idx:
        a, b, c = basis[int(i)], basis[int(j)], basis[int(k)]
        s1 = mat_commutator(a, mat_commutator(b, c))
        s2 = mat_commutator(b, mat_commutator(c, a))
        s3 = mat_commutator(c, mat_commutator(a, b))
        assert all(s1[p][q] + s2[p][q] + s3[p][q] == 0
                   for p in range(real.N) for q in range(real.N))


def test_borel_membership_exact_and_tolerant():
    rs = build_root_system("A", 2)
    cb = chevalley_basis(rs)
    pos = rs.roots[rs.positive_roots[0]]
    neg = rs.roots[rs.negative_roots[0]]
    assert borel_membership(cb, cb.root_vectors[pos])
    assert not borel_membership(cb, cb.root_vectors[neg])
    assert borel_membership(cb, cb.cartan_basis[0])
    # float vector with junk below tolerance
    v = [0.0] * rs.dimension
    k = cb.root_vector_index(neg)
    v[k] = 1e-12
    assert borel_membership(cb, v, tolerance=1e-10)
    assert not borel_membership(cb, v, tolerance=1e-14)


def test_export_structure_constants_schema():
    rs = build_root_system("B", 2)
    out = export_structure_constants(rs)
    assert set(out) == {"n", "r", "type", "constants"}
    assert out["n"] == 10 and out["r"] == 2 and out["type"] == "B"
    assert out["constants"], "no constants exported"
    for row in out["constants"]:
        i, j, k, num, den = row
        assert i < j and den == 1
        assert 0 <= k < out["n"]
    # a sampled entry agrees with the core table
    core = rs.core
    i, j, k, num, den = out["constants"][0]
    assert (k, Fraction(num, den)) in core.struct[(i, j)]


@pytest.mark.parametrize("tl,rk", [("D", 3), ("a", 2), ("A", 0), ("A", 7)])
def test_rejects_unsupported_systems(tl, rk):
    with pytest.raises(ConfigurationError):
        build_root_system(tl, rk)
