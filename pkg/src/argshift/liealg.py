"""Core Lie-algebra arithmetic over two scalar modes.

Exact mode works in Gaussian rationals and proves identities on the
nose; float mode works in complex doubles and backs the sampling
campaigns.  An element never mixes modes inside one computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import expm

from . import rootdata
from .errors import (ConfigurationError, ModeMismatchError, NonRegularError,
                     SamplingError)
from .exact import QC, rank_bareiss, rref
from .realization import Realization

EXACT = "exact"
FLOAT = "float"

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """One classical algebra with its realization and derived data."""

    type_label: str
    rank: int

    @property
    def core(self) -> "rootdata._Core":
        return rootdata._core(self.type_label, self.rank)

    @property
    def realization(self) -> Realization:
        return self.core.real

    @cached_property
    def root_system(self) -> "rootdata.RootSystem":
        return rootdata.build_root_system(self.type_label, self.rank)

    @cached_property
    def chevalley(self) -> "rootdata.ChevalleyBasis":
        return rootdata.chevalley_basis(self.root_system)

    @property
    def n(self) -> int:
        return self.realization.n

    @property
    def r(self) -> int:
        return self.rank

    @property
    def defining_dim(self) -> int:
        return self.realization.N

    @property
    def basis_matrices(self) -> np.ndarray:
        return self.realization.basis_np

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """Dense antisymmetric tensor c_{ij}^k over the realization basis."""
        n = self.n
        C = np.zeros((n, n, n), dtype=np.float64)
        for (i, j), terms in self.core.struct.items():
            for k, c in terms:
                C[i, j, k] = c
                C[j, i, k] = -c
        C.flags.writeable = False
        return C

    @cached_property
    def _bracket_table(self) -> tuple[dict[int, dict[int, int]], ...]:
        """Per basis index i: {j: {k: c}} with [b_i, b_j] = sum c b_k."""
        table: list[dict[int, dict[int, int]]] = [dict() for _ in range(self.n)]
        for (i, j), terms in self.core.struct.items():
            table[i][j] = {k: c for k, c in terms}
            table[j][i] = {k: -c for k, c in terms}
        return tuple(table)

    @cached_property
    def killing_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Exact Gram matrix trace(ad_i ad_j), an integer matrix here."""
        n, table = self.n, self._bracket_table
        K = [[0] * n for _ in range(n)]
        for i in range(n):
            rows_i = table[i]
            for j in range(i, n):
                rows_j = table[j]
                s = 0
                for l, terms in rows_i.items():
                    for m, c1 in terms.items():
                        back = rows_j.get(m)
                        if back:
                            s += c1 * back.get(l, 0)
                K[i][j] = s
                K[j][i] = s
        return tuple(tuple(row) for row in K)

    @cached_property
    def killing_np(self) -> np.ndarray:
        K = np.array(self.killing_matrix, dtype=np.float64)
        K.flags.writeable = False
        return K

    @cached_property
    def trace_ratio(self) -> Fraction:
        """Exact c with killing(x, y) = c * trace(XY) in the realization."""
        ent = [dict(((i, j), c) for i, j, c in e)
               for e in self.realization.entries]

        def tr_pair(a, b):
            return sum(v * b.get((j, i), 0) for (i, j), v in a.items())

        t00 = tr_pair(ent[0], ent[0])
        ratio = Fraction(self.killing_matrix[0][0], t00)
        for i in range(self.n):
            for j in range(i, self.n):
                if self.killing_matrix[i][j] != ratio * tr_pair(ent[i], ent[j]):
                    raise ConfigurationError(
                        "Killing form is not proportional to the trace form")
        return ratio

    # -- element constructors ---------------------------------------------

    def element(self, coords, mode: str) -> "AlgebraElement":
        if mode == EXACT:
            vals = tuple(QC.of(v) for v in coords)
            if len(vals) != self.n:
                raise ConfigurationError("coordinate length != dimension")
            return AlgebraElement(self, EXACT, vals)
        if mode == FLOAT:
            arr = np.asarray(coords, dtype=np.complex128).copy()
            if arr.shape != (self.n,):
                raise ConfigurationError("coordinate length != dimension")
            arr.flags.writeable = False
            return AlgebraElement(self, FLOAT, arr)
        raise ConfigurationError(f"unknown mode {mode!r}")

    def zero(self, mode: str) -> "AlgebraElement":
        return self.element([0] * self.n, mode)


@lru_cache(maxsize=None)
def build_algebra(type_label: str, rank: int) -> LieAlgebra:
    L = LieAlgebra(type_label, rank)
    L.core  # validates type and rank eagerly
    return L


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A coordinate vector over the realization basis, mode-tagged."""

    algebra: LieAlgebra
    mode: str
    coords: tuple[QC, ...] | np.ndarray

    def realize(self):
        """The element as an N x N matrix in the defining realization."""
        if self.mode == EXACT:
            return self.algebra.realization.realize_exact(self.coords)
        return self.algebra.realization.realize_np(self.coords)

    def to_float(self) -> "AlgebraElement":
        if self.mode == FLOAT:
            return self
        return self.algebra.element([v.to_complex() for v in self.coords], FLOAT)

    def __add__(self, other):
        _join(self, other)
        if self.mode == EXACT:
            vals = tuple(a + b for a, b in zip(self.coords, other.coords))
            return AlgebraElement(self.algebra, EXACT, vals)
        return self.algebra.element(self.coords + other.coords, FLOAT)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        if self.mode == EXACT:
            s = QC.of(scalar)
            return AlgebraElement(self.algebra, EXACT,
                                  tuple(s * v for v in self.coords))
        return self.algebra.element(complex(scalar) * self.coords, FLOAT)

    def __mul__(self, scalar):
        return self.__rmul__(scalar)


def _join(x: AlgebraElement, y: AlgebraElement) -> str:
    if x.algebra is not y.algebra:
        raise ConfigurationError("elements belong to different algebras")
    if x.mode != y.mode:
        raise ModeMismatchError(f"mixed arithmetic modes {x.mode}/{y.mode}")
    return x.mode


def bracket(L: LieAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """[x, y] through the structure-constant tensor."""
    mode = _join(x, y)
    if mode == FLOAT:
        out = np.einsum("ijk,i,j->k", L.structure_constants, x.coords, y.coords)
        return L.element(out, FLOAT)
    acc: list = [0] * L.n
    xs, ys = x.coords, y.coords
    for (i, j), terms in L.core.struct.items():
        f = xs[i] * ys[j] - xs[j] * ys[i]
        if f:
            for k, c in terms:
                acc[k] = acc[k] + f * c
    return L.element(acc, EXACT)


def ad_matrix(L: LieAlgebra, x: AlgebraElement):
    """Matrix of ad_x on the realization basis; rows index the output."""
    if x.mode == FLOAT:
        return np.einsum("ijk,i->kj", L.structure_constants, x.coords)
    rows: list[list] = [[0] * L.n for _ in range(L.n)]
    xs = x.coords
    for (a, b), terms in L.core.struct.items():
        xa, xb = xs[a], xs[b]
        for k, c in terms:
            if xa:
                rows[k][b] = rows[k][b] + xa * c
            if xb:
                rows[k][a] = rows[k][a] - xb * c
    return [[QC.of(v) for v in row] for row in rows]


def killing(L: LieAlgebra, x: AlgebraElement, y: AlgebraElement):
    """kappa(x, y) through the precomputed Gram matrix."""
    mode = _join(x, y)
    K = L.killing_matrix
    if mode == FLOAT:
        return complex(x.coords @ L.killing_np @ y.coords)
    total = QC.of(0)
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        row = K[i]
        s = 0
        for j, yj in enumerate(y.coords):
            if row[j] and yj:
                s = s + row[j] * yj
        if s:
            total = total + xi * s
    return total


def float_rank(M: np.ndarray, tolerance: float, floor: bool = False) -> int:
    """Numerical rank; `floor` guards the threshold below singular value 1."""
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    ref = max(1.0, float(sv[0])) if floor else float(sv[0])
    return int(np.count_nonzero(sv > tolerance * ref))


def is_regular(L: LieAlgebra, x: AlgebraElement,
               tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """True iff ker(ad_x) has the minimal dimension r."""
    ad = ad_matrix(L, x)
    if x.mode == EXACT:
        return L.n - rank_bareiss(ad) == L.r
    return L.n - float_rank(ad, tolerance) == L.r


def tangent_basis(L: LieAlgebra, x: AlgebraElement,
                  tolerance: float = DEFAULT_TOLERANCE) -> list[AlgebraElement]:
    """Basis of image(ad_x), the tangent space of the orbit at x.

    Float mode returns an orthonormal basis from the SVD; exact mode an
    echelon basis.  Raises if the rank is not n - r.
    """
    ad = ad_matrix(L, x)
    want = L.n - L.r
    if x.mode == FLOAT:
        u, sv, _ = np.linalg.svd(ad)
        got = int(np.count_nonzero(sv > tolerance * (sv[0] if sv[0] else 1.0)))
        if got != want:
            raise NonRegularError(
                f"ad_x rank {got} != {want}: x is not regular at {tolerance:g}")
        return [L.element(u[:, m], FLOAT) for m in range(want)]
    cols = [[ad[i][j] for i in range(L.n)] for j in range(L.n)]
    red, pivots = rref(cols)
    if len(pivots) != want:
        raise NonRegularError(f"ad_x rank {len(pivots)} != {want}: x is not regular")
    return [L.element(red[m], EXACT) for m in range(want)]


def orbit_push(L: LieAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Conjugate x by exp(Y) in the defining realization (float mode)."""
    mode = _join(x, y)
    if mode != FLOAT:
        raise ModeMismatchError("orbit_push runs in floating point; "
                                "use orbit_push_exact for rational points")
    Y = y.realize()
    g = expm(Y)
    gi = expm(-Y)
    Z = g @ x.realize() @ gi
    return L.element(L.realization.coords_np(Z), FLOAT)


def _exact_exp(mat, N: int):
    """exp of an exactly nilpotent N x N matrix, as rational arithmetic."""
    from .exact import mat_mul

    ident = [[QC.of(1 if i == j else 0) for j in range(N)] for i in range(N)]
    out = [row[:] for row in ident]
    power = [row[:] for row in mat]
    fact = 1
    for k in range(1, N + 1):
        fact *= k
        if all(not v for row in power for v in row):
            return out
        inv = Fraction(1, fact)
        for i in range(N):
            for j in range(N):
                out[i][j] = out[i][j] + power[i][j] * inv
        power = mat_mul(power, mat)
    raise ConfigurationError("exact push generator is not nilpotent")


def orbit_push_exact(L: LieAlgebra, x: AlgebraElement,
                     y: AlgebraElement) -> AlgebraElement:
    """Conjugate x by exp(Y) for nilpotent Y, entirely in exact arithmetic.

    Y must realize to a nilpotent matrix (for instance any combination
    of root vectors on one side of the diagonal); exp(Y) is then a
    finite sum and the conjugated point is an exact orbit point.
    """
    from .exact import mat_mul

    if _join(x, y) != EXACT:
        raise ModeMismatchError("orbit_push_exact needs exact-mode elements")
    N = L.defining_dim
    Ym = [[QC.of(v) for v in row] for row in y.realize()]
    g = _exact_exp(Ym, N)
    gi = _exact_exp([[-v for v in row] for row in Ym], N)
    Z = mat_mul(mat_mul(g, x.realize()), gi)
    return L.element(L.realization.coords_exact(Z), EXACT)


def random_element(L: LieAlgebra, rng: np.random.Generator,
                   mode: str = FLOAT) -> AlgebraElement:
    """Standard complex Gaussian coordinates (float) or small integers (exact)."""
    if mode == FLOAT:
        z = rng.standard_normal(L.n) + 1j * rng.standard_normal(L.n)
        return L.element(z, FLOAT)
    vals = rng.integers(-9, 10, size=L.n)
    return L.element([int(v) for v in vals], EXACT)


def random_regular(L: LieAlgebra, rng: np.random.Generator, mode: str = FLOAT,
                   tolerance: float = DEFAULT_TOLERANCE,
                   max_tries: int = 100) -> AlgebraElement:
    """Rejection-sample a regular element; raises after max_tries misses."""
    for _ in range(max_tries):
        x = random_element(L, rng, mode)
        if is_regular(L, x, tolerance):
            return x
    raise SamplingError(f"no regular element in {max_tries} draws; "
                        "check the tolerance configuration")
