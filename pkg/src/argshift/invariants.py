"""Fundamental invariant polynomials as trace powers.

For type A the generators are tr(X^k), k = 2..r+1; for types B and C the
odd traces vanish identically and the generators are the even traces up
to degree 2r.  Gradients are returned as Killing-dual coordinate
vectors: kappa(grad f, v) is the directional derivative of f along v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError
from .exact import QC, mat_mul, mat_trace
from .liealg import EXACT, AlgebraElement, LieAlgebra


@dataclass(frozen=True, eq=False)
class InvariantSystem:
    """The r generators of the invariant ring, indexed 1..r."""

    algebra: LieAlgebra
    degrees: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def ell(self) -> int:
        """Sum of the generator degrees, equal to (n + r) / 2."""
        return sum(self.degrees)


@lru_cache(maxsize=None)
def fundamental_invariants(L: LieAlgebra) -> InvariantSystem:
    if L.type_label == "A":
        degrees = tuple(range(2, L.rank + 2))
    else:
        degrees = tuple(2 * k for k in range(1, L.rank + 1))
    S = InvariantSystem(L, degrees)
    if 2 * S.ell != L.n + L.r:
        raise ConfigurationError("generator degrees do not sum to (n + r) / 2")
    return S


def _check_index(S: InvariantSystem, i: int) -> int:
    if not 1 <= i <= S.r:
        raise ConfigurationError(f"invariant index {i} outside 1..{S.r}")
    return S.degrees[i - 1]


def _powers_exact(X, kmax: int) -> list:
    powers = [X]
    for _ in range(kmax - 1):
        powers.append(mat_mul(powers[-1], X))
    return powers  # powers[k-1] = X^k


def _powers_np(X: np.ndarray, kmax: int) -> list[np.ndarray]:
    powers = [X]
    for _ in range(kmax - 1):
        powers.append(powers[-1] @ X)
    return powers


def eval_all(S: InvariantSystem, x: AlgebraElement) -> list:
    """Values [f_1(x), ..., f_r(x)], sharing one matrix power chain."""
    X = x.realize()
    kmax = S.degrees[-1]
    if x.mode == EXACT:
        powers = _powers_exact(X, kmax)
        return [mat_trace(powers[k - 1]) for k in S.degrees]
    powers = _powers_np(X, kmax)
    return [complex(np.trace(powers[k - 1])) for k in S.degrees]


def eval_invariant(S: InvariantSystem, i: int, x: AlgebraElement):
    """f_i(x), exact in rational mode."""
    k = _check_index(S, i)
    X = x.realize()
    if x.mode == EXACT:
        P = X
        for _ in range(k - 1):
            P = mat_mul(P, X)
        return mat_trace(P)
    return complex(np.trace(np.linalg.matrix_power(X, k)))


def gradient_all(S: InvariantSystem, x: AlgebraElement) -> list:
    """Killing-dual gradient coordinate rows for all generators at x.

    The trace-pairing gradient of tr(X^k) is k X^(k-1); projecting it
    into the realization subspace and dividing by the Killing/trace
    ratio gives the Killing-dual vector.
    """
    L = S.algebra
    real = L.realization
    kmax = S.degrees[-1]
    X = x.realize()
    rows = []
    if x.mode == EXACT:
        inv_ratio = 1 / L.trace_ratio
        powers = _powers_exact(X, kmax)
        for k in S.degrees:
            if k == 1:
                raise ConfigurationError("degree-1 generators are not supported")
            G = [[v * k for v in row] for row in powers[k - 2]]
            coords = real.coords_exact(real.project_exact(G))
            rows.append([QC.of(v) * inv_ratio for v in coords])
        return rows
    inv_ratio = 1.0 / float(L.trace_ratio)
    powers = _powers_np(X, kmax)
    for k in S.degrees:
        G = k * powers[k - 2]
        coords = real.coords_np(real.project_np(G))
        rows.append(coords * inv_ratio)
    return rows


def gradient(S: InvariantSystem, i: int, x: AlgebraElement) -> AlgebraElement:
    """The gradient of f_i at x as an algebra element (Killing-dual)."""
    _check_index(S, i)
    row = gradient_all(S, x)[i - 1]
    return S.algebra.element(row, x.mode)
