"""Argument-shift families.

Expanding f_i(x + lambda a) in powers of lambda yields coefficients
f_ij(x), j = 0..d_i-1, plus the constant leading term f_i(a) lambda^d_i.
The coefficients are recovered by evaluating at the integer nodes
lambda = 0..d_i-1 and solving the Vandermonde system, which is exact in
rational mode.  Gradients come out of the same solve applied to the
gradient vectors at the shifted points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, NonRegularError
from .exact import QC, rank_bareiss, solve_multi
from .invariants import InvariantSystem, eval_all, gradient_all
from .liealg import (DEFAULT_TOLERANCE, EXACT, FLOAT, AlgebraElement, _join,
                     float_rank, is_regular)


@dataclass(frozen=True, eq=False)
class MFFamily:
    """The ell shifted generators f_ij attached to one regular shift a."""

    invariant_system: InvariantSystem
    shift: AlgebraElement

    @property
    def mode(self) -> str:
        return self.shift.mode

    @property
    def ell(self) -> int:
        return self.invariant_system.ell

    @cached_property
    def index_set(self) -> tuple[tuple[int, int], ...]:
        S = self.invariant_system
        return tuple((i, j) for i in range(1, S.r + 1)
                     for j in range(S.degrees[i - 1]))

    @cached_property
    def shift_values(self) -> list:
        """The constants f_i(a) carried by the leading lambda power."""
        return eval_all(self.invariant_system, self.shift)

    @cached_property
    def _vinv_exact(self) -> dict[int, list[list[Fraction]]]:
        out = {}
        for d in sorted(set(self.invariant_system.degrees)):
            V = [[Fraction(m ** j) for j in range(d)] for m in range(d)]
            eye = [[Fraction(1 if i == j else 0) for i in range(d)]
                   for j in range(d)]
            cols = solve_multi(V, eye)
            out[d] = [[cols[m][j] for m in range(d)] for j in range(d)]
        return out

    @cached_property
    def _vinv_np(self) -> dict[int, np.ndarray]:
        out = {}
        for d in sorted(set(self.invariant_system.degrees)):
            V = np.array([[float(m ** j) for j in range(d)] for m in range(d)])
            out[d] = np.linalg.inv(V)
        return out


def mf_family(S: InvariantSystem, a: AlgebraElement,
              tolerance: float = DEFAULT_TOLERANCE) -> MFFamily:
    """Family handle for a regular shift element a."""
    if a.algebra is not S.algebra:
        raise ConfigurationError("shift element belongs to a different algebra")
    if not is_regular(S.algebra, a, tolerance):
        raise NonRegularError("the shift element must be regular")
    F = MFFamily(S, a)
    if 2 * (F.ell - S.r) != S.algebra.n - S.r:
        raise ConfigurationError("generator count violates ell - r = (n - r)/2")
    return F


def _check_member(F: MFFamily, i: int, j: int) -> int:
    S = F.invariant_system
    if not 1 <= i <= S.r or not 0 <= j < S.degrees[i - 1]:
        raise ConfigurationError(f"generator index ({i},{j}) outside the family")
    return S.degrees[i - 1]


def _node_points(F: MFFamily, x: AlgebraElement, count: int) -> list[AlgebraElement]:
    return [x if m == 0 else x + m * F.shift for m in range(count)]


def eval_all_mf(F: MFFamily, x: AlgebraElement) -> list:
    """Values of every generator at x, ordered like index_set."""
    S = F.invariant_system
    _join(x, F.shift)
    maxd = S.degrees[-1]
    node_vals = [eval_all(S, p) for p in _node_points(F, x, maxd)]
    fa = F.shift_values
    out = []
    if F.mode == EXACT:
        for i in range(1, S.r + 1):
            d = S.degrees[i - 1]
            vinv = F._vinv_exact[d]
            q = [node_vals[m][i - 1] - QC.of(m ** d) * fa[i - 1]
                 for m in range(d)]
            for j in range(d):
                acc = QC.of(0)
                for m in range(d):
                    if vinv[j][m]:
                        acc = acc + q[m] * vinv[j][m]
                out.append(acc)
        return out
    for i in range(1, S.r + 1):
        d = S.degrees[i - 1]
        q = np.array([node_vals[m][i - 1] - (m ** d) * fa[i - 1]
                      for m in range(d)])
        out.extend(F._vinv_np[d] @ q)
    return out


def eval_mf(F: MFFamily, i: int, j: int, x: AlgebraElement):
    """f_ij(x), exact in rational mode."""
    d = _check_member(F, i, j)
    S = F.invariant_system
    _join(x, F.shift)
    vals = [eval_all(S, p)[i - 1] for p in _node_points(F, x, d)]
    fa = F.shift_values[i - 1]
    if F.mode == EXACT:
        vinv = F._vinv_exact[d]
        acc = QC.of(0)
        for m in range(d):
            if vinv[j][m]:
                acc = acc + (vals[m] - QC.of(m ** d) * fa) * vinv[j][m]
        return acc
    q = np.array([vals[m] - (m ** d) * fa for m in range(d)])
    return complex(F._vinv_np[d][j] @ q)


def gradient_rows(F: MFFamily, x: AlgebraElement):
    """Gradient coordinate rows of all ell generators at x, index_set order.

    The constant leading term has zero gradient, so the same d_i-node
    Vandermonde solve that extracts values extracts gradients, applied
    per coordinate.
    """
    S = F.invariant_system
    _join(x, F.shift)
    maxd = S.degrees[-1]
    node_grads = [gradient_all(S, p) for p in _node_points(F, x, maxd)]
    n = S.algebra.n
    if F.mode == EXACT:
        rows = []
        for i in range(1, S.r + 1):
            d = S.degrees[i - 1]
            vinv = F._vinv_exact[d]
            for j in range(d):
                acc = [QC.of(0)] * n
                for m in range(d):
                    w = vinv[j][m]
                    if not w:
                        continue
                    g = node_grads[m][i - 1]
                    for t in range(n):
                        if g[t]:
                            acc[t] = acc[t] + g[t] * w
                rows.append(acc)
        return rows
    rows = np.empty((F.ell, n), dtype=np.complex128)
    pos = 0
    for i in range(1, S.r + 1):
        d = S.degrees[i - 1]
        G = np.stack([node_grads[m][i - 1] for m in range(d)])
        rows[pos:pos + d] = F._vinv_np[d] @ G
        pos += d
    return rows


def mf_gradient(F: MFFamily, i: int, j: int, x: AlgebraElement) -> AlgebraElement:
    """Killing-dual gradient of f_ij at x."""
    _check_member(F, i, j)
    rows = gradient_rows(F, x)
    pos = F.index_set.index((i, j))
    return F.invariant_system.algebra.element(rows[pos], x.mode)


def ambient_rank(F: MFFamily, x: AlgebraElement,
                 tolerance: float = DEFAULT_TOLERANCE) -> int:
    """Rank of the ell x n matrix of generator gradients at x."""
    rows = gradient_rows(F, x)
    if F.mode == EXACT:
        return rank_bareiss(rows)
    return float_rank(rows, tolerance, floor=True)
