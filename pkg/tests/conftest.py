"""Shared helpers: Lie-Poisson bracket and finite-difference probes."""

import numpy as np

from argshift import FLOAT, bracket, killing

SUPPORTED = (("A", 1), ("A", 2), ("A", 3), ("A", 4),
             ("B", 2), ("B", 3), ("C", 2), ("C", 3))


def lie_poisson(L, x, gx, gy):
    """{f,g}(x) = kappa(x, [grad f, grad g]) for Killing-dual gradients."""
    return killing(L, x, bracket(L, gx, gy))


def central_diff_all(L, evaluate, x, h=1e-5):
    """Partial derivatives of a vector-valued map along every coordinate.

    Returns an (n, m) array: row t holds d(evaluate)/dx_t.  Compare with
    K @ G.T where G stacks the Killing-dual gradient coordinate rows.
    """
    n = L.n
    base = np.asarray(x.coords)
    rows = []
    for t in range(n):
        step = np.zeros(n, dtype=complex)
        step[t] = h
        plus = np.array(evaluate(L.element(base + step, FLOAT)))
        minus = np.array(evaluate(L.element(base - step, FLOAT)))
        rows.append((plus - minus) / (2 * h))
    return np.array(rows)
