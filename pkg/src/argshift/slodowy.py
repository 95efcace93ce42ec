"""Principal sl2-triples, Slodowy slices, and slice-orbit intersection.

The triple is assembled from the adapted basis: h is the Cartan element
with value -2 on every simple root, xi the sum of the negative simple
root vectors, eta the positive combination matching -h through the
coroots.  The slice is xi + ker(ad_eta); the kernel is computed grade by
grade under ad_h, which keeps the elimination exact and small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigurationError, RealizationError, SolverError
from .exact import QC, kernel_basis, solve_square
from .invariants import eval_all, fundamental_invariants, gradient_all
from .liealg import (EXACT, FLOAT, AlgebraElement, LieAlgebra, bracket,
                     build_algebra, is_regular)
from .rootdata import ChevalleyBasis, borel_membership

Root = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Sl2Triple:
    """(xi, h, eta) with [h,xi]=2xi, [h,eta]=-2eta, [xi,eta]=h, exact."""

    algebra: LieAlgebra
    xi: AlgebraElement
    h: AlgebraElement
    eta: AlgebraElement
    coefficients: dict[Root, Fraction]


@dataclass(frozen=True, eq=False)
class SlodowySlice:
    """The affine slice base + span(kernel_basis), kernel of ad_eta."""

    base: AlgebraElement
    kernel_basis: tuple[AlgebraElement, ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


def _fraction_coords(x: AlgebraElement) -> list[Fraction]:
    out = []
    for v in x.coords:
        if v.im != 0:
            raise RealizationError("expected real rational coordinates")
        out.append(v.re)
    return out


def principal_sl2(basis: ChevalleyBasis) -> Sl2Triple:
    """The regular sl2-triple attached to the standard Borel pair.

    Solves a(h) = -2 over the Cartan for all simple a, reads the
    coefficients c_a off -h = sum c_a h_a, and verifies every triple
    identity exactly before returning.
    """
    system = basis.system
    L = build_algebra(system.type_label, system.rank)
    core = basis.core
    r, n = system.rank, L.n

    W = [[Fraction(w) for w in row] for row in core.simple_weights]
    h_coords = solve_square(W, [Fraction(-2)] * r)

    # -h = sum c_a h_a over the simple coroots.
    M = [[core.coroot_h[ridx][k] for ridx in core.simple_root_idx]
         for k in range(r)]
    c = solve_square(M, [-v for v in h_coords])

    simple_roots = [system.roots[i] for i in core.simple_root_idx]
    xi_coords = [Fraction(0)] * n
    eta_coords = [Fraction(0)] * n
    for alpha, ca in zip(simple_roots, c):
        neg = tuple(-x for x in alpha)
        for t, v in enumerate(basis.root_vectors[neg]):
            if v:
                xi_coords[t] += v
        for t, v in enumerate(basis.root_vectors[alpha]):
            if v:
                eta_coords[t] += ca * v

    h_el = L.element(list(h_coords) + [0] * (n - r), EXACT)
    xi = L.element(xi_coords, EXACT)
    eta = L.element(eta_coords, EXACT)

    checks = (
        bracket(L, h_el, xi).coords == (2 * xi).coords,
        bracket(L, h_el, eta).coords == ((-2) * eta).coords,
        bracket(L, xi, eta).coords == h_el.coords,
        all(system.evaluate(alpha, h_coords) == -2 for alpha in simple_roots),
    )
    if not all(checks):
        raise RealizationError("principal sl2 identities failed to close")
    if not is_regular(L, xi):
        raise RealizationError("principal nilpotent failed the regularity test")
    return Sl2Triple(L, xi, h_el, eta,
                     {a: ca for a, ca in zip(simple_roots, c)})


def _basis_grades(L: LieAlgebra, T: Sl2Triple) -> list[int]:
    """Integer ad_h eigenvalue of each realization basis element."""
    h = _fraction_coords(T.h)[: L.r]
    grades = [0] * L.r
    for t in range(L.r, L.n):
        w = L.core.weights[t]
        val = sum(Fraction(w[k]) * h[k] for k in range(L.r))
        if val.denominator != 1:
            raise RealizationError("non-integral grading eigenvalue")
        grades.append(int(val))
    return grades


def slodowy_slice(L: LieAlgebra, T: Sl2Triple) -> SlodowySlice:
    """Exact kernel of ad_eta, computed inside each ad_h grade.

    ad_eta raises the grade by -2, so the kernel splits over grades and
    each block is a small exact elimination.  The result must have
    dimension r and sit inside b+, and both facts are verified here.
    """
    n = L.n
    grades = _basis_grades(L, T)
    by_grade: dict[int, list[int]] = {}
    for t, m in enumerate(grades):
        by_grade.setdefault(m, []).append(t)

    eta = _fraction_coords(T.eta)
    table = L._bracket_table
    vectors: list[list[Fraction]] = []
    for m in sorted(by_grade, reverse=True):
        src = by_grade[m]
        dst = by_grade.get(m - 2, [])
        dst_pos = {t: o for o, t in enumerate(dst)}
        cols = []
        for t in src:
            img: dict[int, Fraction] = {}
            for i, ei in enumerate(eta):
                if not ei:
                    continue
                terms = table[i].get(t)
                if terms:
                    for k, cv in terms.items():
                        img[k] = img.get(k, Fraction(0)) + ei * cv
            col = [Fraction(0)] * len(dst)
            for k, v in img.items():
                if not v:
                    continue
                if k not in dst_pos:
                    raise RealizationError("ad_eta broke the grade shift by -2")
                col[dst_pos[k]] = v
            cols.append(col)
        if dst:
            rows = [[cols[p][o] for p in range(len(src))]
                    for o in range(len(dst))]
            null = kernel_basis(rows, len(src))
        else:
            null = [[Fraction(1 if p == q else 0) for p in range(len(src))]
                    for q in range(len(src))]
        for vec in null:
            full = [Fraction(0)] * n
            for p, t in enumerate(src):
                if vec[p]:
                    full[t] = Fraction(vec[p].re) if isinstance(vec[p], QC) \
                        else Fraction(vec[p])
            vectors.append(full)

    if len(vectors) != L.r:
        raise RealizationError(
            f"ker(ad_eta) has dimension {len(vectors)}, expected {L.r}")
    kernel = []
    for full in vectors:
        el = L.element(full, EXACT)
        if any(v for v in bracket(L, T.eta, el).coords):
            raise RealizationError("claimed kernel vector fails [eta, v] = 0")
        if not borel_membership(L.chevalley, el):
            raise RealizationError("kernel vector escapes b+")
        kernel.append(el)
    return SlodowySlice(T.xi, tuple(kernel))


def ad_h_eigen_check(L: LieAlgebra, T: Sl2Triple) -> bool:
    """True iff ad_h is non-positive on b+ and on ker(ad_eta), exactly."""
    grades = _basis_grades(L, T)
    mask = L.realization.upper_mask
    if any(mask[t] and grades[t] > 0 for t in range(L.n)):
        return False
    for vec in slodowy_slice(L, T).kernel_basis:
        for t, v in enumerate(vec.coords):
            if v and grades[t] > 0:
                return False
    return True


def intersect_orbit(L: LieAlgebra, S_slice: SlodowySlice, invariant_values,
                    seed, starts: int = 10, max_iter: int = 100,
                    residual_tol: float = 1e-10,
                    agree_tol: float = 1e-8) -> AlgebraElement:
    """The slice point whose invariants equal the given target values.

    Damped Newton iteration on the r slice coordinates, repeated from
    `starts` independent seeded starts; every start must converge below
    residual_tol and all solutions must coincide within agree_tol, which
    is the uniqueness evidence for the intersection.
    """
    S = fundamental_invariants(L)
    r = L.r
    target = np.array([v.to_complex() if isinstance(v, QC) else complex(v)
                       for v in invariant_values])
    if target.shape != (r,):
        raise ConfigurationError(f"expected {r} invariant values")
    Wm = np.stack([w.to_float().coords for w in S_slice.kernel_basis])
    base = S_slice.base.to_float().coords
    K = L.killing_np
    rng = np.random.default_rng(seed)

    def residual(t):
        el = L.element(base + t @ Wm, FLOAT)
        vals = np.array(eval_all(S, el))
        return vals - target, el

    solutions = []
    for s in range(starts):
        t = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        res, el = residual(t)
        ok = False
        for _ in range(max_iter):
            rn = float(np.max(np.abs(res)))
            if rn <= 1e-12:
                ok = True
                break
            G = np.stack(gradient_all(S, el))
            J = G @ K @ Wm.T
            try:
                step = np.linalg.solve(J, -res)
            except np.linalg.LinAlgError:
                break
            lam, improved = 1.0, False
            for _ in range(30):
                res2, el2 = residual(t + lam * step)
                if np.max(np.abs(res2)) < rn:
                    improved = True
                    break
                lam /= 2
            if not improved:
                ok = rn <= residual_tol
                break
            t = t + lam * step
            res, el = res2, el2
        else:
            ok = float(np.max(np.abs(res))) <= residual_tol
        if not ok or float(np.max(np.abs(res))) > residual_tol:
            raise SolverError(
                f"slice Newton start {s} stalled at residual "
                f"{float(np.max(np.abs(res))):.3e}")
        solutions.append(base + t @ Wm)

    ref = solutions[0]
    worst = max(float(np.max(np.abs(sol - ref))) for sol in solutions)
    if worst > agree_tol:
        raise SolverError(
            f"slice Newton starts disagree by {worst:.3e}; "
            "unique intersection evidence failed")
    return L.element(ref, FLOAT)
