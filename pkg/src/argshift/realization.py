"""Integer matrix realizations of the classical algebras.

Types A, B, C are realized in gl_N with the symmetric (B) or symplectic
(C) form placed along the anti-diagonal.  With that choice the diagonal
matrices in the algebra form a Cartan subalgebra and the intersection
with upper triangular matrices is spanned by basis elements, so Borel
membership is a coordinate condition.

Every basis element has at most two nonzero integer entries, and each
one is indexed by a representative matrix position: reading the entry at
that position recovers the coordinate of a general algebra element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, RealizationError
from .exact import ZERO

Entry = tuple[int, int, int]
Pos = tuple[int, int]

SUPPORTED_TYPES = ("A", "B", "C")
MAX_RANK = 6

_HALF = Fraction(1, 2)


def algebra_dim(type_label: str, rank: int) -> int:
    if type_label == "A":
        return rank * rank + 2 * rank
    return 2 * rank * rank + rank


@dataclass(frozen=True, eq=False)
class Realization:
    """Fixed integer basis of one classical algebra inside gl_N.

    Basis order: the r Cartan elements first, then the root-vector
    elements sorted by representative position.
    """

    type_label: str
    rank: int
    N: int
    entries: tuple[tuple[Entry, ...], ...]
    rep_pos: tuple[Pos, ...]
    signs: tuple[int, ...] | None

    @property
    def n(self) -> int:
        return len(self.entries)

    def sigma(self, i: int) -> int:
        return self.N - 1 - i

    @cached_property
    def basis_np(self) -> np.ndarray:
        out = np.zeros((self.n, self.N, self.N), dtype=np.complex128)
        for t, ent in enumerate(self.entries):
            for i, j, c in ent:
                out[t, i, j] = c
        out.flags.writeable = False
        return out

    @cached_property
    def cartan_diag(self) -> tuple[tuple[int, ...], ...]:
        """Diagonal of each Cartan basis element."""
        rows = []
        for k in range(self.rank):
            d = [0] * self.N
            for i, _j, c in self.entries[k]:
                d[i] = c
            rows.append(tuple(d))
        return tuple(rows)

    @cached_property
    def upper_mask(self) -> tuple[bool, ...]:
        """True for basis elements inside b+ (Cartan included)."""
        return tuple(i <= j for i, j in self.rep_pos)

    @cached_property
    def pos_index(self) -> dict[Pos, int]:
        return {p: t for t, p in enumerate(self.rep_pos)}

    @cached_property
    def form_matrix(self) -> np.ndarray | None:
        """The bilinear form K the algebra preserves; None for type A."""
        if self.type_label == "A":
            return None
        K = np.zeros((self.N, self.N), dtype=np.int64)
        for i in range(self.N):
            K[i, self.sigma(i)] = 1 if self.signs is None else self.signs[i]
        K.flags.writeable = False
        return K

    # -- coordinates -> matrices ------------------------------------------

    def realize_exact(self, coords) -> list[list]:
        mat = [[ZERO] * self.N for _ in range(self.N)]
        for t, v in enumerate(coords):
            if not v:
                continue
            for i, j, c in self.entries[t]:
                mat[i][j] = mat[i][j] + v * c
        return mat

    def realize_np(self, coords: np.ndarray) -> np.ndarray:
        return np.einsum("t,tij->ij", np.asarray(coords, dtype=np.complex128),
                         self.basis_np)

    # -- matrices -> coordinates ------------------------------------------

    def _read_coords(self, get) -> list:
        coords = []
        if self.type_label == "A":
            # Cartan coefficients are partial sums of the diagonal.
            acc = None
            for k in range(self.rank):
                d = get(k, k)
                acc = d if acc is None else acc + d
                coords.append(acc)
        else:
            for k in range(self.rank):
                coords.append(get(k, k))
        for t in range(self.rank, self.n):
            i, j = self.rep_pos[t]
            coords.append(get(i, j))
        return coords

    def _expand_sparse(self, coords) -> dict[Pos, object]:
        out: dict[Pos, object] = {}
        for t, v in enumerate(coords):
            if not v:
                continue
            for i, j, c in self.entries[t]:
                cur = out.get((i, j))
                out[(i, j)] = v * c if cur is None else cur + v * c
        return out

    def coords_exact(self, mat) -> list:
        """Exact basis coordinates of a dense matrix; verified by re-expansion."""
        coords = self._read_coords(lambda i, j: mat[i][j])
        recon = self._expand_sparse(coords)
        for i in range(self.N):
            for j in range(self.N):
                got = recon.get((i, j), 0)
                if got != mat[i][j]:
                    raise RealizationError(
                        f"matrix entry ({i},{j}) inconsistent with the "
                        f"{self.type_label}{self.rank} realization")
        return coords

    def coords_sparse(self, ent: dict[Pos, object]) -> list:
        """Exact coordinates of a sparse matrix given as {(i,j): value}."""
        coords = self._read_coords(lambda i, j: ent.get((i, j), 0))
        recon = self._expand_sparse(coords)
        for pos in recon.keys() | ent.keys():
            if recon.get(pos, 0) != ent.get(pos, 0):
                raise RealizationError(
                    f"sparse entry {pos} inconsistent with the "
                    f"{self.type_label}{self.rank} realization")
        return coords

    def coords_np(self, arr: np.ndarray, atol: float | None = None) -> np.ndarray:
        """Float coordinates of a matrix that should lie in the algebra.

        The matrix is re-expanded from the read coordinates and compared
        entrywise; disagreement beyond the tolerance means the input fell
        off the realization subspace.
        """
        vals = self._read_coords(lambda i, j: complex(arr[i, j]))
        coords = np.array(vals, dtype=np.complex128)
        recon = self.realize_np(coords)
        if atol is None:
            atol = 1e-8 * max(1.0, float(np.max(np.abs(arr))))
        err = float(np.max(np.abs(recon - arr)))
        if err > atol:
            raise RealizationError(
                f"matrix is {err:.3e} away from the "
                f"{self.type_label}{self.rank} realization subspace")
        return coords

    # -- projection onto the realization subspace -------------------------

    def project_exact(self, mat) -> list[list]:
        """Trace-orthogonal projection of a gl_N matrix into the algebra."""
        N = self.N
        if self.type_label == "A":
            tr = mat[0][0]
            for i in range(1, N):
                tr = tr + mat[i][i]
            sh = tr * Fraction(1, N)
            return [[mat[i][j] - sh if i == j else mat[i][j]
                     for j in range(N)] for i in range(N)]
        s = self.signs
        out = []
        for a in range(N):
            row = []
            for b in range(N):
                t = mat[self.sigma(b)][self.sigma(a)]
                if s is not None:
                    t = t * (s[a] * s[b])
                row.append((mat[a][b] - t) * _HALF)
            out.append(row)
        return out

    def project_np(self, arr: np.ndarray) -> np.ndarray:
        if self.type_label == "A":
            return arr - (np.trace(arr) / self.N) * np.eye(self.N)
        rev = arr[::-1, ::-1].T
        if self.signs is not None:
            s = np.array(self.signs)
            rev = rev * np.outer(s, s)
        return (arr - rev) / 2


def build_realization(type_label: str, rank: int) -> Realization:
    if type_label not in SUPPORTED_TYPES:
        raise ConfigurationError(
            f"unsupported type {type_label!r}; expected one of A, B, C")
    if not isinstance(rank, int) or not 1 <= rank <= MAX_RANK:
        raise ConfigurationError(f"rank {rank!r} out of range 1..{MAX_RANK}")

    entries: list[tuple[Entry, ...]] = []
    rep: list[Pos] = []
    signs: tuple[int, ...] | None = None

    if type_label == "A":
        N = rank + 1
        for k in range(rank):
            entries.append(((k, k, 1), (k + 1, k + 1, -1)))
            rep.append((k, k))
        for i, j in sorted((i, j) for i in range(N) for j in range(N) if i != j):
            entries.append(((i, j, 1),))
            rep.append((i, j))
    else:
        N = 2 * rank + 1 if type_label == "B" else 2 * rank
        sig = N - 1
        if type_label == "C":
            signs = tuple(1 if i < rank else -1 for i in range(N))
        for k in range(rank):
            entries.append(((k, k, 1), (sig - k, sig - k, -1)))
            rep.append((k, k))
        positions = [(i, j) for i in range(N) for j in range(N)
                     if i != j and i + j < sig]
        if type_label == "C":
            positions += [(i, sig - i) for i in range(N)]
        for i, j in sorted(positions):
            if i + j == sig:
                entries.append(((i, j, 1),))
            else:
                flip = -1 if signs is None else -signs[i] * signs[j]
                entries.append(((i, j, 1), (sig - j, sig - i, flip)))
            rep.append((i, j))

    real = Realization(type_label, rank, N, tuple(entries), tuple(rep), signs)
    if real.n != algebra_dim(type_label, rank):
        raise RealizationError(
            f"basis count {real.n} != dim {algebra_dim(type_label, rank)}")
    return real
