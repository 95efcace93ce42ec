"""Root systems and adapted bases for the classical types A, B, C.

Everything is extracted from the integer matrix realization: weights are
read off the adjoint action of the diagonal Cartan, positive roots are
the ones whose root vector sits above the diagonal, and simple roots are
the positives that are not sums of two positives.  All arithmetic in
this module is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import RealizationError
from .exact import solve_square
from .realization import Realization, build_realization

Root = tuple[int, ...]
Vec = tuple[Fraction, ...]


def _sparse_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, k), va in a.items():
        for (k2, j), vb in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + va * vb
    return out


def sparse_commutator(a: dict, b: dict) -> dict:
    out = _sparse_mul(a, b)
    for pos, v in _sparse_mul(b, a).items():
        out[pos] = out.get(pos, 0) - v
    return {pos: v for pos, v in out.items() if v}


@dataclass(frozen=True, eq=False)
class _Core:
    """Shared exact data behind RootSystem and ChevalleyBasis."""

    real: Realization
    weights: tuple[tuple[int, ...], ...]        # basis index -> Cartan-dual weight (zero rows for Cartan)
    roots: tuple[Root, ...]                     # simple-root coordinates, positives then negatives
    root_basis: tuple[int, ...]                 # basis index of each root vector
    simple_root_idx: tuple[int, ...]            # indices into roots, in chain order
    simple_weights: tuple[tuple[int, ...], ...]  # weight rows of the simple roots, chain order
    cartan_matrix: tuple[tuple[int, ...], ...]
    minus_scale: tuple[Fraction, ...]           # per positive root: factor on the negative basis vector
    coroot_h: tuple[Vec, ...]                   # per positive root: h_alpha over the Cartan basis
    struct: dict[tuple[int, int], tuple[tuple[int, int], ...]]  # (i<j) -> ((k, c), ...)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2


@lru_cache(maxsize=None)
def _core(type_label: str, rank: int) -> _Core:
    real = build_realization(type_label, rank)
    r, n = rank, real.n
    D = real.cartan_diag

    weights = [(0,) * r] * r
    wt_to_basis: dict[tuple[int, ...], int] = {}
    for t in range(r, n):
        i, j = real.rep_pos[t]
        w = tuple(D[k][i] - D[k][j] for k in range(r))
        weights.append(w)
        if w == (0,) * r or w in wt_to_basis:
            raise RealizationError("root spaces are not one-dimensional")
        wt_to_basis[w] = t

    pos_t = [t for t in range(r, n) if real.rep_pos[t][0] < real.rep_pos[t][1]]
    if 2 * len(pos_t) != n - r:
        raise RealizationError("positive/negative root vectors unbalanced")
    neg_of = {}
    for t in pos_t:
        mw = tuple(-x for x in weights[t])
        tm = wt_to_basis.get(mw)
        if tm is None:
            raise RealizationError("missing opposite root vector")
        neg_of[t] = tm

    pos_w = {weights[t] for t in pos_t}
    sums = {tuple(a + b for a, b in zip(w1, w2)) for w1 in pos_w for w2 in pos_w}
    simple_t = sorted((t for t in pos_t if weights[t] not in sums),
                      key=lambda t: real.rep_pos[t])
    if len(simple_t) != r:
        raise RealizationError("simple root count != rank")

    # Coordinates of a weight over the simple weights, exact and integral.
    srows = [[Fraction(x) for x in weights[t]] for t in simple_t]
    st = [[srows[i][k] for i in range(r)] for k in range(r)]

    def simple_coords(w: tuple[int, ...]) -> Root:
        v = solve_square(st, [Fraction(x) for x in w])
        if any(f.denominator != 1 for f in v):
            raise RealizationError("non-integral root coordinates")
        return tuple(int(f) for f in v)

    pos_entries = []
    for t in pos_t:
        sc = simple_coords(weights[t])
        if any(c < 0 for c in sc):
            raise RealizationError("positive root with a negative coefficient")
        pos_entries.append((sum(sc), sc, t))
    pos_entries.sort()

    roots = [sc for _, sc, _ in pos_entries]
    roots += [tuple(-c for c in sc) for _, sc, _ in pos_entries]
    root_basis = [t for _, _, t in pos_entries] + [neg_of[t] for _, _, t in pos_entries]

    simple_root_idx = []
    for k in range(r):
        unit = tuple(1 if m == k else 0 for m in range(r))
        simple_root_idx.append(roots.index(unit))

    # Structure constants over the realization basis.
    ent = [dict(((i, j), c) for i, j, c in real.entries[t]) for t in range(n)]
    struct: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = sparse_commutator(ent[i], ent[j])
            if not comm:
                continue
            coords = real.coords_sparse(comm)
            nz = tuple((k, v) for k, v in enumerate(coords) if v)
            if nz:
                struct[(i, j)] = nz

    # Normalization: scale each negative root vector so the pair brackets
    # to a coroot h_alpha with alpha(h_alpha) = 2.
    minus_scale = []
    coroot_h = []
    for _, _sc, t in pos_entries:
        comm = sparse_commutator(ent[t], ent[neg_of[t]])
        hco = real.coords_sparse(comm)
        if any(hco[r:]):
            raise RealizationError("opposite root vectors bracket off the Cartan")
        val = sum(hco[k] * weights[t][k] for k in range(r))
        if val == 0:
            raise RealizationError("isotropic coroot pairing")
        s = Fraction(2, val)
        minus_scale.append(s)
        coroot_h.append(tuple(Fraction(hco[k]) * s for k in range(r)))

    cart = []
    for i in range(r):
        row = []
        for j in range(r):
            ridx = roots.index(tuple(1 if m == j else 0 for m in range(r)))
            h = coroot_h[ridx]
            v = sum(h[k] * weights[simple_t[i]][k] for k in range(r))
            if v.denominator != 1:
                raise RealizationError("non-integral Cartan pairing")
            row.append(int(v))
        cart.append(tuple(row))
    for i in range(r):
        if cart[i][i] != 2 or any(cart[i][j] > 0 for j in range(r) if j != i):
            raise RealizationError("Cartan matrix shape violated")

    return _Core(
        real=real,
        weights=tuple(weights),
        roots=tuple(roots),
        root_basis=tuple(root_basis),
        simple_root_idx=tuple(simple_root_idx),
        simple_weights=tuple(tuple(weights[t]) for t in simple_t),
        cartan_matrix=tuple(cart),
        minus_scale=tuple(minus_scale),
        coroot_h=tuple(coroot_h),
        struct=struct,
    )


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots of one classical algebra, in simple-root coordinates."""

    type_label: str
    rank: int
    roots: tuple[Root, ...]
    positive_roots: tuple[int, ...]
    negative_roots: tuple[int, ...]
    simple_roots: tuple[int, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]

    @property
    def core(self) -> _Core:
        return _core(self.type_label, self.rank)

    @property
    def dimension(self) -> int:
        return self.rank + len(self.roots)

    def evaluate(self, root, h_coords):
        """Value of a root functional on Σ h_k H_k, H_k the Cartan basis.

        `root` is an index into `roots` or a coordinate tuple over the
        simple roots; scalars follow the type of `h_coords`.
        """
        if isinstance(root, int):
            root = self.roots[root]
        sw = self.core.simple_weights
        acc = None
        for c, row in zip(root, sw):
            if not c:
                continue
            for k, wk in enumerate(row):
                if not wk:
                    continue
                term = h_coords[k] * (c * wk)
                acc = term if acc is None else acc + term
        return 0 if acc is None else acc


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Root system of the given classical type; rank between 1 and 6."""
    core = _core(type_label, rank)
    p = core.n_positive
    system = RootSystem(
        type_label=type_label,
        rank=rank,
        roots=core.roots,
        positive_roots=tuple(range(p)),
        negative_roots=tuple(range(p, 2 * p)),
        simple_roots=core.simple_root_idx,
        cartan_matrix=core.cartan_matrix,
    )
    if system.dimension != core.real.n:
        raise RealizationError("dimension bookkeeping failed")
    return system


@dataclass(frozen=True, eq=False)
class ChevalleyBasis:
    """Cartan, root vectors, coroots, and Borel bases as coordinate data.

    Vectors are coordinate tuples over the realization basis with exact
    rational entries.  Root vectors satisfy [e_a, e_-a] = h_a with
    a(h_a) = 2; the scaling sits entirely on the negative side, so the
    positive root vectors and the Cartan stay integral.
    """

    system: RootSystem
    cartan_basis: tuple[Vec, ...]
    root_vectors: dict[Root, Vec]
    coroots: dict[Root, Vec]
    borel_plus: tuple[Vec, ...]
    borel_minus: tuple[Vec, ...]

    @property
    def core(self) -> _Core:
        return self.system.core

    def root_vector_index(self, root) -> int:
        """Realization-basis index carrying the given root's vector."""
        if isinstance(root, int):
            ridx = root
        else:
            ridx = self.system.roots.index(tuple(root))
        return self.core.root_basis[ridx]


def _unit(n: int, k: int, value=Fraction(1)) -> Vec:
    v = [Fraction(0)] * n
    v[k] = Fraction(value)
    return tuple(v)


def chevalley_basis(system: RootSystem) -> ChevalleyBasis:
    core = system.core
    n, r = core.real.n, system.rank
    p = core.n_positive

    cartan = tuple(_unit(n, k) for k in range(r))
    root_vectors: dict[Root, Vec] = {}
    for ridx in range(p):
        root_vectors[core.roots[ridx]] = _unit(n, core.root_basis[ridx])
        root_vectors[core.roots[p + ridx]] = _unit(
            n, core.root_basis[p + ridx], core.minus_scale[ridx])

    coroots: dict[Root, Vec] = {}
    for ridx in core.simple_root_idx:
        h = core.coroot_h[ridx]
        coroots[core.roots[ridx]] = tuple(h) + (Fraction(0),) * (n - r)

    borel_plus = cartan + tuple(root_vectors[core.roots[i]] for i in range(p))
    borel_minus = cartan + tuple(root_vectors[core.roots[p + i]] for i in range(p))
    return ChevalleyBasis(
        system=system,
        cartan_basis=cartan,
        root_vectors=root_vectors,
        coroots=coroots,
        borel_plus=borel_plus,
        borel_minus=borel_minus,
    )


def borel_membership(basis: ChevalleyBasis, x, tolerance=0.0) -> bool:
    """True iff x has no component outside b+ (Cartan plus positive roots).

    Exact scalars are tested for literal zero; floating coordinates are
    compared against the tolerance.
    """
    coords = getattr(x, "coords", x)
    mask = basis.core.real.upper_mask
    for t, inside in enumerate(mask):
        if inside:
            continue
        v = coords[t]
        if isinstance(v, (float, complex)) or hasattr(v, "dtype"):
            if abs(v) > tolerance:
                return False
        elif v:
            return False
    return True


def export_structure_constants(system: RootSystem) -> dict:
    """Structure constants as a JSON-ready dict.

    Only pairs i < j are listed; the rest follow by antisymmetry.  The
    realization keeps every constant integral, so denominators are 1.
    """
    core = system.core
    constants = []
    for (i, j), terms in sorted(core.struct.items()):
        for k, c in terms:
            f = Fraction(c)
            constants.append([i, j, k, f.numerator, f.denominator])
    return {
        "n": core.real.n,
        "r": system.rank,
        "type": system.type_label,
        "constants": constants,
    }
