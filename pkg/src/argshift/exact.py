"""Exact scalar and matrix arithmetic.

Exact mode works over the Gaussian rationals Q(i): complex numbers whose
real and imaginary parts are :class:`fractions.Fraction`.  Floating point
never enters this module; every identity checked here is checked on the
nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

Rational = Union[int, Fraction]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


@dataclass(frozen=True, eq=False)
class QC:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(v: "QCLike") -> "QC":
        if isinstance(v, QC):
            return v
        return QC(_as_fraction(v), Fraction(0))

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QC(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QC((self.re * o.re + self.im * o.im) / d,
                  (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exactly."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QC({self.re})"
        return f"QC({self.re}, {self.im})"


QCLike = Union[int, Fraction, QC]
ZERO = QC(Fraction(0), Fraction(0))
ONE = QC(Fraction(1), Fraction(0))


def _coerce(v):
    if isinstance(v, QC):
        return v
    if isinstance(v, (int, Fraction)):
        return QC(_as_fraction(v), Fraction(0))
    return None


def qc(re, im=0) -> QC:
    """Shorthand constructor accepting ints and Fractions."""
    return QC(Fraction(re), Fraction(im))


# --------------------------------------------------------------------------
# Matrix helpers.  All functions below are generic over the entry type:
# anything supporting field arithmetic and truthiness-as-nonzero works, in
# practice Fraction and QC.

def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = ai[0] * b[0][j]
            for t in range(1, k):
                if ai[t]:
                    s = s + ai[t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_commutator(a, b):
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(ab, ba)]


def mat_trace(a):
    s = a[0][0]
    for i in range(1, len(a)):
        s = s + a[i][i]
    return s


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns (reduced matrix, pivot column indices).  The input is not
    modified.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if m[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[pr], m[pivot_row] = m[pivot_row], m[pr]
        pv = m[pr][pc]
        m[pr] = [x / pv for x in m[pr]]
        for i in range(nrows):
            if i != pr and m[i][pc]:
                f = m[i][pc]
                m[i] = [x - f * y for x, y in zip(m[i], m[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return m, pivots


def rank_rref(rows) -> int:
    return len(rref(rows)[1])


def _entry_denominator(v) -> int:
    if isinstance(v, QC):
        return lcm(v.re.denominator, v.im.denominator)
    return _as_fraction(v).denominator


def rank_bareiss(rows) -> int:
    """Matrix rank by fraction-free (Bareiss) elimination.

    Rows are first scaled to integer (or Gaussian-integer) entries; the
    Bareiss two-step update then keeps all intermediate entries integral,
    so no rational arithmetic growth occurs during elimination.
    """
    m = []
    for r in rows:
        d = 1
        for v in r:
            d = lcm(d, _entry_denominator(v))
        m.append([v * d for v in r])
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if m[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[pr], m[pivot_row] = m[pivot_row], m[pr]
        pv = m[pr][pc]
        for i in range(pr + 1, nrows):
            ri, rp = m[i], m[pr]
            fi = ri[pc]
            for j in range(ncols):
                ri[j] = (ri[j] * pv - fi * rp[j]) / prev
        prev = pv
        pr += 1
        if pr == nrows:
            break
    return pr


def kernel_basis(rows, ncols: int | None = None) -> list[list]:
    """Exact basis of the right null space of a matrix.

    The basis is read off the reduced row echelon form: one vector per
    free column, with a 1 in the free slot.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        one = ONE
        return [[one if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    zero = red[0][0] - red[0][0]
    one = zero + 1
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -red[row_idx][fc]
        basis.append(vec)
    return basis


def solve_square(a, b):
    """Solve a nonsingular square system exactly; raises on singular input."""
    n = len(a)
    aug = [list(ra) + [bv] for ra, bv in zip(a, b)]
    red, pivots = rref(aug)
    if len(pivots) != n or pivots != list(range(n)):
        raise ArithmeticError("singular exact linear system")
    return [red[i][n] for i in range(n)]


def solve_multi(a, rhs_columns):
    """Solve A X = B exactly for square nonsingular A; B given by columns."""
    n = len(a)
    k = len(rhs_columns)
    aug = [list(a[i]) + [col[i] for col in rhs_columns] for i in range(n)]
    red, pivots = rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ArithmeticError("singular exact linear system")
    return [[red[i][n + j] for i in range(n)] for j in range(k)]
