"""Exact rational matrices and the small linear-algebra kernel everything
else is built on.

All arithmetic is over Fraction; there is deliberately no float path.
Determinants come from fraction-free Bareiss elimination, positive
definiteness from an exact LDL^T factorization, lattice bases from a
column-style Hermite normal form, and certified eigenvalue bounds from
Sturm sign counts on the characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction


class LinalgError(ValueError):
    pass


class DimensionError(LinalgError):
    """Operand dimensions do not fit the operation."""


class ShapeError(LinalgError):
    """Structural requirement (symmetry, integrality) violated."""


class RankError(LinalgError):
    """Input is rank-deficient where full rank is required."""


class NotPositiveDefiniteError(LinalgError):
    """A pivot of the exact LDL^T factorization failed to be positive."""


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"matrix entries must be exact (int, Fraction, or 'a/b' string), got {type(x).__name__}")


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix with exact rational entries, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError("entry count does not match rows*cols")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Mat":
        rr = [[_rat(x) for x in row] for row in rows]
        n = len(rr)
        m = len(rr[0]) if rr else 0
        if any(len(r) != m for r in rr):
            raise DimensionError("ragged rows")
        return Mat(n, m, tuple(x for row in rr for x in row))

    @staticmethod
    def from_columns(cols: Iterable[Iterable]) -> "Mat":
        cc = [[_rat(x) for x in col] for col in cols]
        return Mat.from_rows(list(map(list, zip(*cc)))) if cc else Mat(0, 0, ())

    @staticmethod
    def identity(n: int) -> "Mat":
        one, zero = Fraction(1), Fraction(0)
        return Mat(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, (Fraction(0),) * (rows * cols))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j :: self.cols]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column_lists(self) -> list[list[Fraction]]:
        return [list(self.column(j)) for j in range(self.cols)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.at(i, j) == self.at(j, i) for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ShapeError("integer entries required")
        return [[int(x) for x in self.row(i)] for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self, other
        bt = b.transpose()
        out = []
        for i in range(a.rows):
            ra = a.row(i)
            for j in range(b.cols):
                cb = bt.row(j)
                out.append(sum((x * y for x, y in zip(ra, cb)), Fraction(0)))
        return Mat(a.rows, b.cols, tuple(out))

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return Mat(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-x for x in self.entries))

    def scaled(self, s) -> "Mat":
        s = _rat(s)
        return Mat(self.rows, self.cols, tuple(s * x for x in self.entries))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        vv = [_rat(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), vv)), Fraction(0)) for i in range(self.rows))

    def inverse(self) -> "Mat":
        if not self.is_square:
            raise DimensionError("inverse of non-square matrix")
        n = self.rows
        a = [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise RankError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Mat.from_rows([row[n:] for row in a])

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(min(self.rows, 4)))
        tail = " ..." if self.rows > 4 else ""
        return f"Mat({self.rows}x{self.cols}: {body}{tail})"


@dataclass(frozen=True)
class LdlFactor:
    """Exact factorization q = lower * diag * lower^T with unit lower diagonal."""

    lower: Mat
    diag: tuple[Fraction, ...]


def _denominator_scale(m: Mat) -> int:
    s = 1
    for x in m.entries:
        s = s * x.denominator // gcd(s, x.denominator)
    return s


def _bareiss_det_int(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                # two-step fraction-free update; division is exact
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def det(m: Mat) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    if not m.is_square:
        raise DimensionError("determinant of non-square matrix")
    if m.rows == 0:
        return Fraction(1)
    s = _denominator_scale(m)
    a = [[int(x * s) for x in m.row(i)] for i in range(m.rows)]
    d = _bareiss_det_int(a)
    return Fraction(d, s**m.rows)


def fraction_free_upper(q: Mat) -> tuple[list[list[int]], list[int]]:
    """Bareiss upper-triangular data for a symmetric positive-definite
    integer matrix.

    Returns (u, minors) where minors[i] is the i-th leading principal minor
    (minors[0] = 1) and u[i][j] for j >= i carries the fraction-free row
    entries, so the LDL^T factors are d_i = minors[i+1]/minors[i] and
    L[j][i] = u[i][j]/minors[i+1].  Raises NotPositiveDefiniteError as soon
    as a leading minor fails to be positive, which doubles as the exact
    positive-definiteness test for integer forms.
    """
    if not q.is_symmetric():
        raise ShapeError("symmetric matrix required")
    if not q.is_integral():
        raise ShapeError("integer entries required")
    a = [[int(x) for x in q.row(i)] for i in range(q.rows)]
    n = q.rows
    minors = [1]
    for k in range(n):
        prev = minors[-1]
        # the pivot after k elimination steps equals the (k+1)-st leading minor
        pk = a[k][k]
        if pk <= 0:
            raise NotPositiveDefiniteError(f"leading minor {k + 1} is not positive")
        minors.append(pk)
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
    return a, minors


def ldl(q: Mat) -> LdlFactor:
    """Exact LDL^T factorization of a symmetric positive-definite matrix."""
    if not q.is_square:
        raise DimensionError("ldl of non-square matrix")
    if not q.is_symmetric():
        raise ShapeError("ldl requires a symmetric matrix")
    n = q.rows
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    dd: list[Fraction] = []
    for j in range(n):
        dj = q.at(j, j) - sum((lower[j][k] * lower[j][k] * dd[k] for k in range(j)), Fraction(0))
        if dj <= 0:
            raise NotPositiveDefiniteError(f"pivot {j + 1} is {dj}, not positive")
        dd.append(dj)
        for i in range(j + 1, n):
            num = q.at(i, j) - sum((lower[i][k] * lower[j][k] * dd[k] for k in range(j)), Fraction(0))
            lower[i][j] = num / dj
    return LdlFactor(Mat.from_rows(lower), tuple(dd))


def is_positive_definite(q: Mat) -> bool:
    try:
        ldl(q)
    except NotPositiveDefiniteError:
        return False
    return True


def _row_hnf_int(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form over the integers.

    Output rows have strictly increasing pivot columns, positive pivots,
    zeros below each pivot, and entries above a pivot reduced into
    [0, pivot).  Canonical for the row lattice; zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        active = [r for r in work if r[col] != 0]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            base = active[0]
            for r in active[1:]:
                t = r[col] // base[col]
                if t:
                    for j in range(col, ncols):
                        r[j] -= t * base[j]
            active = [r for r in active if r[col] != 0]
        pivot_row = active[0]
        work.remove(pivot_row)
        work = [r for r in work if any(r)]
        if pivot_row[col] < 0:
            pivot_row = [-x for x in pivot_row]
        out.append(pivot_row)
        pivots.append(col)
    # reduce entries above each pivot
    for i in range(len(out)):
        p = out[i][pivots[i]]
        for j in range(i):
            t = out[j][pivots[i]] // p
            if t:
                for c in range(pivots[i], ncols):
                    out[j][c] -= t * out[i][c]
    return out


def hnf(m: Mat) -> Mat:
    """Column-style Hermite normal form of an integer matrix.

    The result has one column per pivot (rank many), generates the same
    column lattice as the input, and is the unique canonical basis of that
    lattice, so lattice equality is exactly hnf equality.
    """
    if not m.is_integral():
        raise ShapeError("hnf requires integer entries")
    if m.rows == 0 or m.cols == 0:
        return Mat(m.rows, 0, ())
    rows_t = [[int(m.at(i, j)) for i in range(m.rows)] for j in range(m.cols)]
    reduced = _row_hnf_int(rows_t)
    if not reduced:
        return Mat(m.rows, 0, ())
    return Mat.from_rows(reduced).transpose()


def lattices_equal(a: Mat, b: Mat) -> bool:
    """Whether two matrices generate the same column lattice.

    Rational entries are allowed; both matrices are cleared by one common
    denominator first, which leaves the comparison unchanged.
    """
    s = 1
    for x in a.entries + b.entries:
        s = s * x.denominator // gcd(s, x.denominator)
    return hnf(a.scaled(s)) == hnf(b.scaled(s))


def lll_reduce(basis: Mat, delta: Fraction = Fraction(3, 4)) -> Mat:
    """Exact-arithmetic LLL reduction of the columns of a full-rank basis.

    delta is the Lovasz parameter and must satisfy 1/4 < delta < 1.  The
    returned matrix spans the same lattice and |det| is unchanged.
    """
    delta = _rat(delta)
    if not (Fraction(1, 4) < delta < 1):
        raise LinalgError("delta must lie strictly between 1/4 and 1")
    if basis.cols == 0:
        return basis
    b = [list(basis.column(j)) for j in range(basis.cols)]
    n = len(b)

    def dot(u, v):
        return sum((x * y for x, y in zip(u, v)), Fraction(0))

    def gram_schmidt():
        star: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = list(b[i])
            for j in range(i):
                if norms[j] == 0:
                    raise RankError("basis is rank-deficient")
                mu[i][j] = dot(b[i], star[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
            star.append(v)
            norms.append(dot(v, v))
            if norms[i] == 0:
                raise RankError("basis is rank-deficient")
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                t = round(mu[k][j])
                b[k] = [x - t * y for x, y in zip(b[k], b[j])]
                mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return Mat.from_columns(b)


def char_poly(m: Mat) -> tuple[Fraction, ...]:
    """Characteristic polynomial det(xI - m), coefficients leading-first.

    Faddeev-LeVerrier recursion; the only divisions are by 1..n and exact.
    """
    if not m.is_square:
        raise DimensionError("char_poly of non-square matrix")
    n = m.rows
    coeffs = [Fraction(1)]
    mk = Mat.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk
        trace = sum((mk.at(i, i) for i in range(n)), Fraction(0))
        ck = -trace / k
        coeffs.append(ck)
        if k < n:
            mk = mk + Mat.identity(n).scaled(ck)
    return tuple(coeffs)


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    while len(num) >= len(den) and any(num):
        if num[0] == 0:
            num.pop(0)
            continue
        f = num[0] / den[0]
        for i in range(len(den)):
            num[i] -= f * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return num


def sturm_chain(coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in coeffs]
    n = len(p0) - 1
    p1 = [c * (n - i) for i, c in enumerate(p0[:-1])]
    chain = [p0, p1]
    while any(chain[-1]):
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(coeffs: Sequence[Fraction], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    chain = sturm_chain(coeffs)
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def eigenvalue_lower_bound(q: Mat, eps: Fraction) -> Fraction:
    """Certified rational lower bound for the smallest eigenvalue.

    Returns L with 0 < L <= lambda_min(q) and lambda_min(q) - L <= eps.
    The certificate is a Sturm sign count showing char_poly has no root in
    (0, L]; bisection starts from the smallest diagonal entry, which is an
    upper bound for lambda_min by the Rayleigh quotient of a unit vector.
    """
    eps = _rat(eps)
    if eps <= 0:
        raise LinalgError("eps must be positive")
    ldl(q)  # positive definiteness gate
    p = char_poly(q)
    chain = sturm_chain(p)
    lo = Fraction(0)
    hi = min(q.at(i, i) for i in range(q.rows))
    v0 = _sign_variations(chain, lo)
    while lo == 0 or hi - lo > eps:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0 or v0 - _sign_variations(chain, mid) > 0:
            hi = mid
        else:
            lo = mid
    return lo
