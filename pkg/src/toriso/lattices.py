"""Full-rank lattices with exact rational bases, their Gram forms, and the
handful of form-level helpers (dual, doubling, evenness, level, sums,
scaled families) shared by the spectral and search layers.

Convention used repo-wide: the columns of a basis matrix generate the
lattice, so gram(L) = B^T B and the bundled bases reproduce their printed
Gram matrices entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .linalg import (
    DimensionError,
    Mat,
    RankError,
    ShapeError,
    det,
    ldl,
)


class LatticeError(ValueError):
    pass


class MembershipError(LatticeError):
    """Vector does not belong to the lattice."""


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice; basis columns generate it.  A 0x0 basis is the
    empty lattice, admitted as the identity of direct sums."""

    basis: Mat

    def __post_init__(self):
        if not self.basis.is_square:
            raise DimensionError("lattice basis must be square (full rank)")
        if self.basis.rows > 0 and det(self.basis) == 0:
            raise RankError("lattice basis is singular")

    @property
    def dimension(self) -> int:
        return self.basis.rows

    def coordinates(self, v: Sequence) -> tuple[int, ...]:
        """Integer coordinates of an ambient lattice vector."""
        coords = self.basis.inverse().apply(v)
        if any(c.denominator != 1 for c in coords):
            raise MembershipError(f"{tuple(v)} is not a lattice vector")
        return tuple(int(c) for c in coords)

    def contains(self, v: Sequence) -> bool:
        try:
            self.coordinates(v)
        except MembershipError:
            return False
        return True


@dataclass(frozen=True)
class GramForm:
    """Symmetric positive-definite matrix of inner products."""

    matrix: Mat

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise ShapeError("Gram matrix must be symmetric")
        if self.matrix.rows > 0:
            ldl(self.matrix)  # raises NotPositiveDefiniteError otherwise

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    def value(self, x: Sequence) -> Fraction:
        """The quadratic form x^T q x."""
        qx = self.matrix.apply(x)
        return sum((Fraction(a) * b for a, b in zip(x, qx)), Fraction(0))


@dataclass(frozen=True)
class FormClassTags:
    det: Fraction
    is_even: bool
    level: int | None


def gram(l: Lattice) -> GramForm:
    return GramForm(l.basis.transpose() @ l.basis)


def dual(l: Lattice) -> Lattice:
    """Dual lattice, spanned by the inverse-transpose basis."""
    if l.dimension == 0:
        return l
    return Lattice(l.basis.inverse().transpose())


def double_form(q: GramForm) -> GramForm:
    return GramForm(q.matrix.scaled(2))


def is_even(q: GramForm) -> bool:
    """Integral with even diagonal, so all represented values are even."""
    m = q.matrix
    return m.is_integral() and all(m.at(i, i) % 2 == 0 for i in range(m.rows))


def level(q: GramForm) -> int:
    """Least N > 0 such that N * q^{-1} is integral with even diagonal.

    Computed exactly: N must be a multiple of the lcm d of the entry
    denominators of q^{-1}, and d itself works unless some scaled diagonal
    entry stays odd, in which case 2d is forced.
    """
    if not q.matrix.is_integral():
        raise ShapeError("level requires an integral form")
    if q.dimension == 0:
        return 1
    inv = q.matrix.inverse()
    d = 1
    for x in inv.entries:
        d = d * x.denominator // gcd(d, x.denominator)
    diag_scaled = [d * inv.at(i, i) for i in range(inv.rows)]
    assert all(x.denominator == 1 for x in diag_scaled)
    if all(int(x) % 2 == 0 for x in diag_scaled):
        return d
    return 2 * d


def classify(q: GramForm) -> FormClassTags:
    ev = is_even(q)
    return FormClassTags(det=det(q.matrix), is_even=ev, level=level(q) if q.matrix.is_integral() else None)


def form_direct_sum(a: GramForm, b: GramForm) -> GramForm:
    return GramForm(_block_diag(a.matrix, b.matrix))


def _block_diag(a: Mat, b: Mat) -> Mat:
    n, m = a.rows, b.rows
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + [Fraction(0)] * m)
    for i in range(m):
        rows.append([Fraction(0)] * n + list(b.row(i)))
    if not rows:
        return Mat(0, 0, ())
    return Mat.from_rows(rows)


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    return Lattice(_block_diag(a.basis, b.basis))


def scale(l: Lattice, factor) -> Lattice:
    factor = Fraction(factor)
    if factor == 0:
        raise LatticeError("scale factor must be nonzero")
    return Lattice(l.basis.scaled(factor))


def choir_family(lats: Sequence[Lattice], copies: int) -> list[Lattice]:
    """All direct sums of `copies` slots, slot j scaled by j (1-based),
    with each slot filled by any of the given lattices.

    For k inputs this yields k**copies lattices in lexicographic order of
    the index tuples.  With pairwise isospectral inputs the outputs are
    isospectral in each fixed slot pattern, which is the scaled-sum route
    to larger families.
    """
    if copies < 1:
        raise LatticeError("copies must be at least 1")
    if not lats:
        raise LatticeError("need at least one lattice")
    out: list[Lattice] = []
    k = len(lats)
    indices = [0] * copies

    def build() -> Lattice:
        acc = Lattice(Mat(0, 0, ()))
        for slot, idx in enumerate(indices, start=1):
            acc = direct_sum(acc, scale(lats[idx], slot))
        return acc

    while True:
        out.append(build())
        for pos in range(copies - 1, -1, -1):
            indices[pos] += 1
            if indices[pos] < k:
                break
            indices[pos] = 0
        else:
            break
    return out


def laplace_spectrum_prefix(l: Lattice, count: int) -> tuple[tuple[Fraction, int], ...]:
    """First `count` distinct Laplace eigenvalues of the flat torus R^n/L,
    as (coefficient, multiplicity) pairs with eigenvalue = coefficient * pi^2.

    Eigenvalues are 4 pi^2 |xi|^2 over dual vectors xi; multiplicities count
    both signs.  The zero eigenvalue opens the list with multiplicity 1.
    """
    from .enumeration import rep_spectrum  # local import, module layering

    if count < 1:
        raise LatticeError("count must be positive")
    if l.dimension == 0:
        raise LatticeError("empty lattice has no spectrum")
    from .linalg import lll_reduce

    dq = gram(dual(l))
    out: list[tuple[Fraction, int]] = [(Fraction(0), 1)]
    if count == 1:
        return tuple(out)
    reduced = lll_reduce(dual(l).basis)
    bound = min(
        sum((x * x for x in reduced.column(j)), Fraction(0)) for j in range(reduced.cols)
    )
    while True:
        spec = rep_spectrum(dq, bound)
        nonzero = [(t, c) for t, c in spec.items() if t != 0 and c > 0]
        if len(nonzero) >= count - 1:
            for t, c in nonzero[: count - 1]:
                out.append((4 * Fraction(t), c))
            return tuple(out)
        bound = bound * 2
