"""Exact lattice-point enumeration inside quadratic-form balls.

The recursion stays in integer arithmetic end to end.  For an integral
form G the fraction-free elimination in linalg gives row vectors U[i] and
leading principal minors d_0 = 1, ..., d_n with

    x^T G x = sum_i u_i^2 / (d_i * d_{i+1}),
    u_i     = d_{i+1} * x_i + sum_{j > i} U[i][j] * x_j,

every u_i an integer.  Multiplying the ball constraint through by
P = prod_i d_i d_{i+1} turns each level of the tree walk into

    u_i^2 * w_i <= REM,        w_i = P / (d_i * d_{i+1}),

so the hot loop is big-int adds, multiplies and math.isqrt.  Rational
forms are pre-scaled by the lcm of their entry denominators; antipodal
pairs are collapsed by forcing the highest-index nonzero coordinate
positive during the walk and re-normalizing emitted vectors to the
first-nonzero-positive convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Iterator, Sequence

from .linalg import DimensionError, Mat, fraction_free_upper
from .lattices import GramForm, Lattice, LatticeError, gram


def _normalize(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _canonical_sign(coords: Sequence) -> tuple:
    for c in coords:
        if c != 0:
            if c < 0:
                return tuple(-x for x in coords)
            return tuple(coords)
    return tuple(coords)


@dataclass(frozen=True)
class VectorList:
    """Vectors sharing one value of the ambient squared length."""

    norm: Fraction | int
    vectors: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.vectors)


@dataclass(frozen=True)
class RepSpectrum:
    """Representation counts of a form on its full value grid.

    The grid step is the gcd of the diagonal and doubled off-diagonal
    entries (of the denominator-cleared form), divided back by that
    scaling, so every representable value lies on the grid and zero
    counts are reported rather than skipped.
    """

    bound: Fraction | int
    step: Fraction | int
    entries: tuple[tuple[Fraction | int, int], ...]

    def items(self) -> tuple[tuple[Fraction | int, int], ...]:
        return self.entries

    def count_at(self, value) -> int:
        value = Fraction(value)
        if value < 0 or value > self.bound:
            raise ValueError(f"value {value} outside enumerated range")
        for t, c in self.entries:
            if t == value:
                return c
        return 0

    def total(self) -> int:
        return sum(c for _, c in self.entries)


def _integer_form(q: GramForm) -> tuple[list[list[int]], int]:
    """Clear denominators: returns (G, s) with G = s * q integral."""
    m = q.matrix
    s = 1
    for x in m.entries:
        s = s * x.denominator // gcd(s, x.denominator)
    rows = [[int(x * s) for x in m.row(i)] for i in range(m.rows)]
    return rows, s


def _elimination_data(g_rows: list[list[int]]):
    n = len(g_rows)
    urows, d = fraction_free_upper(Mat.from_rows(g_rows))
    p = 1
    for i in range(n):
        p *= d[i] * d[i + 1]
    w = [p // (d[i] * d[i + 1]) for i in range(n)]
    return urows, d, p, w


def _walk(q: GramForm, bound: Fraction, emit: Callable[[int, list[int]], None]) -> tuple[int, int]:
    """Run the pruned tree walk, calling emit(scaled_norm, coords) once per
    antipodal pair of nonzero solutions of x^T q x <= bound.

    scaled_norm is the integer value against the denominator-cleared form;
    returns (scale, grid_gcd) for the caller to map values back.
    """
    if q.dimension == 0:
        raise DimensionError("cannot enumerate an empty form")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    g_rows, s = _integer_form(q)
    n = len(g_rows)
    grid = 0
    for i in range(n):
        grid = gcd(grid, g_rows[i][i])
        for j in range(i + 1, n):
            grid = gcd(grid, 2 * g_rows[i][j])
    urows, d, p, w = _elimination_data(g_rows)
    cap = int(s * bound // 1)  # floor of the scaled bound
    total = cap * p
    coords = [0] * n

    def rec(i: int, rem: int, leading: bool):
        if i < 0:
            if not leading:
                scaled, r = divmod(total - rem, p)
                assert r == 0
                emit(scaled, coords)
            return
        wi = w[i]
        r = isqrt(rem // wi)
        ui = urows[i]
        t = 0
        for j in range(i + 1, n):
            cj = coords[j]
            if cj:
                t += ui[j] * cj
        di = d[i + 1]
        lo = -((r + t) // di)
        hi = (r - t) // di
        if leading and lo < 0:
            lo = 0
        for x in range(lo, hi + 1):
            u = di * x + t
            coords[i] = x
            rec(i - 1, rem - u * u * wi, leading and x == 0)
        coords[i] = 0

    if cap >= 0:
        rec(n - 1, total, True)
    return s, grid


def enumerate_up_to(q: GramForm, bound) -> list[tuple[tuple[int, ...], Fraction | int]]:
    """All nonzero coordinate vectors with x^T q x <= bound, one
    representative per antipodal pair (first nonzero coordinate positive),
    sorted by norm then coordinates."""
    bound = Fraction(bound)
    found: list[tuple[tuple[int, ...], int]] = []

    def emit(scaled: int, coords: list[int]):
        found.append((_canonical_sign(coords), scaled))

    s, _ = _walk(q, bound, emit)
    out = [(c, _normalize(Fraction(scaled, s))) for c, scaled in found]
    out.sort(key=lambda item: (item[1], item[0]))
    return out


def rep_spectrum(q: GramForm, bound) -> RepSpectrum:
    """Counts of x with x^T q x = t for every grid value t <= bound.

    Both signs of each nonzero vector are counted, and t = 0 always
    counts the zero vector once."""
    bound = Fraction(bound)
    counts: dict[int, int] = {}

    def emit(scaled: int, coords: list[int]):
        counts[scaled] = counts.get(scaled, 0) + 2

    s, grid = _walk(q, bound, emit)
    cap = int(s * bound // 1)
    entries = [(Fraction(0), 1)]
    for k in range(grid, cap + 1, grid):
        entries.append((Fraction(k, s), counts.get(k, 0)))
    return RepSpectrum(
        bound=_normalize(bound),
        step=_normalize(Fraction(grid, s)),
        entries=tuple((_normalize(t), c) for t, c in entries),
    )


class _SpanTracker:
    """Incremental exact rank tracking via reduced row echelon rows."""

    def __init__(self):
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    def _residue(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for row, p in zip(self._rows, self._pivots):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self._residue(v))

    def add(self, v: Sequence) -> bool:
        res = self._residue(v)
        pivot = next((i for i, x in enumerate(res) if x != 0), None)
        if pivot is None:
            return False
        inv = 1 / res[pivot]
        res = [x * inv for x in res]
        for row in self._rows:
            c = row[pivot]
            if c != 0:
                row[:] = [a - c * b for a, b in zip(row, res)]
        at = next((k for k, p in enumerate(self._pivots) if p > pivot), len(self._pivots))
        self._rows.insert(at, res)
        self._pivots.insert(at, pivot)
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)


def _ambient_candidates(l: Lattice, bound_floor: int | None = None):
    """Enumerate lattice vectors in ambient coordinates, working in an
    LLL-reduced basis.  The bound is the max diagonal of the reduced Gram
    matrix, which is enough to contain a full-rank vector set."""
    from .linalg import lll_reduce

    reduced = lll_reduce(l.basis)
    q = GramForm(reduced.transpose() @ reduced)
    bound = max(q.matrix.at(i, i) for i in range(q.dimension))
    if bound_floor is not None and bound < bound_floor:
        bound = Fraction(bound_floor)
    coords = enumerate_up_to(q, bound)
    out = []
    for c, norm in coords:
        amb = _canonical_sign(reduced.apply(c))
        out.append((tuple(_normalize(x) for x in amb), norm))
    out.sort(key=lambda item: (item[1], _lead_index(item[0]), item[0]))
    return out


def _lead_index(v: Sequence) -> int:
    for i, x in enumerate(v):
        if x != 0:
            return i
    return len(v)


def shortest_vectors(l: Lattice) -> VectorList:
    """Minimal-norm nonzero vectors in ambient coordinates, one per
    antipodal pair."""
    if l.dimension == 0:
        raise LatticeError("empty lattice has no nonzero vectors")
    cands = _ambient_candidates(l)
    m = cands[0][1]
    vecs = tuple(v for v, norm in cands if norm == m)
    return VectorList(norm=m, vectors=vecs)


def independent_ladder(l: Lattice, count: int) -> tuple[VectorList, ...]:
    """Greedy norm ladder: stage k holds the minimal-norm vectors that
    extend the span of the previous stages by one dimension, restricted to
    the single rank-one extension the first such vector selects.

    Vectors of the same norm that head off into a different extension are
    left for a later stage, so each stage is one norm value and one new
    direction.  Ties inside a stage keep every vector that lands in the
    chosen extension.
    """
    if l.dimension == 0:
        raise LatticeError("empty lattice has no ladder")
    if not 1 <= count <= l.dimension:
        raise LatticeError(f"count must be in 1..{l.dimension}")
    cands = _ambient_candidates(l)
    span = _SpanTracker()
    stages: list[VectorList] = []
    for _ in range(count):
        outside = [(v, norm) for v, norm in cands if not span.contains(v)]
        m = outside[0][1]
        ties = [v for v, norm in outside if norm == m]
        head = ties[0]
        probe = _SpanTracker()
        for row in span._rows:
            probe.add(row)
        probe.add(head)
        members = tuple(v for v in ties if probe.contains(v))
        stages.append(VectorList(norm=m, vectors=members))
        span.add(head)
    return tuple(stages)
