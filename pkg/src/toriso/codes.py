"""Linear codes over Z_q and their lattice correspondence.

A code C of length n corresponds to the preimage lattice
Lambda = {x in Z^n : x mod q in C}, which always satisfies
q Z^n <= Lambda <= Z^n.  The canonical generator matrix of a code is
read off the row Hermite form of its stacked generators over [G; qI]:
those rows reduced mod q (zero rows dropped) are a canonical generating
set for any modulus, and for prime q they coincide with the reduced row
echelon form over the field.  Code equality is equality of these rows.

Weights are folded: a residue c contributes min(c, q - c), matching the
squared-length contribution of the shortest integer representative, so
equal weight distributions transfer directly to lattice norm data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from .lattices import Lattice, LatticeError
from .linalg import Mat, ShapeError, hnf


class CodeError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def _rref_mod_prime(q: int, rows, n: int) -> tuple[tuple[int, ...], ...]:
    mat = [[x % q for x in r] for r in rows]
    mat = [r for r in mat if any(r)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, q)
        mat[r] = [(x * inv) % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(a - c * b) % q for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r])


@lru_cache(maxsize=4096)
def _canonical_data(modulus: int, length: int, rows: tuple[tuple[int, ...], ...]):
    """Canonical rows and per-row coefficient spans.  Prime moduli go
    through reduced echelon form over the field; the general case reads
    the same data off the stacked Hermite form of [rows; modulus * I],
    and the two agree when both apply."""
    if _is_prime(modulus):
        canon = _rref_mod_prime(modulus, rows, length)
        return canon, tuple(modulus for _ in canon)
    from .linalg import _row_hnf_int

    stacked = [list(r) for r in rows] + [
        [modulus * int(i == j) for j in range(length)] for i in range(length)
    ]
    reduced = _row_hnf_int(stacked)
    canon = []
    spans = []
    for row in reduced:
        pivot = next(x for x in row if x != 0)
        modded = tuple(x % modulus for x in row)
        if any(modded):
            canon.append(modded)
            spans.append(modulus // pivot)
    return tuple(canon), tuple(spans)


@dataclass(frozen=True)
class LinearCode:
    """Code over Z_modulus of the given length; rows are stored in
    canonical form, so equal codes compare equal."""

    modulus: int
    length: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise CodeError("modulus must be at least 2")
        if self.length < 1:
            raise CodeError("length must be positive")
        cleaned = []
        for r in self.rows:
            r = tuple(int(x) % self.modulus for x in r)
            if len(r) != self.length:
                raise CodeError("generator row of wrong length")
            cleaned.append(r)
        canon, _ = _canonical_data(self.modulus, self.length, tuple(cleaned))
        object.__setattr__(self, "rows", canon)

    @property
    def size(self) -> int:
        _, spans = _canonical_data(self.modulus, self.length, self.rows)
        return prod(spans) if spans else 1

    def codewords(self):
        """All codewords, each exactly once."""
        canon, spans = _canonical_data(self.modulus, self.length, self.rows)
        q, n = self.modulus, self.length
        for coeffs in itertools.product(*[range(s) for s in spans]):
            word = [0] * n
            for a, row in zip(coeffs, canon):
                if a:
                    for i in range(n):
                        word[i] = (word[i] + a * row[i]) % q
            yield tuple(word)


def weight_signature(modulus: int, word) -> tuple[int, ...]:
    """Sorted folded residues min(c, q - c) of one word."""
    out = sorted(min(c % modulus, modulus - c % modulus) for c in word)
    return tuple(out)


def weight_distribution(code: LinearCode, cap: int = 10**6) -> tuple[tuple[int, ...], ...]:
    """Multiset of codeword weight signatures, sorted; refuses to expand
    codes larger than cap."""
    if code.size > cap:
        raise CodeError(f"code has {code.size} words, above the cap {cap}")
    return tuple(sorted(weight_signature(code.modulus, w) for w in code.codewords()))


def equal_weight_distribution(a: LinearCode, b: LinearCode, cap: int = 10**6) -> bool:
    if a.modulus != b.modulus or a.length != b.length or a.size != b.size:
        return False
    return weight_distribution(a, cap) == weight_distribution(b, cap)


def project(l: Lattice, modulus: int) -> LinearCode:
    """The code L mod q Z^n of an integral lattice containing q Z^n."""
    if not l.basis.is_integral():
        raise ShapeError("projection needs an integral lattice")
    n = l.dimension
    for i in range(n):
        e = [modulus * int(j == i) for j in range(n)]
        if not l.contains(e):
            raise LatticeError(f"{modulus} Z^n is not contained in the lattice")
    rows = [tuple(int(l.basis.at(i, j)) % modulus for i in range(n)) for j in range(n)]
    return LinearCode(modulus, n, tuple(rows))


def lift(code: LinearCode) -> Lattice:
    """The preimage lattice {x in Z^n : x mod q in code}."""
    n = code.length
    cols = [list(r) for r in code.rows] + [
        [code.modulus * int(i == j) for j in range(n)] for i in range(n)
    ]
    basis = hnf(Mat.from_columns([list(map(int, c)) for c in cols]))
    return Lattice(basis)


def enumerate_codes(q: int, n: int, k: int, family: str = "all"):
    """All k-dimensional codes of length n over the prime field Z_q, one
    canonical representative each, via reduced-echelon pivot patterns.

    family "systematic" restricts to codes with an identity block on the
    first k coordinates."""
    if not _is_prime(q):
        raise CodeError("code enumeration requires a prime modulus")
    if not 0 <= k <= n:
        raise CodeError("dimension k must lie in 0..n")
    if family not in ("all", "systematic"):
        raise CodeError(f"unknown family {family!r}")
    if k == 0:
        yield LinearCode(q, n, ())
        return
    patterns = [tuple(range(k))] if family == "systematic" else itertools.combinations(range(n), k)
    for pivots in patterns:
        free_positions = []
        for i in range(k):
            for j in range(pivots[i] + 1, n):
                if j not in pivots:
                    free_positions.append((i, j))
        for values in itertools.product(range(q), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            yield LinearCode(q, n, tuple(tuple(r) for r in rows))


def monomial_images(code: LinearCode):
    """All images of the code under signed coordinate permutations
    (the n! * 2^n monomial maps), as canonical codes."""
    q, n = code.modulus, code.length
    for rows in _monomial_image_rows(code):
        yield LinearCode(q, n, rows)


def _monomial_image_rows(code: LinearCode):
    n = code.length
    if n > 8:
        raise CodeError("monomial orbit restricted to length <= 8")
    q = code.modulus
    sign_choices = (1,) if q == 2 else (1, q - 1)
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product(sign_choices, repeat=n):
            yield tuple(
                tuple((signs[i] * r[perm[i]]) % q for i in range(n)) for r in code.rows
            )


def canonical_monomial_form(code: LinearCode) -> LinearCode:
    """Least canonical representative of the code's orbit under signed
    coordinate permutations; two codes are monomially equivalent exactly
    when these forms coincide."""
    q, n = code.modulus, code.length
    best = None
    for rows in _monomial_image_rows(code):
        canon, _ = _canonical_data(q, n, rows)
        if best is None or canon < best:
            best = canon
    return LinearCode(q, n, best)
