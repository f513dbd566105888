"""Bulk collision search over linear codes: find tuples of pairwise
monomially inequivalent codes sharing one folded weight distribution.

The scan is exact end to end.  Codes are generated per reduced-echelon
pivot pattern, their full codeword tables computed in vectorized batches,
and each code's distribution of folded-value counts becomes an exact
bucket key (two codes land in one bucket if and only if their weight
distributions are equal, so bucketing loses nothing and a second
comparison stage is unnecessary).  Buckets are then partitioned into
monomial equivalence classes by orbit subtraction: the full signed
permutation orbit of one member is expanded, reduced to canonical form,
and intersected with the bucket, which removes that class exactly.
Buckets with at least min_tuple classes survive as collision tuples and
are re-verified through the scalar code path and the lattice
correspondence before being reported.

Codes are tracked as packed base-q integers of their canonical generator
rows; the orbit minimum of those ids is the canonical monomial form, so
class representatives come out canonical for free.  Determinism: bucket
keys, class representatives, and reported tuples are all sorted, so a
finished search is byte-for-byte reproducible.
"""

from __future__ import annotations

import dataclasses
import gzip
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import log2

import numpy as np

from .codes import (
    CodeError,
    LinearCode,
    _is_prime,
    canonical_monomial_form,
    lift,
    weight_distribution,
)
from .isometry import EquivalenceWitness, integral_equivalence
from .lattices import Lattice, gram
from .spectra import IsoCertificate, Verdict, certify

MAX_TOTAL_CODES = 50_000_000


class TupleVerificationError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class CollisionTuple:
    """Pairwise inequivalent codes sharing one weight distribution.

    certificates and pairwise hold the verification artifacts for each
    unordered pair (i, j), i < j, in row-major order; both are empty on
    candidates that have not been verified.
    """

    codes: tuple[LinearCode, ...]
    lattices: tuple[Lattice, ...]
    weight_distribution: tuple[tuple[int, ...], ...]
    certificates: tuple[IsoCertificate, ...] = ()
    pairwise: tuple[EquivalenceWitness, ...] = ()
    bucket_size: int = 0
    class_sizes: tuple[int, ...] = ()

    @property
    def verified(self) -> bool:
        pairs = len(self.codes) * (len(self.codes) - 1) // 2
        return len(self.certificates) == pairs and len(self.pairwise) == pairs


@dataclass(frozen=True)
class SearchReport:
    modulus: int
    length: int
    dimension: int
    family: str
    min_tuple: int
    codes_scanned: int
    distinct_distributions: int
    collisions: tuple[CollisionTuple, ...]
    verified: bool


def _patterns(n: int, k: int, family: str):
    if family == "systematic":
        return [tuple(range(k))]
    if family == "all":
        return list(itertools.combinations(range(n), k))
    raise CodeError(f"unknown family {family!r}")


def _free_positions(n: int, k: int, pivots) -> list[tuple[int, int]]:
    out = []
    for i in range(k):
        for j in range(pivots[i] + 1, n):
            if j not in pivots:
                out.append((i, j))
    return out


@lru_cache(maxsize=8)
def _monomial_tables(q: int, n: int):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    sign_choices = (1,) if q == 2 else (1, q - 1)
    signs = np.array(list(itertools.product(sign_choices, repeat=n)), dtype=np.int16)
    perm_idx = np.repeat(perms, len(signs), axis=0)
    sign_val = np.tile(signs, (len(perms), 1))
    return perm_idx, sign_val


def _batch_rref(mats: np.ndarray, q: int) -> np.ndarray:
    """Reduced row echelon form mod prime q of a stack of matrices."""
    work = np.mod(mats, q).astype(np.int16)
    bsz, k, n = work.shape
    inv = np.zeros(q, np.int16)
    for v in range(1, q):
        inv[v] = pow(v, -1, q)
    row = np.zeros(bsz, np.int64)
    rng_k = np.arange(k)
    for col in range(n):
        cand = (work[:, :, col] != 0) & (rng_k[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        r = row[b]
        f = np.argmax(cand, axis=1)[b]
        saved = work[b, r, :].copy()
        work[b, r, :] = work[b, f, :]
        work[b, f, :] = saved
        pv = work[b, r, col]
        work[b, r, :] = (work[b, r, :] * inv[pv][:, None]) % q
        factors = work[b, :, col].copy()
        factors[np.arange(len(b)), r] = 0
        work[b] = (work[b] - factors[:, :, None] * work[b, r, :][:, None, :]) % q
        row[b] = r + 1
    return work


def _pack_powers(q: int, k: int, n: int) -> np.ndarray:
    if (k * n) * log2(q) > 62:
        raise CodeError("code id does not fit a 64-bit pack; space too large")
    return (q ** np.arange(k * n - 1, -1, -1, dtype=np.int64)).astype(np.int64)


def _pack(mats: np.ndarray, powers: np.ndarray) -> np.ndarray:
    flat = mats.reshape(mats.shape[0], -1).astype(np.int64)
    return flat @ powers


def _unpack(code_id: int, q: int, k: int, n: int) -> tuple[tuple[int, ...], ...]:
    digits = []
    x = int(code_id)
    for _ in range(k * n):
        digits.append(x % q)
        x //= q
    digits.reverse()
    return tuple(tuple(digits[i * n : (i + 1) * n]) for i in range(k))


def _orbit_ids(rows, q: int, n: int, powers: np.ndarray) -> np.ndarray:
    """Sorted unique packed canonical ids of all monomial images."""
    k = len(rows)
    g = np.array(rows, dtype=np.int16)
    perm_idx, sign_val = _monomial_tables(q, n)
    imgs = g[:, perm_idx]  # (k, maps, n)
    imgs = np.transpose(imgs, (1, 0, 2)) * sign_val[:, None, :]
    canon = _batch_rref(imgs, q)
    return np.unique(_pack(canon, powers))


def _scan_partition(q, n, k, pivots, start, stop, bins, count_dtype):
    """Exact bucket keys for one id range of one pivot pattern.

    Returns {distribution_bytes: sorted int64 array of packed code ids}.
    """
    free = _free_positions(n, k, pivots)
    fcount = len(free)
    m = stop - start
    ids = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((m, fcount), dtype=np.int16)
    x = ids.copy()
    for pos in range(fcount - 1, -1, -1):
        digits[:, pos] = x % q
        x //= q
    g = np.zeros((m, k, n), dtype=np.int16)
    for i in range(k):
        g[:, i, pivots[i]] = 1
    for idx, (fi, fj) in enumerate(free):
        g[:, fi, fj] = digits[:, idx]

    coeffs = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int16)
    words = np.einsum("ck,mkn->mcn", coeffs, g) % q
    fold = np.minimum(np.arange(q), q - np.arange(q)).astype(np.int16)
    folded = fold[words]
    half = q // 2
    sig = np.zeros(words.shape[:2], dtype=np.int64)
    radix = 1
    for w in range(1, half + 1):
        sig += (folded == w).sum(axis=2) * radix
        radix *= n + 1
    offsets = np.arange(m, dtype=np.int64)[:, None] * bins
    dist = np.bincount((sig + offsets).ravel(), minlength=m * bins).reshape(m, bins)
    dist = dist.astype(count_dtype)

    powers = _pack_powers(q, k, n)
    packed = _pack(g, powers)
    uniq, inverse = np.unique(dist, axis=0, return_inverse=True)
    out = {}
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    boundaries = np.searchsorted(inverse[order], np.arange(len(uniq)))
    boundaries = np.append(boundaries, m)
    for u in range(len(uniq)):
        members = packed[order[boundaries[u] : boundaries[u + 1]]]
        out[uniq[u].tobytes()] = np.sort(members)
    return out


def _scan_partition_job(args):
    return _scan_partition(*args)


def _candidate(codes, bucket_size, class_sizes) -> CollisionTuple:
    return CollisionTuple(
        codes=tuple(codes),
        lattices=tuple(lift(c) for c in codes),
        weight_distribution=weight_distribution(codes[0]),
        bucket_size=bucket_size,
        class_sizes=tuple(class_sizes),
    )


def collide_codes(codes, min_tuple: int = 2) -> tuple[CollisionTuple, ...]:
    """Group an explicit list of codes by weight distribution and split
    each group into monomial classes; scalar path, for small inputs.
    The returned candidates are unverified (see verify_tuple)."""
    if min_tuple < 2:
        raise CodeError("min_tuple must be at least 2")
    by_dist: dict = {}
    for c in codes:
        by_dist.setdefault(weight_distribution(c), []).append(c)
    tuples = []
    for members in by_dist.values():
        classes: dict = {}
        for c in members:
            canon = canonical_monomial_form(c)
            classes.setdefault(canon.rows, [canon, 0])
            classes[canon.rows][1] += 1
        if len(classes) >= min_tuple:
            reps = sorted(classes.values(), key=lambda item: item[0].rows)
            tuples.append(
                _candidate([r[0] for r in reps], len(members), [r[1] for r in reps])
            )
    tuples.sort(key=lambda t: tuple(c.rows for c in t.codes))
    return tuple(tuples)


def verify_tuple(codes) -> CollisionTuple:
    """Verify a collision claim about a sequence of codes from scratch
    and return the tuple with all artifacts attached; raises
    TupleVerificationError naming the failing stage.

    Stages: shape (arity, matching parameters), distribution (equal
    sizes, scalar recomputation of every weight distribution),
    inequivalence (canonical monomial forms pairwise distinct), and
    lattice (the lifted lattices are pairwise isospectral yet integrally
    inequivalent).
    """
    codes = tuple(codes)
    if len(codes) < 2:
        raise TupleVerificationError("shape", "fewer than two codes")
    q = codes[0].modulus
    n = codes[0].length
    if any(c.modulus != q or c.length != n for c in codes):
        raise TupleVerificationError("shape", "mixed modulus or length")

    if len({c.size for c in codes}) != 1:
        raise TupleVerificationError("distribution", "sizes differ")
    dists = [weight_distribution(c) for c in codes]
    if any(d != dists[0] for d in dists):
        raise TupleVerificationError("distribution", "weight distributions differ")

    canons = [canonical_monomial_form(c) for c in codes]
    if len({c.rows for c in canons}) != len(canons):
        raise TupleVerificationError("inequivalence", "two codes are monomially equivalent")

    lattices = tuple(lift(c) for c in codes)
    forms = [gram(l) for l in lattices]
    certificates = []
    witnesses = []
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            cert = certify(forms[i], forms[j])
            if cert.verdict is not Verdict.ISOSPECTRAL:
                raise TupleVerificationError(
                    "lattice", f"pair ({i}, {j}) not certified isospectral: {cert.verdict.value}"
                )
            certificates.append(cert)
            witness = integral_equivalence(forms[i], forms[j])
            if witness.found:
                raise TupleVerificationError("lattice", f"pair ({i}, {j}) is integrally equivalent")
            witnesses.append(witness)

    return CollisionTuple(
        codes=codes,
        lattices=lattices,
        weight_distribution=dists[0],
        certificates=tuple(certificates),
        pairwise=tuple(witnesses),
    )


def _checkpoint_load(path, params):
    try:
        with gzip.open(path, "rt") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        return {}
    if data.get("params") != params:
        raise CodeError("checkpoint was written by a different search")
    return {
        key: {bytes.fromhex(h): np.array(ids, dtype=np.int64) for h, ids in part.items()}
        for key, part in data.get("partitions", {}).items()
    }


def _checkpoint_save(path, params, done):
    payload = {
        "params": params,
        "partitions": {
            key: {kb.hex(): [int(x) for x in ids] for kb, ids in part.items()}
            for key, part in done.items()
        },
    }
    with gzip.open(path, "wt") as fh:
        json.dump(payload, fh)


def run_search(
    q: int,
    n: int,
    k: int,
    *,
    family: str = "all",
    min_tuple: int = 2,
    verify: bool = True,
    chunk_size: int = 5**6,
    jobs: int = 1,
    checkpoint_path=None,
    progress=None,
) -> SearchReport:
    """Scan every code of the family and report collision tuples, each
    verified from scratch unless verify=False.

    The scan is split into fixed id-range partitions (checkpoint
    granularity; a resumed search skips finished partitions).  jobs > 1
    distributes partitions over processes; results are merged in
    partition order either way, so the outcome does not depend on jobs.
    """
    if not _is_prime(q):
        raise CodeError("search requires a prime modulus")
    if not 0 < k <= n:
        raise CodeError("dimension k must lie in 1..n")
    if min_tuple < 2:
        raise CodeError("min_tuple must be at least 2")
    patterns = _patterns(n, k, family)
    totals = [q ** len(_free_positions(n, k, piv)) for piv in patterns]
    if sum(totals) > MAX_TOTAL_CODES:
        raise CodeError(f"family holds {sum(totals)} codes, above the {MAX_TOTAL_CODES} guard")

    bins = (n + 1) ** (q // 2)
    count_dtype = np.uint8 if q**k <= 255 else np.uint16
    params = {"q": q, "n": n, "k": k, "family": family, "chunk": chunk_size}

    partitions = []
    for p_idx, piv in enumerate(patterns):
        total = totals[p_idx]
        for c_idx, start in enumerate(range(0, total, chunk_size)):
            stop = min(start + chunk_size, total)
            partitions.append((f"{p_idx}:{c_idx}", (q, n, k, piv, start, stop, bins, count_dtype)))

    done = _checkpoint_load(checkpoint_path, params) if checkpoint_path else {}
    pending = [(key, args) for key, args in partitions if key not in done]

    if jobs > 1 and pending:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for (key, _), result in zip(pending, pool.map(_scan_partition_job, [a for _, a in pending])):
                done[key] = result
                if checkpoint_path:
                    _checkpoint_save(checkpoint_path, params, done)
                if progress:
                    progress(len(done), len(partitions))
    else:
        for key, args in pending:
            done[key] = _scan_partition(*args)
            if checkpoint_path:
                _checkpoint_save(checkpoint_path, params, done)
            if progress:
                progress(len(done), len(partitions))

    merged: dict[bytes, list] = {}
    for key, _ in partitions:
        for kb, ids in done[key].items():
            merged.setdefault(kb, []).append(ids)
    buckets = {kb: np.sort(np.concatenate(parts)) for kb, parts in merged.items()}

    powers = _pack_powers(q, k, n)
    collisions = []
    for kb in sorted(buckets):
        ids = buckets[kb]
        if len(ids) < min_tuple:
            continue
        rem = ids
        classes = []
        while rem.size:
            rep_rows = _unpack(int(rem[0]), q, k, n)
            orbit = _orbit_ids(rep_rows, q, n, powers)
            member = np.isin(rem, orbit, assume_unique=True)
            assert member[0], "representative must lie in its own orbit"
            classes.append((int(orbit.min()), int(member.sum())))
            rem = rem[~member]
        if len(classes) < min_tuple:
            continue
        classes.sort()
        codes = tuple(LinearCode(q, n, _unpack(cid, q, k, n)) for cid, _ in classes)
        sizes = tuple(sz for _, sz in classes)
        if verify:
            tup = verify_tuple(codes)
            tup = dataclasses.replace(tup, bucket_size=int(len(ids)), class_sizes=sizes)
        else:
            tup = _candidate(codes, int(len(ids)), sizes)
        collisions.append(tup)

    collisions.sort(key=lambda t: tuple(c.rows for c in t.codes))
    return SearchReport(
        modulus=q,
        length=n,
        dimension=k,
        family=family,
        min_tuple=min_tuple,
        codes_scanned=sum(totals),
        distinct_distributions=len(buckets),
        collisions=tuple(collisions),
        verified=verify,
    )
