import numpy as np
import pytest

from toriso import triplet
from toriso.codes import CodeError, LinearCode, canonical_monomial_form, monomial_images
from toriso.search import (
    TupleVerificationError,
    _batch_rref,
    _orbit_ids,
    _pack,
    _pack_powers,
    _unpack,
    collide_codes,
    run_search,
    verify_tuple,
)
from toriso.spectra import Verdict


def rref_oracle(rows, q, n):
    # scalar canonical form via the code constructor
    return LinearCode(q, n, tuple(tuple(r) for r in rows)).rows


def pad_to(rows, k, n):
    out = [tuple(r) for r in rows]
    while len(out) < k:
        out.append((0,) * n)
    return tuple(out)


def test_batch_rref_matches_scalar_path():
    rng = np.random.default_rng(7)
    mats = rng.integers(0, 5, size=(200, 3, 6), dtype=np.int16)
    mats[17] = 0  # rank 0
    mats[18, 1] = mats[18, 0]  # forced rank drop
    got = _batch_rref(mats, 5)
    for i in range(len(mats)):
        want = pad_to(rref_oracle(mats[i].tolist(), 5, 6), 3, 6)
        assert tuple(tuple(int(x) for x in row) for row in got[i]) == want


def test_pack_unpack_roundtrip():
    powers = _pack_powers(5, 3, 6)
    rng = np.random.default_rng(3)
    mats = rng.integers(0, 5, size=(50, 3, 6), dtype=np.int16)
    ids = _pack(mats, powers)
    for i in range(len(mats)):
        assert _unpack(int(ids[i]), 5, 3, 6) == tuple(tuple(int(x) for x in r) for r in mats[i])


def test_pack_guard_rejects_oversized_space():
    with pytest.raises(CodeError):
        _pack_powers(5, 4, 7)


def test_orbit_ids_match_scalar_orbit():
    code = LinearCode(3, 3, ((1, 2, 0),))
    powers = _pack_powers(3, 1, 3)
    got = _orbit_ids(code.rows, 3, 3, powers)
    want = set()
    for img in monomial_images(code):
        want.add(int(_pack(np.array([img.rows], dtype=np.int16), powers)[0]))
    assert set(int(x) for x in got) == want
    assert got[0] == min(want)  # sorted output, minimum first


def test_collide_codes_positive_control():
    padding = [
        LinearCode(5, 6, ((1, 0, 0, 0, 0, 0),)),
        LinearCode(5, 6, ((1, 1, 1, 1, 1, 1), (0, 1, 2, 3, 4, 0))),
    ]
    tuples = collide_codes([triplet.code(1), triplet.code(2), triplet.code(3)] + padding, min_tuple=3)
    assert len(tuples) == 1
    t = tuples[0]
    assert t.bucket_size == 3
    assert t.class_sizes == (1, 1, 1)
    assert not t.verified  # candidates carry no certificates yet
    want = {canonical_monomial_form(triplet.code(i)).rows for i in (1, 2, 3)}
    assert {c.rows for c in t.codes} == want


def test_collide_codes_collapses_monomial_images():
    image = next(iter(monomial_images(triplet.code(1))))
    tuples = collide_codes([triplet.code(1), image], min_tuple=2)
    assert tuples == ()  # same class, no collision
    tuples = collide_codes([triplet.code(1), image, triplet.code(2)], min_tuple=2)
    assert len(tuples) == 1
    assert sorted(tuples[0].class_sizes, reverse=True) == [2, 1]


def test_collide_codes_min_tuple_guard():
    with pytest.raises(CodeError):
        collide_codes([triplet.code(1)], min_tuple=1)


def test_verify_tuple_accepts_bundled_triple():
    t = verify_tuple([triplet.code(i) for i in (1, 2, 3)])
    assert t.verified
    assert len(t.certificates) == 3
    assert all(c.verdict is Verdict.ISOSPECTRAL for c in t.certificates)
    assert len(t.pairwise) == 3
    assert not any(w.found for w in t.pairwise)
    assert [l.dimension for l in t.lattices] == [6, 6, 6]


def test_verify_tuple_rejects_duplicates():
    with pytest.raises(TupleVerificationError) as err:
        verify_tuple([triplet.code(1), triplet.code(1)])
    assert err.value.stage == "inequivalence"


def test_verify_tuple_rejects_size_mismatch():
    zero = LinearCode(5, 6, ())
    with pytest.raises(TupleVerificationError) as err:
        verify_tuple([triplet.code(1), zero])
    assert err.value.stage == "distribution"


def test_verify_tuple_rejects_single_code():
    with pytest.raises(TupleVerificationError) as err:
        verify_tuple([triplet.code(1)])
    assert err.value.stage == "shape"


def test_verify_tuple_rejects_mixed_length():
    with pytest.raises(TupleVerificationError) as err:
        verify_tuple([triplet.code(1), LinearCode(5, 3, ((1, 0, 2),))])
    assert err.value.stage == "shape"


def test_verify_tuple_rejects_equivalent_pair():
    c1 = triplet.code(1)
    image = next(im for im in monomial_images(c1) if im.rows != c1.rows)
    with pytest.raises(TupleVerificationError) as err:
        verify_tuple([c1, image])
    assert err.value.stage == "inequivalence"


def test_run_search_counts_all_subspaces():
    # [3 choose 1] over GF(2) = 7, [4 choose 2] over GF(3) = 130
    rep = run_search(2, 3, 1, family="all", min_tuple=2, verify=False)
    assert rep.codes_scanned == 7
    rep = run_search(3, 4, 2, family="all", min_tuple=2, verify=False, chunk_size=10)
    assert rep.codes_scanned == 130
    assert rep.distinct_distributions >= 1


def test_run_search_is_deterministic():
    a = run_search(3, 4, 2, family="all", min_tuple=2, verify=False, chunk_size=7)
    b = run_search(3, 4, 2, family="all", min_tuple=2, verify=False, chunk_size=31)
    assert a.collisions == b.collisions
    assert a.codes_scanned == b.codes_scanned
    assert a.distinct_distributions == b.distinct_distributions


def test_run_search_checkpoint_roundtrip(tmp_path):
    path = tmp_path / "scan.json.gz"
    a = run_search(3, 4, 2, family="all", min_tuple=2, verify=False, checkpoint_path=path)
    assert path.exists()
    b = run_search(3, 4, 2, family="all", min_tuple=2, verify=False, checkpoint_path=path)
    assert a == b
    with pytest.raises(CodeError):
        run_search(3, 4, 1, family="all", min_tuple=2, verify=False, checkpoint_path=path)


def test_run_search_parallel_matches_serial(tmp_path):
    a = run_search(2, 4, 2, family="all", min_tuple=2, verify=False, chunk_size=3)
    b = run_search(2, 4, 2, family="all", min_tuple=2, verify=False, chunk_size=3, jobs=2)
    assert a == b


def test_run_search_guards():
    with pytest.raises(CodeError):
        run_search(4, 4, 2)  # modulus not prime
    with pytest.raises(CodeError):
        run_search(5, 6, 3, min_tuple=1)
    with pytest.raises(CodeError):
        run_search(5, 8, 4)  # 20 patterns of up to 5**16 codes, over the guard
    with pytest.raises(CodeError):
        run_search(5, 6, 3, family="short")


def test_systematic_family_on_small_space():
    # q=2, n=4, k=2 systematic: 2^4 = 16 codes, all with pivots 0,1
    rep = run_search(2, 4, 2, family="systematic", min_tuple=2, verify=False)
    assert rep.codes_scanned == 16
    assert rep.family == "systematic"
    for t in rep.collisions:
        assert len(t.codes) >= 2
        assert sum(t.class_sizes) == t.bucket_size


def random_monomial_image(code, rng):
    q, n = code.modulus, code.length
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, q - 1)) for _ in range(n)]
    rows = tuple(
        tuple(signs[j] * row[perm[j]] % q for j in range(n)) for row in code.rows
    )
    return LinearCode(q, n, rows)


def test_spectrum_transfer_on_monomial_pairs():
    # equal weight distributions force equal lift spectra
    import random

    from toriso.codes import lift, weight_distribution
    from toriso.enumeration import rep_spectrum
    from toriso.lattices import gram

    rng = random.Random(11)
    base = [triplet.code(1), triplet.code(2), LinearCode(5, 6, ((1, 2, 3, 0, 0, 4), (0, 1, 0, 2, 1, 0)))]
    for c in base:
        other = random_monomial_image(c, rng)
        assert weight_distribution(c) == weight_distribution(other)
        sa = rep_spectrum(gram(lift(c)), 30)
        sb = rep_spectrum(gram(lift(other)), 30)
        assert sa.entries == sb.entries
