import itertools
import random
from fractions import Fraction
from math import isqrt

import pytest

from toriso.enumeration import (
    RepSpectrum,
    VectorList,
    enumerate_up_to,
    independent_ladder,
    rep_spectrum,
    shortest_vectors,
)
from toriso.lattices import GramForm, Lattice
from toriso.linalg import DimensionError, Mat
from toriso import triplet


def box_oracle(q: Mat, bound: Fraction) -> dict[tuple[int, ...], Fraction]:
    """Brute-force reference: scan the coordinate box |x_i|^2 <= C * (q^-1)_ii
    that contains the ball, one canonical representative per +- pair."""
    n = q.rows
    inv = q.inverse()
    lims = [isqrt(int(bound * inv.at(i, i))) for i in range(n)]
    out: dict[tuple[int, ...], Fraction] = {}
    for x in itertools.product(*[range(-l, l + 1) for l in lims]):
        if all(c == 0 for c in x):
            continue
        qx = q.apply(x)
        norm = sum((Fraction(a) * b for a, b in zip(x, qx)), Fraction(0))
        if norm > bound:
            continue
        canon = x
        for c in x:
            if c != 0:
                if c < 0:
                    canon = tuple(-y for y in x)
                break
        out[canon] = norm
    return out


def random_spd(rng: random.Random, n: int) -> Mat:
    while True:
        m = Mat.from_rows([[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)])
        q = m.transpose() @ m
        try:
            GramForm(q)
        except Exception:
            continue
        return q


def random_unimodular(rng: random.Random, n: int) -> Mat:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Mat.from_rows(rows)


def test_enumerate_matches_box_oracle_on_random_forms():
    rng = random.Random(20260816)
    for _ in range(40):
        n = rng.choice([2, 2, 3, 3, 4])
        q = random_spd(rng, n)
        bound = Fraction(rng.randrange(1, 26))
        expected = box_oracle(q, bound)
        got = enumerate_up_to(GramForm(q), bound)
        assert dict(got) == expected
        norms = [norm for _, norm in got]
        assert norms == sorted(norms)


def test_enumerate_handles_rational_forms():
    q = GramForm(Mat.from_rows([[Fraction(1, 2)]]))
    got = enumerate_up_to(q, 3)
    assert got == [((1,), Fraction(1, 2)), ((2,), 2)]


def test_enumerate_bound_zero_and_negative():
    q = GramForm(Mat.identity(2))
    assert enumerate_up_to(q, 0) == []
    with pytest.raises(ValueError):
        enumerate_up_to(q, -1)


def test_enumerate_rejects_empty_form():
    with pytest.raises(DimensionError):
        enumerate_up_to(GramForm(Mat(0, 0, ())), 1)


def test_bundled_form_ball_of_radius_three():
    got = enumerate_up_to(triplet.gram_form(1), 3)
    assert got == [((0, 0, 1, 0, 0, 0), 3)]


def test_rep_spectrum_square_lattice():
    spec = rep_spectrum(GramForm(Mat.identity(2)), 25)
    assert spec.count_at(0) == 1
    assert spec.count_at(1) == 4
    assert spec.count_at(2) == 4
    assert spec.count_at(3) == 0
    assert spec.count_at(25) == 12
    assert spec.step == 1
    with pytest.raises(ValueError):
        spec.count_at(26)


def test_rep_spectrum_counts_match_oracle():
    rng = random.Random(99)
    for _ in range(15):
        n = rng.choice([2, 3])
        q = random_spd(rng, n)
        bound = Fraction(rng.randrange(5, 20))
        oracle = box_oracle(q, bound)
        spec = rep_spectrum(GramForm(q), bound)
        tally: dict[Fraction, int] = {}
        for _, norm in oracle.items():
            tally[norm] = tally.get(norm, 0) + 2
        for t, c in spec.items():
            if t == 0:
                assert c == 1
            else:
                assert c == tally.get(Fraction(t), 0)
        assert sum(tally.values()) + 1 == spec.total()


def test_rep_spectrum_counts_are_even_above_zero():
    spec = rep_spectrum(triplet.gram_form(2), 12)
    for t, c in spec.items():
        if t != 0:
            assert c % 2 == 0


def test_rep_spectrum_value_grid_is_complete():
    spec = rep_spectrum(GramForm(Mat.identity(2).scaled(2)), 9)
    assert [t for t, _ in spec.items()] == [0, 2, 4, 6, 8]


def test_rep_spectrum_of_doubled_form_matches_frozen_table():
    spec = rep_spectrum(GramForm(triplet.gram_matrix(1).scaled(2)), triplet.DOUBLED_THRESHOLD)
    table = dict(spec.items())
    assert table == {t: c for t, c in triplet.REP_TABLE_DOUBLED.items()}
    assert len(spec.items()) == 47


def test_rep_spectrum_scaling_invariance():
    rng = random.Random(3)
    q = random_spd(rng, 3)
    base = rep_spectrum(GramForm(q), 11)
    scaled = rep_spectrum(GramForm(q.scaled(3)), 33)
    assert [(3 * t, c) for t, c in base.items()] == list(scaled.items())


def test_rep_spectrum_congruence_invariance():
    rng = random.Random(14)
    for _ in range(10):
        q = random_spd(rng, 3)
        u = random_unimodular(rng, 3)
        conj = u.transpose() @ Mat.from_rows([[Fraction(x) for x in r] for r in q.row_lists()]) @ u
        assert rep_spectrum(GramForm(q), 9).items() == rep_spectrum(GramForm(conj), 9).items()


def test_rep_spectrum_rational_grid():
    spec = rep_spectrum(GramForm(Mat.from_rows([[Fraction(1, 2)]])), 3)
    assert spec.step == Fraction(1, 2)
    assert dict(spec.items()) == {
        0: 1,
        Fraction(1, 2): 2,
        1: 0,
        Fraction(3, 2): 0,
        2: 2,
        Fraction(5, 2): 0,
        3: 0,
    }


def test_shortest_vectors_square_lattice():
    vl = shortest_vectors(Lattice(Mat.identity(2)))
    assert vl.norm == 1
    assert vl.vectors == ((1, 0), (0, 1))
    assert len(vl) == 2


def test_shortest_vectors_of_bundled_lattices():
    vl = shortest_vectors(triplet.lattice(1))
    assert vl.norm == 3
    assert vl.vectors == (triplet.V1,)
    for i in (2, 3):
        assert shortest_vectors(triplet.lattice(i)).norm == 3


def test_shortest_vectors_skewed_basis():
    # same lattice as Z^2, heavily skewed basis
    l = Lattice(Mat.from_rows([[1, 7], [0, 1]]))
    vl = shortest_vectors(l)
    assert vl.norm == 1
    assert set(vl.vectors) == {(1, 0), (0, 1)}


def test_independent_ladder_square_lattice_orders_by_leading_index():
    stages = independent_ladder(Lattice(Mat.identity(2)), 2)
    assert [s.norm for s in stages] == [1, 1]
    assert stages[0].vectors == ((1, 0),)
    assert stages[1].vectors == ((0, 1),)


def test_independent_ladder_rejects_bad_count():
    with pytest.raises(Exception):
        independent_ladder(Lattice(Mat.identity(2)), 3)
    with pytest.raises(Exception):
        independent_ladder(Lattice(Mat.identity(2)), 0)


def test_independent_ladder_of_first_bundled_lattice():
    stages = independent_ladder(triplet.lattice(1), 6)
    assert tuple(s.norm for s in stages) == triplet.LADDER_NORMS
    expected_singletons = {
        3: triplet.V1,
        4: triplet.V2,
        5: triplet.V3,
        8: triplet.V5,
        10: triplet.V6,
    }
    for stage in stages:
        if stage.norm == 7:
            assert set(stage.vectors) == {triplet.V4, triplet.W4}
        else:
            assert len(stage) == 1
            assert stage.vectors[0] == expected_singletons[stage.norm]


def test_ladder_stage_five_is_pinned_by_uniqueness():
    # one norm-8 pair, and only one, extends the span of the first four
    # stages; a near-miss variant of it is not even a lattice vector
    l = triplet.lattice(1)
    assert l.contains(triplet.V5)
    assert not l.contains((1, 0, 1, 2, 1, -1))
    stages = independent_ladder(l, 6)
    assert stages[4].vectors == (triplet.V5,)


def test_vector_list_is_frozen():
    vl = VectorList(norm=1, vectors=((1, 0),))
    with pytest.raises(Exception):
        vl.norm = 2


def test_rep_spectrum_type_round_trip():
    spec = rep_spectrum(GramForm(Mat.identity(1)), 4)
    assert isinstance(spec, RepSpectrum)
    assert spec.bound == 4
    assert spec.count_at(4) == 2
