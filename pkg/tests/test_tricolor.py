import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from impartial_rank.perms import Permutation, RankingProfile, lex_rank, lex_unrank, replace
from impartial_rank.tricolor import (
    CUTTING_N5_WITNESS_K,
    CUTTING_N5_WITNESS_K2,
    CuttingFamily,
    MatrixTriple,
    RelabeledMechanism,
    cutting_family,
    diagonal,
    ell_index,
    example_triple,
    matrix_entry,
    nondecisive_position,
    sweep_decisive_triples,
    tricolor_mechanism,
    verify_cutting_family,
    verify_matrix_triple,
    wu_mechanism_rank,
)


def profiles(n):
    return st.lists(st.permutations(list(range(n))), min_size=n, max_size=n).map(RankingProfile.of)


@pytest.fixture(scope="module")
def t5():
    return MatrixTriple(cutting_family(5))


# ------------------------------------------------------------ cutting families


def test_n5_family_sets():
    f = cutting_family(5)
    assert [sorted(s) for s in f.sets[0]] == [[0, 1, 2], [0, 3, 4], [1, 3], [2, 4]]
    assert f.sets[1][0] == {0, 1, 3}
    assert f.sets[2][0] == {0, 1, 4}


def test_circular_family_members():
    assert cutting_family(6).sets[0][4] == {4, 5, 0}
    assert cutting_family(7).sets[2][5] == {5, 1, 2}


@pytest.mark.parametrize("n", range(5, 13))
def test_families_verify(n):
    assert verify_cutting_family(cutting_family(n)).ok


def test_witness_table_isolates_each_agent():
    f = cutting_family(5)
    for i in range(3):
        for u in range(5):
            k, k2 = CUTTING_N5_WITNESS_K[i][u], CUTTING_N5_WITNESS_K2[i][u]
            assert f.sets[i][k] & f.sets[i][k2] == {u}


def test_degenerate_family_fails():
    f = CuttingFamily(5, (({0},), ({0},), ({1},)))
    v = verify_cutting_family(f)
    assert not v.ok
    # separation is checked first; the containment failure shows up once separation holds
    sep = [frozenset({u}) for u in range(5)]
    g = CuttingFamily(5, (tuple(sep), tuple(sep), tuple(sep)))
    assert verify_cutting_family(g).condition == "non-containment"


def test_separation_failure_reports_pair():
    f = cutting_family(6)
    broken = CuttingFamily(6, (f.sets[0][:1], f.sets[1], f.sets[2]))
    v = verify_cutting_family(broken)
    assert v.condition == "separation" and v.witness[0] == 0


def test_family_json_roundtrip():
    f = cutting_family(8)
    assert CuttingFamily.from_json(f.to_json()) == f
    assert cutting_family(5).to_json()["sets"]["0"] == [[0, 1, 2], [0, 3, 4], [1, 3], [2, 4]]


def test_family_rejects_out_of_range():
    with pytest.raises(ValueError):
        CuttingFamily(5, (({5},), (), ()))
    with pytest.raises(ValueError):
        cutting_family(4)


# ------------------------------------------------------------ diagonals and entries


def test_diagonal_examples():
    assert diagonal(5, 0, 0) == 0
    assert diagonal(5, 2, 0) == 2
    assert diagonal(5, 1, 119) == 3
    with pytest.raises(ValueError):
        diagonal(5, 3, 0)


def test_ell_example(t5):
    p = next(p for p in range(120) if t5.diagonal(0, p) == 3 and t5.diagonal(1, p) == 1)
    assert ell_index(cutting_family(5), 0, p) == 1
    assert t5.ell(0, p) == t5.ell(0, p)


def test_ell_exists_everywhere(t5):
    for i in range(3):
        for p in range(120):
            l = t5.ell(i, p)
            s = t5.family.sets[i][l]
            assert t5.diagonal(i, p) in s and t5.diagonal((i + 1) % 3, p) not in s


def test_entries_on_and_off_diagonal(t5):
    for p in range(120):
        for i in range(3):
            assert matrix_entry(t5, i, p, p) == t5.diagonal(i, p)
    for q in range(0, 120, 7):
        for i in range(3):
            assert t5.entry(i, (q + 1) % 120, q) in t5.family.sets[i][t5.ell(i, q)]


@given(st.integers(0, 2), st.integers(0, 119), st.integers(0, 119), st.integers(0, 119))
def test_entries_never_clash_n5(i, p, q, r):
    t = MatrixTriple(cutting_family(5))
    assert t.entry(i, p, q) != t.entry((i + 1) % 3, q, r)


@pytest.mark.parametrize("n", [6, 7])
def test_entries_never_clash_sampled(n):
    t = MatrixTriple(cutting_family(n))
    rng = np.random.default_rng(n)
    m = math.factorial(n)
    for i, p, q, r in zip(rng.integers(0, 3, 3000), *(rng.integers(0, m, (3, 3000)))):
        assert t.entry(int(i), int(p), int(q)) != t.entry((int(i) + 1) % 3, int(q), int(r))


def test_nondecisive_examples(t5):
    for i in (3, 4):
        assert nondecisive_position(t5, i, 0, 0, 0) == i
    taken = {t5.entry(0, 1, 0), t5.entry(1, 0, 0), t5.entry(2, 0, 1)}
    assert nondecisive_position(t5, 3, 0, 1, 0) == min(set(range(5)) - taken)
    with pytest.raises(ValueError):
        nondecisive_position(t5, 2, 0, 1, 0)


# ------------------------------------------------------------ explicit triple


def test_example_triple_satisfies_conditions():
    mats = example_triple()
    diags = [[(p + i) % 5 for p in range(5)] for i in range(3)]
    v = verify_matrix_triple(mats, diags)
    assert v.ok and v.checked == 375


def test_example_triple_mutation_is_caught():
    mats = [[list(row) for row in a] for a in example_triple()]
    diags = [[(p + i) % 5 for p in range(5)] for i in range(3)]
    mats[0][0][0] = (mats[0][0][0] + 1) % 5
    assert verify_matrix_triple(mats, diags).condition == "diagonal"
    mats = [[list(row) for row in a] for a in example_triple()]
    mats[0][0][1] = mats[1][1][0]
    assert verify_matrix_triple(mats, diags).condition == "non-clash"


# ------------------------------------------------------------ mechanism


def test_weak_unanimity_n5():
    mech = tricolor_mechanism(5)
    for p in range(120):
        pi = lex_unrank(5, p)
        assert mech.rank(RankingProfile((pi,) * 5)) == pi


@pytest.mark.parametrize("n", [6, 7])
def test_weak_unanimity_sampled(n):
    mech = tricolor_mechanism(n)
    rng = np.random.default_rng(0)
    for _ in range(200):
        pi = Permutation(tuple(int(x) for x in rng.permutation(n)))
        assert mech.rank(RankingProfile((pi,) * n)) == pi


@given(profiles(5))
def test_rank_matches_entries(profile):
    mech = tricolor_mechanism(5)
    out = wu_mechanism_rank(profile, mech)
    p, q, r = (lex_rank(profile[i]) for i in range(3))
    if not p == q == r:
        t = mech.triple
        assert out.position(0) == t.entry(0, q, r)
        assert out.position(1) == t.entry(1, r, p)
        assert out.position(2) == t.entry(2, p, q)
        assert [out.position(i) for i in (3, 4)] == [nondecisive_position(t, i, p, q, r) for i in (3, 4)]


@given(profiles(6), st.integers(0, 5), st.permutations(list(range(6))))
def test_impartial_n6(profile, i, new):
    mech = tricolor_mechanism(6)
    before = mech.rank(profile)
    after = mech.rank(replace(profile, i, Permutation(tuple(new))))
    assert before.position(i) == after.position(i)
    if i >= 3:
        assert before == after


def test_partial_sweep_passes():
    res = sweep_decisive_triples(tricolor_mechanism(5), range(0, 2))
    assert res["ok"] and res["checked"] == 2 * 120 * 120


def test_rank_errors():
    mech = tricolor_mechanism(5)
    with pytest.raises(ValueError):
        mech.rank(RankingProfile.of([list(range(6))] * 6))
    with pytest.raises(ValueError):
        tricolor_mechanism(4)


@given(profiles(5))
def test_relabeling_moves_the_decisive_agents(profile):
    base = tricolor_mechanism(5)
    mech = RelabeledMechanism(base, (2, 4, 0))
    out = mech.rank(profile)
    assert sorted(out) == list(range(5))
    # agents 1 and 3 are now dummies
    for dummy in (1, 3):
        dev = replace(profile, dummy, Permutation.identity(5))
        assert mech.rank(dev) == out


def test_relabeling_is_weakly_unanimous():
    mech = RelabeledMechanism(tricolor_mechanism(5), (4, 3, 1))
    for perm in itertools.islice(itertools.permutations(range(5)), 0, 120, 11):
        pi = Permutation(perm)
        assert mech.rank(RankingProfile((pi,) * 5)) == pi
    with pytest.raises(ValueError):
        RelabeledMechanism(tricolor_mechanism(5), (0, 0, 1))
