import itertools
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from impartial_rank.perms import (
    CapacityError,
    ModIndex,
    Permutation,
    ProfileFormatError,
    RankingProfile,
    all_permutations,
    lex_rank,
    lex_unrank,
    profile_from_json,
    profile_to_json,
    replace,
)


def perms(max_n=8):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(n)))).map(lambda xs: Permutation(tuple(xs)))


def test_lex_order_matches_itertools():
    # oracle: itertools.permutations yields lexicographic order
    for n in range(1, 7):
        for idx, t in enumerate(itertools.permutations(range(n))):
            assert lex_rank(Permutation(t)) == idx
            assert lex_unrank(n, idx).image == t


@given(perms())
def test_rank_unrank_roundtrip(p):
    assert lex_unrank(p.n, lex_rank(p)) == p


@given(st.integers(2, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, math.factorial(n) - 1))))
def test_unrank_rank_roundtrip_large(args):
    n, idx = args
    assert lex_rank(lex_unrank(n, idx)) == idx


def test_known_indices():
    assert lex_unrank(5, 0) == Permutation.identity(5)
    assert lex_unrank(5, 119).image == (4, 3, 2, 1, 0)
    assert lex_rank(Permutation((1, 0, 2))) == 2


def test_capacity_and_range():
    with pytest.raises(CapacityError):
        lex_unrank(21, 0)
    with pytest.raises(CapacityError):
        lex_rank(Permutation.identity(21))
    with pytest.raises(IndexError):
        lex_unrank(4, 24)
    with pytest.raises(IndexError):
        lex_unrank(4, -1)


@given(perms())
def test_inverse_is_positions(p):
    for k, agent in enumerate(p):
        assert p.position(agent) == k
    assert p.inverted().inverted() == p
    assert Permutation.from_positions(p.inverse) == p


@pytest.mark.parametrize("bad", [(0, 0, 1), (0, 3, 1), (), (-1, 0)])
def test_invalid_permutations(bad):
    with pytest.raises(ProfileFormatError):
        Permutation(bad)


def test_str_and_swap():
    p = Permutation((3, 1, 4, 0, 2, 5))
    assert str(p) == "(3 1 4 0 2 5)"
    assert p.swap_positions(0, 1).image == (1, 3, 4, 0, 2, 5)


def test_mod_index():
    assert int(ModIndex(4, 5) + 3) == 2
    assert int(ModIndex(0, 3) - 1) == 2
    with pytest.raises(ValueError):
        ModIndex(1, 0)


def test_all_permutations_count():
    assert len(all_permutations(5)) == 120
    assert [lex_rank(p) for p in all_permutations(4)] == list(range(24))


def test_profile_json_roundtrip():
    prof = RankingProfile.of([[0, 1, 2], [2, 1, 0], [1, 0, 2]])
    data = profile_to_json(prof)
    assert profile_from_json(json.dumps(data)) == prof
    assert profile_from_json(data) == prof


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({"n": 3, "rankings": [[0, 0, 1], [0, 1, 2], [0, 1, 2]]}, "rankings[0]: position 1: agent 0 appears twice"),
        ({"n": 3, "rankings": [[0, 1, 2], [0, 1], [0, 1, 2]]}, "rankings[1]: expected 3 entries"),
        ({"n": 2, "rankings": [[0, 1], [0, 1], [0, 1]]}, "has 3 rows but n=2"),
        ({"rankings": [[0, 1], [0, "x"]]}, "rankings[1]: entries must be integers"),
        ({"n": 2}, "missing field 'rankings'"),
        ("{not json", "line 1"),
    ],
)
def test_profile_errors_name_the_field(data, fragment):
    with pytest.raises(ProfileFormatError, match=None) as exc:
        profile_from_json(data)
    assert fragment in str(exc.value)


def test_replace_and_unanimous():
    p = Permutation((1, 2, 0))
    prof = RankingProfile.unanimous(p)
    assert all(r == p for r in prof)
    changed = replace(prof, 1, Permutation.identity(3))
    assert changed[1] == Permutation.identity(3) and changed[0] == p
    with pytest.raises(ProfileFormatError):
        replace(prof, 0, Permutation.identity(4))
    with pytest.raises(ProfileFormatError):
        RankingProfile.of([[0, 1], [0, 1, 2]])
