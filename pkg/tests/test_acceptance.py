"""Acceptance criteria.  Each test is one criterion; the summary prints PASS/FAIL per line."""

import statistics
import time

import numpy as np
import pytest

from impartial_rank import _data
from impartial_rank.axioms import (
    check_impartiality,
    check_individual_full_rank,
    check_monotonicity,
    check_unanimity,
    check_weak_unanimity,
    full_positions_table,
    implication_meta_check,
    replay_witness,
    run_axioms,
)
from impartial_rank.blocking import (
    BlockingSets,
    assemble_g,
    blocking_from_multigraph,
    fixture_mechanism,
    fixture_multigraph,
    lll_margin,
    n4_mechanism,
    positions_from_blocking,
    random_mechanism,
    search_multigraph,
    successor_rho,
    verify_blocking_sets,
    verify_message_conditions,
    verify_multigraph,
)
from impartial_rank.impossibility import (
    N4_VARS,
    check_decoded,
    decode_wu_n4,
    encode_wu_n4,
    refute_impartial_ifr,
    solve_wu_subset,
    unanimity_chain_audit,
    unanimous_profiles,
)
from impartial_rank.perms import Permutation, RankingProfile, all_permutations, lex_rank, replace
from impartial_rank.toys import AntiMonotone, ConstantMechanism, Dictatorship
from impartial_rank.tricolor import (
    CUTTING_N5_WITNESS_K,
    CUTTING_N5_WITNESS_K2,
    cutting_family,
    example_triple,
    sweep_all_triples,
    tricolor_mechanism,
    verify_cutting_family,
    verify_matrix_triple,
)

# regression baseline for the n = 3 refutation search
N3_NODES = 48


def test_criterion_01_blocking_n4():
    t0 = time.perf_counter()
    m = n4_mechanism()
    v = verify_message_conditions(m.rho, m.positions_table)
    assert v.ok and v.checked == 16
    for check in (check_impartiality, check_monotonicity, check_individual_full_rank):
        r = check(m, mode="reduced")
        assert r.holds, r
    assert m.g((0, 1, 0, 0)).image == (0, 3, 1, 2)
    assert m.g((1, 0, 0, 1)).image == (3, 1, 0, 2)
    # agent 0 reaches every position
    assert m.g((0, 1, 0, 0))[0] == 0
    assert m.g((0, 0, 1, 1))[1] == 0
    assert m.g((0, 0, 0, 1))[2] == 0
    assert m.g((0, 0, 0, 0))[3] == 0
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_fixtures_n5_to_n10():
    t0 = time.perf_counter()
    for n in range(5, 11):
        rho, g = fixture_multigraph(n)
        assert verify_multigraph(rho, g).ok, n
        s = blocking_from_multigraph(rho, g)
        v = verify_message_conditions(rho, positions_from_blocking(s, np.arange(1 << n)))
        assert v.ok and v.checked == 1 << n, (n, v)
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.slow
def test_criterion_03_random_construction(note):
    t0 = time.perf_counter()
    for n in range(11, 17):
        assert lll_margin(n) < 1
        rho = successor_rho(n)
        attempts = []
        for seed in range(10):
            g, used = search_multigraph(n, rho, seed, max_retries=1000)
            attempts.append(used)
            assert verify_multigraph(rho, g).ok
            v = verify_blocking_sets(rho, blocking_from_multigraph(rho, g))
            assert v.ok and v.checked == 1 << n
        note(f"n={n}: median retries {statistics.median(attempts)}, max {max(attempts)}, "
             f"lll_margin {lll_margin(n):.3f}")
    assert all(lll_margin(n) < 1 for n in range(11, 200))
    assert time.perf_counter() - t0 < 300


def test_criterion_04_worked_example():
    sets = {}
    for i, per_b in enumerate(_data.PRINTED_BLOCKING_N6):
        for b, row in enumerate(per_b):
            for j, digits in enumerate(row):
                if digits is not None:
                    sets[(b, i, j)] = [int(c) for c in digits]
    s = BlockingSets.from_sets(6, sets)
    assert assemble_g(s, (0, 0, 1, 1, 1, 0)) == Permutation((3, 1, 4, 0, 2, 5))
    assert assemble_g(s, (0, 1, 1, 1, 1, 0)) == Permutation.identity(6)


@pytest.mark.slow
def test_criterion_05_weak_unanimity_n5(note):
    t0 = time.perf_counter()
    res = sweep_all_triples(5, jobs=1)
    assert res["ok"], res
    assert res["checked"] == 120 ** 3
    mech = tricolor_mechanism(5)
    for pi in all_permutations(5):
        assert mech.rank(RankingProfile.unanimous(pi)) == pi
    # non-decisive agents: the output depends on the decisive rankings alone
    rng = np.random.default_rng(0)
    perms = list(all_permutations(5))
    for _ in range(500):
        prof = RankingProfile(tuple(perms[int(k)] for k in rng.integers(0, 120, 5)))
        i = int(rng.integers(3, 5))
        dev = replace(prof, i, perms[int(rng.integers(0, 120))])
        assert mech.rank(dev) == mech.rank(prof)
    elapsed = time.perf_counter() - t0
    note(f"{res['checked']} decisive triples, {elapsed:.1f}s single worker")
    assert elapsed < 120


def test_criterion_06_cutting_families():
    t0 = time.perf_counter()
    for n in range(5, 13):
        assert verify_cutting_family(cutting_family(n)).ok, n
    f = cutting_family(5)
    expected = (
        ({0, 1, 2}, {0, 3, 4}, {1, 3}, {2, 4}),
        ({0, 1, 3}, {0, 2, 4}, {1, 4}, {2, 3}),
        ({0, 1, 4}, {0, 2, 3}, {1, 2}, {3, 4}),
    )
    assert f.sets == tuple(tuple(frozenset(s) for s in color) for color in expected)
    assert f.sets[0][1] & f.sets[0][2] == {3}
    for i in range(3):
        for u in range(5):
            k, k2 = CUTTING_N5_WITNESS_K[i][u], CUTTING_N5_WITNESS_K2[i][u]
            assert f.sets[i][k] & f.sets[i][k2] == {u}
            # separation from every other agent follows
            for v in range(5):
                if v != u:
                    assert any(u in s and v not in s for s in (f.sets[i][k], f.sets[i][k2]))
    assert time.perf_counter() - t0 < 1.0


def test_criterion_07_example_triple():
    mats = example_triple()
    diags = [[(p + i) % 5 for p in range(5)] for i in range(3)]
    assert sum(mats[i][p][p] == diags[i][p] for i in range(3) for p in range(5)) == 15
    v = verify_matrix_triple(mats, diags)
    assert v.ok and v.checked == 3 * 5 ** 3


def test_criterion_08_refutation(note):
    t0 = time.perf_counter()
    assert refute_impartial_ifr(2).status == "UNSAT"
    plain = refute_impartial_ifr(3)
    pruned = refute_impartial_ifr(3, rotation_pruning=True)
    free = refute_impartial_ifr(3, ifr=False)
    assert plain.status == pruned.status == "UNSAT"
    assert free.status == "SAT"
    note(f"n=3 nodes: {plain.nodes} plain, {pruned.nodes} with rotation pruning, {free.nodes} without IFR")
    assert plain.nodes == N3_NODES
    assert time.perf_counter() - t0 < 300


def test_criterion_09_unanimity_audit(note):
    t0 = time.perf_counter()
    for mech in (n4_mechanism(), tricolor_mechanism(5)):
        w = unanimity_chain_audit(mech)
        assert w is not None and w.kind == "unanimity"
        r = check_unanimity(mech, mode="sampled", trials=0, profiles=[w.profile])
        assert r.violated and r.witness["pair"] == list(w.pair)
        assert replay_witness(mech, r)
        note(f"n={mech.n}: chain step {w.step}, pair {w.pair}")
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.slow
def test_criterion_10_implication_lattice():
    suites = {
        "blocking-n4": run_axioms(n4_mechanism()),
        "constant-3": run_axioms(ConstantMechanism(Permutation((2, 0, 1)))),
        "constant-5": run_axioms(ConstantMechanism(Permutation.identity(5)), trials=200),
        "dictatorship-3": run_axioms(Dictatorship(3)),
        "dictatorship-6": run_axioms(Dictatorship(6, 2), trials=200),
        "anti-monotone": run_axioms(AntiMonotone()),
    }
    for n in (5, 6, 7):
        suites[f"blocking-n{n}"] = run_axioms(fixture_mechanism(n), trials=200)
    suites["blocking-n11"] = run_axioms(random_mechanism(11, seed=0), trials=200)
    wu = tricolor_mechanism(5)
    suites["weak-unanimity-5"] = {
        "impartiality": check_impartiality(wu, mode="sampled", trials=500),
        "individual-full-rank": check_individual_full_rank(wu),
        "weak-unanimity": check_weak_unanimity(wu),
        "unanimity": check_unanimity(wu),
    }
    for name, reports in suites.items():
        assert implication_meta_check(reports), name
    assert suites["weak-unanimity-5"]["weak-unanimity"].holds
    assert suites["weak-unanimity-5"]["individual-full-rank"].holds
    assert suites["dictatorship-3"]["unanimity"].holds
    assert suites["constant-3"]["individual-full-rank"].violated


@pytest.mark.slow
def test_criterion_11_reduced_matches_full():
    t0 = time.perf_counter()
    m = n4_mechanism()
    table = full_positions_table(m)
    assert table.shape == (24,) * 4 + (4,)
    for check in (check_impartiality, check_individual_full_rank):
        full = check(m, mode="exhaustive", table=table)
        reduced = check(m, mode="reduced")
        assert full.mode == "exhaustive" and reduced.mode == "reduced-exhaustive"
        assert full.verdict == reduced.verdict == "holds"
    assert time.perf_counter() - t0 < 120


def test_criterion_12_n4_encoding():
    enc = encode_wu_n4()
    assert enc.num_vars == N4_VARS == 221_184
    res, sub = solve_wu_subset(unanimous_profiles())
    assert res.status == "SAT"
    pm = decode_wu_n4(res.model, sub)
    assert check_decoded(pm, sub)
    # every unanimous profile decodes to its own ranking
    for prof in unanimous_profiles():
        assert pm.place(tuple(lex_rank(p) for p in prof)) == prof[0].inverse
