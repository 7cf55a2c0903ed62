import json

import pytest

from impartial_rank.cli import FIXTURES, main
from impartial_rank.impossibility import N4_VARS
from impartial_rank.sat import parse_dimacs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def first_json(out):
    return json.loads(out.splitlines()[0])


@pytest.fixture
def profile_file(tmp_path):
    def make(rankings):
        p = tmp_path / "profile.json"
        p.write_text(json.dumps({"n": len(rankings), "rankings": rankings}))
        return str(p)

    return make


def test_rank_weak_unanimity(capsys, profile_file):
    path = profile_file([[4, 3, 2, 1, 0]] * 5)
    code, out, _ = run(capsys, "rank", "--mechanism", "weak-unanimity", "--n", "5", "--profile", path)
    assert code == 0
    assert first_json(out)["ranking"] == [4, 3, 2, 1, 0]
    assert "position  agent" in out


def test_rank_blocking_n4(capsys, profile_file):
    # realizes messages (0, 1, 0, 0)
    path = profile_file([[0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3]])
    code, out, _ = run(capsys, "rank", "--mechanism", "blocking", "--n", "4", "--profile", path, "--quiet")
    assert code == 0 and len(out.splitlines()) == 1


def test_rank_bad_profile(capsys, profile_file):
    path = profile_file([[0, 0, 1, 2], [0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3]])
    code, _, err = run(capsys, "rank", "--mechanism", "blocking", "--n", "4", "--profile", path)
    assert code == 2
    assert "rankings[0]" in err and "appears twice" in err


def test_rank_unreadable_json(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "rank", "--mechanism", "blocking", "--n", "4", "--profile", str(p))
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "rank", "--mechanism", "blocking", "--n", "4", "--profile", str(tmp_path / "missing"))
    assert code == 2


def test_rank_size_mismatch(capsys, profile_file):
    path = profile_file([[0, 1, 2, 3, 4]] * 5)
    code, _, _ = run(capsys, "rank", "--mechanism", "blocking", "--n", "4", "--profile", path)
    assert code == 3


def test_verify_blocking_n4(capsys):
    code, out, err = run(capsys, "verify", "--mechanism", "blocking", "--n", "4", "--mode", "reduced")
    assert code == 0
    reports = first_json(out)["reports"]
    assert {r["axiom"] for r in reports} == {"impartiality", "monotonicity", "individual-full-rank"}
    assert all(r["verdict"] == "holds" for r in reports)


def test_verify_violation_exit(capsys):
    code, out, _ = run(capsys, "verify", "--mechanism", "weak-unanimity", "--n", "5", "--axiom", "unanimity")
    assert code == 1
    r = first_json(out)["reports"][0]
    assert r["verdict"] == "violated" and "pair" in r["witness"]


def test_verify_sampled_records_seed(capsys):
    code, out, _ = run(capsys, "verify", "--mechanism", "blocking", "--n", "6", "--mode", "sampled",
                       "--axiom", "impartiality", "--trials", "50", "--sample-seed", "9")
    assert code == 0
    r = first_json(out)["reports"][0]
    assert r["verdict"] == "inconclusive-sampled" and r["seed"] == 9 and r["trials"] == 50


def test_verify_random_and_descriptor(capsys, tmp_path):
    d = tmp_path / "d.json"
    d.write_text(json.dumps({"kind": "blocking-random", "n": 11, "seed": 7}))
    code, out, _ = run(capsys, "verify", "--descriptor", str(d))
    assert code == 0
    assert first_json(out)["mechanism"] == {"kind": "blocking-random", "n": 11, "seed": 7}


def test_verify_toy_needs_axiom(capsys):
    code, _, err = run(capsys, "verify", "--mechanism", "constant", "--n", "3")
    assert code == 3 and "--axiom" in err
    code, _, _ = run(capsys, "verify", "--mechanism", "constant", "--n", "3", "--axiom", "all")
    assert code == 1


def test_verify_infeasible_mode(capsys):
    code, _, _ = run(capsys, "verify", "--mechanism", "blocking", "--n", "7", "--mode", "exhaustive")
    assert code == 3


@pytest.mark.parametrize("argv,code", [
    (["verify", "--mechanism", "blocking", "--n", "21"], 5),
    (["verify", "--mechanism", "blocking-random", "--n", "9", "--seed", "1"], 3),
    (["verify", "--mechanism", "blocking-random", "--n", "12"], 3),
    (["verify", "--mechanism", "blocking", "--n", "3"], 3),
    (["verify", "--mechanism", "blocking", "--n", "5", "--axiom", "fairness"], 3),
    (["graph-search", "--n", "11", "--seed", "7", "--max-retries", "1"], 4),
    (["graph-search", "--n", "25", "--seed", "0"], 5),
    (["graph-search", "--n", "9", "--seed", "0"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_graph_search_is_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "graph-search", "--n", "12", "--seed", "1", "--out", str(a))[0] == 0
    assert run(capsys, "graph-search", "--n", "12", "--seed", "1", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["attempts"] >= 1 and doc["lll_margin"] < 1


@pytest.mark.parametrize("name", FIXTURES)
def test_export_fixtures(capsys, name):
    code, out, _ = run(capsys, "export", "--fixture", name)
    assert code == 0 and json.loads(out)


def test_export_unknown(capsys):
    assert run(capsys, "export", "--fixture", "nope")[0] == 3


def test_export_cutting_format(capsys):
    _, out, _ = run(capsys, "export", "--fixture", "cutting-n5")
    assert json.loads(out)["sets"]["0"] == [[0, 1, 2], [0, 3, 4], [1, 3], [2, 4]]


@pytest.mark.parametrize("n", ["2", "3"])
def test_impossibility(capsys, n):
    code, out, _ = run(capsys, "impossibility", "--n", n)
    assert code == 0 and json.loads(out)["status"] == "UNSAT"


def test_impossibility_flags(capsys):
    _, out, _ = run(capsys, "impossibility", "--n", "3", "--no-ifr")
    assert json.loads(out)["status"] == "SAT"
    _, out, _ = run(capsys, "impossibility", "--n", "3", "--rotation-pruning")
    doc = json.loads(out)
    assert doc["status"] == "UNSAT" and doc["rotation_claim_validated"] is True
    assert run(capsys, "impossibility", "--n", "4")[0] == 3


def test_encode_subset(capsys, tmp_path):
    profiles = tmp_path / "p.json"
    profiles.write_text(json.dumps([[[0, 1, 2, 3]] * 4, [[3, 2, 1, 0]] * 4]))
    cnf = tmp_path / "out.cnf"
    code, out, _ = run(capsys, "impossibility", "--encode-n4", "--profiles", str(profiles), "--out", str(cnf))
    assert code == 0
    doc = json.loads(out)
    parsed = parse_dimacs(cnf.read_text())
    assert parsed.num_vars == N4_VARS == doc["variables"]
    assert len(parsed) == doc["clauses"]
    assert json.loads((tmp_path / "out.cnf.map.json").read_text())["n"] == 4


def test_encode_bad_profiles(capsys, tmp_path):
    profiles = tmp_path / "p.json"
    profiles.write_text(json.dumps([[[0, 1, 2]] * 3]))
    code, _, err = run(capsys, "impossibility", "--encode-n4", "--profiles", str(profiles), "--out", str(tmp_path / "o"))
    assert code == 2


def test_audit(capsys):
    code, out, _ = run(capsys, "audit-unanimity", "--mechanism", "blocking", "--n", "4")
    assert code == 0
    w = first_json(out)["witness"]
    assert w["kind"] == "unanimity" and w["pair"] == [2, 3]
    code, out, _ = run(capsys, "audit-unanimity", "--mechanism", "dictatorship", "--n", "4")
    assert code == 1 and first_json(out)["witness"]["kind"] == "impartiality"


def test_help_lists_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    assert "exit codes" in capsys.readouterr().out
