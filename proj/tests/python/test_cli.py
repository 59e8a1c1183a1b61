import json
from fractions import Fraction

from conftest import TIE, TWO_TYPES


def test_solve_and_verify_round_trip(cli, write_json):
    inst = write_json("tie.json", TIE)
    code, out = cli("solve", inst)
    assert code == 0
    eq = json.loads(out)
    assert eq["alpha"] == ["1/2", "1"]
    assert eq["prices"] == ["1"]
    assert "stats" in eq
    code, out = cli("verify", inst, write_json("eq.json", eq))
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_quiet_omits_stats(cli, write_json):
    code, out = cli("solve", "--quiet", write_json("tie.json", TIE))
    assert code == 0
    assert "stats" not in json.loads(out)


def test_tampered_alpha_fails(cli, write_json):
    inst = write_json("tie.json", TIE)
    eq = json.loads(cli("solve", inst)[1])
    eq["alpha"][0] = "1"
    # Buyer 1 now outbids buyer 2, whose half of the good breaks (a).
    code, out = cli("verify", inst, write_json("bad.json", eq))
    assert code == 1
    assert json.loads(out)["first_failure"] == "a"
    # Handing buyer 1 the whole good leaves only the budget violation.
    eq["x"] = [["1"], ["0"]]
    code, out = cli("verify", inst, write_json("bad2.json", eq))
    assert code == 1
    report = json.loads(out)
    assert report["pass"] is False
    assert report["first_failure"] == "c"


def test_oversold_good_is_a_precondition_failure(cli, write_json):
    inst = write_json("tie.json", TIE)
    code, out = cli("verify", inst, write_json("x.json", {"alpha": ["1", "1"], "x": [["1"], ["1/2"]]}))
    assert code == 1
    assert json.loads(out)["first_failure"] == "precondition"


def test_exit_codes(cli, write_json, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli("solve", str(bad))[0] == 2
    assert cli("solve", write_json("neg.json", {"n": 1, "m": 1, "valuations": [[-1]], "budgets": [1]}))[0] == 2
    code, out = cli("gen", "--n", 3, "--c", 5, "--seed", 1)
    assert code == 0
    assert cli("solve", write_json("wide.json", json.loads(out)))[0] == 3
    assert cli("gen", "--n", 0)[0] == 2


def test_by_types_matches_aggregate(cli, write_json):
    code, out = cli("solve", "--by-types", write_json("types.json", TWO_TYPES))
    assert code == 0
    full = json.loads(out)
    agg = json.loads(cli("aggregate", write_json("types.json", TWO_TYPES))[1])
    small = json.loads(cli("solve", write_json("agg.json", agg["aggregated"]))[1])
    for i in range(2):
        assert sum(map(Fraction, full["payments"][i])) == sum(map(Fraction, small["payments"][i]))


def test_gen_determinism_and_ranges(cli):
    a = cli("gen", "--n", 10, "--c", 2, "--seed", 7)
    b = cli("gen", "--n", 10, "--c", 2, "--seed", 7)
    assert a == b and a[0] == 0
    inst = json.loads(cli("gen", "--n", 5, "--m", 40, "--types", 2, "--seed", 3)[1])
    columns = {tuple(row[j] for row in inst["valuations"]) for j in range(40)}
    assert len(columns) == 2
    inst = json.loads(cli("gen", "--n", 8, "--c", 3, "--value-range", "1..100", "--seed", 9)[1])
    for row in inst["valuations"]:
        assert all(1 <= Fraction(v) <= 100 for v in row)


def test_bench_rows(cli):
    code, out = cli("bench", "--n", "3,5", "--c", 1, "--seeds", "1,2")
    assert code == 0
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    assert header[:4] == ["n", "c", "seed", "status"]
    assert len(lines) == 5
    for line in lines[1:]:
        row = dict(zip(header, line.split(",")))
        assert int(row["states_enumerated"]) <= 2 * int(row["n"]) + 1
        assert row["verified"] in ("true", "1")
