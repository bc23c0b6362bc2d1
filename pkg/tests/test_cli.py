import io
import json

import pytest

from locint.cli import run


def call(argv, tmp_path, name="out.jsonl"):
    out, err = io.StringIO(), io.StringIO()
    path = tmp_path / name
    code = run(list(argv) + ["--out", str(path)], stdout=out, stderr=err)
    records = [json.loads(line) for line in path.read_text().splitlines()] if path.exists() else []
    return code, out.getvalue(), err.getvalue(), records


def strip_time(record):
    return {k: v for k, v in record.items() if k != "wall_time_ms"}


def test_ttd(tmp_path):
    code, out, _, recs = call(["ttd", "--d", "4"], tmp_path)
    assert code == 0 and out == "384/1\n"
    assert recs[0]["value"] == "384/1" and recs[0]["command"] == "ttd"
    assert set(recs[0]) >= {"command", "params", "value", "seeds", "fixed_point_count", "wall_time_ms"}


def test_co_degree(tmp_path):
    code, out, _, recs = call(["co-degree", "--surface", "p1xp1", "--L", "2,2", "--n", "1", "--seed", "7"], tmp_path)
    assert code == 0 and out == "20/1\n"
    assert recs[0]["fixed_point_count"] == 4 and len(recs[0]["seeds"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["co-degree", "--surface", "p1xp1", "--L", "2,2"],
        ["frobnicate"],
        ["ttd"],
        ["ttd", "--d", "4", "--bogus"],
        ["co-degree", "--surface", "p1xp1", "--L", "x", "--n", "1"],
        ["co-degree", "--surface", "p1xp1", "--L", "2", "--n", "1"],
        ["gottsche", "--n", "2"],
        ["ttd", "--d", "3", "--seed-count", "1"],
        ["p1p1", "--n", "2"],
        ["rk2", "--dprime", "3"],
        ["vd", "--surface", "p1xp1", "--d", "2"],
    ],
)
def test_usage_errors(tmp_path, argv):
    code, out, err, recs = call(argv, tmp_path)
    assert code == 2 and "usage" in err and recs == []


def test_identity_commands(tmp_path):
    assert call(["rk2", "--dprime", "2"], tmp_path)[0] == 0
    code, out, _, recs = call(["p1p1", "--n", "0"], tmp_path, "p0.jsonl")
    assert code == 0 and recs[0]["pass"] is True
    code, out, _, recs = call(["p1p1", "--n", "1", "--all-components"], tmp_path, "p1.jsonl")
    assert code == 0 and recs[0]["value"] == "22/1"


def test_literal_p1p1_n1_exits_one(tmp_path):
    code, out, _, recs = call(["p1p1", "--n", "1"], tmp_path)
    assert code == 1 and recs[0]["pass"] is False
    assert recs[0]["value"] == "20/1" and recs[0]["rhs"] == "22/1"


def test_weights_and_vd(tmp_path):
    assert call(["weights", "--dprime", "2"], tmp_path)[1] == "512/1 s^14\n"
    assert call(["weights"], tmp_path)[1] == "64/1 s^9\n"
    _, out, _, recs = call(["vd", "--surface", "p2", "--d", "3"], tmp_path, "vd.jsonl")
    assert out == "surface_fixed_det 10\nsurface_fixed_divisor 1\n"
    assert recs[0]["value"] == {"surface_fixed_det": "10/1", "surface_fixed_divisor": "1/1"}


def test_gottsche(tmp_path):
    code, out, _, _ = call(["gottsche", "--surface", "p2", "--n", "3"], tmp_path)
    assert code == 0 and out == "22/1\n"


def test_selftest(tmp_path):
    code, out, _, recs = call(["selftest"], tmp_path)
    assert code == 0 and "FAIL" not in out and recs[0]["pass"] is True


def test_results_are_appended(tmp_path):
    call(["ttd", "--d", "3"], tmp_path)
    _, _, _, recs = call(["ttd", "--d", "5"], tmp_path)
    assert [r["value"] for r in recs] == ["3/1", "11250000/1"]


LOCALIZATION_COMMANDS = [
    ["co-degree", "--surface", "p1xp1", "--L", "2,2", "--n", "2"],
    ["co-degree", "--surface", "p2", "--L", "1", "--n", "3"],
    ["gottsche", "--surface", "p1xp1", "--n", "3"],
    ["p1p1", "--n", "1", "--all-components"],
    ["rk2", "--dprime", "2"],
]


@pytest.mark.parametrize("argv", LOCALIZATION_COMMANDS, ids=lambda a: " ".join(a))
def test_determinism(tmp_path, argv):
    a = call(argv + ["--seed", "42"], tmp_path, "a.jsonl")
    b = call(argv + ["--seed", "42"], tmp_path, "b.jsonl")
    assert a[1] == b[1]
    assert strip_time(a[3][0]) == strip_time(b[3][0])


@pytest.mark.parametrize("argv", LOCALIZATION_COMMANDS, ids=lambda a: " ".join(a))
def test_seed_robustness(tmp_path, argv):
    a = call(argv + ["--seed", "1"], tmp_path, "a.jsonl")
    b = call(argv + ["--seed", "18446744073709551615", "--seed-count", "3"], tmp_path, "b.jsonl")
    assert a[3][0]["value"] == b[3][0]["value"]
    if a[3][0]["seeds"]:
        assert a[3][0]["seeds"] != b[3][0]["seeds"]


@pytest.mark.parametrize("argv", LOCALIZATION_COMMANDS, ids=lambda a: " ".join(a))
def test_thread_invariance(tmp_path, argv):
    a = call(argv + ["--threads", "1"], tmp_path, "a.jsonl")
    b = call(argv + ["--threads", "8"], tmp_path, "b.jsonl")
    assert a[1] == b[1]
    assert strip_time(a[3][0]) == strip_time(b[3][0])


def test_cache_dir(tmp_path):
    cache = tmp_path / "cache"
    first = call(["gottsche", "--surface", "p2", "--n", "4", "--cache-dir", str(cache)], tmp_path, "a.jsonl")
    assert (cache / "hilb_p2_4.txt").exists()
    second = call(["gottsche", "--surface", "p2", "--n", "4", "--cache-dir", str(cache)], tmp_path, "b.jsonl")
    assert first[1] == second[1] == "51/1\n"


def test_help_exits_zero(tmp_path, capsys):
    assert run(["--help"]) == 0
