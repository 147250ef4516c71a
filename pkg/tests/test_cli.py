import json
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from geocake.cli import main

UNIFORM = [{"x0": "0", "y0": "0", "x1": "1", "y1": "1", "density": "1"}]


def write(path: Path, data) -> str:
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def instance(protocol="walls4", cake=None, players=None) -> dict:
    return {"protocol": protocol, "cake": cake or {"kind": "square"},
            "players": players or [{"agent": "honest", "measure": UNIFORM}] * 2}


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_divide_two_player_square(runner, tmp_path):
    src = write(tmp_path / "two.json", instance("two_square"))
    res = runner.invoke(main, ["divide", src])
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert out["pass"] and min(out["proportions_decimal"]) >= 0.25
    assert [Fraction(p) for p in out["proportions"]] == [Fraction(1, 4)] * 2


def test_divide_writes_transcript_and_svg(runner, tmp_path):
    src = write(tmp_path / "i.json", instance())
    res = runner.invoke(main, ["divide", src, "--out", str(tmp_path / "a.json")])
    assert res.exit_code == 0
    assert json.loads((tmp_path / "a.json").read_text())["protocol"] == "walls4"
    trans = json.loads((tmp_path / "a.transcript.json").read_text())
    assert trans and {"query", "answers", "decision"} <= set(trans[0])
    assert (tmp_path / "a.svg").read_text().lstrip().startswith("<?xml")


def test_outputs_create_missing_directories(runner, tmp_path):
    src = write(tmp_path / "i.json", instance())
    assert runner.invoke(main, ["divide", src, "--out", str(tmp_path / "d" / "a.json")]).exit_code == 0
    assert (tmp_path / "d" / "a.svg").exists() and (tmp_path / "d" / "a.transcript.json").exists()
    res = runner.invoke(main, ["pools", "square", "2", "--out", str(tmp_path / "e" / "p.json")])
    assert res.exit_code == 0 and (tmp_path / "e" / "p.svg").exists()


@pytest.mark.parametrize("text", ["{not json", "[]", json.dumps({"protocol": "walls4"}),
                                  json.dumps(instance("origami")),
                                  json.dumps(instance(players=[{"agent": "honest", "measure": [
                                      {"x0": "0", "y0": "0", "x1": "2", "y1": "1", "density": "1"}]}]))])
def test_divide_schema_errors(runner, tmp_path, text):
    src = write(tmp_path / "bad.json", text)
    assert runner.invoke(main, ["divide", src]).exit_code == 2


def test_divide_plane_needs_four_players(runner, tmp_path):
    src = write(tmp_path / "p.json", instance("plane", {"kind": "plane"},
                                              [{"agent": "honest", "measure": UNIFORM}] * 3))
    res = runner.invoke(main, ["divide", src])
    assert res.exit_code == 3


def test_divide_adversarial_seed_is_reproducible(runner, tmp_path):
    players = [{"agent": "honest", "measure": UNIFORM}] + [{"agent": "adversarial", "measure": UNIFORM}] * 3
    src = write(tmp_path / "adv.json", instance("walls4", players=players))
    a = runner.invoke(main, ["divide", src, "--seed", "4"])
    b = runner.invoke(main, ["divide", src, "--seed", "4"])
    assert a.exit_code == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["honest"] == [0]


def test_divide_corpus_in_parallel(runner, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for name in ("a", "b", "c"):
        write(corpus / f"{name}.json", instance())
    res = runner.invoke(main, ["divide", str(corpus), "--out", str(tmp_path / "out"), "--jobs", "2"])
    assert res.exit_code == 0
    assert sorted(p.name for p in (tmp_path / "out").glob("*.json") if "transcript" not in p.name) == \
        ["a.json", "b.json", "c.json"]
    assert runner.invoke(main, ["divide", str(corpus)]).exit_code == 2


@pytest.mark.parametrize("args,first", [
    (["square", "squares", "2"], "lower 1/4 upper 1/4"),
    (["halfplane", "squares", "4"], "lower 1/6 upper 1/5"),
    (["staircase", "squares", "3", "--k", "2"], "lower 1/6 upper 1/6"),
])
def test_bounds_text(runner, args, first):
    res = runner.invoke(main, ["bounds", *args])
    assert res.exit_code == 0
    assert res.stdout.splitlines()[0] == first


def test_bounds_json_and_errors(runner):
    res = runner.invoke(main, ["bounds", "cube", "cubes", "3", "--d", "2", "--delta", "1", "--json"])
    data = json.loads(res.stdout)
    assert data["upper_only"] and data["lower"] is None
    assert runner.invoke(main, ["bounds", "torus", "squares", "3"]).exit_code == 2


@pytest.mark.parametrize("cake,n,pools,count", [("quarterplane", 3, 5, 2), ("square", 2, 4, 1),
                                                ("quarterplane", 1, 1, 0)])
def test_pools_certify(runner, cake, n, pools, count):
    res = runner.invoke(main, ["pools", cake, str(n), "--certify"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["pool_count"] == pools and data["certified_count"] == count and data["certified"]


def test_pools_rectilinear_builtin(runner, tmp_path):
    res = runner.invoke(main, ["pools", "rectilinear", "3", "--out", str(tmp_path / "l.json")])
    assert res.exit_code == 0
    assert json.loads((tmp_path / "l.json").read_text())["pool_count"] == 7
    assert (tmp_path / "l.svg").exists()


def test_pools_rectilinear_region_file(runner, tmp_path):
    region = {"polygon": [[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]],
              "independent_set": [["1/10", "1/10", "1/5"], ["17/10", "1/10", "1/5"], ["1/10", "17/10", "1/5"]]}
    res = runner.invoke(main, ["pools", "rectilinear", "2", "--region", write(tmp_path / "r.json", region)])
    assert res.exit_code == 0 and json.loads(res.stdout)["pool_count"] == 5
    region["independent_set"] = [["0", "0", "1/5"], ["1/5", "0", "1/5"]]
    res = runner.invoke(main, ["pools", "rectilinear", "2", "--region", write(tmp_path / "r.json", region)])
    assert res.exit_code == 3


def _divided(runner, tmp_path) -> tuple:
    src = write(tmp_path / "i.json", instance())
    out = tmp_path / "a.json"
    assert runner.invoke(main, ["divide", src, "--out", str(out)]).exit_code == 0
    return src, out


def test_verify_round_trip(runner, tmp_path):
    src, out = _divided(runner, tmp_path)
    res = runner.invoke(main, ["verify", str(out), src])
    assert res.exit_code == 0 and json.loads(res.stdout)["pass"]


def test_verify_tampered_overlap(runner, tmp_path):
    src, out = _divided(runner, tmp_path)
    data = json.loads(out.read_text())
    data["pieces"][1] = data["pieces"][0]
    write(out, data)
    res = runner.invoke(main, ["verify", str(out), src])
    assert res.exit_code == 1
    assert any(f.startswith("disjointness") for f in json.loads(res.stdout)["failures"])


def test_verify_raised_bound(runner, tmp_path):
    src, out = _divided(runner, tmp_path)
    achieved = min(Fraction(p) for p in json.loads(out.read_text())["proportions"])
    res = runner.invoke(main, ["verify", str(out), src, "--bound", str(achieved + Fraction(1, 100))])
    assert res.exit_code == 1
    assert any(f.startswith("proportionality") for f in json.loads(res.stdout)["failures"])
    assert runner.invoke(main, ["verify", str(out), src, "--bound", str(achieved)]).exit_code == 0


@pytest.mark.parametrize("protocol,cake,measure", [
    ("fat", {"kind": "rect", "L": "3/2"}, UNIFORM),
    ("walls3", {"kind": "rect", "L": "1/2"},
     [{"x0": "0", "y0": "0", "x1": "1/2", "y1": "1", "density": "1"}]),
    ("staircase", {"kind": "staircase", "corners": [["1", "0"], ["0", "1"]]},
     [{"x0": "1", "y0": "0", "x1": "2", "y1": "2", "density": "1"}]),
    ("halfplane", {"kind": "halfplane"}, UNIFORM),
    ("archipelago", {"kind": "islands", "rects": [[0, 0, 1, 1], [2, 0, 3, 1]]}, UNIFORM),
    ("archipelago", {"kind": "rectilinear", "polygon": [[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]]},
     UNIFORM),
])
def test_divide_every_cake_kind(runner, tmp_path, protocol, cake, measure):
    src = write(tmp_path / "k.json", instance(protocol, cake, [{"agent": "honest", "measure": measure}] * 3))
    res = runner.invoke(main, ["divide", src, "--svg", str(tmp_path / "k.svg")])
    assert res.exit_code == 0, res.output
    assert json.loads(res.stdout)["pass"]
