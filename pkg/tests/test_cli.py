import json
import random

import pytest

from hodgemot.cli import main, run
from hodgemot.descent import FIXTURES, GluingSpec, builtin_fixture
from hodgemot.io import Document, dumps, load, loads
from hodgemot.motive import hodge_motive, isogenous

from helpers import rand_assembly, rand_gluing, rand_one_motive


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def _mhs_doc(payload, d=1):
    return {"schema": 1, "d": d, "kind": "mhs", "payload": payload}


TATE = {"rank": 1, "weights": {"2": [[1]]}, "hodge": {"1": [[1]]}}
NON_NESTED = {"rank": 2, "weights": {"0": [[1, 0]], "1": [[0, 1]], "2": [[1, 0], [0, 1]]},
              "hodge": {"0": [[1, 0], [0, 1]]}}


def test_validate_fixtures_ok():
    for name in FIXTURES:
        code, out, err = run(["validate", name])
        assert code == 0 and err == ""
        assert "valid" in out


def test_exit_codes(tmp_path):
    ok = _write(tmp_path, "tate.json", _mhs_doc(TATE))
    assert run(["hodge-numbers", ok])[0] == 0
    bad = _write(tmp_path, "nested.json", _mhs_doc(NON_NESTED))
    code, _, err = run(["validate", bad])
    assert code == 2
    assert "W_0" in err and "W_1" in err
    code, _, err = run(["motive", "srinivas", "-p", "2", "-n", "5"])
    assert code == 3 and err.startswith("unsupported")
    broken = _write(tmp_path, "broken.json", "{\"schema\": 1,")
    assert run(["validate", broken])[0] == 4
    assert run(["validate", str(tmp_path / "missing.json")])[0] == 4


def test_float_literals_rejected(tmp_path):
    text = json.dumps(_mhs_doc(TATE)).replace("[[1]]}", "[[1.0]]}", 1)
    path = _write(tmp_path, "float.json", text)
    code, _, err = run(["validate", path])
    assert code == 4 and "exact rationals required" in err
    assert run(["validate", _write(tmp_path, "exp.json", text.replace("1.0", "1e0"))])[0] == 4


def test_json_output_is_deterministic(tmp_path):
    a = run(["motive", "srinivas", "-p", "2", "--json"])[1]
    b = run(["motive", "srinivas", "-p", "2", "--json"])[1]
    assert a == b
    rep = json.loads(a)
    assert rep["report_schema"] == 1 and rep["command"] == "motive"
    assert rep["result"]["motive"]["lattice_rank"] == 2


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("HODGEMOT_OUTPUT_DIR", str(tmp_path / "reports"))
    assert run(["glue", "bloch"])[0] == 0
    written = tmp_path / "reports" / "bloch.glue.json"
    assert written.exists()
    assert json.loads(written.read_text())["source"] == "bloch.json"
    assert run(["validate", "bloch", "--output-dir", str(tmp_path / "flag")])[0] == 0
    assert (tmp_path / "flag" / "bloch.validate.json").exists()


def test_motive_text(capsys):
    assert main(["motive", "srinivas", "-p", "2"]) == 0
    out = capsys.readouterr().out
    assert "lattice rank 2, abelian part 0, full Hodge classes 3" in out
    assert "sqrt(2)" in out
    code, out, _ = run(["motive", "bloch", "-p", "2", "-n", "4"])
    assert code == 0 and "lattice rank 3 → 0" in out


def test_square_check_and_realize(tmp_path):
    code, out, _ = run(["square-check", "srinivas", "-p", "2", "--json"])
    assert code == 0 and json.loads(out)["result"]["square"]["commutes"]
    m = rand_one_motive(random.Random(1), p=1)
    path = _write(tmp_path, "m.json", dumps(Document("one-motive", m, 2)))
    code, out, _ = run(["realize", path, "-p", "1", "--json"])
    assert code == 0
    h = loads(json.dumps(json.loads(out)["result"]["document"])).payload
    assert isogenous(hodge_motive(h, 1).motive, m)


def test_serialization_round_trips():
    rng = random.Random(17)
    for _ in range(40):
        h = rand_assembly(rng, max_rank=6)[0]
        back = loads(dumps(Document("mhs", h, 2))).payload
        assert back.rank == h.rank
        assert back.weight_filtration == h.weight_filtration
        assert back.hodge_filtration == h.hodge_filtration
    for _ in range(30):
        m = rand_one_motive(rng, p=1)
        back = loads(dumps(Document("one-motive", m, 2))).payload
        assert isogenous(back, m) and back.u == m.u
    for _ in range(30):
        g = rand_gluing(rng)
        text = dumps(Document("gluing", g, 2))
        back = loads(text).payload
        assert isinstance(back, GluingSpec) and sorted(back.pieces) == sorted(g.pieces)
        assert dumps(Document("gluing", back, 2)) == text


def test_fixture_files_round_trip():
    from hodgemot.descent import fixture_path
    for name in FIXTURES:
        doc = load(fixture_path(name))
        assert loads(dumps(doc)).payload.pieces.keys() == builtin_fixture(name).pieces.keys()


@pytest.mark.parametrize("argv", [["validate"], ["motive", "bloch"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as e:
        run(argv)
    assert e.value.code == 2
