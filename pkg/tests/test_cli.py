import json

import pytest

from finsemi.cli import main
from finsemi.formats import dump_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "lz2.txt").write_text("n 2\n0 0\n1 1\n")
    (tmp_path / "triv.txt").write_text("n 1\n0\n")
    (tmp_path / "bad.txt").write_text("n 2\n0 0\n")
    (tmp_path / "t2.txt").write_text("d 2\n1 0\n0 0\n")
    (tmp_path / "aA.dfa").write_text(
        "alphabet a b\nstates 2\ninitial 0\naccepting 1\n0 a 1\n1 a 1\n1 b 1\n")
    (tmp_path / "bstar.dfa").write_text("alphabet a b\nstates 1\ninitial 0\naccepting 0\n0 b 0\n")
    (tmp_path / "all.dfa").write_text("alphabet a b\nstates 1\ninitial 0\naccepting 0\n0 a 0\n0 b 0\n")
    (tmp_path / "eps.dfa").write_text("alphabet a b\nstates 1\ninitial 0\naccepting 0\n")
    (tmp_path / "det.prod").write_text("eps.dfa a all.dfa\n")
    return tmp_path


def test_classify_sg(capsys, files):
    code, out, _ = run(capsys, "classify-sg", str(files / "lz2.txt"))
    assert code == 0 and "min R level: 2" in out
    code, out, _ = run(capsys, "--format", "json", "classify-sg", str(files / "triv.txt"))
    rep = json.loads(out)["report"]
    assert code == 0 and rep["min_r"] == rep["min_l"] == 1
    code, out, _ = run(capsys, "classify-sg", "named:B2", "--format", "json")
    assert json.loads(out)["report"]["in_da"] is False
    code, out, _ = run(capsys, "classify-sg", str(files / "t2.txt"))
    assert code == 0 and "in DA: no" in out


def test_input_errors(capsys, files):
    code, _, err = run(capsys, "classify-sg", str(files / "bad.txt"))
    assert code == 2 and "bad.txt:2" in err
    code, _, err = run(capsys, "classify-sg", str(files / "nope.txt"))
    assert code == 2
    code, _, _ = run(capsys, "classify-sg", "named:nope")
    assert code == 2
    code, _, _ = run(capsys, "check-id", "named:LZ2", "x (y")
    assert code == 2
    code, _, _ = run(capsys, "emit-phi", "7")
    assert code == 2


def test_check_id(capsys):
    code, out, _ = run(capsys, "check-id", "named:B2", "DA")
    assert code == 0 and out.startswith("FAILS, x↦a, y↦b")
    code, out, _ = run(capsys, "check-id", "named:FB2", "x^w = x")
    assert out.startswith("HOLDS")
    code, out, _ = run(capsys, "check-id", "named:trivial", "x y z = z^w")
    assert out.startswith("HOLDS")


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "--budget-assignments", "100", "check-id", "named:FB3", "x y = y x")
    assert code == 3 and "budget" in err


def test_emit_phi(capsys):
    code, out, _ = run(capsys, "emit-phi", "2")
    assert "x2^w (x1^w x2^w x1^w)^w x2^w" in out
    code, out, _ = run(capsys, "--format", "json", "emit-phi", "6")
    data = json.loads(out)
    assert data["R"]["dag_nodes"] == 32 and data["R"]["tree_size"] == 1131 + 2797


def test_quotient_green_band_commands(capsys):
    code, out, _ = run(capsys, "quotient", "named:LZ2", "--side", "K")
    assert code == 0 and "2 -> 1 elements" in out
    code, out, _ = run(capsys, "green", "named:B2")
    assert "J-classes: {a,b,ab,ba} {0}" in out
    code, out, _ = run(capsys, "band-canon", "x1x2x1x2", "x1x2")
    assert "equal in the free band: yes" in out
    code, out, _ = run(capsys, "free-band", "2", "--elements")
    assert "|FB(2)| = 6" in out


def test_language_commands(capsys, files):
    code, out, _ = run(capsys, "--format", "json", "classify-lang", str(files / "aA.dfa"))
    data = json.loads(out)
    assert data["monoid_order"] == 3 and data["report"]["min_r"] == 2
    code, out, _ = run(capsys, "--format", "json", "classify-lang", str(files / "bstar.dfa"))
    assert json.loads(out)["report"]["min_r"] == 1
    code, out, _ = run(capsys, "--format", "json", "classify-lang", str(files / "all.dfa"))
    assert json.loads(out)["monoid_order"] == 1
    code, out, _ = run(capsys, "product-check", str(files / "det.prod"))
    assert code == 0 and "deterministic: yes" in out and "agrees" in out


def test_verify_and_json_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "json", "verify", "free-band",
                       "--corpus-max-order", "2", "--transformations", "0")
    assert code == 0
    assert dump_json(json.loads(out)) == out
    code, out, _ = run(capsys, "verify", "main-theorem", "--corpus-max-order", "0",
                       "--transformations", "0")
    assert code == 0 and "vacuous" in out


def test_verify_is_independent_of_jobs(capsys, tmp_path):
    outs = []
    for jobs in ("1", "2"):
        path = tmp_path / f"r{jobs}.json"
        code, _, _ = run(capsys, "--jobs", jobs, "verify", "nil-corner", "--corpus-max-order", "3",
                         "--transformations", "20", "--output", str(path))
        assert code == 0
        outs.append(path.read_text())
    assert outs[0] == outs[1]
