import json
import subprocess
import sys

import pytest
from conftest import TREFOIL

from knotscheme.cli import EXIT_DATAERR, EXIT_NEGATIVE, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, run
from knotscheme.family import gen_k4_scheme, gen_k5_scheme


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, s in {
        "a0": gen_k4_scheme(1, 0),
        "a1": gen_k4_scheme(1, 1),
        "a3": gen_k4_scheme(1, 3),
        "c": gen_k4_scheme(2, 0),
        "p2": gen_k5_scheme(2),
    }.items():
        p = tmp_path / f"{name}.scheme"
        p.write_text(s.to_json())
        out[name] = str(p)
    ann = tmp_path / "one.ann"
    ann.write_text("b=3\ncut_signs=+ - +\ncup2 o1 o1 o1 cap2 cap1 cup2\n")
    out["ann"] = str(ann)
    bad = tmp_path / "bad.ann"
    bad.write_text("b=3\ncup2 cap2\n")
    out["bad"] = str(bad)
    g = tmp_path / "t.gauss"
    g.write_text(TREFOIL + "\n")
    out["gauss"] = str(g)
    return out


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def test_jones_inline(capsys):
    code, out = call(capsys, "jones", TREFOIL)
    assert code == EXIT_OK and out.out.strip() == "-t^4 + t^3 + t"


def test_jones_json_file(capsys, files):
    code, out = call(capsys, "jones", files["gauss"], "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK and data["crossings"] == 3 and data["writhe"] == 3
    assert data["jones"]["t"] == "-t^4 + t^3 + t"


def test_jones_over_limit(capsys):
    code, out = call(capsys, "jones", TREFOIL, "--max-crossings", "2")
    assert code == EXIT_UNDECIDED and "INCOMPLETE" in out.out


def test_jones_of_scheme_file(capsys, files):
    code, out = call(capsys, "jones", files["ann"])
    assert code == EXIT_OK and out.out.strip() == "-t^4 + t^3 + t"


def test_bad_gauss_is_data_error(capsys):
    code, out = call(capsys, "jones", "1o+ 2u+")
    assert code == EXIT_DATAERR and "invalid input" in out.err


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == EXIT_USAGE
    assert call(capsys, "jones")[0] == EXIT_USAGE
    assert call(capsys, "jones", TREFOIL, "--max-crossings", "0")[0] == EXIT_USAGE
    assert call(capsys, "generate", "--k", "5", "--gamma", "1", "--i", "2")[0] == EXIT_USAGE
    assert call(capsys, "generate", "--k", "4", "--gamma", "1", "--i", "9")[0] == EXIT_USAGE


def test_validate(capsys, files):
    code, out = call(capsys, "validate", files["a1"])
    assert code == EXIT_OK and out.out.startswith("PASS")
    code, out = call(capsys, "validate", files["bad"], "--format", "json")
    assert code == EXIT_NEGATIVE and json.loads(out.out)["status"] == "FAIL"


def test_validate_inline_json(capsys):
    code, _ = call(capsys, "validate", '{"ambient": "S3", "sphere_code": "cup1 | cap1"}')
    assert code == EXIT_OK


def test_validate_missing_file(capsys):
    code, out = call(capsys, "validate", "no/such/file.scheme")
    assert code == EXIT_DATAERR


def test_invariants(capsys, files):
    code, out = call(capsys, "invariants", files["a1"], "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK and data["b"] == 3 and data["index"] == 1
    assert data["derived_invariant"]["status"] == "COMPLETE"
    code, out = call(capsys, "invariants", files["a3"], "--max-crossings", "6")
    assert code == EXIT_UNDECIDED and "crossing limit" in out.out
    code, out = call(capsys, "invariants", files["p2"])
    assert code == EXIT_OK and "b = 4" in out.out


def test_compare_exit_codes(capsys, files):
    assert call(capsys, "compare", files["a0"], files["a1"])[0] == EXIT_NEGATIVE
    assert call(capsys, "compare", files["a1"], files["ann"])[0] == EXIT_UNDECIDED
    assert call(capsys, "compare", files["p2"], files["p2"])[0] == EXIT_OK
    assert call(capsys, "compare", files["a0"], files["p2"])[0] == EXIT_DATAERR


def test_compare_time_reversed(capsys, files):
    code, out = call(capsys, "compare", files["a0"], files["c"], "--time-reversed", "--format", "json")
    assert code == EXIT_NEGATIVE
    assert "time_reversed" in json.loads(out.out)["certificate"]


def test_pairwise(capsys, files):
    code, out = call(capsys, "pairwise", files["a0"], files["a1"], files["c"])
    assert code == EXIT_OK
    assert out.out.split("\n")[0].split() == ["EQ", "NE", "NE"]
    code, _ = call(capsys, "pairwise", files["a1"], files["ann"])
    assert code == EXIT_UNDECIDED


def test_generate_round_trip(capsys, tmp_path):
    target = tmp_path / "g.scheme"
    assert call(capsys, "generate", "--k", "4", "--gamma", "2", "--i", "1", "-o", str(target))[0] == EXIT_OK
    data = json.loads(target.read_text())
    assert data["b"] == 5 and data["ambient"] == "S2xS1"
    code, out = call(capsys, "generate", "--k", "5", "--gamma", "3")
    assert code == EXIT_OK and json.loads(out.out)["b"] == 6


def test_generate_perturb_is_seeded(capsys):
    args = ["generate", "--k", "4", "--gamma", "1", "--i", "1", "--perturb", "6"]
    _, a = call(capsys, *args, "--seed", "4")
    _, b = call(capsys, *args, "--seed", "4")
    _, c = call(capsys, *args)
    assert a.out == b.out
    assert json.loads(a.out)["b"] == json.loads(c.out)["b"] == 3


def test_realize(capsys, files):
    code, out = call(capsys, "realize", files["a1"])
    assert code == EXIT_OK and "handles:" in out.out
    code, out = call(capsys, "realize", files["p2"], "--format", "json")
    assert json.loads(out.out)["flow_class"]["manifold"] == "CP2"
    assert call(capsys, "realize", files["bad"])[0] == EXIT_DATAERR


def test_simplify(capsys):
    code, out = call(capsys, "simplify", "1u- 3u+ 2o- 4u- 3o+ 1o- 4o- 2u-", "--max-crossings", "4")
    assert code == EXIT_OK and "-> 0 crossings" in out.out
    code, out = call(capsys, "simplify", "1o+ 2u- 3o- 1u+ 4o+ 3u- 2o- 4u+", "--bfs-budget", "5", "--format", "json")
    assert code == EXIT_UNDECIDED and json.loads(out.out)["status"] == "INCONCLUSIVE"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotscheme", "jones", TREFOIL], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "-t^4 + t^3 + t"


def test_scheme_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(gen_k5_scheme(1).to_json()))
    code, out = call(capsys, "validate", "-")
    assert code == EXIT_OK and out.out.startswith("PASS")
