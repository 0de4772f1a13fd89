import io
import json

import pytest

from pmwitness import data_io
from pmwitness.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pol(tmp_path):
    p = tmp_path / "pol.csv"
    p.write_text(data_io.fixture_text("polarization.csv"))
    return str(p)


def test_thresholds():
    code, out, _ = call("thresholds")
    assert code == 0
    d = json.loads(out)
    assert {k: v["truncated"] for k, v in d.items()} == {
        "pusey": 0.06, "marvian": 0.1, "parity": 0.007, "pusey_depol": 0.07, "parity_depol": 0.02}


def test_witness_ideal():
    code, out, _ = call("witness", "--ideal")
    d = json.loads(out)
    assert code == 0
    assert d["pusey_raw"] == 0.828427
    assert all(d["verdicts"].values())


def test_oracle_polarization(pol):
    code, out, _ = call("oracle", "--file", pol)
    d = json.loads(out)
    assert code == 0
    assert d["nc_feasible"] is False and d["bodp_gap"] > 0
    assert d["certificate_verified"] is True


def test_oracle_origin_model():
    code, out, _ = call("oracle", "--ideal", "--depol", "1")
    d = json.loads(out)
    assert d["nc_feasible"] is True and "witness_model" in d


def test_simulate_and_ingest(pol):
    code, out, _ = call("simulate", "--prep", "01")
    assert code == 0 and json.loads(out)["stokes"] == [0.707107, -0.707107]
    code, out, _ = call("simulate", "--prep", "00", "--qwp", "22.5", "--hwp", "33.75", "--degrees")
    assert json.loads(out)["stokes"] == [0.707107, 0.707107]
    code, out, _ = call("ingest", "--file", pol)
    assert json.loads(out)["quad"]["01"] == [0.716, -0.714]


def test_sweep_to_file(tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = call("sweep", "--steps", "7", "--beta-step", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 29


def test_dump_lp(tmp_path):
    target = tmp_path / "lp.txt"
    code, _, _ = call("oracle", "--ideal", "--dump-lp", str(target))
    text = target.read_text()
    assert code == 0
    assert text.count("# pmwitness LP v1") == 2
    assert "shape 16 16" in text and "shape 20 28" in text


def test_deterministic_output(pol):
    a = call("witness", "--file", pol)[1]
    b = call("witness", "--file", pol)[1]
    assert a == b and a


@pytest.mark.parametrize("argv,code,prefix", [
    (("witness", "--file", "does-not-exist.csv"), 1, "IOError:"),
    (("frobnicate",), 1, "UsageError:"),
    (("simulate", "--prep", "00", "--depol", "2"), 1, "OutOfRange:"),
])
def test_error_paths(argv, code, prefix):
    c, out, err = call(*argv)
    assert c == code and out == ""
    assert err.startswith(prefix) and err.count("\n") == 1


def test_domain_error_exit_two(tmp_path):
    p = tmp_path / "apart.csv"
    rows = {"00": (0.6, 0.1), "01": (-0.6, 0.5), "10": (-0.5, 0.6), "11": (0.5, 0.1)}
    lines = ["prep,basis,i1,i2"]
    for lab, (x, y) in rows.items():
        lines += [f"{lab},DA,{(1 + x) / 2},{(1 - x) / 2}", f"{lab},RL,{(1 + y) / 2},{(1 - y) / 2}"]
    p.write_text("\n".join(lines) + "\n")
    c, _, err = call("witness", "--file", str(p))
    assert c == 2 and err.startswith("NoEquivalence:")


def test_outside_disk_strict(pol):
    c, _, err = call("--tol-geom", "1e-9", "ingest", "--file", pol)
    assert c == 1 and err.startswith("OutsideDisk:")


def test_verbose_goes_to_stderr():
    c, out, err = call("-v", "thresholds")
    assert c == 0 and "pusey=" in err and json.loads(out)
