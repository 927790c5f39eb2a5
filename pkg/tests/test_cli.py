import io
import json

import pytest

from modcat.cli import run
from modcat.constructors import diagonal_DN
from modcat.modular_data import ModularData


def call(*argv):
    out = io.StringIO()
    code = run(list(map(str, argv)), out=out)
    return code, json.loads(out.getvalue())


@pytest.fixture()
def files(tmp_path):
    paths = {name: tmp_path / f"{name}.json" for name in ("toric", "trivial", "d3", "semion")}
    assert call("build", "double", "--abelian", "2", "-o", paths["toric"])[0] == 0
    assert call("build", "trivial", "-o", paths["trivial"])[0] == 0
    assert call("build", "dn", "--n", "3", "-o", paths["d3"])[0] == 0
    q = tmp_path / "semion_form.json"
    q.write_text(json.dumps({"group": {"kind": "abelian", "orders": [2]}, "q": {"(1)": "1/4"}}))
    paths["semion_form"] = q
    assert call("build", "pointed", "--q", q, "-o", paths["semion"])[0] == 0
    return paths


def test_verify_toric(files):
    code, rep = call("verify", files["toric"])
    assert code == 0 and rep["status"] == "pass"
    f = rep["findings"]
    assert f["dim"]["c"] == ["4"] and f["dim"]["n"] == 1
    assert f["omega_plus"]["c"] == ["2"] and f["omega_minus"]["c"] == ["2"]
    assert f["omega_plus"]["approx"] == "2"


def test_analyze_d3(files):
    code, rep = call("analyze", files["d3"])
    assert code == 0
    assert rep["findings"]["anomaly_free"] is False
    assert "anomaly-free: false" in rep["summary"]


def test_witt_toric_trivial(files):
    code, rep = call("witt", files["toric"], files["trivial"])
    assert code == 0 and rep["findings"]["equivalent"] is True
    code, rep = call("witt", files["semion"], files["trivial"])
    assert code == 0 and rep["findings"]["equivalent"] is False


def test_reports_are_deterministic(files):
    out1, out2 = io.StringIO(), io.StringIO()
    run(["analyze", str(files["toric"])], out=out1)
    run(["analyze", str(files["toric"])], out=out2)
    assert out1.getvalue() == out2.getvalue()


def test_build_round_trip(files):
    md = ModularData.from_json(json.loads(files["d3"].read_text()))
    assert md == diagonal_DN(3)


def test_build_without_output_embeds_datum():
    code, rep = call("build", "dg", "--group", "S3")
    assert code == 0 and rep["findings"]["rank"] == 8
    assert ModularData.from_json(rep["datum"]).rank == 8


def test_product_and_reverse(files, tmp_path):
    out = tmp_path / "p.json"
    assert call("build", "product", "--left", files["toric"], "--right", files["semion"], "-o", out)[0] == 0
    code, rep = call("factorize", out)
    assert code == 0 and rep["findings"]["prime"] is False
    rev = tmp_path / "r.json"
    assert call("build", "reverse", "--left", files["semion"], "-o", rev)[0] == 0
    code, rep = call("witt", files["semion"], rev)
    assert rep["findings"]["equivalent"] is False


def test_congruence(files):
    code, rep = call("congruence", files["toric"])
    f = rep["findings"]
    assert code == 0 and f["level"] == 2 and f["cosets"] == 6 and f["all_scalars_one"] is True


def test_condense_and_modularize(files):
    code, rep = call("condense", files["toric"], "--subgroup", "1,0")
    assert code == 0 and rep["findings"]["size"] == 1 and rep["findings"]["module_dims"] == [2, 1]
    code, rep = call("modularize", files["semion_form"])
    assert code == 0 and rep["findings"]["center_type"] == "modular"


def test_modularize_failure_is_exit_1(tmp_path):
    f = tmp_path / "fermion.json"
    f.write_text(json.dumps({"group": {"kind": "abelian", "orders": [2]}, "q": {"(1)": "1/2"}}))
    code, rep = call("modularize", f)
    assert code == 1 and rep["findings"]["center_type"] == "almost"


def test_verify_failure_is_exit_1(files, tmp_path):
    doc = json.loads(files["toric"].read_text())
    doc["T"][3] = {"n": 1, "c": ["1"]}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, rep = call("verify", bad)
    assert code == 1 and rep["status"] == "fail"


def test_input_errors_are_exit_2(tmp_path, files):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, rep = call("verify", broken)
    assert code == 2 and "line 1" in rep["findings"]["error"]
    assert call("verify", tmp_path / "missing.json")[0] == 2
    assert call("build", "dn", "--n", "4")[0] == 2
    assert call("condense", files["toric"], "--subgroup", "1,1")[0] == 2
    assert run(["no-such-command"], out=io.StringIO()) == 2


def test_max_rank_guard(files, monkeypatch, tmp_path):
    out = tmp_path / "c5.json"
    call("build", "double", "--abelian", "5", "-o", out)
    assert call("factorize", out)[0] == 2
    code, rep = call("--max-rank", "25", "factorize", out)
    assert code == 0 and len(rep["findings"]["primes"]) == 4
    monkeypatch.setenv("MODCAT_MAX_RANK", "30")
    assert call("factorize", out)[0] == 0


def test_text_mode(files):
    out = io.StringIO()
    assert run(["verify", str(files["toric"]), "--text"], out=out) == 0
    assert out.getvalue().startswith("pass\n")
