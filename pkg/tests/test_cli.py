import io
import json
import os

import pytest

from liecat.cli import run
from liecat.io import CORPUS_DIR, bundled_examples, read_json


def call(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def designated(name):
    task = read_json(os.path.join(CORPUS_DIR, name))["task"]
    argv = [task["command"], os.path.join(CORPUS_DIR, name)]
    if "truncate" in task:
        argv += ["--truncate", str(task["truncate"])]
    if "kind" in task:
        argv += ["--kind", task["kind"]]
    return task, argv


@pytest.mark.parametrize("name", bundled_examples())
def test_bundled_tasks(name):
    task, argv = designated(name)
    code, out, err = call(*argv, "--json")
    rep = json.loads(out)
    if task["expect"] == "pass":
        assert code == 0, out
    else:
        assert code == 1
        bad = [c for c in rep["checks"] if not c["passed"]][0]
        assert bad["law"] == task["law"]
        assert tuple(bad["witness"]) == tuple(task["witness"])


def test_examples_path_resolves_to_bundle():
    code, out, _ = call("check-lie", "examples/sl2.json")
    assert code == 0 and "PASS" in out


def test_uea_dim_10():
    code, out, _ = call("uea", "--truncate", "2", "examples/sl2.json", "--json")
    assert code == 0
    assert json.loads(out)["data"]["dim"] == 10


def test_broken_sl2_text_witness():
    code, out, _ = call("check-lie", "examples/broken_sl2.json")
    assert code == 1
    assert "witness=(h, e, f)" in out


@pytest.mark.parametrize("name", bundled_examples())
def test_byte_identical_json(name):
    _, argv = designated(name)
    a = call(*argv, "--json")[1]
    b = call(*argv, "--json")[1]
    assert a == b


def test_json_key_order_stable():
    out = call("check-lie", "examples/sl2.json", "--json")[1]
    assert list(json.loads(out)) == sorted(json.loads(out))


def test_timing_opt_in():
    out = call("check-lie", "examples/sl2.json", "--json")[1]
    assert "wall_time_s" not in out
    out = call("check-lie", "examples/sl2.json", "--json", "--timing")[1]
    assert "wall_time_s" in json.loads(out)["data"]


def sl2_doc():
    return read_json(os.path.join(CORPUS_DIR, "sl2.json"))


def test_duplicate_name(tmp_path):
    doc = sl2_doc()
    doc["algebra"]["basis"].append({"name": "h"})
    code, _, err = call("check-lie", write(tmp_path, doc))
    assert code == 2 and "'h'" in err and "$.algebra.basis" in err


def test_unknown_name_path(tmp_path):
    doc = sl2_doc()
    doc["bracket"].append(["h", "q", "e", 1])
    code, _, err = call("check-lie", write(tmp_path, doc))
    assert code == 2
    assert f"$.bracket[{len(doc['bracket']) - 1}]" in err and "q" in err


def test_empty_basis_is_zero_object(tmp_path):
    doc = {"algebra": {"category": "vect", "basis": []}, "bracket": []}
    code, out, _ = call("check-lie", write(tmp_path, doc), "--json")
    assert code == 0 and json.loads(out)["data"]["dim"] == 0


def test_float_rejected(tmp_path):
    doc = sl2_doc()
    doc["bracket"][0][3] = 2.0
    code, _, err = call("check-lie", write(tmp_path, doc))
    assert code == 2 and "floating" in err


def test_malformed_json(tmp_path):
    code, _, err = call("check-lie", write(tmp_path, "{not json"))
    assert code == 2 and "malformed" in err


def test_fraction_scalars(tmp_path):
    doc = sl2_doc()
    doc["bracket"] = [[a, b, c, str(k) + "/1"] for a, b, c, k in doc["bracket"]]
    assert call("check-lie", write(tmp_path, doc))[0] == 0


def test_mixed_fields(tmp_path):
    doc = read_json(os.path.join(CORPUS_DIR, "affine_point.json"))
    doc["algebras"]["B"]["field"] = "F3"
    code, _, err = call("split-to-action", write(tmp_path, doc))
    assert code == 2


def test_unknown_command():
    assert call("frobnicate", "x.json")[0] == 2


def test_missing_file():
    code, _, err = call("check-lie", "/nonexistent/zzz.json")
    assert code == 2 and "zzz" in err


def test_field_override(tmp_path):
    # heisenberg is a Lie algebra over every field
    code, out, _ = call("uea", "examples/heisenberg.json", "--field", "F2", "--truncate", "2", "--json")
    assert code == 0
    code, _, err = call("check-lie", "examples/sl2.json", "--field", "F4")
    assert code == 2


def test_strict_flag(tmp_path):
    doc = {"algebra": {"category": "vect", "field": "F2", "basis": [{"name": "x"}, {"name": "y"}]},
           "bracket": [["x", "x", "y", 1]]}
    p = write(tmp_path, doc)
    assert call("check-lie", p)[0] == 0
    assert call("check-lie", p, "--strict")[0] == 1


def test_seed_env(monkeypatch):
    monkeypatch.setenv("LIECAT_SEED", "7")
    out = call("adjoint-check", "examples/nilpotent_point.json", "--json", "--samples", "3")[1]
    assert json.loads(out)["data"]["seed"] == 7
    out = call("adjoint-check", "examples/nilpotent_point.json", "--json", "--seed", "3",
               "--samples", "3")[1]
    assert json.loads(out)["data"]["seed"] == 3
    monkeypatch.setenv("LIECAT_SEED", "abc")
    assert call("adjoint-check", "examples/nilpotent_point.json")[0] == 2


def test_adjoint_check_enumerate_mode(tmp_path):
    doc = read_json(os.path.join(CORPUS_DIR, "nilpotent_point.json"))
    code, out, _ = call("adjoint-check", write(tmp_path, doc), "--mode", "enumerate-f2",
                        "--field", "F2", "--json", "--samples", "3")
    rep = json.loads(out)
    assert code == 0, out
    assert rep["data"]["count_point_homs"] == rep["data"]["count_lie_homs"]


def test_affine_point_adjoint_check_guard():
    code, out, _ = call("adjoint-check", "examples/affine_point.json", "--truncate", "3", "--json")
    assert code == 1
    assert json.loads(out)["checks"][0]["law"] == "nilpotency-guard"


@pytest.mark.parametrize("cmd", ["hopf-check", "primitives", "check-monoid"])
def test_structure_commands_on_sl2(cmd):
    code, out, _ = call(cmd, "examples/sl2.json", "--truncate", "2", "--json")
    assert code == 0, out


def test_primitives_report():
    out = call("primitives", "examples/sl2.json", "--truncate", "2", "--json")[1]
    assert json.loads(out)["data"]["dim"] == 3


def test_enumerate_requires_f2(tmp_path):
    doc = read_json(os.path.join(CORPUS_DIR, "dual_numbers_f2.json"))
    doc["source"]["field"] = "Q"
    doc["target"]["object"]["field"] = "Q"
    code, _, err = call("enumerate-homs", write(tmp_path, doc), "--kind", "monoid")
    assert code == 2 and "F2" in err


def test_lp_exponent_rejected():
    code, _, err = call("uea", "examples/lp_module.json")
    assert code == 2


def test_text_summarizes_long_data():
    out = call("uea", "examples/sl2.json", "--truncate", "2")[1]
    assert "use --json" in out
