import json
import subprocess
import sys

import pytest
from hypothesis import given

from semfact import serialize
from semfact.cli import main, run_command
from semfact.corpus import corpus, data_dir, entry
from semfact.fincat import find_isomorphism, poset

from conftest import small_categories_st

DATA = data_dir()


def path(name):
    return str(DATA / f"{name}.json")


def test_compare_bang_exits_one():
    code, report = run_command(["compare", path("bang_disc2")])
    assert code == 1
    assert report["verdicts"]["preservation"] is False
    assert report["verdicts"]["isomorphic"] is False
    assert report["details"]["constrained_isomorphism_found"] is False


def test_cokernel_id1(tmp_path):
    code, report = run_command(["cokernel", path("id1"), "--out", str(tmp_path)])
    assert code == 0
    assert report["counts"]["bb"] == {"objects": 2, "morphisms": 3}
    assert report["counts"]["bbb"] == {"objects": 3, "morphisms": 6}
    bb = serialize.load_category(tmp_path / "bb.json")
    bbb = serialize.load_category(tmp_path / "bbb.json")
    assert find_isomorphism(bb, poset(2)) and find_isomorphism(bbb, poset(3))
    for name in ("d0", "d1", "s0", "D0", "D1", "D2"):
        serialize.load_functor(tmp_path / f"{name}.json")
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["exit_code"] == 0 and rep["bounds"]["certification_skipped"] is False


def test_validate_broken_names_pair(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({
        "objects": ["0", "1", "2"],
        "morphisms": [{"id": "f", "src": "0", "dst": "1"}, {"id": "g", "src": "1", "dst": "2"}],
        "composition": [],
    }))
    assert main(["validate", str(broken)]) == 2
    out = capsys.readouterr().out
    assert "missing composite of 'g' after 'f'" in out


def test_validate_rejects_unknown_keys(tmp_path):
    doc = json.loads((DATA / "two.json").read_text())
    doc["extra"] = 1
    f = tmp_path / "x.json"
    f.write_text(json.dumps(doc))
    assert run_command(["validate", str(f)])[0] == 2


def test_validate_bad_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, report = run_command(["validate", str(f)])
    assert code == 2 and "not valid JSON" in report["error"]


def test_validate_corpus_files():
    code, report = run_command(["validate"] + [str(e.path) for e in corpus()])
    assert code == 0


def test_bound_exceeded_exit_code():
    code, report = run_command(["compare", path("s0"), "--max-candidates", "5"])
    assert code == 3 and "exceeds limit 5" in report["error"]


def test_skip_certify_is_recorded():
    code, report = run_command(["descent", path("d0"), "--skip-certify"])
    assert code == 0 and report["bounds"]["certification_skipped"] is True
    assert report["details"]["certificate"] == {}


def test_codensity_and_em_roundtrip(tmp_path):
    code, _ = run_command(["codensity", path("d0"), "--out", str(tmp_path)])
    assert code == 0
    code, report = run_command(["em", str(tmp_path / "codensity.json")])
    assert code == 0 and report["counts"]["algebras"] == {"objects": 1, "morphisms": 1}


def test_codensity_missing_exits_one(tmp_path):
    run_command(["cokernel", path("d1"), "--out", str(tmp_path)])
    code, report = run_command(["codensity", str(tmp_path / "d0.json")])
    assert code == 1 and report["verdicts"]["codensity_exists"] is False


@pytest.mark.parametrize("cmd,name,code", [("monadicity", "d0", 0), ("monadicity", "s0", 1),
                                           ("comonadicity", "d1", 0), ("comonadicity", "d0", 1),
                                           ("factorize", "bang_disc2", 0), ("opcomma", "bang_disc2", 0)])
def test_verdict_exit_codes(cmd, name, code):
    assert run_command([cmd, path(name)])[0] == code


def test_crosscheck_random_small():
    code, report = run_command(["crosscheck", "--seed", "3", "--count", "10", "--skip-certify"])
    assert code == 0 and report["counts"]["instances"] == 10


def test_corpus_matches_manifest():
    code, report = run_command(["corpus"])
    assert code == 0, report["details"]["mismatches"]


def test_json_format(capsys):
    main(["opcomma", path("id1"), "--format", "json"])
    rep = json.loads(capsys.readouterr().out)
    assert rep["counts"]["opcomma"] == {"objects": 2, "morphisms": 3}
    assert set(rep["inputs"]) == {path("id1")}


def test_output_is_bit_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_command(["cokernel", path("bang_disc2"), "--out", str(a)])
    run_command(["cokernel", path("bang_disc2"), "--out", str(b)])
    for name in ("bb.json", "bbb.json", "D1.json", "s0.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


@given(small_categories_st())
def test_category_roundtrip_bit_identical(C):
    text = serialize.dumps(serialize.category_document(C))
    again = serialize.dumps(serialize.category_document(serialize.validate_category(json.loads(text))))
    assert text == again


def test_provenance_is_allowed():
    assert entry("two").load().size == (2, 3)


def test_console_script_module():
    out = subprocess.run([sys.executable, "-m", "semfact.cli", "validate", path("one")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "verdict one.json valid: true" in out.stdout
