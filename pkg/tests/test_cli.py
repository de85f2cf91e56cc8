import json
import subprocess
import sys

import pytest

from nlw import cli

from conftest import GOLDEN, validate


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def gen(tmp_path, capsys):
    def make(family, *extra):
        path = tmp_path / f"{family}_{len(list(tmp_path.iterdir()))}.json"
        code, _, err = run(capsys, "gen", family, *extra, "-o", path)
        assert code == 0, err
        return path

    return make


def test_gen_writes_valid_state_set(gen):
    path = gen("theorem1", "--n", 5)
    doc = json.loads(path.read_text())
    validate(doc, "state_set")
    assert doc["num_parties"] == 5 and len(doc["states"]) == 3


def test_gen_requires_n(capsys):
    code, _, err = run(capsys, "gen", "theorem1")
    assert code == 2 and "--n" in err


def test_theorem2_precondition_exit(capsys):
    code, _, err = run(capsys, "gen", "theorem2", "--n", 3, "--coeffs", "001")
    assert code == 2 and "011" in err and "010" in err


def test_theorem2_coeffs_json(gen, tmp_path, capsys):
    coeffs = tmp_path / "c.json"
    coeffs.write_text(json.dumps({"001": [0.6, 0], "010": [0, 0.8], "011": [0, 0]}))
    code, _, err = run(capsys, "gen", "theorem2", "--n", 3, "--coeffs-json", coeffs)
    assert code == 2 and "{011,100}" in err


def test_check(gen, capsys):
    path = gen("theorem2", "--n", 3, "--coeffs", "001,010,011")
    code, out, _ = run(capsys, "check", path)
    doc = json.loads(out)
    validate(doc, "check_report")
    assert code == 0 and doc["genuinely_entangled"] == [True, True, False]


def test_certify_theorem1_n6_all_splits(gen, capsys):
    path = gen("theorem1", "--n", 6)
    code, out, _ = run(capsys, "certify", "-i", path, "--jobs", 4)
    doc = json.loads(out)
    validate(doc, "nonlocality_report")
    assert code == 0
    assert len(doc["bipartitions"]) == 31
    assert {b["overlap_sq"] for b in doc["bipartitions"]} == {"1/31"}
    assert doc["overall"] == "genuinely-nonlocal-certified" and doc["strong_nonlocality"]


def test_certify_single_split_exit_codes(gen, capsys):
    path = gen("theorem1", "--n", 4)
    code, out, _ = run(capsys, "certify", path, "--split", "1,3|2,4")
    doc = json.loads(out)
    assert code == 0 and len(doc["bipartitions"]) == 1 and doc["overall"] == "undetermined"
    eq2 = gen("eq2", "--n", 4, "--left", 1, "--right", 3, "--split", "1,2|3,4")
    code, out, _ = run(capsys, "certify", eq2, "--format", "text")
    assert code == 1 and "inapplicable(not-bell-pair)" in out


def test_certify_rejects_two_states(tmp_path, gen, capsys):
    doc = json.loads(gen("bell").read_text())
    doc["states"] = doc["states"][:2]
    p = tmp_path / "two.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "certify", p)
    assert code == 2


def test_sdp_ghosh_and_expectation(gen, capsys):
    path = gen("ghosh")
    code, out, _ = run(capsys, "sdp", path, "--expect-indistinguishable")
    doc = json.loads(out)
    validate(doc, "sdp_report")
    assert code == 0 and abs(doc["primal"] - 0.75) < 1e-5 and not doc["perfect"]
    code, out, _ = run(capsys, "sdp", path, "--states", "1,2", "--expect-indistinguishable")
    assert code == 1 and json.loads(out)["perfect"]


def test_sdp_all_bipartitions(gen, capsys):
    path = gen("example1", "--n", 3)
    code, out, _ = run(capsys, "sdp", path, "--all-bipartitions", "--tol-gap", "1e-4", "--jobs", 3)
    rows = json.loads(out)
    assert code == 0 and [r["split"] for r in rows] == ["1|2,3", "1,2|3", "1,3|2"]
    for r in rows:
        validate(r, "sdp_report")
        assert r["primal"] <= 0.999 and r["dual_bound"] < 1


def test_sdp_bad_states(gen, capsys):
    code, _, err = run(capsys, "sdp", gen("ghosh"), "--states", "1,4")
    assert code == 2


def test_oplm(gen, capsys):
    path = gen("bell")
    code, out, _ = run(capsys, "oplm", path, "--exact")
    assert code == 0 and json.loads(out) == [
        {"split": "1|2", "left_dim": 1, "right_dim": 1, "trivial_left": True, "trivial_right": True}
    ]
    code, out, _ = run(capsys, "oplm", gen("theorem1", "--n", 3), "--party", 2)
    assert json.loads(out)["dimension"] == 1


def test_tiles_golden(gen, capsys):
    path = gen("example1", "--n", 3)
    code, out, _ = run(capsys, "tiles", path, "--split", "1,2|3")
    assert code == 0 and out == (GOLDEN / "fig2a.txt").read_text()
    code, out, _ = run(capsys, "tiles", path, "--split", "1,2|3", "--format", "svg")
    assert out.startswith("<svg")


def test_report(gen, capsys):
    path = gen("theorem2", "--n", 3, "--coeffs", "001,010,011")
    code, out, _ = run(capsys, "report", path, "--tol-gap", "1e-4")
    doc = json.loads(out)
    validate(doc, "report")
    validate(doc["certificates"], "nonlocality_report")
    assert code == 0 and doc["strong_nonlocality"] and doc["lemma1"]["strongly_nonlocal"]
    assert all("primal" in e for e in doc["sdp"])


def test_report_skips_large_and_negative_exit(gen, capsys):
    path = gen("eq2", "--n", 5, "--left", 1, "--right", 5, "--split", "1,2|3,4,5")
    code, out, _ = run(capsys, "report", path, "--max-iter", "200")
    doc = json.loads(out)
    validate(doc, "report")
    assert code == 1 and doc["overall"] == "undetermined"
    assert all("skipped" in e for e in doc["sdp"])


def test_bad_inputs(tmp_path, capsys):
    code, _, err = run(capsys, "check")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", bad)[0] == 2
    code, _, err = run(capsys, "certify", tmp_path / "missing.json")
    assert code == 2
    code, _, err = run(capsys, "gen", "bell", "-o", tmp_path / "no" / "such" / "dir.json")
    assert code == 2 and "cannot write" in err


def test_exact_flag_rejects_float(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"num_parties": 2, "states": [{"terms": [{"bits": "00", "amp": [1, 0]}]}]}))
    assert run(capsys, "check", p, "--exact")[0] == 2
    assert run(capsys, "check", p)[0] == 0


def test_dim_cap_env(gen, capsys, monkeypatch):
    path = gen("theorem1", "--n", 4)
    monkeypatch.setenv("NLW_DIM_CAP", "8")
    code, _, err = run(capsys, "sdp", path)
    assert code == 2 and "cap" in err.lower()


def test_stdin_and_module_entry(gen):
    path = gen("bell")
    proc = subprocess.run(
        [sys.executable, "-m", "nlw.cli", "certify", "-", "--format", "text"],
        input=path.read_text(), capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "certified-PPT-indistinguishable" in proc.stdout


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
