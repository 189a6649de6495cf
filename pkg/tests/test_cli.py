import json

from affschur.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_garland_lambda(capsys):
    code, out, _ = run(capsys, "garland-lambda", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert {t["coeff"] for t in doc["terms"]} == {"1/2"}


def test_verify_suite(capsys):
    code, out, err = run(capsys, "verify", "schur-formula", "--n", "2", "--r", "2")
    assert code == 0
    assert err.startswith("[PASS]")


def test_malformed_json(capsys):
    code, _, err = run(capsys, "k-mul", "--x", "{oops", "--y", "{}")
    assert code == 2
    assert "line 1 column 2" in err


def test_bad_prime(capsys):
    code, _, err = run(capsys, "modp-basis", "--p", "4")
    assert code == 2 and "not prime" in err


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2


def test_wrong_algebra(capsys):
    x = json.dumps({"algebra": "k", "n": "2", "terms": []})
    code, _, err = run(capsys, "schur-mul", "--x", x, "--y", x)
    assert code == 2


def test_modp_basis_reports_window(capsys):
    code, out, _ = run(capsys, "modp-basis", "--p", "2", "--window", "0", "--list")
    doc = json.loads(out)
    assert doc["window"] == "0" and doc["count"] == "4" and len(doc["elements"]) == 4


def test_schur_oracle_check(capsys):
    x = {"algebra": "schur", "n": "2", "r": "2",
         "terms": [{"coeff": "1", "matrix": {"n": "2", "offdiag": [["1", "2", "1"]], "diag": ["0", "1"]}}]}
    y = {"algebra": "schur", "n": "2", "r": "2",
         "terms": [{"coeff": "1", "matrix": {"n": "2", "offdiag": [["2", "1", "1"]], "diag": ["1", "0"]}}]}
    code, out, _ = run(capsys, "schur-oracle", "--x", json.dumps(x), "--y", json.dumps(y), "--check")
    assert code == 0
    code2, out2, _ = run(capsys, "schur-mul", "--x", json.dumps(x), "--y", json.dumps(y))
    assert out == out2


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "garland-lambda", "--k", "2", "--i", "1")
    assert code == 0
    # the image of Lambda_2 is the sum over the two partitions of 2
    assert out.strip() == "E(1,5){0,0} + 2E(1,3){0,0}"


def test_independence(capsys):
    fam = [{"matrix": {"n": 2, "offdiag": []}, "lambda": [1, 0]},
           {"matrix": {"n": 2, "offdiag": []}, "lambda": [0, 1]}]
    code, out, _ = run(capsys, "independence", "--p", "2", "--family", json.dumps(fam))
    assert code == 0 and json.loads(out)["independent"] is True


def test_file_input(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"algebra": "hyper", "n": "2", "terms": [
        {"coeff": "1", "matrix": {"n": "2", "offdiag": [["1", "2", "1"]]}, "lambda": ["0", "0"]}]}))
    code, out, _ = run(capsys, "hyper-convert", "--x", f"@{path}", "--to", "M")
    assert code == 0 and json.loads(out)["basis"] == "M"
    code, _, err = run(capsys, "hyper-convert", "--x", "@/nonexistent.json", "--to", "M")
    assert code == 2


def test_deterministic(capsys):
    a = run(capsys, "garland-lambda", "--k", "4")[1]
    b = run(capsys, "garland-lambda", "--k", "4")[1]
    assert a == b


def test_ring_flag(capsys):
    x = {"algebra": "hyper", "n": "2", "terms": [
        {"coeff": "2", "matrix": {"n": "2", "offdiag": [["1", "2", "1"]]}, "lambda": ["0", "0"]}]}
    code, out, _ = run(capsys, "--ring", "Fp:2", "hyper-mul", "--x", json.dumps(x), "--y", json.dumps(x))
    assert code == 0 and json.loads(out)["terms"] == []
    code, _, err = run(capsys, "--ring", "R", "hyper-mul", "--x", json.dumps(x), "--y", json.dumps(x))
    assert code == 2
