import json
import subprocess
import sys
from pathlib import Path

import pytest

from sdlab import corpus
from sdlab.cli import main
from sdlab.formats import complex_from_json, complex_to_json, csv_text, decimal, parse_rational, FormatError
from sdlab.complex import face_vector

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fvector_delta2(capsys):
    code, out, _ = run(capsys, "fvector", "--input", str(CORPUS / "delta2.json"), "--depth", "1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "7,12,6"


@pytest.mark.parametrize("method", ["enumerate", "transfer", "stream"])
def test_fvector_methods_agree(capsys, method):
    code, out, _ = run(capsys, "fvector", "--input", str(CORPUS / "octahedron.json"), "--depth", "2", "--method", method)
    assert code == 0
    assert out.strip().splitlines()[-1] == "146,432,288"


def test_subdivide_faces_json(capsys):
    code, out, _ = run(capsys, "subdivide", "--input", str(CORPUS / "delta-1.json"), "--emit", "faces", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["command"] == "subdivide"


def test_qcoeffs(capsys):
    code, out, _ = run(capsys, "qcoeffs", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == ["1/2", "3/2", "1"]
    code, out, _ = run(capsys, "qcoeffs", "--n", "4", "--method", "partition", "--check-roots")
    assert code == 0
    assert json.loads(out)["q"] == ["1/19", "25/38", "40/19", "5/2", "1"]


def test_lambda(capsys):
    code, out, _ = run(capsys, "lambda", "--n", "2", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines()[-3:] == ["1,0,0", "1,2,0", "1,6,6"]
    _, closed, _ = run(capsys, "lambda", "--n", "6", "--form", "closed", "--format", "csv")
    _, rec, _ = run(capsys, "lambda", "--n", "6", "--format", "csv")
    assert closed.splitlines()[-7:] == rec.splitlines()[-7:]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--claim", "macdonald", "--input", str(CORPUS / "octahedron.json"))[0] == 0
    code, out, err = run(capsys, "verify", "--claim", "macdonald", "--input", str(CORPUS / "delta2.json"))
    assert code == 1
    assert json.loads(out)["holds"] is False
    assert run(capsys, "verify", "--claim", "chi-half", "--input", str(CORPUS / "boundary-delta-2.json"))[0] == 2
    assert run(capsys, "verify", "--claim", "sphere-roots", "--n", "7")[0] == 0
    assert run(capsys, "verify", "--claim", "asymptotic-ds", "--n", "9")[0] == 0
    assert run(capsys, "verify", "--claim", "ds", "--input", str(CORPUS / "klein-bottle.json"))[0] == 0


def test_converge_csv_and_summary(capsys, tmp_path):
    summary = tmp_path / "s.json"
    code, out, _ = run(
        capsys, "converge", "--harness", "gamma", "--input", str(CORPUS / "delta2.json"),
        "--p", "0", "--dmax", "3", "--summary", str(summary),
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,value,target,error,ratio"
    assert len(lines) == 4
    assert json.loads(summary.read_text())["reports"][0]["target"]["exact"] == "1/2"


def test_converge_links_has_l_column(capsys):
    code, out, _ = run(capsys, "converge", "--harness", "links", "--input", str(CORPUS / "delta2.json"), "--p", "0", "--dmax", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("d,l,")


def test_converge_with_observable(capsys, tmp_path):
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps({"ambient": 2, "terms": [{"exp": [2, 0], "coef": "1"}]}))
    code, out, _ = run(
        capsys, "converge", "--harness", "gamma", "--input", str(CORPUS / "delta2.json"),
        "--p", "2", "--dmax", "2", "--phi", str(phi), "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["volume_integral"]["exact"] == "1/6"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ambient": 3, "terms": []}))
    code, _, err = run(capsys, "converge", "--harness", "gamma", "--input", str(CORPUS / "delta2.json"), "--p", "0", "--dmax", "1", "--phi", str(bad))
    assert code == 2 and "ambient" in err


def test_sample(capsys):
    code, out, _ = run(capsys, "sample", "--n", "2", "--depth", "6", "--samples", "2000", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["mean"]["exact"] == "1" and data["seed"] == 7


def test_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "fvector", "--input", str(bad))
    assert code == 2 and "malformed JSON" in err
    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps({"facets": [[0, 0, 1]]}))
    assert run(capsys, "fvector", "--input", str(rep))[0] == 2
    assert run(capsys, "fvector", "--input", str(tmp_path / "missing.json"))[0] == 2
    code, _, err = run(capsys, "fvector", "--input", str(CORPUS / "delta3.json"), "--depth", "6", "--max-cells", "1000")
    assert code == 2 and "cap" in err.lower()
    assert run(capsys, "fvector", "--input", str(CORPUS / "delta2.json"), "--depth", "13")[0] == 2
    assert run(capsys, "corpus", "emit", "no-such-thing")[0] == 2
    with pytest.raises(SystemExit):
        main(["lambda"])


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("SDLAB_MAX_CELLS", "10")
    assert run(capsys, "fvector", "--input", str(CORPUS / "delta2.json"), "--depth", "2", "--method", "stream")[0] == 2


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "out.csv"
    assert run(capsys, "fvector", "--input", str(CORPUS / "delta2.json"), "--depth", "2", "-o", str(dest))[0] == 0
    assert dest.read_bytes().endswith(b"25,60,36\n")


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_files_roundtrip(capsys, name):
    code, out, _ = run(capsys, "corpus", "emit", name)
    assert code == 0
    assert (CORPUS / f"{name}.json").read_text() == out
    K, coords = complex_from_json(json.loads(out))
    K0, coords0 = corpus.get(name)
    assert K == K0 and coords == {v: tuple(c) for v, c in coords0.items()}
    assert complex_to_json(K, coords) == json.loads(out)


def test_corpus_torus():
    K, _ = corpus.get("torus-7")
    assert face_vector(K) == (7, 21, 14)


def test_console_script_deterministic():
    argv = [sys.executable, "-m", "sdlab.cli", "converge", "--harness", "blocks", "--input",
            str(CORPUS / "delta2.json"), "--p", "0", "--dmax", "2", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n") and b"\r\n" not in a


def test_formats():
    assert parse_rational("3/4") == parse_rational(" 3/4 ")
    assert parse_rational(2) == 2
    for bad in ("x", "1/0", 0.5, True):
        with pytest.raises(FormatError):
            parse_rational(bad)
    assert decimal(parse_rational("1/3")) == "0.33333333333333333"
    assert csv_text(["a", "b"], [[parse_rational("1/2"), None]]) == "a,b\n1/2,\n"
    with pytest.raises(FormatError):
        complex_from_json({"facets": "nope"})
    with pytest.raises(FormatError):
        complex_from_json({"facets": [[0, 1]], "coordinates": {"0": [0.5]}})
