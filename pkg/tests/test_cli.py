import json
import subprocess
import sys

import pytest

from linmonoid.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def dump(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_dims_block_example(tmp_path, capsys):
    idem = dump(tmp_path, "e.json", [[["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
                                     [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]])
    out = tmp_path / "out.json"
    code, _, _ = run(["dims", "--monoid", "blocks:1,2", "--in", idem, "--out", str(out)], capsys)
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert [r["dim_E_D"] for r in doc["reports"]] == [0, 2]


def test_dims_full_m4(capsys):
    code, text, _ = run(["dims", "--monoid", "full:4", "--json"], capsys)
    doc = json.loads(text)
    assert code == EXIT_OK
    assert [r["dim_E_L"] for r in doc["reports"]] == [0, 3, 4, 3, 0]


def test_dims_empty_list(tmp_path, capsys):
    code, _, _ = run(["dims", "--monoid", "full:2", "--in", dump(tmp_path, "e.json", [])], capsys)
    assert code == EXIT_OK


def test_monoid_file(tmp_path, capsys):
    m = dump(tmp_path, "m.json", {"family": "blocks", "n": 3, "blocks": [1, 2]})
    code, text, _ = run(["dims", "--monoid", m], capsys)
    assert code == EXIT_OK and "dim_E_D" in text


def test_classify(tmp_path, capsys):
    e = [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]
    f = [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]
    g = [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]]
    pairs = dump(tmp_path, "p.json", [[e, f], [f, g]])
    code, text, _ = run(["classify", "--monoid", "blocks:1,2", "--in", pairs, "--json"], capsys)
    assert code == EXIT_OK
    v = json.loads(text)["verdicts"]
    assert v[0]["D"] is False and v[0]["D_ambient"] is True
    assert v[1]["D"] is True and v[1]["witness"] is not None


def test_classify_non_member(tmp_path, capsys):
    x = [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]]
    pairs = dump(tmp_path, "p.json", [[x, x]])
    code, _, _ = run(["classify", "--monoid", "blocks:1,2", "--in", pairs], capsys)
    assert code == EXIT_INPUT


def test_sample(tmp_path, capsys):
    req = dump(tmp_path, "r.json", [{"element": [["1", "2"], ["2", "4"]], "relation": r, "count": 3} for r in "LRHD"])
    code, text, _ = run(["sample", "--monoid", "full:2", "--in", req, "--json"], capsys)
    assert code == EXIT_OK
    doc = json.loads(text)
    assert all(s["verified"] for block in doc["samples"] for s in block["samples"])


def test_regularity(capsys):
    code, text, _ = run(["regularity", "--monoid", "blocks:2,2", "--trials", "30"], capsys)
    assert code == EXIT_OK and "30/30" in text


def test_regularity_failure(tmp_path, capsys):
    upper = {"family": "span", "n": 2, "basis": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]}
    code, _, _ = run(["regularity", "--monoid", dump(tmp_path, "u.json", upper), "--trials", "30"], capsys)
    assert code == EXIT_FAIL


def test_verify(capsys):
    code, text, _ = run(["verify", "--monoid", "full:2", "--trials", "2"], capsys)
    assert code == EXIT_OK and "FAIL" not in text


def test_verify_zero_trials(capsys, caplog):
    code, text, _ = run(["verify", "--monoid", "full:2", "--trials", "0", "--json"], capsys)
    assert code == EXIT_OK and json.loads(text)["vacuous"] is True
    assert "vacuously" in caplog.text


def test_corrupted_span(tmp_path, capsys):
    bad = {"family": "span", "n": 3, "basis": [[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
                                               [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]]}
    code, _, err = run(["dims", "--monoid", dump(tmp_path, "m.json", bad)], capsys)
    assert code == EXIT_INPUT and "error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["dims"],
        ["dims", "--monoid", "nothing:3"],
        ["dims", "--monoid", "full:x"],
        ["classify", "--monoid", "full:2"],
        ["regularity", "--monoid", "full:2", "--trials", "-1"],
    ],
)
def test_input_errors(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_INPUT


def test_bad_idempotent(tmp_path, capsys):
    path = dump(tmp_path, "e.json", [[["1", "1"], ["0", "1"]]])
    assert run(["dims", "--monoid", "full:2", "--in", path], capsys)[0] == EXIT_INPUT
    path = dump(tmp_path, "f.json", [[["1", "oops"], ["0", "0"]]])
    assert run(["dims", "--monoid", "full:2", "--in", path], capsys)[0] == EXIT_INPUT


def test_reproducible(tmp_path, capsys):
    req = dump(tmp_path, "r.json", {"element": [["1", "0"], ["0", "0"]], "relation": "D", "count": 4})
    argv = ["sample", "--monoid", "full:2", "--in", req, "--seed", "7", "--json"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    other = run(argv[:-3] + ["--seed", "8", "--json"], capsys)[1]
    assert other != first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "linmonoid", "dims", "--monoid", "full:2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "dim_G" in proc.stdout
