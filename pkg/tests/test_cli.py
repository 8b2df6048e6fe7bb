import json

import pytest

from torsion_fano.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_golden_exit_zero(capsys):
    code, out, _ = run(capsys, "enumerate", "Z2xZ4", "--golden")
    assert code == 0
    assert "golden match: True" in out
    assert "Bt2,4.1" in out and "Bt2,4.2" in out


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "Z2xZ8", "--json", "--golden")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 0
    assert doc["golden"]["match"] is True


def test_enumerate_bad_group_exit_three(capsys):
    code, _, err = run(capsys, "enumerate", "Q8")
    assert code == 3
    assert "error" in err


def test_enumerate_mismatch_exit_one(tmp_path, capsys, catalog):
    # drop an entry from box 4: Z2xZ4 then finds only one basket
    doc = catalog.table.to_json()
    doc["boxes"]["4"] = [
        row for row in doc["boxes"]["4"] if row["name"] != "B4.1"
    ]
    path = tmp_path / "table.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(
        capsys, "enumerate", "Z2xZ4", "--golden", "--table", str(path)
    )
    assert code == 1
    assert "golden match: False" in out


def test_enumerate_undecidable_exit_two(tmp_path, capsys, catalog):
    doc = catalog.table.to_json()
    doc["boxes"]["4"] = [
        {"name": "B4.stub", "source": "cited-only", "entries": None}
    ] + doc["boxes"]["4"][:1]
    path = tmp_path / "table.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "enumerate", "Z2xZ4", "--table", str(path))
    assert code == 2
    assert "undecidable" in out


def test_hilbert_cover(capsys):
    code, out, _ = run(capsys, "hilbert", "Y222", "--order", "3")
    assert code == 0
    assert "1, 7, 25, 63" in out


def test_hilbert_record_closed_form(capsys):
    code, out, _ = run(
        capsys, "hilbert", "ex3-Y222-Z2xZ4", "--order", "8", "--closed-form"
    )
    assert code == 0
    assert "1 + t + 3t^2 + 7t^3 + 17t^4" in out
    assert "numerator: 1 - 2t^2 + t^4 + e2^2*(-t^2 + 2t^4 - t^6)" in out


def test_hilbert_basket_with_degree(capsys):
    code, out, _ = run(
        capsys, "hilbert", "Bt2,4.2", "--degree", "1", "--order", "4", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    classes = {tuple(row["class"]): row["coefficients"] for row in doc["series"]["classes"]}
    assert classes[(0, 0)] == [1, 1, 3, 7, 17]


def test_hilbert_basket_without_degree_is_error(capsys):
    code, _, err = run(capsys, "hilbert", "Bt2,4.2")
    assert code == 3
    assert "--degree" in err


def test_verify_record(capsys):
    code, out, _ = run(capsys, "verify", "no1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass"


def test_verify_unknown_record(capsys):
    code, _, err = run(capsys, "verify", "no99")
    assert code == 3


def test_reproduce_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, "reproduce", "--out", str(a))[0] == 0
    assert run(capsys, "reproduce", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert "torsion baskets for Z2xZ2: 20 found" in text
    assert "excluded (5, 5)" in text
    assert "no1c-Y222-Z2xZ2xZ2: PASS" in text
