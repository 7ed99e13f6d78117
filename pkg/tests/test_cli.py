import json

import pytest

from nilring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_ms(obj):
    if isinstance(obj, dict):
        return {k: strip_ms(v) for k, v in obj.items() if k != "ms"}
    if isinstance(obj, list):
        return [strip_ms(v) for v in obj]
    return obj


def test_classify_z4(capsys):
    code, out, _ = run(capsys, "classify", "--expr", "Z(4)")
    d = json.loads(out)
    assert code == 0
    for key in ("nr", "ni", "uu", "strongly_nil_clean"):
        assert d[key]["holds"] is True
    assert d["boolean"] == {"holds": False, "witness": [2]}


def test_syntax_error_exit_2(capsys):
    code, out, err = run(capsys, "classify", "--expr", "Z(")
    assert code == 2 and out == ""
    assert "syntax error" in err and "position" in err


@pytest.mark.parametrize("argv", [
    ["classify"],
    ["classify", "--expr", "Z(2)", "--file", "x.json"],
    ["verify", "--jobs", "0"],
    ["verify", "--suite", "nope"],
    ["corpus"],
    ["build", "--expr", "M(9,Z(9))"],
    ["analyze", "--file", "/nonexistent/ring.json"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("nilring:")


def test_argparse_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_build_then_analyze_file(tmp_path, capsys):
    path = tmp_path / "ut.json"
    code, _, _ = run(capsys, "build", "--expr", "UT(2,Z(2))", "--output", str(path))
    assert code == 0 and path.exists()
    code, out, _ = run(capsys, "analyze", "--file", str(path))
    d = json.loads(out)
    assert code == 0 and d["nilpotents"] == d["upper_nilradical"] == d["j_radical"]


def test_axiom_error_on_load_exit_2(tmp_path, capsys):
    add = [[a ^ b for b in range(4)] for a in range(4)]
    mul = [[((x & 1) * (y >> 1)) | (((x & 1) * (y & 1)) << 1) for y in range(4)]
           for x in range(4)]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"order": 4, "zero": 0, "one": None, "add": add,
                                "mul": mul, "label": "bad"}))
    code, _, err = run(capsys, "classify", "--file", str(path))
    assert code == 2 and "mul_associative" in err


def test_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--expr", "M(2,Z(2))", "--format", "text")
    assert code == 0 and "nr" in out and "witness 2, 4" in out


def test_verify_is_deterministic(capsys, tmp_path):
    argv = ["verify", "--suite", "main", "--seed", "0", "--max-order", "64"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv, "--jobs", "2")
    assert code1 == code2 == 0
    assert strip_ms(json.loads(out1)) == strip_ms(json.loads(out2))
    assert json.loads(out1)["violations"] == 0


def test_verify_with_extra_ring_and_output(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--suite", "quotient", "--max-order", "16",
                       "--expr", "UT(3,Z(2))", "--output", str(target))
    d = json.loads(target.read_text())
    assert code == 0 and out == ""
    assert d["suites"][0]["suite"] == "quotient"


def test_verify_exit_1_on_violation(capsys, monkeypatch):
    from nilring.classify import Verdict
    from nilring.lab import suites

    monkeypatch.setattr(suites, "is_abelian", lambda ring: Verdict(False, (0, 0)))
    code, out, _ = run(capsys, "verify", "--suite", "quotient", "--max-order", "8")
    assert code == 1 and json.loads(out)["violations"] > 0


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    d = json.loads(out)
    assert code == 0 and d["violations"] == 0
    assert [s["suite"] for s in d["suites"]] == ["example-m3", "example-m2t-3",
                                                 "example-m2t-4"]


def test_corpus_command(tmp_path, capsys):
    code, out, _ = run(capsys, "corpus", "--max-order", "16", "--output", str(tmp_path))
    d = json.loads(out)
    assert code == 0
    index = json.loads((tmp_path / "index.json").read_text())
    assert index == d["rings"] and len(index) >= 6
    code, out, _ = run(capsys, "analyze", "--file", str(tmp_path / index[0]["file"]))
    assert code == 0 and json.loads(out)["label"] == index[0]["label"]
