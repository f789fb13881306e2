import json
from pathlib import Path

import pytest

from seqeffect.algebra import parse_element
from seqeffect.cli import main
from seqeffect.poly import AlgebraConfig

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    @pytest.mark.parametrize(
        "expr,expected",
        [
            ("f([1];[0];0) ^ 2", "f([0];[0];1)"),
            ("g([0];[0];0) (+) g([0];[0];0)", "undefined"),
            ("f([1];[0];3) '", "g([1];[0];3)"),
        ],
    )
    def test_examples(self, capsys, expr, expected):
        code, out, _ = run(capsys, "eval", "--n", "2", expr)
        assert code == 0 and out == expected + "\n"

    def test_round_trip(self, capsys):
        cfg = AlgebraConfig(4)
        code, out, _ = run(capsys, "eval", "--n", "4", "f(x - x^2; 2x^3; -5) (.) g(x;0;2)")
        assert code == 0
        text = out.strip()
        assert str(parse_element(text, cfg)) == text

    def test_structured(self, capsys):
        code, out, _ = run(capsys, "eval", "--format", "structured", "1 (.) 0")
        assert code == 0
        assert json.loads(out) == {"n": 2, "expression": "1 (.) 0", "result": "f([0];[0];0)"}

    @pytest.mark.parametrize(
        "expr",
        ["f([1];[0];0) (+) f([1];[0];0) (.) 1", "f([1,0];[0];0)", "f([1];[0];0", "f([0];[0];-1)"],
    )
    def test_parse_errors(self, capsys, expr):
        code, out, err = run(capsys, "eval", "--n", "2", expr)
        assert code == 2 and out == "" and err


class TestCertify:
    def test_n3_text(self, capsys):
        code, out, _ = run(capsys, "certify-roots", "--n", "3")
        assert code == 0
        assert "a = f([1,0];[0,0];0)" in out and "b = f([0,0];[1,0];0)" in out
        assert "c = f([0,0];[0,0];1)" in out
        assert out.rstrip().endswith("verdict: PASS")

    def test_n2_relations(self, capsys):
        code, out, _ = run(capsys, "certify-roots", "--n", "2", "--format", "structured")
        rel = {r["relation"]: r for r in json.loads(out)["relations"]}
        assert code == 0
        assert rel["a^2 == c"]["lhs"] == rel["b^2 == c"]["lhs"] == "f([0];[0];1)"
        assert rel["a^3 == 0"]["lhs"] == rel["b^3 == 0"]["lhs"] == "f([0];[0];0)"

    def test_find_all_n5(self, capsys):
        code, out, _ = run(capsys, "certify-roots", "--n", "5", "--find-all", "--W", "1", "--M", "1", "--format", "structured")
        roots = json.loads(out)["roots_of_c"]
        assert code == 0
        assert "f([1,0,0,0];[0,0,0,0];0)" in roots and "f([0,0,0,0];[1,0,0,0];0)" in roots
        assert {r[-3:] for r in roots} >= {";1)", ";0)"}
        cfg = AlgebraConfig(5)
        assert all(str(parse_element(r, cfg)) == r for r in roots)

    def test_window_without_find_all(self, capsys):
        assert run(capsys, "certify-roots", "--W", "2")[0] == 2

    @pytest.mark.parametrize("name,argv", [
        ("certify_n2.json", ["certify-roots", "--n", "2"]),
        ("certify_n3.json", ["certify-roots", "--n", "3"]),
        ("certify_n2_roots.json", ["certify-roots", "--n", "2", "--find-all"]),
    ])
    def test_golden(self, capsys, name, argv):
        code, out, _ = run(capsys, *argv, "--format", "structured")
        assert code == 0
        assert out == (GOLDEN / name).read_text()


class TestVerify:
    def test_n2_exhaustive_passes(self, capsys):
        code, out, _ = run(capsys, "verify-axioms", "--n", "2", "--exhaustive", "--W", "1", "--M", "1")
        assert code == 0 and "overall: PASS" in out

    def test_mutant_fails_with_witness(self, capsys):
        code, out, _ = run(capsys, "verify-axioms", "--mutant", "drop-G-term", "--n", "2", "--exhaustive", "--W", "1", "--M", "1")
        assert code == 1 and "witness:" in out

    def test_mutant_golden(self, capsys):
        code, out, _ = run(capsys, "verify-axioms", "--n", "2", "--mutant", "off-by-one-m", "--format", "structured")
        assert code == 1
        assert out == (GOLDEN / "verify_n2_off_by_one.json").read_text()

    def test_sampled_is_byte_stable(self, capsys):
        argv = ["verify-axioms", "--n", "3", "--trials", "300", "--seed", "11", "--format", "structured"]
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second and first[0] == 0
        doc = json.loads(first[1])
        assert doc["window"] == {"W": 2, "M": 2, "mode": "sampled", "trials": 300, "seed": 11}

    def test_fuzzy(self, capsys):
        code, out, _ = run(capsys, "verify-axioms", "--instance", "fuzzy")
        assert code == 0 and "LEM1" not in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify-axioms", "--n", "2", "--format", "structured", "--out", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["verdict"] == "pass"

    def test_cap_exceeded(self, capsys):
        code, _, err = run(capsys, "verify-axioms", "--n", "3", "--exhaustive", "--W", "2", "--M", "2", "--cap", "1000")
        assert code == 2 and "cap" in err


class TestUsage:
    @pytest.mark.parametrize("argv", [
        ["verify-axioms", "--n", "1"],
        ["verify-axioms", "--W", "-1"],
        ["verify-axioms", "--exhaustive", "--trials", "5"],
        ["verify-axioms", "--mutant", "bogus"],
        ["verify-axioms", "--bogus-flag"],
        ["verify-axioms", "--instance", "fuzzy", "--mutant", "off-by-one-m"],
        ["frobnicate"],
        [],
    ])
    def test_exit_2(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_unwritable_out(self, capsys, tmp_path):
        code = run(capsys, "eval", "0", "--out", str(tmp_path / "missing" / "x.txt"))[0]
        assert code == 2

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0
