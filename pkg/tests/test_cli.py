import subprocess
import sys

import pytest

from hilfor import bench, cli
from hilfor.bench import Certificate
from hilfor.textio import parse_algebra_file, parse_forest_file


def run(*argv):
    return cli.run([str(a) for a in argv])


def test_validate(data_dir):
    code, out = run("validate", data_dir / "alg3.alg")
    assert code == 0 and out.startswith("valid: ALG3 (3 elements") and "prelinear: yes" in out
    code, out = run("validate", data_dir / "lambda5.alg")
    assert code == 0 and "prelinear: no" in out
    code, out = run("validate", data_dir / "dangling.alg")
    assert code == 1 and out.strip() == "invalid: line 6, column 3: unknown element 'x'"
    code, out = run("validate", data_dir / "chain2.for")
    assert code == 0 and "2 nodes, 3 base sets" in out


def test_summary_format(data_dir):
    code, out = run("validate", data_dir / "alg3.alg", "--format", "summary")
    assert code == 0
    assert out.splitlines() == ["verb=validate", "exit=0", "n=3", "prelinear=true", "valid=true"]


def test_dual_and_algebra_of_round_trip(data_dir, tmp_path):
    code, out = run("dual", data_dir / "alg3.alg", "--out", tmp_path / "x.for", "--dot", tmp_path / "x.dot")
    assert code == 0 and out == ""
    X = parse_forest_file((tmp_path / "x.for").read_text())
    assert X.n == 2 and len(X.base) == 3
    assert (tmp_path / "x.dot").read_text().startswith("digraph")
    code, out = run("algebra-of", tmp_path / "x.for")
    assert code == 0 and parse_algebra_file(out).n == 3


def test_coproducts(data_dir):
    code, out = run("coprod0", data_dir / "alg3.alg", data_dir / "alg3.alg", "--certify")
    assert code == 0 and parse_algebra_file(out).n == 15
    assert "# universal property certified" in out
    code, out = run("coprod", data_dir / "two.alg", data_dir / "two.alg", "--format", "summary")
    assert code == 0 and "n=14" in out.splitlines()


def test_tensor_star_spectrum_order(data_dir):
    code, out = run("tensor", data_dir / "chain2.for", data_dir / "chain2.for")
    assert code == 0 and parse_forest_file(out).n == 6
    code, out = run("star", data_dir / "alg3.alg")
    assert code == 0 and "# psi" in out
    code, out = run("spectrum", data_dir / "lambda5.alg")
    assert code == 0 and out.rstrip().endswith("root system: no")
    code, out = run("order", data_dir / "alg3.alg")
    assert out.splitlines() == ["0 < m", "m < 1"]


def test_enum_certify_oracle_examples(data_dir):
    code, out = run("enum", "forests", 4, "--format", "summary")
    assert code == 0 and "count=9" in out.splitlines()
    code, out = run("enum", "bph", 5, "--format", "summary")
    assert "count=12" in out.splitlines()
    code, out = run("certify", "product", data_dir / "chain2.for", data_dir / "chain2.for")
    assert code == 0 and out.startswith("certified:")
    code, out = run("oracle-free", 1, "--bounded")
    assert code == 0 and parse_algebra_file(out).n == 6
    code, out = run("examples")
    assert code == 0 and "FAIL" not in out


def test_exit_codes(data_dir, monkeypatch):
    # cap exceeded
    code, out = run("enum", "forests", 9)
    assert code == 3 and out.startswith("error:")
    # unknown enumeration kind and missing file
    assert run("enum", "posets", 3)[0] == 1
    assert run("validate", data_dir / "missing.alg")[0] == 1
    # wrong domain: coproduct of a non-prelinear algebra
    assert run("coprod0", data_dir / "lambda5.alg", data_dir / "alg2.alg")[0] == 1
    # a counterexample from certification
    monkeypatch.setattr(bench, "certify_product_universal",
                        lambda *a, **k: Certificate(False, 1, None, "cone has 2 mediators"))
    code, out = run("certify", "product", data_dir / "chain2.for", data_dir / "chain2.for")
    assert code == 2 and "counterexample" in out


@pytest.mark.parametrize("argv", [["frobnicate"], ["validate"], ["tensor", "a.for"]])
def test_usage_errors_exit_one(argv):
    with pytest.raises(SystemExit) as info:
        cli.run(argv)
    assert info.value.code == 1


def test_console_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "hilfor.cli", "validate", str(data_dir / "alg2.alg")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("valid: ALG2")
