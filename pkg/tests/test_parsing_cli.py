import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kroots.cli import main
from kroots.monomials import ParameterError, SparseVector
from kroots.parsing import (
    ExpressionSyntaxError,
    FactorNode,
    MonomialExpr,
    RootExpr,
    parse_expression,
    parse_kroot,
    parse_monomial,
)
from kroots.roots import (
    ANTISYMMETRIC,
    SYMMETRIC,
    NotAKRootError,
    enumerate_canonical_basis,
    expand,
    kroot,
    random_positive_kroot,
)

M, P = ANTISYMMETRIC, SYMMETRIC


def schema(name):
    return json.loads(resources.files("kroots").joinpath("schemas", f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- parser ------------------------------------------------------------------------

def test_parse_two_factors():
    expr = parse_expression("(x1-x4)(x2+x3)")
    assert expr == RootExpr((FactorNode(1, 1, -1, 4), FactorNode(1, 2, 1, 3)))
    assert parse_kroot("(x1-x4)(x2+x3)", 4, 2) == kroot(4, (1, 4, M), (2, 3, P))


def test_parse_reports_sign():
    r = parse_kroot("(x2-x1)(x3+x4)", 4)
    assert r.sign == -1 and abs(r) == kroot(4, (1, 2, M), (3, 4, P))


def test_parse_monomial():
    assert parse_expression("x1*x3*x4") == MonomialExpr((1, 3, 4))
    assert parse_monomial(" x4 * x1 ", 5) == (1, 4)


def test_whitespace_and_leading_minus():
    r = parse_kroot(" ( -x3 - x1 ) ( x2 + x4 ) ", 4)
    assert expand(r) == expand(kroot(4, (1, 3, P), (2, 4, P))) * -1


@pytest.mark.parametrize("text,offset", [("(x1-x2", 6), ("(x1x2)", 3), ("(x1-y2)", 4), ("", 0), ("(x-x2)", 2)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.offset == offset


def test_elaboration_errors():
    with pytest.raises(NotAKRootError):
        parse_kroot("(x1-x2)(x2+x3)", 4)
    with pytest.raises(ParameterError):
        parse_kroot("(x1-x5)", 4)
    with pytest.raises(ParameterError):
        parse_kroot("(x1-x2)", 4, 2)
    with pytest.raises(NotAKRootError):
        parse_monomial("x1*x1", 4)


@pytest.mark.parametrize("n", range(2, 9))
def test_basis_round_trips_through_text(n):
    for k in range(1, n // 2 + 1):
        for b in enumerate_canonical_basis(n, k):
            assert parse_kroot(str(b), n, k) == b


@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n // 2), st.randoms(),
                                                     st.sampled_from((1, -1)))))
def test_any_root_round_trips(case):
    n, k, rnd, sign = case
    a = random_positive_kroot(n, k, rnd)
    a = a if sign == 1 else -a
    assert parse_kroot(a.expression(), n, k) == a


# -- CLI -------------------------------------------------------------------------

def test_basis_plain(capsys):
    code, out, _ = run(capsys, "basis", "-n", "4", "-k", "2", "--format", "plain")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["label", "root", "height"]
    assert [ln.split()[:2] for ln in lines[1:]] == [
        ["1111", "(x1+x2)(x3+x4)"], ["1112", "(x1+x2)(x3-x4)"], ["1121", "(x1+x4)(x2-x3)"],
        ["1122", "(x1-x4)(x2-x3)"], ["1211", "(x1-x2)(x3+x4)"], ["1212", "(x1-x2)(x3-x4)"]]


def test_spherical_csv(capsys):
    code, out, _ = run(capsys, "spherical", "-n", "4", "-k", "1", "--all", "--format", "csv")
    assert code == 0
    assert list(csv.reader(io.StringIO(out))) == [["j", "m=0", "m=1"], ["0", "1", "1"], ["1", "1", "-1/3"]]


def test_verify_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "-n", "6", "-k", "3")
    assert code == 0
    assert "FAIL" not in out


def test_decompose_monomial_and_root(capsys):
    code, out, _ = run(capsys, "decompose", "-n", "2", "-k", "1", "--monomial", "x1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["label,numerator,denominator", "11,1,2", "12,1,2"]
    code, out, _ = run(capsys, "decompose", "-n", "4", "-k", "2", "--root", "(x2-x1)(x3+x4)", "--format", "json")
    blob = json.loads(out)
    assert code == 0 and blob["sign"] == -1 and blob["coeffs"] == {"1211": "-1"}


@pytest.mark.parametrize("argv,expected", [
    (["basis", "-n", "4", "-k", "3"], 2),
    (["basis", "-n", "1", "-k", "1"], 2),
    (["decompose", "-n", "4", "-k", "1"], 2),
    (["spherical", "-n", "4", "-k", "1", "--j", "2"], 2),
    (["filtration", "-n", "4", "-k", "1", "--level", "5"], 2),
    (["decompose", "-n", "4", "-k", "1", "--root", "(x1-x5)"], 3),
    (["decompose", "-n", "4", "-k", "1", "--root", "(x1-"], 3),
    (["decompose", "-n", "4", "-k", "2", "--root", "(x1-x2)"], 3),
    (["decompose", "-n", "4", "-k", "1", "--monomial", "x1*x2"], 3),
    (["matrix", "-n", "3", "-k", "1", "--perm", "(1 4)"], 3),
    (["matrix", "-n", "3", "-k", "1", "--perm", "1 1 2"], 3),
])
def test_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected
    assert err.startswith("error:")


def test_failed_check_exits_one(capsys, monkeypatch):
    import kroots.cli as cli
    from kroots.verify import Check

    monkeypatch.setattr(cli, "run_suite", lambda n, k, seed=0: [Check("always fails", False)])
    code, out, _ = run(capsys, "verify", "-n", "4", "-k", "1")
    assert code == 1 and "[FAIL] always fails" in out


@pytest.mark.parametrize("argv,name", [
    (["basis", "-n", "5", "-k", "2"], "basis"),
    (["decompose", "-n", "5", "-k", "2", "--root", "(x1+x3)(x2+x4)"], "decomposition"),
    (["decompose", "-n", "4", "-k", "2", "--monomial", "x1*x2"], "decomposition"),
    (["spherical", "-n", "6", "-k", "2", "--all"], "spherical"),
    (["matrix", "-n", "5", "-k", "2", "--perm", "(1 3 5)"], "matrix"),
    (["filtration", "-n", "5", "-k", "2", "--level", "1"], "filtration"),
    (["verify", "-n", "5", "-k", "2", "--seed", "7"], "verify"),
])
def test_json_outputs_validate(capsys, argv, name):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


def test_vector_schema():
    v = SparseVector(5, 2, {(1, 2): 3, (2, 5): -1})
    jsonschema.validate(v.to_dict(), schema("vector"))


@pytest.mark.parametrize("argv,columns", [
    (["basis", "-n", "5", "-k", "2"], 3),
    (["decompose", "-n", "5", "-k", "2", "--root", "(x1+x3)(x2+x4)"], 3),
    (["spherical", "-n", "6", "-k", "2"], 4),
    (["matrix", "-n", "4", "-k", "2", "--perm", "2 1 3 4"], 7),
    (["filtration", "-n", "5", "-k", "2"], 3),
    (["verify", "-n", "4", "-k", "1"], 3),
])
def test_csv_column_counts(capsys, argv, columns):
    code, out, _ = run(capsys, *argv, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows and all(len(r) == columns for r in rows)


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "basis.json"
    code, out, _ = run(capsys, "basis", "-n", "4", "-k", "1", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())["basis"]) == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kroots", "basis", "-n", "4", "-k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "(x3+x4)" in proc.stdout
