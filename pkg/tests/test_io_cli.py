import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbranch import io
from weylbranch.branching import branch
from weylbranch.cli import find_map, main
from weylbranch.projcat import catalog_lookup, load_catalog
from weylbranch.rootdata import parse_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- expressions and weights --------------------------------------------

@pytest.mark.parametrize("text,value", [
    ("2a+b", 7), ("|2a-b|", 1), ("-a-c", -7), ("3/2", Fraction(3, 2)), ("2(a+b)", 10),
    ("ab", 6), ("a*b-c", 1), ("b/a", Fraction(3, 2)), ("−a", -2),
])
def test_evaluate(text, value):
    assert io.evaluate(text, {"a": 2, "b": 3, "c": 5}) == value


@pytest.mark.parametrize("text", ["a+", "(a", "|a", "x", "1/0", "a b )"])
def test_evaluate_errors(text):
    with pytest.raises(io.ParseError):
        io.evaluate(text, {"a": 2})


def test_parse_params_and_weight():
    params = io.parse_params("a=2,b=3/2,c=a+1")
    assert params == {"a": 2, "b": Fraction(3, 2), "c": 3}
    assert io.parse_weight("(a,0,|a-c|)", params) == (2, 0, 1)
    assert io.parse_weight("1/2, -1, 0") == (Fraction(1, 2), -1, 0)
    with pytest.raises(io.ParseError):
        io.parse_params("a:2")
    with pytest.raises(io.ParseError):
        io.parse_weight("()")


# --- rendering ----------------------------------------------------------

def test_render_examples():
    a2 = parse_algebra("A2")
    assert io.render_decomposition(a2, [((1, 1), 3), ((0, 3), 1), ((3, 0), 1)]) == "(3,0)+(0,3)+3(1,1)"
    assert io.render_decomposition(a2, [((0, 0), 1)]) == "(0,0)"
    r = branch(catalog_lookup("B2", "A1xU1"), (1, 0))
    assert io.render_result(r) == "(2)(0)+(0)(2)+(0)(-2)"


def test_parse_decomposition():
    target = parse_algebra("C2xU1")
    got = io.parse_decomposition("(2b+c,a)(c)+2(c,b)(-2a)", target, {"a": 2, "b": 3, "c": 5})
    assert got == {(11, 2, 5): 1, (5, 3, -4): 2}
    with pytest.raises(io.ParseError, match="factor ranks"):
        io.parse_decomposition("(1)(2)", target)
    with pytest.raises(io.ParseError):
        io.parse_decomposition("(1,0)+", parse_algebra("A2"))


@pytest.mark.parametrize("key", [k for k, p in load_catalog().items() if p.source.rank <= 5])
def test_render_parse_round_trip(key):
    p = load_catalog()[key]
    w = [1] * p.source.rank
    r = branch(p, w)
    text = io.render_result(r)
    assert io.parse_decomposition(text, p.target) == r.as_counter()


def test_json_round_trip():
    for key, w in [("B3>G2", (0, 2, 0)), ("C3>A2xU1", (1, 2, 3)), ("D5>C2", (0, 1, 0, 0, 1))]:
        p = load_catalog()[key]
        r = branch(p, w)
        doc = json.loads(io.dumps(io.result_to_dict(r)))
        back = io.result_from_dict(doc)
        assert back == r
        assert io.render_result(back) == doc["result"]["text"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["B2>A1xU1", "B3>3A1", "C3>2A1", "D4>A2", "B4>2A1"]), st.data())
def test_json_round_trip_property(key, data):
    p = load_catalog()[key]
    w = [data.draw(st.integers(0, 3)) for _ in range(p.source.rank)]
    r = branch(p, w)
    text = io.dumps(io.result_to_dict(r))
    assert io.render_result(io.result_from_dict(json.loads(text))) == io.render_result(r)


# --- CLI ----------------------------------------------------------------

def test_cli_branch(capsys):
    code, out, _ = run(capsys, "branch", "B3", "G2", "0,2,0")
    assert code == 0
    assert out.strip() == "(2,0)+(0,2)"


def test_cli_branch_params(capsys):
    code, out, _ = run(capsys, "branch", "D4", "A2", "0,b,0,0", "--params", "b=1")
    assert code == 0
    assert out.strip() == "(3,0)+(0,3)+3(1,1)"


def test_cli_projmat(capsys):
    assert run(capsys, "projmat", "B2", "A1")[1].strip() == "4 3"
    code, out, _ = run(capsys, "projmat", "B9", "B8xU1", "--json")
    assert code == 0
    assert json.loads(out)["result"]["series"] == "Bn>Bn-1xU1"


def test_cli_orbit_json(capsys):
    code, out, _ = run(capsys, "orbit", "B2", "1,0", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["size"] == 4
    assert len(doc["result"]["points"]) == 4
    assert set(doc) >= {"query", "result", "conservation"}


def test_cli_gamma_and_index(capsys):
    assert run(capsys, "gamma", "C7", "B3xA1")[1].strip() == "7/19"
    assert run(capsys, "gamma", "B3", "G2", "1,0,0;0,1,0")[1].strip() == "3/2"
    assert run(capsys, "index", "B2", "1,0")[1].strip() == "4"
    # non-dominant input is moved to its dominant point first
    assert run(capsys, "index", "B2", "--", "-1,2")[1].strip() == "4"


def test_cli_relate(capsys):
    code, out, _ = run(capsys, "relate", "B4", "D4", "A3xA1", "--json")
    assert code == 0
    assert json.loads(out)["conservation"] is None


def test_cli_verify(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--max-rank", "3")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("0 failed")


def test_cli_branch_json_has_gamma(capsys):
    code, out, _ = run(capsys, "branch", "B3", "G2", "1,0,0", "--json")
    doc = json.loads(out)
    assert doc["gamma"] == "3/2"
    assert doc["conservation"]["ok"] is True


@pytest.mark.parametrize("argv", [
    ["gamma", "B3", "C2xU1"],
    ["branch", "B3", "G2", "1,0"],
    ["branch", "B3", "E6", "1,0,0"],
    ["projmat", "B3", "A2"],
    ["orbit", "B3", "a,0,0"],
    ["branch", "B3", "G2", "1,-1,0"],
])
def test_cli_domain_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith(f"weylbranch {argv[0]}:")


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["branch", "B3"], ["verify-catalog", "--max-rank", "x"]])
def test_cli_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_find_map_prefers_catalog():
    assert find_map("B4", "A1").key == "B4>A1"
    assert find_map("B4", "A1").gamma == Fraction(1, 15)
    assert find_map("C10", "C9xA1").series == "Cn>Cn-1xA1"


def test_cli_is_deterministic():
    argv = [sys.executable, "-m", "weylbranch", "branch", "C4", "3A1", "1,2,0,1", "--json"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(3)}
    assert len(outs) == 1
