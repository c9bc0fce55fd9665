from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from weylbranch.projcat import load_catalog
from weylbranch.rootdata import (
    Algebra,
    AlgebraError,
    ProductAlgebra,
    cartan_matrix,
    parabolic_order,
    parse_algebra,
    parse_simple,
    quadratic_form,
    render_algebra,
    root_half_lengths,
    weyl_group_order,
)

SIMPLE = [Algebra("A", n) for n in range(1, 9)] + [Algebra(f, n) for f in "BC" for n in range(2, 9)] \
    + [Algebra("D", n) for n in range(3, 9)] + [Algebra("G", 2)]


def root_gram(alg):
    """(a_i|a_j) from an explicit realisation of the simple roots."""
    n = alg.rank
    if alg.family == "G":
        return sympy.Matrix([[2, -1], [-1, sympy.Rational(2, 3)]])
    dim = n + 1 if alg.family == "A" else n
    e = sympy.eye(dim)
    roots = [e[:, i] - e[:, i + 1] for i in range(n - 1)]
    if alg.family == "A":
        roots.append(e[:, n - 1] - e[:, n])
    elif alg.family == "B":
        roots.append(e[:, n - 1])
    elif alg.family == "C":
        roots.append(2 * e[:, n - 1])
    elif alg.family == "D":
        roots.append(e[:, n - 2] + e[:, n - 1])
    m = sympy.Matrix.hstack(*roots)
    gram = m.T * m
    if alg.family == "C":
        gram = gram / 2  # long roots 2e_n must have length^2 2
    return gram


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in row] for row in m])


@pytest.mark.parametrize("alg", SIMPLE, ids=str)
def test_cartan_matches_root_realisation(alg):
    b = root_gram(alg)
    n = alg.rank
    expected = [[2 * b[i, j] / b[j, j] for j in range(n)] for i in range(n)]
    assert to_sympy(cartan_matrix(alg)) == sympy.Matrix(expected)
    assert [2 * x for x in root_half_lengths(alg)] == [b[i, i] for i in range(n)]


@pytest.mark.parametrize("alg", SIMPLE, ids=str)
def test_quadratic_form_is_fundamental_weight_gram(alg):
    c = to_sympy(cartan_matrix(alg))
    b = root_gram(alg)
    oracle = c.inv() * b * c.inv().T
    assert to_sympy(quadratic_form(alg)) == oracle


@pytest.mark.parametrize("alg", SIMPLE, ids=str)
def test_quadratic_form_identity(alg):
    c = to_sympy(cartan_matrix(alg))
    d = sympy.diag(*[sympy.Rational(x.numerator, x.denominator) for x in root_half_lengths(alg)])
    g = to_sympy(quadratic_form(alg))
    assert g == c.inv() * d
    assert g == g.T
    assert g.is_positive_definite
    # C_ij d_j = (a_i|a_j) with rows of C as the simple roots
    sym = c * d
    assert sym == root_gram(alg)
    assert sym == sym.T and sym.is_positive_definite


def test_cartan_examples():
    assert cartan_matrix(Algebra("A", 1)) == ((2,),)
    assert cartan_matrix(Algebra("B", 3)) == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert cartan_matrix(Algebra("G", 2)) == ((2, -3), (-1, 2))


def test_quadratic_form_examples():
    half = Fraction(1, 2)
    assert quadratic_form(Algebra("A", 1)) == ((half,),)
    assert quadratic_form(Algebra("B", 2)) == ((1, half), (half, half))


def test_u1_has_no_cartan_data():
    u1 = Algebra("U", 1)
    with pytest.raises(AlgebraError):
        cartan_matrix(u1)
    with pytest.raises(AlgebraError):
        quadratic_form(u1)


@pytest.mark.parametrize("alg,order", [
    ("A1", 2), ("A3", 24), ("B2", 8), ("B3", 48), ("C4", 384), ("D4", 192), ("D5", 1920), ("G2", 12),
])
def test_weyl_group_order(alg, order):
    assert weyl_group_order(parse_simple(alg)) == order


@pytest.mark.parametrize("alg,nodes,order", [
    ("B3", [0, 2], 4),      # A1 x A1
    ("B3", [1, 2], 8),      # B2
    ("D4", [0, 2, 3], 8),   # 3A1
    ("D4", [1, 2, 3], 24),  # A3
    ("D5", [1, 2, 3, 4], 192),
    ("C4", [], 1),
    ("G2", [0, 1], 12),
])
def test_parabolic_order(alg, nodes, order):
    assert parabolic_order(parse_simple(alg), nodes) == order


def test_parse_examples():
    assert parse_algebra("B3").factors == (Algebra("B", 3),)
    assert parse_algebra("C2xU1").factors == (Algebra("C", 2), Algebra("U", 1))
    assert parse_algebra("2A1").factors == (Algebra("A", 1),) * 2
    assert parse_algebra("B4x2A1").factors == (Algebra("B", 4), Algebra("A", 1), Algebra("A", 1))
    assert parse_algebra("3A1").rank == 3


@pytest.mark.parametrize("text", ["", "B", "b3", "E6", "B1", "D2", "G3", "U2", "0A1", "B3xx", "B3*A1"])
def test_parse_rejects(text):
    with pytest.raises(AlgebraError):
        parse_algebra(text)


def test_parse_simple_rejects_products_and_u1():
    for text in ("B3xU1", "2A1", "U1"):
        with pytest.raises(AlgebraError):
            parse_simple(text)


def test_catalog_names_round_trip():
    for p in load_catalog().values():
        for pa in (ProductAlgebra.of(p.source), p.target):
            text = render_algebra(pa)
            assert parse_algebra(text) == pa


factors = st.sampled_from(SIMPLE + [Algebra("U", 1)])


@given(st.lists(factors, min_size=1, max_size=5))
def test_render_parse_round_trip(fs):
    pa = ProductAlgebra(tuple(fs))
    assert parse_algebra(str(pa)) == pa


def test_blocks_and_split():
    pa = parse_algebra("C2xU1")
    assert [(str(f), s.start, s.stop) for f, s in pa.blocks()] == [("C2", 0, 2), ("U1", 2, 3)]
    assert pa.split((1, 2, -3)) == [(1, 2), (-3,)]
    assert not pa.semisimple
    with pytest.raises(AlgebraError):
        pa.split((1, 2))
