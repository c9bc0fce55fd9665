import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import load_rules
from weylbranch.branching import (
    ConservationError,
    GammaError,
    RuleError,
    branch,
    check_map,
    default_probes,
    evaluate_rule_template,
    gamma,
    template_probes,
    verify_catalog,
)
from weylbranch.io import parse_decomposition, parse_weight
from weylbranch.orbits import NotDominantError, dominant_of, orbit_points, orbit_size
from weylbranch.projcat import (
    ProjectionMap,
    SeriesKey,
    catalog_lookup,
    load_catalog,
    series_instances,
    series_matrix,
)
from weylbranch.rootdata import parse_algebra, parse_simple

RULES = load_rules()


def test_examples():
    r = branch(catalog_lookup("B3", "G2"), (0, 2, 0))
    assert dict(r.entries) == {(2, 0): 1, (0, 2): 1}
    r = branch(catalog_lookup("B2", "A1xU1"), (1, 0))
    assert dict(r.entries) == {(2, 0): 1, (0, 2): 1, (0, -2): 1}
    r = branch(catalog_lookup("D4", "A2"), (0, 1, 0, 0))
    assert dict(r.entries) == {(0, 3): 1, (3, 0): 1, (1, 1): 3}
    assert r.source_size == r.image_size == 24


def test_branch_refuses_bad_weights():
    p = catalog_lookup("B3", "G2")
    with pytest.raises(NotDominantError):
        branch(p, (1, -1, 0))
    with pytest.raises(ValueError):
        branch(p, (1, 0))


def test_bad_matrix_breaks_conservation():
    p = ProjectionMap(parse_simple("B3"), parse_algebra("G2"), ((0, 1, 0), (1, 1, 1)))
    with pytest.raises(ConservationError):
        branch(p, (1, 0, 0))


@pytest.mark.parametrize("rule", RULES, ids=lambda r: f"{r.key} {r.lhs} line {r.line}")
def test_golden_rule(rule):
    source, target = rule.key.split(">")
    p = catalog_lookup(source, target)
    sets = rule.param_sets()
    assert sets, f"no parameter set satisfies {rule.conditions}"
    for params in sets:
        w = parse_weight(rule.lhs, params)
        expected = parse_decomposition(rule.rhs, p.target, params)
        got = branch(p, w).as_counter()
        assert got == expected, params


def test_goldens_cover_both_sides_of_splits():
    conditional = [r for r in RULES if r.conditions]
    assert conditional
    by_lhs = {}
    for r in conditional:
        by_lhs.setdefault((r.key, r.lhs), []).append(r)
    assert all(len(rs) >= 2 for rs in by_lhs.values())


# --- templates ----------------------------------------------------------

TEMPLATE_CASES = [(key, probe) for key in series_instances(8) for probe in template_probes(key)]


@pytest.mark.parametrize("key,probe", TEMPLATE_CASES, ids=lambda x: str(x))
def test_template_matches_branch(key, probe):
    p = series_matrix(key)
    for value in (2, 3, 5):
        expected = evaluate_rule_template(key, probe, value)
        got = branch(p, expected.dominant)
        assert got == expected


def test_template_examples():
    r = evaluate_rule_template(SeriesKey("Bn>Bn-1xU1", 5), "a", 2)
    assert dict(r.entries) == {(2, 0, 0, 0, 0): 1, (0, 0, 0, 0, 4): 1, (0, 0, 0, 0, -4): 1}
    r = evaluate_rule_template(SeriesKey("Bn>A1", 4), "a", 1)
    assert dict(r.entries) == {(8,): 1, (6,): 1, (4,): 1, (2,): 1}
    r = evaluate_rule_template(SeriesKey("Cn>A1", 3), "a", 1)
    assert dict(r.entries) == {(5,): 1, (3,): 1, (1,): 1}


def test_template_errors():
    with pytest.raises(RuleError):
        evaluate_rule_template(SeriesKey("En>A1", 6), "a", 1)
    with pytest.raises(RuleError):
        evaluate_rule_template(SeriesKey("Bn>Dn", 5), "d", 1)
    with pytest.raises(ValueError):
        evaluate_rule_template(SeriesKey("Bn>Dn", 5), "a", 0)


# --- gamma --------------------------------------------------------------

def test_gamma_examples():
    assert gamma(catalog_lookup("B3", "G2"), [(1, 0, 0), (0, 1, 0)]) == Fraction(3, 2)
    assert gamma(catalog_lookup("B2", "2A1"), default_probes(parse_simple("B2"))) == 1
    c7 = catalog_lookup("C7", "B3xA1")
    assert gamma(c7, default_probes(c7.source)) == Fraction(7, 19)


def test_gamma_errors():
    with pytest.raises(GammaError, match="U1"):
        gamma(catalog_lookup("B3", "C2xU1"), [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(GammaError, match="two"):
        gamma(catalog_lookup("B3", "G2"), [(1, 0, 0), (0, 0, 0)])


def test_default_probes():
    assert default_probes(parse_simple("B4")) == [(2, 0, 0, 0), (0, 3, 0, 0), (0, 0, 0, 5)]
    assert default_probes(parse_simple("B2")) == [(2, 0), (0, 3), (0, 5)]


@pytest.mark.parametrize("key", [k for k, p in load_catalog().items()
                                 if p.target.semisimple and "subjoining" not in p.tags])
def test_gamma_probe_independent(key):
    p = load_catalog()[key]
    n = p.source.rank
    probes = default_probes(p.source) + [tuple([1] * n)] if n <= 4 else default_probes(p.source)
    g = gamma(p, probes)
    if p.gamma is not None:
        assert g == p.gamma


# --- catalog verification -----------------------------------------------

def test_verify_catalog_small_scopes():
    r2 = verify_catalog(2)
    assert r2.ok
    b2 = {e.gamma for e in r2.entries if e.key.startswith("B2>") and e.gamma is not None}
    assert b2 == {Fraction(1, 5), 1}
    r3 = verify_catalog(3)
    assert r3.ok
    assert {Fraction(3, 2), 1, Fraction(3, 35)} <= {e.gamma for e in r3.entries}
    assert verify_catalog(8, catalog={}).ok
    assert verify_catalog(8, catalog={}).entries == []


def test_check_map_reports_wrong_gamma():
    p = catalog_lookup("B2", "A1")
    wrong = ProjectionMap(p.source, p.target, p.matrix, gamma=Fraction(1, 4))
    e = check_map(wrong)
    assert not e.ok
    assert "1/4" in e.messages[0]


def test_check_map_reports_conservation():
    bad = ProjectionMap(parse_simple("B3"), parse_algebra("G2"), ((0, 1, 0), (1, 1, 1)))
    e = check_map(bad)
    assert not e.ok and e.messages


# --- properties ---------------------------------------------------------

SMALL_MAPS = [k for k, p in load_catalog().items() if p.source.rank <= 4]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL_MAPS), st.data())
def test_decomposition_is_orbit_partition(key, data):
    p = load_catalog()[key]
    w = tuple(data.draw(st.integers(0, 3)) for _ in range(p.source.rank))
    r = branch(p, w)
    assert r.source_size == orbit_size(p.source, w)
    seen = {dw for dw, _ in r.entries}
    for pt in orbit_points(p.source, w).points:
        assert dominant_of(p.target, p.apply(pt)) in seen


def test_branch_ignores_enumeration_order(monkeypatch):
    import weylbranch.branching.core as core

    p = catalog_lookup("C4", "3A1")
    expected = branch(p, (1, 2, 0, 1))
    real = core.scaled_orbit

    def shuffled(alg, w):
        den, pts = real(alg, w)
        random.Random(7).shuffle(pts)
        return den, pts[::-1]

    monkeypatch.setattr(core, "scaled_orbit", shuffled)
    assert branch(p, (1, 2, 0, 1)) == expected
