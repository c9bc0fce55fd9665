"""Closed-form decompositions of the probe orbits for each general-rank family.

Each template returns the expected image of one probe orbit of the source:
``a`` is (a,0,...,0), ``b`` is (0,b,0,...,0) and ``c`` is (0,...,0,c).  They
are written independently of the projection matrices, so comparing them with
``branch`` on ``series_matrix`` checks both.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from ..projcat.series import FAMILIES, SeriesKey, series_matrix
from ..rootdata import Algebra, ProductAlgebra
from .core import BranchingResult

Term = tuple[tuple[tuple[Fraction, ...], ...], int]


class RuleError(KeyError):
    pass


class _Factors:
    """Builds one weight per target factor; positions are 1-based."""

    def __init__(self, target: ProductAlgebra):
        self.factors = target.factors

    def w(self, idx: int, entries: Mapping[int, Fraction] | None = None, vector: bool = True):
        f = self.factors[idx]
        out = [Fraction(0)] * f.rank
        for pos, val in (entries or {}).items():
            if 1 <= pos <= f.rank:
                # a vector-type weight on the short node of B2 doubles
                if vector and f.family == "B" and f.rank == 2 and pos == 2:
                    val = 2 * val
                out[pos - 1] += val
        return tuple(out)

    def zero(self, idx: int):
        return self.w(idx)

    def term(self, *weights, mult: int = 1) -> Term:
        return tuple(weights), mult


def _probe_weight(source: Algebra, probe: str, v: Fraction) -> tuple[Fraction, ...]:
    n = source.rank
    pos = {"a": 0, "b": 1, "c": n - 1}[probe]
    w = [Fraction(0)] * n
    w[pos] = v
    return tuple(w)


# Each template: (n, k, probe, value, factors) -> list of terms.

def _bn_bu1(n, k, p, v, F):
    last = n - 1
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,)), F.term(F.zero(0), (2 * v,)), F.term(F.zero(0), (-2 * v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,)), F.term(F.w(0, {1: v}), (2 * v,)),
                F.term(F.w(0, {1: v}), (-2 * v,))]
    return [F.term(F.w(0, {last: v}, False), (v,)), F.term(F.w(0, {last: v}, False), (-v,))]


def _bn_d(n, k, p, v, F):
    if p == "a":
        return [F.term(F.w(0, {1: v}))]
    if p == "b":
        return [F.term(F.w(0, {2: v}))]
    return [F.term(F.w(0, {n: v})), F.term(F.w(0, {n - 1: v}))]


def _bn_da1(n, k, p, v, F):
    r = n - 1
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,)), F.term(F.zero(0), (2 * v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,)), F.term(F.w(0, {1: v}), (2 * v,))]
    return [F.term(F.w(0, {r: v}), (v,)), F.term(F.w(0, {r - 1: v}), (v,))]


def _bn_b2a1(n, k, p, v, F):
    r = n - 2
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,), (0,)), F.term(F.zero(0), (v,), (v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,), (0,)), F.term(F.w(0, {1: v}), (v,), (v,)),
                F.term(F.zero(0), (2 * v,), (0,)), F.term(F.zero(0), (0,), (2 * v,))]
    return [F.term(F.w(0, {r: v}, False), (v,), (0,)), F.term(F.w(0, {r: v}, False), (0,), (v,))]


def _xa3(n, k, p, v, F, c_terms):
    if p == "a":
        return [F.term(F.w(0, {1: v}), F.zero(1)), F.term(F.zero(0), F.w(1, {2: v}))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), F.zero(1)), F.term(F.w(0, {1: v}), F.w(1, {2: v})),
                F.term(F.zero(0), F.w(1, {1: v, 3: v}))]
    return c_terms


def _bn_ba3(n, k, p, v, F):
    r = n - 3
    c = [F.term(F.w(0, {r: v}, False), F.w(1, {1: v})), F.term(F.w(0, {r: v}, False), F.w(1, {3: v}))]
    return _xa3(n, k, p, v, F, c)


def _pair_ab(p, v, F):
    """Shared a and b images of the X_{n-k} x Y_k families."""
    if p == "a":
        return [F.term(F.w(0, {1: v}), F.zero(1)), F.term(F.zero(0), F.w(1, {1: v}))]
    return [F.term(F.w(0, {2: v}), F.zero(1)), F.term(F.w(0, {1: v}), F.w(1, {1: v})),
            F.term(F.zero(0), F.w(1, {2: v}))]


def _bn_bd(n, k, p, v, F):
    if p in "ab":
        return _pair_ab(p, v, F)
    r = n - k
    return [F.term(F.w(0, {r: v}, False), F.w(1, {k: v})), F.term(F.w(0, {r: v}, False), F.w(1, {k - 1: v}))]


def _bn_db(n, k, p, v, F):
    if p in "ab":
        return _pair_ab(p, v, F)
    r = n - k
    return [F.term(F.w(0, {r: v}), F.w(1, {k: v}, False)), F.term(F.w(0, {r - 1: v}), F.w(1, {k: v}, False))]


def _bn_a1(n, k, p, v, F):
    if p != "a":
        raise RuleError(f"Bn>A1 has a closed form for the a probe only, not {p!r}")
    return [F.term((2 * j * v,)) for j in range(1, n + 1)]


def _an_u1_ab(n, p, v, F, a_label, b_label):
    big = n
    if p == "a":
        return [F.term(F.w(0, {1: v}), (a_label,)), F.term(F.w(0, {big - 1: v}), (-a_label,))]
    return [F.term(F.w(0, {1: v, big - 1: v}), (0,)), F.term(F.w(0, {2: v}), (b_label,)),
            F.term(F.w(0, {big - 2: v}), (-b_label,))]


def _cn_au1(n, k, p, v, F):
    if p in "ab":
        return _an_u1_ab(n, p, v, F, v, 2 * v)
    m = n // 2
    out = []
    if n % 2 == 0:
        out.append(F.term(F.w(0, {m: 2 * v}), (0,)))
        for j in range(1, m):
            out.append(F.term(F.w(0, {m + j: 2 * v}), (2 * j * v,)))
            out.append(F.term(F.w(0, {m - j: 2 * v}), (-2 * j * v,)))
        out += [F.term(F.zero(0), (2 * m * v,)), F.term(F.zero(0), (-2 * m * v,))]
    else:
        for j in range(m):
            out.append(F.term(F.w(0, {m + 1 + j: 2 * v}), ((2 * j + 1) * v,)))
            out.append(F.term(F.w(0, {m - j: 2 * v}), (-(2 * j + 1) * v,)))
        out += [F.term(F.zero(0), ((2 * m + 1) * v,)), F.term(F.zero(0), (-(2 * m + 1) * v,))]
    return out


def _cn_ca1(n, k, p, v, F):
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,)), F.term(F.zero(0), (v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,)), F.term(F.w(0, {1: v}), (v,))]
    return [F.term(F.w(0, {n - 1: v}), (v,))]


def _cn_cc(n, k, p, v, F):
    if p in "ab":
        return _pair_ab(p, v, F)
    return [F.term(F.w(0, {n - k: v}), F.w(1, {k: v}))]


def _cn_a1(n, k, p, v, F):
    if p != "a":
        raise RuleError(f"Cn>A1 has a closed form for the a probe only, not {p!r}")
    return [F.term(((2 * j - 1) * v,)) for j in range(1, n + 1)]


def _dn_au1(n, k, p, v, F):
    m = n // 2
    even = n % 2 == 0
    if p in "ab":
        scale = 1 if even else 2
        return _an_u1_ab(n, p, v, F, scale * v, 2 * scale * v)
    out = []
    if even:
        for j in range(0, m + 1, 2):
            signs = (1,) if j == 0 else (1, -1)
            for s in signs:
                pos = m + s * j
                w = F.w(0, {pos: v}) if 1 <= pos <= n - 1 else F.zero(0)
                out.append(F.term(w, (s * j * v,)))
    else:
        for t in range(m + 1):
            pos = m + 1 + t if t % 2 == 0 else m - t
            w = F.w(0, {pos: v}) if 1 <= pos <= 2 * m else F.zero(0)
            out.append(F.term(w, ((-1) ** t * (2 * t + 1) * v,)))
    return out


def _dn_du1(n, k, p, v, F):
    r = n - 1
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,)), F.term(F.zero(0), (2 * v,)), F.term(F.zero(0), (-2 * v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,)), F.term(F.w(0, {1: v}), (2 * v,)),
                F.term(F.w(0, {1: v}), (-2 * v,))]
    return [F.term(F.w(0, {r - 1: v}), (v,)), F.term(F.w(0, {r: v}), (-v,))]


def _dn_b(n, k, p, v, F):
    if p == "a":
        return [F.term(F.w(0, {1: v})), F.term(F.zero(0), mult=2)]
    if p == "b":
        return [F.term(F.w(0, {2: v})), F.term(F.w(0, {1: v}), mult=2)]
    return [F.term(F.w(0, {n - 1: v}, False))]


def _dn_ba1(n, k, p, v, F):
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,)), F.term(F.zero(0), (2 * v,)), F.term(F.zero(0), (0,), mult=2)]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,)), F.term(F.w(0, {1: v}), (2 * v,)),
                F.term(F.w(0, {1: v}), (0,), mult=2), F.term(F.zero(0), (2 * v,), mult=2)]
    return [F.term(F.w(0, {n - 2: v}, False), (v,))]


def _dn_bb(n, k, p, v, F):
    if p == "a":
        return _pair_ab(p, v, F) + [F.term(F.zero(0), F.zero(1), mult=2)]
    if p == "b":
        return _pair_ab(p, v, F) + [F.term(F.w(0, {1: v}), F.zero(1), mult=2),
                                     F.term(F.zero(0), F.w(1, {1: v}), mult=2)]
    return [F.term(F.w(0, {n - k - 1: v}, False), F.w(1, {k: v}, False))]


def _dn_d2a1(n, k, p, v, F):
    r = n - 2
    if p == "a":
        return [F.term(F.w(0, {1: v}), (0,), (0,)), F.term(F.zero(0), (v,), (v,))]
    if p == "b":
        return [F.term(F.w(0, {2: v}), (0,), (0,)), F.term(F.w(0, {1: v}), (v,), (v,)),
                F.term(F.zero(0), (2 * v,), (0,)), F.term(F.zero(0), (0,), (2 * v,))]
    return [F.term(F.w(0, {r: v}), (v,), (0,)), F.term(F.w(0, {r - 1: v}), (0,), (v,))]


def _dn_da3(n, k, p, v, F):
    r = n - 3
    c = [F.term(F.w(0, {r: v}), F.w(1, {3: v})), F.term(F.w(0, {r - 1: v}), F.w(1, {1: v}))]
    return _xa3(n, k, p, v, F, c)


def _dn_dd(n, k, p, v, F):
    if p in "ab":
        return _pair_ab(p, v, F)
    r = n - k
    return [F.term(F.w(0, {r: v}), F.w(1, {k: v})), F.term(F.w(0, {r - 1: v}), F.w(1, {k - 1: v}))]


TEMPLATES: dict[str, Callable] = {
    "Bn>Bn-1xU1": _bn_bu1,
    "Bn>Dn": _bn_d,
    "Bn>Dn-1xA1": _bn_da1,
    "Bn>Bn-2x2A1": _bn_b2a1,
    "Bn>Bn-3xA3": _bn_ba3,
    "Bn>Bn-kxDk": _bn_bd,
    "Bn>Dn-kxBk": _bn_db,
    "Bn>A1": _bn_a1,
    "Cn>An-1xU1": _cn_au1,
    "Cn>Cn-1xA1": _cn_ca1,
    "Cn>Cn-kxCk": _cn_cc,
    "Cn>A1": _cn_a1,
    "Dn>An-1xU1": _dn_au1,
    "Dn>Dn-1xU1": _dn_du1,
    "Dn>Bn-1": _dn_b,
    "Dn>Bn-2xA1": _dn_ba1,
    "Dn>Bn-k-1xBk": _dn_bb,
    "Dn>Dn-2x2A1": _dn_d2a1,
    "Dn>Dn-3xA3": _dn_da3,
    "Dn>Dn-kxDk": _dn_dd,
}

assert set(TEMPLATES) == set(FAMILIES)


def template_probes(key: SeriesKey) -> list[str]:
    if key.family.endswith(">A1"):
        return ["a"]
    return ["a", "b", "c"] if key.n >= 3 else ["a", "c"]


def evaluate_rule_template(key: SeriesKey, probe: str, value) -> BranchingResult:
    """Expected decomposition of probe orbit ``probe`` scaled by ``value``."""
    if key.family not in TEMPLATES:
        raise RuleError(f"no rule template for {key.family!r}")
    if probe not in ("a", "b", "c"):
        raise RuleError(f"probe must be 'a', 'b' or 'c', not {probe!r}")
    v = Fraction(value)
    if v <= 0:
        raise ValueError("probe parameter must be positive")
    pm = series_matrix(key)
    F = _Factors(pm.target)
    terms = TEMPLATES[key.family](key.n, key.k, probe, v, F)
    counts: dict = {}
    for blocks, mult in terms:
        flat = tuple(Fraction(x) for b in blocks for x in b)
        counts[flat] = counts.get(flat, 0) + mult
    return BranchingResult.build(pm.source, pm.target, _probe_weight(pm.source, probe, v), counts)
