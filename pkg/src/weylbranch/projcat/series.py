"""Projection matrices of the general-rank families.

Most families share one shape: an identity block in the top-left corner for
the leading nodes, and a fixed local pattern on the last few source columns.
``_embed`` builds that shape; columns in the local patterns are 1-based and
counted from the start of the pattern, not of the whole matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..rootdata import Algebra, ProductAlgebra, parse_algebra
from .catalog import ProjectionError, ProjectionMap

Rows = list[list[int]]


@dataclass(frozen=True)
class SeriesKey:
    family: str
    n: int
    k: int | None = None

    @classmethod
    def parse(cls, tag: str, n: int) -> "SeriesKey":
        """From a catalog tag value such as ``Bn>Dn-kxBk:2``."""
        fam, _, k = tag.partition(":")
        return cls(fam, n, int(k) if k else None)

    def __str__(self):
        return f"{self.family}[n={self.n}" + (f",k={self.k}]" if self.k is not None else "]")


def _row(width: int, entries: dict[int, int]) -> list[int]:
    r = [0] * width
    for col, val in entries.items():
        r[col - 1] = val
    return r


def _ones(width: int, *cols: int) -> list[int]:
    return _row(width, {c: 1 for c in cols})


def _embed(n: int, lead: int, first: Rows, *others: Rows) -> list[list[int]]:
    """Identity on the first ``lead`` columns, then local patterns on the rest.

    The identity rows belong to the first target factor, followed by ``first``;
    each further block contributes its rows with zeros in the leading columns.
    """
    width = n - lead
    out = [[int(i == j) for j in range(n)] for i in range(lead)]
    for block in (first, *others):
        for r in block:
            if len(r) != width:
                raise AssertionError(f"local row {r} has width {len(r)} != {width}")
            out.append([0] * lead + list(r))
    return out


# --- B_n ------------------------------------------------------------------

def _b_bu1(n, k):
    return _embed(n, n - 2, [[2, 1]], [[0, 1]])


def _b_d(n, k):
    return _embed(n, n - 2, [[1, 0], [1, 1]])


def _b_da1(n, k):
    return _embed(n, n - 3, [[1, 1, 0], [1, 1, 1]], [[0, 2, 1]])


def _b_b2a1(n, k):
    return _embed(n, n - 4, [[1, 1, 0, 0], [0, 0, 2, 1]], [[0, 1, 1, 0]], [[0, 1, 1, 1]])


def _b_ba3(n, k):
    w = 6
    b = [_ones(w, 1, 2), _ones(w, 3, 4), _row(w, {5: 2, 6: 1})]
    a = [_ones(w, 4, 5), _ones(w, 2, 3), _ones(w, 4, 5, 6)]
    return _embed(n, n - 6, b, a)


def _b_bd(n, k):
    w = 2 * k
    b = [_ones(w, 2 * j - 1, 2 * j) for j in range(1, k)] + [_row(w, {2 * k - 1: 2, 2 * k: 1})]
    d = [_ones(w, 2 * j, 2 * j + 1) for j in range(1, k)] + [_ones(w, 2 * k - 2, 2 * k - 1, 2 * k)]
    return _embed(n, n - 2 * k, b, d)


def _b_db(n, k):
    w = 2 * k + 1
    d = [_ones(w, 2 * j - 1, 2 * j) for j in range(1, k + 1)] + [_ones(w, 2 * k - 1, 2 * k, 2 * k + 1)]
    b = [_ones(w, 2 * j, 2 * j + 1) for j in range(1, k)] + [_row(w, {2 * k: 2, 2 * k + 1: 1})]
    return _embed(n, n - 2 * k - 1, d, b)


def _b_a1(n, k):
    p = [j * (2 * n - j + 1) for j in range(1, n)] + [n * (n + 1) // 2]
    return [p]


# --- C_n ------------------------------------------------------------------

def _c_au1(n, k):
    big = n
    m = big // 2
    rows = []
    if big % 2 == 0:
        rows += [_ones(big, 2 * i - 1, 2 * i) for i in range(1, m)]
        rows.append(_row(big, {big - 1: 1, big: 2}))
        rows += [_ones(big, big - 2 * j, big - 2 * j + 1) for j in range(1, m)]
        u = _ones(big, *range(1, big, 2))
    else:
        rows += [_ones(big, 2 * i - 1, 2 * i) for i in range(1, m + 1)]
        rows.append(_row(big, {big - 1: 1, big: 2}))
        rows += [_ones(big, big - 2 * j - 1, big - 2 * j) for j in range(1, m)]
        u = _ones(big, *range(1, big + 1, 2))
    return rows + [u]


def _c_ca1(n, k):
    return _embed(n, n - 2, [[1, 1]], [[0, 1]])


def _c_cc(n, k):
    w = 2 * k
    first = [_ones(w, 2 * j - 1, 2 * j) for j in range(1, k + 1)]
    second = [_ones(w, 2 * j, 2 * j + 1) for j in range(1, k)] + [_ones(w, 2 * k)]
    return _embed(n, n - 2 * k, first, second)


def _c_a1(n, k):
    return [[j * (2 * n - j) for j in range(1, n + 1)]]


# --- D_n ------------------------------------------------------------------

def _d_au1(n, k):
    big = n
    m = big // 2
    rows = []
    if big % 2 == 0:
        rows += [_ones(big, 2 * i - 1, 2 * i) for i in range(1, m)]
        rows.append(_ones(big, big))
        rows += [_ones(big, big - 2 * j, big - 2 * j + 1) for j in range(1, m)]
        u = _ones(big, *range(1, big, 2))
    else:
        rows += [_ones(big, 2 * i - 1, 2 * i) for i in range(1, m + 1)]
        rows.append(_ones(big, big))
        rows += [_ones(big, big - 2 * j - 1, big - 2 * j) for j in range(1, m)]
        u = _row(big, {**{c: 2 for c in range(1, big - 1, 2)}, big - 1: -1, big: 1})
    return rows + [u]


def _d_du1(n, k):
    return _embed(n, n - 3, [[1, 0, 0], [1, 1, 1]], [[0, 1, -1]])


def _d_b(n, k):
    return _embed(n, n - 2, [[1, 1]])


def _d_ba1(n, k):
    return _embed(n, n - 3, [[2, 1, 1]], [[0, 1, 1]])


def _d_bb(n, k):
    w = 2 * k + 1
    first = [_ones(w, 2 * j - 1, 2 * j) for j in range(1, k)]
    first.append(_row(w, {2 * k - 1: 2, 2 * k: 1, 2 * k + 1: 1}))
    second = [_ones(w, 2 * j, 2 * j + 1) for j in range(1, k)] + [_ones(w, 2 * k, 2 * k + 1)]
    return _embed(n, n - 2 * k - 1, first, second)


def _d_d2a1(n, k):
    w = 5
    d = [_ones(w, 1, 2), _ones(w, 3, 4), _ones(w, 3, 5)]
    return _embed(n, n - 5, d, [_ones(w, 2, 3, 4, 5)], [_ones(w, 2, 3)])


def _d_da3(n, k):
    w = 7
    d = [_ones(w, 1, 2), _ones(w, 3, 4), _ones(w, 5, 6), _ones(w, 5, 7)]
    a = [_ones(w, 4, 5), _ones(w, 2, 3), _ones(w, 4, 5, 6, 7)]
    return _embed(n, n - 7, d, a)


def _d_dd(n, k):
    w = 2 * k
    first = [_ones(w, 2 * j - 1, 2 * j) for j in range(1, k)]
    first.append(_ones(w, *range(2 * k - 3, 2 * k + 1)))
    second = [_ones(w, 2 * j, 2 * j + 1) for j in range(1, k - 1)]
    second += [_ones(w, 2 * k - 2, 2 * k - 1), _ones(w, 2 * k - 2, 2 * k)]
    return _embed(n, n - 2 * k, first, second)


# --- registry ---------------------------------------------------------------

def _sum_sq(n):
    return sum(i * i for i in range(1, n + 1))


def _odd_sq(n):
    return sum((2 * i - 1) ** 2 for i in range(1, n + 1))


_ONE = lambda n, k: Fraction(1)  # noqa: E731


@dataclass(frozen=True)
class Family:
    target: Callable[[int, int | None], str]
    valid: Callable[[int, int | None], bool]
    build: Callable[[int, int | None], list[list[int]]]
    gamma: Callable[[int, int | None], Fraction] | None = None
    needs_k: bool = False


FAMILIES: dict[str, Family] = {
    "Bn>Bn-1xU1": Family(lambda n, k: f"B{n-1}xU1", lambda n, k: n >= 3, _b_bu1),
    "Bn>Dn": Family(lambda n, k: f"D{n}", lambda n, k: n >= 4, _b_d, _ONE),
    "Bn>Dn-1xA1": Family(lambda n, k: f"D{n-1}xA1", lambda n, k: n >= 5, _b_da1,
                         lambda n, k: Fraction(n, n + 1)),
    "Bn>Bn-2x2A1": Family(lambda n, k: f"B{n-2}x2A1", lambda n, k: n >= 4, _b_b2a1, _ONE),
    "Bn>Bn-3xA3": Family(lambda n, k: f"B{n-3}xA3", lambda n, k: n >= 6, _b_ba3, _ONE),
    "Bn>Bn-kxDk": Family(lambda n, k: f"B{n-k}xD{k}", lambda n, k: n - k >= k >= 4, _b_bd, _ONE, True),
    "Bn>Dn-kxBk": Family(lambda n, k: f"D{n-k}xB{k}", lambda n, k: n - k > k >= 2 and n - k >= 4,
                         _b_db, _ONE, True),
    "Bn>A1": Family(lambda n, k: "A1", lambda n, k: n >= 2, _b_a1,
                    lambda n, k: Fraction(n, 2 * _sum_sq(n))),
    "Cn>An-1xU1": Family(lambda n, k: f"A{n-1}xU1", lambda n, k: n >= 2, _c_au1),
    "Cn>Cn-1xA1": Family(lambda n, k: f"C{n-1}xA1", lambda n, k: n >= 3, _c_ca1, _ONE),
    "Cn>Cn-kxCk": Family(lambda n, k: f"C{n-k}xC{k}", lambda n, k: n - k >= k >= 2, _c_cc, _ONE, True),
    "Cn>A1": Family(lambda n, k: "A1", lambda n, k: n >= 2, _c_a1, lambda n, k: Fraction(n, _odd_sq(n))),
    "Dn>An-1xU1": Family(lambda n, k: f"A{n-1}xU1", lambda n, k: n >= 4, _d_au1),
    "Dn>Dn-1xU1": Family(lambda n, k: f"D{n-1}xU1", lambda n, k: n >= 5, _d_du1),
    "Dn>Bn-1": Family(lambda n, k: f"B{n-1}", lambda n, k: n >= 4, _d_b, lambda n, k: Fraction(n, n - 1)),
    "Dn>Bn-2xA1": Family(lambda n, k: f"B{n-2}xA1", lambda n, k: n >= 4, _d_ba1, _ONE),
    "Dn>Bn-k-1xBk": Family(lambda n, k: f"B{n-k-1}xB{k}", lambda n, k: n - k - 1 >= k >= 2 and n >= 5,
                           _d_bb, lambda n, k: Fraction(n, n - 1), True),
    "Dn>Dn-2x2A1": Family(lambda n, k: f"D{n-2}x2A1", lambda n, k: n >= 6, _d_d2a1, _ONE),
    "Dn>Dn-3xA3": Family(lambda n, k: f"D{n-3}xA3", lambda n, k: n >= 7, _d_da3, _ONE),
    "Dn>Dn-kxDk": Family(lambda n, k: f"D{n-k}xD{k}", lambda n, k: n - k >= k >= 4, _d_dd, _ONE, True),
}


def _family(key: SeriesKey) -> Family:
    try:
        fam = FAMILIES[key.family]
    except KeyError:
        raise ProjectionError(f"unknown series {key.family!r}; known: {', '.join(FAMILIES)}") from None
    if fam.needs_k != (key.k is not None):
        raise ProjectionError(f"{key.family} {'needs' if fam.needs_k else 'takes no'} split parameter k")
    if not fam.valid(key.n, key.k):
        raise ProjectionError(f"{key} is outside the range of the family")
    return fam


def series_matrix(key: SeriesKey) -> ProjectionMap:
    fam = _family(key)
    source = Algebra(key.family[0], key.n)
    target: ProductAlgebra = parse_algebra(fam.target(key.n, key.k))
    rows = fam.build(key.n, key.k)
    return ProjectionMap(source, target, tuple(tuple(r) for r in rows), series=key.family,
                         gamma=fam.gamma(key.n, key.k) if fam.gamma else None)


def series_gamma(key: SeriesKey) -> Fraction | None:
    fam = _family(key)
    return fam.gamma(key.n, key.k) if fam.gamma else None


def series_instances(max_rank: int = 8, families: Sequence[str] | None = None) -> list[SeriesKey]:
    """Every in-range instance with source rank <= max_rank."""
    out = []
    for name in families or FAMILIES:
        fam = FAMILIES[name]
        for n in range(2, max_rank + 1):
            for k in (range(2, n) if fam.needs_k else [None]):
                if fam.valid(n, k):
                    out.append(SeriesKey(name, n, k))
    return out
