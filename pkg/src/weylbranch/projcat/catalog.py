"""Projection maps, the embedded catalog, and the matrix operations on them."""
from __future__ import annotations

import difflib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from ..linalg import (
    SingularMatrixError,
    as_fractions,
    identity,
    independent_rows,
    inverse,
    matmul,
    matvec,
    transpose,
)
from ..rootdata import Algebra, AlgebraError, ProductAlgebra, parse_algebra, parse_simple

IntMatrix = tuple[tuple[int, ...], ...]
QMatrix = tuple[tuple[Fraction, ...], ...]


class CatalogError(LookupError):
    pass


class ProjectionError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionMap:
    source: Algebra
    target: ProductAlgebra
    matrix: IntMatrix
    tags: frozenset[str] = field(default=frozenset(), compare=False)
    gamma: Fraction | None = field(default=None, compare=False)
    series: str | None = field(default=None, compare=False)
    # transcribed rows when a fix= tag replaced some of them
    printed: IntMatrix | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = len(self.matrix)
        if rows != self.target.rank:
            raise ProjectionError(f"{self.key}: {rows} rows for target rank {self.target.rank}")
        bad = [r for r in self.matrix if len(r) != self.source.rank]
        if bad:
            raise ProjectionError(f"{self.key}: row {bad[0]} has length != source rank {self.source.rank}")

    @property
    def key(self) -> str:
        return f"{self.source}>{self.target}"

    @property
    def transcribed(self) -> IntMatrix:
        return self.printed if self.printed is not None else self.matrix

    @property
    def equal_rank(self) -> bool:
        return self.source.rank == self.target.rank

    def apply(self, w: Sequence) -> tuple[Fraction, ...]:
        return matvec(self.matrix, w)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.matrix)


def _parse_tags(words: Iterable[str]):
    tags, gamma, series, fixes = set(), None, None, {}
    for w in words:
        if w.startswith("gamma="):
            gamma = Fraction(w[6:])
        elif w.startswith("series="):
            series = w[7:]
        elif w.startswith("fix="):
            row, _, vals = w[4:].partition(":")
            fixes[int(row) - 1] = tuple(int(x) for x in vals.split(","))
        else:
            tags.add(w)
    return frozenset(tags), gamma, series, fixes


def parse_catalog(text: str) -> dict[str, ProjectionMap]:
    """Parse the catalog format: key line, then one integer row per target rank."""
    out: dict[str, ProjectionMap] = {}
    head: list[str] | None = None
    rows: list[tuple[int, ...]] = []
    lineno = 0

    def flush():
        if head is None:
            return
        src, tgt = head[0].split(">")
        try:
            tags, gamma, series, fixes = _parse_tags(head[1:])
            matrix = tuple(fixes.get(i, r) for i, r in enumerate(rows))
            if any(i >= len(rows) for i in fixes):
                raise ProjectionError(f"fix= names a row beyond {len(rows)}")
            pm = ProjectionMap(parse_simple(src), parse_algebra(tgt), matrix, tags, gamma, series,
                               tuple(rows) if fixes else None)
        except (AlgebraError, ProjectionError, ValueError) as exc:
            raise CatalogError(f"catalog record {head[0]} (before line {lineno}): {exc}") from exc
        if pm.key in out:
            raise CatalogError(f"duplicate catalog key {pm.key}")
        out[pm.key] = pm

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            flush()
            head = line.split()
            if ">" not in head[0]:
                raise CatalogError(f"line {lineno}: expected a SOURCE>TARGET key, got {line!r}")
            rows = []
        else:
            if head is None:
                raise CatalogError(f"line {lineno}: matrix row before any key")
            try:
                rows.append(tuple(int(x) for x in line.split()))
            except ValueError as exc:
                raise CatalogError(f"line {lineno}: {exc}") from exc
    flush()
    return out


@lru_cache(maxsize=1)
def load_catalog() -> dict[str, ProjectionMap]:
    text = resources.files(__package__).joinpath("catalog.txt").read_text(encoding="utf-8")
    return parse_catalog(text)


def catalog_keys() -> list[str]:
    return list(load_catalog())


def catalog_lookup(source: Algebra | str, target: ProductAlgebra | str) -> ProjectionMap:
    src = parse_simple(source) if isinstance(source, str) else source
    tgt = parse_algebra(target) if isinstance(target, str) else ProductAlgebra.of(target)
    key = f"{src}>{tgt}"
    cat = load_catalog()
    if key in cat:
        return cat[key]
    same_source = [k for k in cat if k.startswith(f"{src}>")]
    near = difflib.get_close_matches(key, list(cat), n=5, cutoff=0.5)
    hint = same_source or near
    raise CatalogError(f"{key} is not in the catalog" + (f"; known: {', '.join(hint)}" if hint else ""))


def _to_int_matrix(m: Sequence[Sequence], what: str) -> IntMatrix:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ProjectionError(f"{what}: non-integer entry {x}")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def from_branching_pairs(
    source: Algebra, target: ProductAlgebra, pairs: Sequence[tuple[Sequence, Sequence]]
) -> ProjectionMap:
    """Solve P w = v for the integer matrix P given known (w, v) image pairs.

    Uses the first spanning subset of source weights; the remaining pairs must
    agree with the solution.
    """
    target = ProductAlgebra.of(target)
    n, m = source.rank, target.rank
    ws = [as_fractions([w])[0] for w, _ in pairs]
    vs = [as_fractions([v])[0] for _, v in pairs]
    for w, v in zip(ws, vs):
        if len(w) != n or len(v) != m:
            raise ProjectionError(f"pair {w} -> {v} does not fit {source} -> {target}")
    basis = independent_rows(ws)
    if len(basis) < n:
        raise ProjectionError(f"pairs span only {len(basis)} of {n} source dimensions")
    basis = basis[:n]
    w_cols = transpose([ws[i] for i in basis])
    v_cols = transpose([vs[i] for i in basis])
    p = matmul(v_cols, inverse(w_cols))
    for w, v in zip(ws, vs):
        if matvec(p, w) != tuple(v):
            raise ProjectionError(f"inconsistent pair {tuple(map(str, w))} -> {tuple(map(str, v))}")
    return ProjectionMap(source, target, _to_int_matrix(p, "from_branching_pairs"))


def compose(outer: ProjectionMap, inner: ProjectionMap) -> ProjectionMap:
    """Chain L > L' > L'': the map for L > L'' is outer . inner."""
    mid = inner.target.simple
    if mid is None or mid != outer.source:
        raise ProjectionError(f"cannot compose {outer.key} after {inner.key}")
    m = matmul(outer.matrix, inner.matrix)
    return ProjectionMap(inner.source, outer.target, _to_int_matrix(m, "compose"))


def invert(p: ProjectionMap) -> QMatrix:
    if not p.equal_rank:
        raise ProjectionError(f"{p.key} is not square ({p.target.rank}x{p.source.rank})")
    try:
        return inverse(p.matrix)
    except SingularMatrixError as exc:
        raise ProjectionError(f"{p.key} is singular") from exc


def relate(p1: ProjectionMap, p2: ProjectionMap) -> QMatrix:
    """P(L'->L'') = P(L>L'') P(L>L')^-1.

    The result maps weights of L' to weights of L''; L'' is not in general a
    subalgebra of L'.
    """
    if p1.source != p2.source:
        raise ProjectionError(f"{p1.key} and {p2.key} have different sources")
    return matmul(p2.matrix, invert(p1))


def identity_map(alg: Algebra) -> ProjectionMap:
    return ProjectionMap(alg, ProductAlgebra.of(alg), _to_int_matrix(identity(alg.rank), "identity"))


__all__ = [
    "CatalogError",
    "ProjectionError",
    "ProjectionMap",
    "catalog_keys",
    "catalog_lookup",
    "compose",
    "from_branching_pairs",
    "identity_map",
    "invert",
    "load_catalog",
    "parse_catalog",
    "relate",
]
