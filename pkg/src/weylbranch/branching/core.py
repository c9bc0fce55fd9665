"""Orbit branching through a projection matrix, and the index gamma."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..metric import index_of
from ..orbits import NotDominantError, Weight, is_dominant, orbit_size, scaled_orbit, weight
from ..projcat.catalog import ProjectionMap, load_catalog
from ..projcat.series import SeriesKey, series_gamma
from ..rootdata import Algebra, AlgebraError, ProductAlgebra

log = logging.getLogger(__name__)


class ConservationError(ArithmeticError):
    """Projected orbit sizes do not add up; the matrix is not a valid projection."""


class GammaError(ValueError):
    pass


def render_order(item: tuple[Weight, int]) -> tuple:
    """Sort key: lower multiplicity first, then flat weight descending."""
    w, mult = item
    return (mult, tuple(-x for x in w))


@dataclass(frozen=True)
class BranchingResult:
    source: Algebra
    target: ProductAlgebra
    dominant: Weight
    entries: tuple[tuple[Weight, int], ...]
    source_size: int
    image_size: int

    @classmethod
    def build(cls, source: Algebra, target: ProductAlgebra, dominant: Sequence,
              counts: dict[Weight, int] | Iterable[tuple[Weight, int]]) -> "BranchingResult":
        items = counts.items() if isinstance(counts, dict) else counts
        merged: Counter = Counter()
        for w, m in items:
            merged[weight(w)] += m
        entries = tuple(sorted(((w, m) for w, m in merged.items() if m), key=render_order))
        image = sum(m * orbit_size(target, w) for w, m in entries)
        return cls(source, target, weight(dominant), entries, orbit_size(source, dominant), image)

    @property
    def conserved(self) -> bool:
        return self.source_size == self.image_size

    def as_counter(self) -> Counter:
        return Counter(dict(self.entries))

    def factor_weights(self, w: Weight) -> list[tuple]:
        return self.target.split(w)

    def __eq__(self, other):
        if not isinstance(other, BranchingResult):
            return NotImplemented
        return (self.source, self.target, self.dominant, self.entries) == (
            other.source, other.target, other.dominant, other.entries)

    def __hash__(self):
        return hash((self.source, self.target, self.dominant, self.entries))


def _dominance_blocks(target: ProductAlgebra) -> list[int]:
    """Coordinate indices that must be non-negative for a dominant image."""
    return [i for f, s in target.blocks() if not f.is_u1 for i in range(s.start, s.stop)]


def branch(p: ProjectionMap, dominant: Sequence) -> BranchingResult:
    """Project the orbit of ``dominant`` and count the dominant images."""
    dominant = weight(dominant)
    if len(dominant) != p.source.rank:
        raise AlgebraError(f"weight of length {len(dominant)} for rank-{p.source.rank} {p.source}")
    if not is_dominant(p.source, dominant):
        raise NotDominantError(f"{tuple(map(str, dominant))} is not dominant for {p.source}")
    den, points = scaled_orbit(p.source, dominant)
    rows = [tuple((j, c) for j, c in enumerate(row) if c) for row in p.matrix]
    checked = _dominance_blocks(p.target)
    counts: Counter = Counter()
    for pt in points:
        img = tuple(sum(c * pt[j] for j, c in row) for row in rows)
        if all(img[i] >= 0 for i in checked):
            counts[img] += 1
    found = {tuple(Fraction(x, den) for x in img): m for img, m in counts.items()}
    result = BranchingResult.build(p.source, p.target, dominant, found)
    if not result.conserved:
        raise ConservationError(
            f"{p.key} on {tuple(map(str, dominant))}: source orbit has {result.source_size} points,"
            f" images account for {result.image_size}"
        )
    return result


def gamma_of_result(r: BranchingResult) -> Fraction:
    if not r.target.semisimple:
        raise GammaError(f"{r.target} has a U1 factor; the index is defined for semisimple targets only")
    total = sum((m * index_of(r.target, w) for w, m in r.entries), Fraction(0))
    if total == 0:
        raise GammaError("zero orbit carries no index")
    return index_of(r.source, r.dominant) / total


def gamma(p: ProjectionMap, probes: Sequence[Sequence]) -> Fraction:
    """Common value of I(source orbit) / sum I(target orbits) over the probes."""
    if not p.target.semisimple:
        raise GammaError(f"{p.target} has a U1 factor; the index is defined for semisimple targets only")
    probes = [weight(w) for w in probes if any(weight(w))]
    if len(probes) < 2:
        raise GammaError("need at least two non-zero probe orbits")
    values = {w: gamma_of_result(branch(p, w)) for w in probes}
    distinct = set(values.values())
    if len(distinct) != 1:
        detail = ", ".join(f"{tuple(map(str, w))}: {g}" for w, g in values.items())
        raise GammaError(f"{p.key}: index depends on the probe ({detail})")
    return distinct.pop()


def default_probes(alg: Algebra, a=2, b=3, c=5) -> list[Weight]:
    """(a,0,..,0), (0,b,0,..,0), (0,..,0,c); deduplicated and in that order."""
    n = alg.rank
    out = []
    for pos, val in ((0, a), (1, b), (n - 1, c)):
        w = [0] * n
        w[pos] = val
        w = weight(w)
        if not any(x == w for x in out):
            out.append(w)
    return out


@dataclass
class CheckEntry:
    key: str
    ok: bool
    gamma: Fraction | None = None
    messages: list[str] = field(default_factory=list)


@dataclass
class CatalogReport:
    entries: list[CheckEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.ok]

    def summary(self) -> str:
        return f"{len(self.entries)} pairs checked, {len(self.failures)} failed"


def check_map(p: ProjectionMap, probes: Sequence[Sequence] | None = None) -> CheckEntry:
    entry = CheckEntry(p.key, True)
    probes = list(probes) if probes is not None else default_probes(p.source)
    results = []
    for w in probes:
        try:
            results.append(branch(p, w))
        except (ConservationError, ArithmeticError, ValueError) as exc:
            entry.ok = False
            entry.messages.append(str(exc))
    if not entry.ok or not p.target.semisimple or "subjoining" in p.tags:
        return entry
    values = {r.dominant: gamma_of_result(r) for r in results if any(r.dominant)}
    distinct = set(values.values())
    if len(distinct) != 1:
        entry.ok = False
        entry.messages.append("index depends on the probe: "
                              + ", ".join(f"{tuple(map(str, w))} -> {g}" for w, g in values.items()))
        return entry
    entry.gamma = distinct.pop()
    expected = {}
    if p.gamma is not None:
        expected["tabulated"] = p.gamma
    if p.series is not None:
        sg = series_gamma(SeriesKey.parse(p.series, p.source.rank))
        if sg is not None:
            expected["series formula"] = sg
    for what, value in expected.items():
        if value != entry.gamma:
            entry.ok = False
            entry.messages.append(f"index {entry.gamma} != {what} {value}")
    return entry


def verify_catalog(max_rank: int = 8, catalog: dict[str, ProjectionMap] | None = None) -> CatalogReport:
    """Branch the default probes of every pair with source rank <= max_rank."""
    catalog = load_catalog() if catalog is None else catalog
    entries = []
    for key, p in catalog.items():
        if p.source.rank > max_rank:
            continue
        e = check_map(p)
        log.debug("%s: %s", key, "ok" if e.ok else "; ".join(e.messages))
        entries.append(e)
    return CatalogReport(entries)
