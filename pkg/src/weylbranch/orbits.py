"""Weyl group orbits in the omega basis.

Orbits are generated from the dominant point by reflections applied only where
the current coordinate is positive; every orbit point is reached that way and
the visited set removes repeats.  Rational input is scaled to a common
denominator first so the closure runs on plain integers.
"""
from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Sequence

from .rootdata import (
    Algebra,
    AlgebraError,
    ProductAlgebra,
    cartan_matrix,
    parabolic_order,
    weyl_group_order,
)

log = logging.getLogger(__name__)

Weight = tuple[Fraction, ...]

MAX_ORBIT = 20_000_000
LARGE_ORBIT = 1_000_000


class OrbitError(ValueError):
    pass


class NotDominantError(OrbitError):
    pass


class OrbitTooLargeError(OrbitError):
    pass


def weight(values: Iterable) -> Weight:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Orbit:
    algebra: ProductAlgebra
    dominant: Weight
    points: tuple[Weight, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def __contains__(self, w) -> bool:
        return weight(w) in set(self.points)


def _check_simple(alg: Algebra, w: Sequence) -> None:
    if alg.is_u1:
        raise AlgebraError("U1 has no reflections")
    if len(w) != alg.rank:
        raise AlgebraError(f"weight {tuple(w)} has length {len(w)}, {alg} has rank {alg.rank}")


def reflect(alg: Algebra, w: Sequence, i: int) -> Weight:
    """Simple reflection in node ``i`` (1-based)."""
    _check_simple(alg, w)
    if not 1 <= i <= alg.rank:
        raise IndexError(f"node {i} out of range for {alg}")
    row = cartan_matrix(alg)[i - 1]
    wi = Fraction(w[i - 1])
    return tuple(Fraction(x) - wi * r for x, r in zip(w, row))


def is_dominant(alg: Algebra | ProductAlgebra, w: Sequence) -> bool:
    pa = ProductAlgebra.of(alg)
    return all(f.is_u1 or all(x >= 0 for x in block) for f, block in zip(pa.factors, pa.split(w)))


def dominant_of(alg: Algebra | ProductAlgebra, w: Sequence) -> Weight:
    """Unique dominant point in the orbit of ``w``.

    Reflecting in any node with a negative coordinate moves the point strictly
    up in the dominance order, so this terminates.
    """
    pa = ProductAlgebra.of(alg)
    out: list[Fraction] = []
    for f, block in zip(pa.factors, pa.split(w)):
        v = weight(block)
        if not f.is_u1:
            c = cartan_matrix(f)
            while True:
                i = next((k for k, x in enumerate(v) if x < 0), None)
                if i is None:
                    break
                vi = v[i]
                v = tuple(x - vi * r for x, r in zip(v, c[i]))
        out.extend(v)
    return tuple(out)


def _require_dominant(pa: ProductAlgebra, w: Sequence) -> None:
    if not is_dominant(pa, w):
        raise NotDominantError(
            f"{tuple(str(x) for x in w)} is not dominant for {pa}; use dominant_of() first"
        )


def orbit_size(alg: Algebra | ProductAlgebra, dominant: Sequence) -> int:
    """|W| / |stabiliser| without enumerating; the stabiliser of a dominant
    point is generated by the reflections in its zero coordinates."""
    pa = ProductAlgebra.of(alg)
    _require_dominant(pa, dominant)
    size = 1
    for f, block in zip(pa.factors, pa.split(dominant)):
        if f.is_u1:
            continue
        zeros = [i for i, x in enumerate(block) if x == 0]
        size *= weyl_group_order(f) // parabolic_order(f, zeros)
    return size


def _scale(w: Sequence) -> tuple[int, tuple[int, ...]]:
    q = weight(w)
    den = lcm(*(x.denominator for x in q)) if q else 1
    return den, tuple(int(x * den) for x in q)


def _integer_orbit(alg: Algebra, start: tuple[int, ...]) -> list[tuple[int, ...]]:
    c = cartan_matrix(alg)
    n = alg.rank
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(n):
                pi = p[i]
                if pi > 0:
                    row = c[i]
                    q = tuple(x - pi * r for x, r in zip(p, row))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
        frontier = nxt
    return list(seen)


def guard_size(predicted: int, what: str = "orbit") -> None:
    if predicted > MAX_ORBIT:
        raise OrbitTooLargeError(
            f"{what} would hold {predicted} points, above the {MAX_ORBIT} limit"
        )
    if predicted > LARGE_ORBIT:
        warnings.warn(f"{what} holds {predicted} points; this will be slow", RuntimeWarning)


def scaled_orbit(alg: Algebra | ProductAlgebra, dominant: Sequence) -> tuple[int, list[tuple[int, ...]]]:
    """Orbit points multiplied by a common denominator, as integer tuples.

    Returns (denominator, points) with points in no particular order.
    """
    pa = ProductAlgebra.of(alg)
    _require_dominant(pa, dominant)
    guard_size(orbit_size(pa, dominant))
    den, ints = _scale(dominant)
    pieces = []
    start = 0
    for f in pa.factors:
        block = ints[start:start + f.rank]
        start += f.rank
        pieces.append([block] if f.is_u1 else _integer_orbit(f, block))
    if len(pieces) == 1:
        return den, pieces[0]
    return den, [sum(combo, ()) for combo in itertools.product(*pieces)]


def orbit_points(alg: Algebra | ProductAlgebra, dominant: Sequence) -> Orbit:
    """Full orbit of a dominant point, sorted lexicographically descending."""
    pa = ProductAlgebra.of(alg)
    den, pts = scaled_orbit(pa, dominant)
    pts.sort(reverse=True)
    points = tuple(tuple(Fraction(x, den) for x in p) for p in pts)
    return Orbit(pa, weight(dominant), points)


# ---------------------------------------------------------------------------
# Independent check for B, C, D: signed permutations in orthonormal coordinates.

def to_orthonormal(alg: Algebra, w: Sequence) -> Weight:
    n = alg.rank
    lam = weight(w)
    if alg.family == "B":
        return tuple(sum(lam[j:n - 1], Fraction(0)) + lam[n - 1] / 2 for j in range(n))
    if alg.family == "C":
        return tuple(sum(lam[j:], Fraction(0)) for j in range(n))
    if alg.family == "D":
        spin = (lam[n - 2] + lam[n - 1]) / 2
        x = [sum(lam[j:n - 2], Fraction(0)) + spin for j in range(n - 1)]
        x.append((lam[n - 1] - lam[n - 2]) / 2)
        return tuple(x)
    raise AlgebraError(f"no orthonormal realisation for {alg}")


def from_orthonormal(alg: Algebra, x: Sequence) -> Weight:
    n = alg.rank
    x = weight(x)
    lam = [x[i] - x[i + 1] for i in range(n - 1)]
    if alg.family == "B":
        lam.append(2 * x[n - 1])
    elif alg.family == "C":
        lam.append(x[n - 1])
    elif alg.family == "D":
        lam.append(x[n - 2] + x[n - 1])
    else:
        raise AlgebraError(f"no orthonormal realisation for {alg}")
    return tuple(lam)


def signed_permutation_oracle(alg: Algebra, dominant: Sequence) -> set[Weight]:
    """Orbit by brute force over the hyperoctahedral group (even sign changes for D)."""
    if alg.family not in "BCD" or alg.is_u1:
        raise AlgebraError(f"signed permutations describe B, C, D only, not {alg}")
    x = to_orthonormal(alg, dominant)
    n = alg.rank
    out = set()
    for perm in set(itertools.permutations(x)):
        for signs in itertools.product((1, -1), repeat=n):
            if alg.family == "D" and prod(signs) < 0:
                continue
            out.add(from_orthonormal(alg, [s * v for s, v in zip(signs, perm)]))
    return out
