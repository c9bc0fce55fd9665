"""Inner products and the second-degree orbit index I = (l|l) |W_l|."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .orbits import Orbit, orbit_size
from .rootdata import Algebra, AlgebraError, ProductAlgebra, quadratic_form


def _require_semisimple(pa: ProductAlgebra) -> None:
    if not pa.semisimple:
        raise AlgebraError(f"{pa} has a U1 factor, which carries no inner product")


def inner_product(alg: Algebra | ProductAlgebra, u: Sequence, v: Sequence) -> Fraction:
    pa = ProductAlgebra.of(alg)
    _require_semisimple(pa)
    total = Fraction(0)
    for (f, _), bu, bv in zip(pa.blocks(), pa.split(u), pa.split(v)):
        g = quadratic_form(f)
        for i, ui in enumerate(bu):
            if ui:
                row = g[i]
                total += Fraction(ui) * sum((row[j] * Fraction(vj) for j, vj in enumerate(bv) if vj), Fraction(0))
    return total


def norm2(alg: Algebra | ProductAlgebra, w: Sequence) -> Fraction:
    return inner_product(alg, w, w)


def index_of(alg: Algebra | ProductAlgebra, dominant: Sequence) -> Fraction:
    """Index of the orbit through ``dominant`` without enumerating it."""
    return norm2(alg, dominant) * orbit_size(alg, dominant)


def orbit_index(orbit: Orbit) -> Fraction:
    closed = norm2(orbit.algebra, orbit.dominant) * orbit.size
    summed = sum((norm2(orbit.algebra, p) for p in orbit.points), Fraction(0))
    if closed != summed:
        raise ArithmeticError(f"index mismatch for orbit of {orbit.dominant}: {closed} != {summed}")
    return closed


def index_of_sum(i1: Fraction, i2: Fraction) -> Fraction:
    return Fraction(i1) + Fraction(i2)


def index_of_product(o1: Orbit, o2: Orbit) -> Fraction:
    """Index of the product orbit o1 x o2 over the product of the two algebras."""
    i1, i2 = orbit_index(o1), orbit_index(o2)
    value = i1 * o2.size + i2 * o1.size
    direct = o1.size * o2.size * (norm2(o1.algebra, o1.dominant) + norm2(o2.algebra, o2.dominant))
    if value != direct:
        raise ArithmeticError(f"product index forms disagree: {value} != {direct}")
    return value
