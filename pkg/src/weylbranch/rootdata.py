"""Simple and product algebras, Cartan matrices and the weight-space metric.

Nodes follow the Dynkin numbering: for B_n node n is the short node, for C_n
node n is the long node, for D_n nodes n-1 and n form the fork.  For G2 node 1
is long.  Long roots have squared length 2 in every simple factor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

FAMILIES = ("A", "B", "C", "D", "G", "U")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

Matrix = tuple[tuple[int, ...], ...]
QMatrix = tuple[tuple[Fraction, ...], ...]


class AlgebraError(ValueError):
    """Malformed algebra name or an operation the algebra does not support."""


@dataclass(frozen=True, order=True)
class Algebra:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise AlgebraError(f"unknown family {self.family!r}")
        if self.family == "G" and self.rank != 2:
            raise AlgebraError("G2 is the only exceptional algebra supported")
        if self.family == "U" and self.rank != 1:
            raise AlgebraError("U1 has rank 1")
        if self.family in _MIN_RANK and self.rank < _MIN_RANK[self.family]:
            raise AlgebraError(f"{self.family}{self.rank}: rank below {_MIN_RANK[self.family]}")

    @property
    def is_u1(self) -> bool:
        return self.family == "U"

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class ProductAlgebra:
    factors: tuple[Algebra, ...]

    def __post_init__(self):
        if not self.factors:
            raise AlgebraError("a product algebra needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def of(cls, alg: "Algebra | ProductAlgebra") -> "ProductAlgebra":
        return alg if isinstance(alg, ProductAlgebra) else cls((alg,))

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def semisimple(self) -> bool:
        return not any(f.is_u1 for f in self.factors)

    @property
    def simple(self) -> Algebra | None:
        """The single factor when there is exactly one, else None."""
        return self.factors[0] if len(self.factors) == 1 else None

    def blocks(self) -> Iterator[tuple[Algebra, slice]]:
        """Yield each factor with its coordinate slice, left to right."""
        start = 0
        for f in self.factors:
            yield f, slice(start, start + f.rank)
            start += f.rank

    def split(self, w: Sequence) -> list[tuple]:
        if len(w) != self.rank:
            raise AlgebraError(f"weight of length {len(w)} given for rank-{self.rank} {self}")
        return [tuple(w[s]) for _, s in self.blocks()]

    def __str__(self):
        return render_algebra(self)


def render_algebra(pa: ProductAlgebra) -> str:
    """Inverse of parse_algebra; runs of equal factors get a count prefix."""
    parts = []
    i = 0
    fs = pa.factors
    while i < len(fs):
        j = i
        while j < len(fs) and fs[j] == fs[i]:
            j += 1
        count = j - i
        parts.append(f"{count if count > 1 else ''}{fs[i]}")
        i = j
    return "x".join(parts)


_FACTOR = re.compile(r"^(\d*)([ABCDGU])(\d+)$")


def parse_algebra(text: str) -> ProductAlgebra:
    """Parse names like ``B3``, ``C2xU1``, ``B4x2A1`` or ``3A1``."""
    text = text.strip()
    if not text:
        raise AlgebraError("empty algebra name")
    factors = []
    for part in text.split("x"):
        m = _FACTOR.match(part)
        if not m:
            raise AlgebraError(f"cannot parse algebra factor {part!r} in {text!r}")
        count = int(m.group(1)) if m.group(1) else 1
        if count < 1:
            raise AlgebraError(f"zero multiplicity in {text!r}")
        alg = Algebra(m.group(2), int(m.group(3)))
        factors.extend([alg] * count)
    return ProductAlgebra(tuple(factors))


def parse_simple(text: str) -> Algebra:
    pa = parse_algebra(text)
    if pa.simple is None or pa.simple.is_u1:
        raise AlgebraError(f"{text!r} is not a simple algebra")
    return pa.simple


@lru_cache(maxsize=None)
def cartan_matrix(alg: Algebra) -> Matrix:
    """Cartan matrix with entries 2(a_i|a_j)/(a_j|a_j).

    Reflection in node i subtracts ``w[i] * row i`` from a weight in the
    omega basis, so row i is the simple root a_i in that basis.
    """
    if alg.is_u1:
        raise AlgebraError("U1 has no Cartan matrix")
    n = alg.rank
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    if alg.family == "G":
        return ((2, -3), (-1, 2))
    for i in range(n - 1):
        c[i][i + 1] = c[i + 1][i] = -1
    if alg.family == "B":
        c[n - 2][n - 1] = -2
    elif alg.family == "C":
        c[n - 1][n - 2] = -2
    elif alg.family == "D":
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    return tuple(tuple(r) for r in c)


@lru_cache(maxsize=None)
def root_half_lengths(alg: Algebra) -> tuple[Fraction, ...]:
    """(a_i|a_i)/2 per node: 1 for long roots."""
    n = alg.rank
    if alg.is_u1:
        raise AlgebraError("U1 has no roots")
    d = [Fraction(1)] * n
    if alg.family == "B":
        d[n - 1] = Fraction(1, 2)
    elif alg.family == "C":
        d = [Fraction(1, 2)] * (n - 1) + [Fraction(1)]
    elif alg.family == "G":
        d = [Fraction(1), Fraction(1, 3)]
    return tuple(d)


@lru_cache(maxsize=None)
def quadratic_form(alg: Algebra) -> QMatrix:
    """Gram matrix (w_i|w_j) of the fundamental weights.

    Since a_i = sum_j C_ij w_j, pairing with w_k gives (w_i|w_k) = (C^-1)_ik d_k
    where d_k = (a_k|a_k)/2.
    """
    if alg.is_u1:
        raise AlgebraError("U1 carries no intrinsic inner product")
    from .linalg import inverse

    cinv = inverse(cartan_matrix(alg))
    d = root_half_lengths(alg)
    n = alg.rank
    return tuple(tuple(cinv[i][k] * d[k] for k in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def weyl_group_order(alg: Algebra) -> int:
    return _component_order(alg.family, alg.rank)


def _component_order(family: str, rank: int) -> int:
    from math import factorial

    if family == "U":
        return 1
    if family == "A":
        return factorial(rank + 1)
    if family in "BC":
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if family == "G":
        return 12
    raise AlgebraError(family)


def parabolic_order(alg: Algebra, nodes: Sequence[int]) -> int:
    """Order of the subgroup generated by the simple reflections in ``nodes`` (0-based).

    Every connected subdiagram of A/B/C/D/G2 is itself of type A, B/C, D or G2,
    recognised from its bonds: a branch node means D, a double bond B/C, a
    triple bond G2, otherwise A.
    """
    if alg.is_u1:
        return 1
    c = cartan_matrix(alg)
    remaining = set(nodes)
    order = 1
    while remaining:
        comp = {remaining.pop()}
        stack = list(comp)
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if c[i][j] != 0:
                    remaining.discard(j)
                    comp.add(j)
                    stack.append(j)
        size = len(comp)
        degree = max(sum(1 for j in comp if j != i and c[i][j]) for i in comp)
        bond = max(c[i][j] * c[j][i] for i in comp for j in comp if i != j) if size > 1 else 0
        if bond == 3:
            kind = "G"
        elif bond == 2:
            kind = "B"
        elif degree >= 3:
            kind = "D"
        else:
            kind = "A"
        order *= _component_order(kind, size)
    return order


def d3_to_a3(w: Sequence) -> tuple:
    """Renumber a D3 weight into A3 numbering (D3 node 1 is the A3 middle node)."""
    return (w[1], w[0], w[2])


def a3_to_d3(w: Sequence) -> tuple:
    return (w[1], w[0], w[2])


def b2_to_c2(w: Sequence) -> tuple:
    """B2 and C2 differ only in which node carries the short root."""
    return (w[1], w[0])
