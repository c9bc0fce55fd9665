"""Small exact linear algebra over Fractions; matrices are tuples of row tuples."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def as_fractions(m: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def freeze(m) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in m)


def shape(m) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a, b) -> tuple[tuple, ...]:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def transpose(m) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def inverse(m) -> tuple[tuple[Fraction, ...], ...]:
    """Gauss-Jordan inverse; raises SingularMatrixError when det = 0."""
    n, c = shape(m)
    if n != c:
        raise ValueError(f"matrix is not square ({n}x{c})")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(as_fractions(m))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in input order."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for pc, b in basis:
            if v[pc] != 0:
                f = v[pc] / b[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is not None:
            basis.append((pc, v))
            chosen.append(idx)
    return chosen


def rank(m) -> int:
    return len(independent_rows(m))
