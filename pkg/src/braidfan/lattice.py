"""Exact arithmetic in the quotient lattice Z^n / Z(1, ..., 1).

A class is represented by its unique representative with minimum coordinate
zero, so indicator vectors of proper nonempty subsets are their own
representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyInput, InvalidDimension, InvalidSubset, TooManyVectors


@dataclass(frozen=True, order=True)
class LatticeVector:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDimension(f"n must be at least 2, got {self.n}")
        if len(self.coords) != self.n:
            raise DimensionMismatch(f"expected {self.n} coordinates, got {len(self.coords)}")
        if min(self.coords) != 0:
            raise ValueError(f"{self.coords} is not in canonical form")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> frozenset[int]:
        """1-based positions of the nonzero coordinates."""
        return frozenset(i + 1 for i, c in enumerate(self.coords) if c)

    def chart(self) -> tuple[int, ...]:
        """Image in Z^(n-1) under v -> (v_1 - v_n, ..., v_{n-1} - v_n)."""
        last = self.coords[-1]
        return tuple(c - last for c in self.coords[:-1])

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def canonicalize(n: int, raw: Sequence[int]) -> LatticeVector:
    if n < 2:
        raise InvalidDimension(f"n must be at least 2, got {n}")
    raw = tuple(int(x) for x in raw)
    if len(raw) != n:
        raise DimensionMismatch(f"expected {n} coordinates, got {len(raw)}")
    m = min(raw)
    return LatticeVector(n, tuple(x - m for x in raw))


def indicator(n: int, subset: Iterable[int]) -> LatticeVector:
    """The class of e_A, the 0/1 vector supported on the 1-based set A."""
    subset = set(subset)
    bad = [a for a in subset if not 1 <= a <= n]
    if bad:
        raise InvalidSubset(f"elements {sorted(bad)} are outside [1, {n}]")
    return canonicalize(n, [1 if i in subset else 0 for i in range(1, n + 1)])


def sum_vectors(vs: Sequence[LatticeVector]) -> LatticeVector:
    vs = list(vs)
    if not vs:
        raise EmptyInput("cannot sum an empty list of lattice vectors")
    n = vs[0].n
    if any(v.n != n for v in vs):
        raise DimensionMismatch("lattice vectors of different dimensions")
    return canonicalize(n, [sum(col) for col in zip(*(v.coords for v in vs))])


def _det(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def maximal_minor_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of all k x k minors of a k x d integer matrix (k <= d)."""
    k = len(rows)
    if k == 0:
        return 1
    d = len(rows[0])
    g = 0
    for cols in combinations(range(d), k):
        g = gcd(g, _det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            break
    return g


def is_unimodular_extendable(vs: Iterable[LatticeVector]) -> bool:
    """True iff the vectors extend to a basis of the quotient lattice.

    Equivalent to every invariant factor of the chart matrix being 1, which
    holds exactly when its maximal minors are coprime.
    """
    vs = sorted(set(vs))
    if not vs:
        return True
    n = vs[0].n
    if any(v.n != n for v in vs):
        raise DimensionMismatch("lattice vectors of different dimensions")
    if len(vs) > n - 1:
        raise TooManyVectors(f"{len(vs)} vectors cannot be part of a basis of rank {n - 1}")
    return maximal_minor_gcd([v.chart() for v in vs]) == 1
