"""Andrews' singular overpartitions: brute-force counts and generating functions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Tuple

from .qseries import (
    ZZ,
    CoefficientRing,
    TruncatedSeries,
    euler_factor,
    pochhammer,
    series_div,
    series_mul,
)

ENUMERATION_GUARD = 80


class GuardError(ValueError):
    """Requested size exceeds an exhaustive-search or precision guard."""


@dataclass(frozen=True)
class SingularClass:
    k: int
    i: int

    def __post_init__(self):
        if self.k < 3 or not 1 <= self.i <= self.k // 2:
            raise ValueError(f"need k >= 3 and 1 <= i <= k//2, got k={self.k}, i={self.i}")

    def allowed(self, part: int) -> bool:
        return part % self.k != 0

    def overlinable(self, part: int) -> bool:
        r = part % self.k
        return r == self.i or r == self.k - self.i


def iter_singular_overpartitions(cls: SingularClass, n: int) -> Iterator[List[Tuple[int, bool]]]:
    """Yield every singular overpartition of n as ``[(part, overlined), ...]``.

    Parts are non-increasing; an overlined part is listed first among equal parts.
    """

    def rec(remaining, max_part):
        if remaining == 0:
            yield []
            return
        for v in range(min(remaining, max_part), 0, -1):
            if not cls.allowed(v):
                continue
            for mult in range(1, remaining // v + 1):
                for rest in rec(remaining - mult * v, v - 1):
                    plain = [(v, False)] * mult
                    yield plain + rest
                    if cls.overlinable(v):
                        yield [(v, True)] + plain[1:] + rest

    yield from rec(n, n)


def enumerate_singular(cls: SingularClass, n: int) -> int:
    """Count singular overpartitions of n directly from the definition.

    Each ordinary partition into allowed parts contributes 2**(number of
    distinct overlinable part sizes).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUMERATION_GUARD:
        raise GuardError(f"n={n} exceeds enumeration guard {ENUMERATION_GUARD}")

    @lru_cache(maxsize=None)
    def count(remaining, max_part):
        # partitions of `remaining` into allowed parts <= max_part, weighted
        if remaining == 0:
            return 1
        total = 0
        for v in range(min(remaining, max_part), 0, -1):
            if not cls.allowed(v):
                continue
            w = 2 if cls.overlinable(v) else 1
            for mult in range(1, remaining // v + 1):
                total += w * count(remaining - mult * v, v - 1)
        return total

    return count(n, n)


def singular_series(cls: SingularClass, P: int, ring: CoefficientRing = ZZ) -> TruncatedSeries:
    """(q^k;q^k)(-q^i;q^k)(-q^(k-i);q^k) / (q;q) to precision P."""
    num = series_mul(
        pochhammer(cls.i, cls.k, 1, P, ring), pochhammer(cls.k - cls.i, cls.k, 1, P, ring)
    )
    num = series_mul(num, euler_factor(cls.k, P, ring))
    return series_div(num, euler_factor(1, P, ring))


def c31_series(P: int, ring: CoefficientRing = ZZ) -> TruncatedSeries:
    """C31 via the eta-product (q^2;q^2)(q^3;q^3)^2 / ((q;q)^2 (q^6;q^6))."""
    e3 = euler_factor(3, P, ring)
    s = series_mul(euler_factor(2, P, ring), e3)
    s = series_mul(s, e3)
    e1 = euler_factor(1, P, ring)
    s = series_div(s, e1)
    s = series_div(s, e1)
    return series_div(s, euler_factor(6, P, ring))
