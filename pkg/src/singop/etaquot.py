"""Eta-quotients prod eta(delta z)^r_delta: weight, character, cusp orders, expansions.

Everything here is exact (``fractions.Fraction``); no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping

from .ntheory import FactoredInteger, divisors, is_prime, kronecker_factored
from .qseries import (
    ZZ,
    CoefficientRing,
    SeriesError,
    TruncatedSeries,
    euler_factor,
    series_dilate,
    series_div,
    series_mul,
)

B_LEVEL = 576


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        clean = {}
        for d, r in self.exponents.items():
            if d < 1 or self.level % d:
                raise ValueError(f"{d} does not divide level {self.level}")
            if r:
                clean[int(d)] = int(r)
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def r(self, delta: int) -> int:
        return self.exponents.get(delta, 0)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        """Exponent-wise sum, at the lcm of the two levels."""
        level = self.level * other.level // gcd(self.level, other.level)
        exps = dict(self.exponents)
        for d, r in other.exponents.items():
            exps[d] = exps.get(d, 0) + r
        return EtaQuotient(level, exps)

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: r * e for d, r in self.exponents.items()})

    def at_level(self, N: int) -> "EtaQuotient":
        if N % self.level:
            raise ValueError(f"{N} is not a multiple of {self.level}")
        return EtaQuotient(N, self.exponents)

    def exponents_json(self) -> Dict[str, int]:
        return {str(d): r for d, r in self.exponents.items()}


@dataclass(frozen=True)
class ModularityReport:
    sum_delta_mod24: int
    sum_codelta_mod24: int
    weight: Fraction

    @property
    def weight_integral(self) -> bool:
        return self.weight.denominator == 1

    @property
    def ok(self) -> bool:
        return self.sum_delta_mod24 == 0 and self.sum_codelta_mod24 == 0 and self.weight_integral


@dataclass(frozen=True)
class FactoredCharacter:
    """d -> ((-1)^weight * s / d) with s kept factored."""

    weight_parity_sign: int
    s: FactoredInteger

    @property
    def top(self) -> FactoredInteger:
        return FactoredInteger(self.weight_parity_sign * self.s.sign, self.s.factors)

    def __call__(self, d: int) -> int:
        return kronecker_factored(self.top, d)

    def to_json(self) -> dict:
        top = self.top
        return {"sign": top.sign, "factors": {str(p): e for p, e in top.factors.items()}}


@dataclass(frozen=True)
class CuspOrderRow:
    d: int
    order: Fraction


@dataclass(frozen=True)
class HolomorphyReport:
    rows: List[CuspOrderRow]

    @property
    def holomorphic(self) -> bool:
        return all(row.order >= 0 for row in self.rows)


def weight(eq: EtaQuotient) -> Fraction:
    return Fraction(sum(eq.exponents.values()), 2)


def check_modularity_conditions(eq: EtaQuotient) -> ModularityReport:
    N = eq.level
    s1 = sum(d * r for d, r in eq.exponents.items())
    s2 = sum((N // d) * r for d, r in eq.exponents.items())
    return ModularityReport(s1 % 24, s2 % 24, weight(eq))


def character_of(eq: EtaQuotient) -> FactoredCharacter:
    w = weight(eq)
    if w.denominator != 1:
        raise ValueError(f"weight {w} is not integral; character undefined")
    s = FactoredInteger.product(eq.exponents.items())
    return FactoredCharacter(-1 if w.numerator % 2 else 1, s)


def cusp_order(eq: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at a cusp c/d of Gamma0(N); independent of c."""
    N = eq.level
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide level {N}")
    total = sum(
        Fraction(gcd(d, delta) ** 2 * r, gcd(d, N // d) * d * delta)
        for delta, r in eq.exponents.items()
    )
    return Fraction(N, 24) * total


def holomorphy_report(eq: EtaQuotient) -> HolomorphyReport:
    return HolomorphyReport([CuspOrderRow(d, cusp_order(eq, d)) for d in divisors(eq.level)])


def build_Ap(p: int) -> EtaQuotient:
    """eta(24z)^p / eta(24pz)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return EtaQuotient(24 * p, {24: p, 24 * p: -1})


# eta(48z) eta(72z)^2 / (eta(24z)^2 eta(144z)): the C31 product at q -> q^24
C31_QUOTIENT = EtaQuotient(144, {24: -2, 48: 1, 72: 2, 144: -1})


def build_Bpk(p: int, k: int) -> EtaQuotient:
    if p not in (2, 3):
        raise ValueError(f"B_(p,k) is only defined here for p in (2, 3), got {p}")
    if k < 1:
        raise ValueError("k must be positive")
    if p == 2:
        exps = {24: 2 ** (k + 1) - 2, 48: -(2**k - 1), 72: 2, 144: -1}
    else:
        exps = {24: 3 ** (k + 1) - 2, 48: 1, 72: -(3**k - 2), 144: -1}
    eq = EtaQuotient(B_LEVEL, exps)
    assert eq == (C31_QUOTIENT * build_Ap(p) ** (p**k)).at_level(B_LEVEL)
    return eq


def eta_expansion(eq: EtaQuotient, P: int, ring: CoefficientRing = ZZ) -> TruncatedSeries:
    """q-expansion q^e0 * prod (q^delta; q^delta)^r_delta where e0 = sum(delta r)/24.

    Works in q^g for g the gcd of the deltas and dilates at the end.
    """
    s1 = sum(d * r for d, r in eq.exponents.items())
    if s1 % 24:
        raise SeriesError(f"leading exponent {Fraction(s1, 24)} is not an integer")
    e0 = s1 // 24
    if e0 < 0:
        raise SeriesError(f"leading exponent {e0} is negative")
    if not eq.exponents:
        return TruncatedSeries.one(P, ring)
    g = 0
    for d in eq.exponents:
        g = gcd(g, d)
    if e0 > P:
        return TruncatedSeries.monomial(0, P, ring, 0)
    Pg = (P - e0) // g
    s = TruncatedSeries.one(Pg, ring)
    for d, r in eq.exponents.items():
        f = euler_factor(d // g, Pg, ring)
        for _ in range(abs(r)):
            s = series_mul(s, f) if r > 0 else series_div(s, f)
    # entries past Pg are unknown, but dilation plus the shift pushes them beyond P
    padded = TruncatedSeries(s.tolist(), ring, P)
    return series_dilate(padded, g).shift(e0)


def _gcd_sq_ratio(d: int, m: int) -> Fraction:
    return Fraction(gcd(d, m) ** 2, gcd(d, 144) ** 2)


def D_value(d: int, k: int) -> Fraction:
    """Rescaled B_(2,k) cusp order at divisor d."""
    return (
        6 * _gcd_sq_ratio(d, 24) * (2 ** (k + 1) - 2)
        + 3 * _gcd_sq_ratio(d, 48) * (1 - 2**k)
        + 4 * _gcd_sq_ratio(d, 72)
        - 1
    )


def L_value(d: int, k: int) -> Fraction:
    """Rescaled B_(3,k) cusp order at divisor d."""
    return (
        6 * _gcd_sq_ratio(d, 24) * (3 ** (k + 1) - 2)
        + 3 * _gcd_sq_ratio(d, 48)
        + 2 * _gcd_sq_ratio(d, 72) * (2 - 3**k)
        - 1
    )


@dataclass(frozen=True)
class DLRow:
    d: int
    D: Fraction
    L: Fraction
    order_B2: Fraction
    order_B3: Fraction


def D_L_table(k: int) -> List[DLRow]:
    if k < 1:
        raise ValueError("k must be positive")
    b2, b3 = build_Bpk(2, k), build_Bpk(3, k)
    return [
        DLRow(d, D_value(d, k), L_value(d, k), cusp_order(b2, d), cusp_order(b3, d))
        for d in divisors(B_LEVEL)
    ]


def eta_info(eq: EtaQuotient) -> dict:
    """JSON-ready summary used by the ``eta-info`` subcommand."""
    rep = check_modularity_conditions(eq)
    hol = holomorphy_report(eq)
    info = {
        "level": eq.level,
        "exponents": eq.exponents_json(),
        "weight": str(rep.weight),
        "sum1_mod24": rep.sum_delta_mod24,
        "sum2_mod24": rep.sum_codelta_mod24,
        "character": character_of(eq).to_json() if rep.weight_integral else None,
        "cusps": [
            {"d": row.d, "order_num": row.order.numerator, "order_den": row.order.denominator}
            for row in hol.rows
        ],
        "holomorphic": hol.holomorphic,
    }
    return info
