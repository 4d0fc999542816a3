"""Mechanical checks: congruence patterns, the B_(p,k) reduction, densities."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, TextIO

import numpy as np

from .etaquot import EtaQuotient, build_Bpk, eta_expansion
from .ntheory import is_prime
from .overpartitions import GuardError, c31_series
from .qseries import CoefficientRing, SeriesError, TruncatedSeries, residue_ring, series_dilate

VIOLATION_CAP = 100
DENSITY_GUARD = 10**6


@dataclass(frozen=True)
class CongruencePattern:
    """Claim: modulus | C(A*n + B) for every n >= 0."""

    A: int
    B: int
    M: int

    def __post_init__(self):
        if self.A < 1 or self.B < 0 or self.M < 2:
            raise ValueError(f"bad pattern {self}")

    def __str__(self):
        return f"C({self.A}n+{self.B}) = 0 mod {self.M}"


@dataclass(frozen=True)
class Violation:
    n: int
    value: int
    modulus: int


class ViolationList(list):
    """At most ``VIOLATION_CAP`` violations; ``total`` counts all of them."""

    def __init__(self, items=(), total: Optional[int] = None):
        super().__init__(items)
        self.total = len(self) if total is None else total

    @property
    def truncated(self) -> bool:
        return self.total > len(self)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "truncated": self.truncated,
            "violations": [asdict(v) for v in self],
        }


def _collect(indices: np.ndarray, values: np.ndarray, modulus: int) -> ViolationList:
    items = [Violation(int(n), int(v), modulus) for n, v in zip(indices[:VIOLATION_CAP], values[:VIOLATION_CAP])]
    return ViolationList(items, total=int(indices.size))


def _residues(series: TruncatedSeries, m: int) -> np.ndarray:
    """Coefficients reduced mod m, provided the ring exposes them exactly."""
    ring = series.ring
    if not ring.exact and ring.modulus % m:
        raise SeriesError(f"ring {ring} cannot resolve residues mod {m}")
    return series.to_ring(residue_ring(m)).coefficients if m != ring.modulus else series.coefficients


def check_pattern(series: TruncatedSeries, pattern: CongruencePattern, n_max: int) -> ViolationList:
    need = pattern.A * n_max + pattern.B
    if series.precision < need:
        raise GuardError(f"need precision {need}, series has {series.precision}")
    res = _residues(series, pattern.M)
    ns = np.arange(n_max + 1)
    vals = res[pattern.A * ns + pattern.B]
    bad = np.flatnonzero(vals != 0)
    return _collect(pattern.A * bad + pattern.B, vals[bad], pattern.M)


PRESETS = {
    "andrews": [CongruencePattern(9, 3, 3), CongruencePattern(9, 6, 3)],
    "parity": [CongruencePattern(1, 1, 2)],
    "mod144": [CongruencePattern(12, 11, 144)],
}
PRESETS["all"] = PRESETS["andrews"] + PRESETS["parity"] + PRESETS["mod144"]


def check_binomial_congruence(p: int, k: int, P: int) -> ViolationList:
    """A_p^(p^k) = 1 mod p^(k+1), checked in q' = q^24."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = p ** (k + 1)
    eq = EtaQuotient(p, {1: p ** (k + 1), p: -(p**k)})
    s = eta_expansion(eq, P, residue_ring(m))
    want = TruncatedSeries.one(P, s.ring)
    diff = (s - want).coefficients
    bad = np.flatnonzero(diff != 0)
    return _collect(bad, s.coefficients[bad], m)


def check_serre_congruence(p: int, k: int, n_terms: int) -> ViolationList:
    """B_(p,k) = sum C31(n) q^(24n) mod p^(k+1) through q^(24*n_terms).

    The violation ``value`` is the difference of the two sides at exponent ``n``.
    """
    m = p ** (k + 1)
    ring = residue_ring(m)
    P = 24 * n_terms
    lhs = eta_expansion(build_Bpk(p, k), P, ring)
    rhs = series_dilate(c31_series(P, ring), 24)
    diff = (lhs - rhs).coefficients
    bad = np.flatnonzero(diff != 0)
    return _collect(bad, diff[bad], m)


@dataclass(frozen=True)
class DensityRecord:
    modulus: int
    X: int
    hits: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.hits, self.X) if self.X else Fraction(0)

    def ratio_decimal(self, digits: int = 6) -> str:
        r = self.ratio
        return f"{r.numerator / r.denominator:.{digits}f}"

    def csv_row(self) -> str:
        r = self.ratio
        return f"{self.modulus},{self.X},{self.hits},{r.numerator},{r.denominator},{self.ratio_decimal()}"


DENSITY_HEADER = "modulus,X,hits,ratio_num,ratio_den,ratio_decimal"


def _hit_prefix(series: TruncatedSeries, m: int, X: int) -> np.ndarray:
    if series.precision < X:
        raise GuardError(f"need precision {X}, series has {series.precision}")
    res = _residues(series, m)
    hits = np.zeros(X + 1, dtype=np.int64)
    hits[1:] = np.cumsum(res[1 : X + 1] == 0)
    return hits


def density_scan(m: int, X: int, series: TruncatedSeries) -> DensityRecord:
    """Count 1 <= n <= X with m | coefficient n."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return DensityRecord(m, X, int(_hit_prefix(series, m, X)[X]))


def density_profile(m: int, X_list: Sequence[int], guard: int = DENSITY_GUARD,
                    ring: Optional[CoefficientRing] = None) -> List[DensityRecord]:
    """Density records for each X from one C31 pass (residue ring mod m by default)."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if not X_list:
        return []
    top = max(X_list)
    if top > guard:
        raise GuardError(f"X={top} exceeds guard {guard}")
    series = c31_series(top, residue_ring(m) if ring is None else ring)
    prefix = _hit_prefix(series, m, top)
    return [DensityRecord(m, X, int(prefix[X])) for X in X_list]


def write_density_csv(records: Iterable[DensityRecord], fh: TextIO) -> None:
    fh.write(DENSITY_HEADER + "\n")
    for rec in records:
        fh.write(rec.csv_row() + "\n")
