"""Truncated power series in q over Z or Z/MZ.

Coefficients are stored densely (index n holds the coefficient of q^n,
precision P means indices 0..P are exact).  Products and quotients iterate
over the nonzero terms of the sparser operand, so eta-type factors with
O(sqrt(P)) support cost O(sqrt(P) * P) per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO, Tuple

import numpy as np

from ._kernels import div_sparse_mod

MAX_MODULUS = 2**31


class SeriesError(ValueError):
    """Incompatible operands or a non-invertible constant term."""


@dataclass(frozen=True)
class CoefficientRing:
    """``modulus=None`` is the integers; otherwise Z/modulus."""

    modulus: Optional[int] = None

    def __post_init__(self):
        m = self.modulus
        if m is not None and not (2 <= m < MAX_MODULUS):
            raise ValueError(f"residue modulus must satisfy 2 <= M < 2**31, got {m}")

    @property
    def exact(self) -> bool:
        return self.modulus is None

    def dtype(self):
        return object if self.exact else np.int64

    def unit_inverse(self, c: int) -> int:
        if self.exact:
            if c in (1, -1):
                return c
            raise SeriesError(f"constant term {c} is not a unit in Z")
        try:
            return pow(int(c), -1, self.modulus)
        except ValueError:
            raise SeriesError(f"constant term {c} is not a unit mod {self.modulus}") from None

    def __str__(self):
        return "ZZ" if self.exact else f"ZZ/{self.modulus}"


ZZ = CoefficientRing()


def residue_ring(m: int) -> CoefficientRing:
    return CoefficientRing(m)


class TruncatedSeries:
    """An immutable power series known through q^precision."""

    __slots__ = ("ring", "_c")

    def __init__(self, coeffs: Iterable[int], ring: CoefficientRing = ZZ, precision: Optional[int] = None):
        vals = [int(c) for c in coeffs]
        if precision is None:
            precision = len(vals) - 1
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        vals = vals[: precision + 1] + [0] * (precision + 1 - len(vals))
        arr = np.array(vals, dtype=ring.dtype())
        if not ring.exact:
            arr %= ring.modulus
        self._init(ring, arr)

    def _init(self, ring, arr):
        arr.flags.writeable = False
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_c", arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring: CoefficientRing) -> "TruncatedSeries":
        if not ring.exact:
            arr %= ring.modulus
        obj = cls.__new__(cls)
        obj._init(ring, arr)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, precision: int, ring: CoefficientRing = ZZ) -> "TruncatedSeries":
        return cls.monomial(0, precision, ring)

    @classmethod
    def monomial(cls, exponent: int, precision: int, ring: CoefficientRing = ZZ, coeff: int = 1) -> "TruncatedSeries":
        arr = np.zeros(precision + 1, dtype=ring.dtype())
        if exponent <= precision:
            arr[exponent] = coeff
        return cls._wrap(arr, ring)

    @property
    def precision(self) -> int:
        return self._c.shape[0] - 1

    @property
    def coefficients(self) -> np.ndarray:
        """Read-only view of c_0..c_P."""
        return self._c

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(c) for c in self._c[n]]
        if not 0 <= n <= self.precision:
            raise IndexError(f"q^{n} is beyond precision {self.precision}")
        return int(self._c[n])

    def __len__(self):
        return self.precision + 1

    def __iter__(self) -> Iterator[int]:
        return (int(c) for c in self._c)

    def tolist(self):
        return [int(c) for c in self._c]

    def nonzero_terms(self) -> Tuple[np.ndarray, np.ndarray]:
        idx = np.flatnonzero(self._c != 0)
        return idx, self._c[idx]

    def nnz(self) -> int:
        return int(np.count_nonzero(self._c != 0))

    def valuation(self) -> Optional[int]:
        idx = np.flatnonzero(self._c != 0)
        return int(idx[0]) if idx.size else None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and bool(np.all(self._c == other._c))
        )

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.tolist()[:8])
        more = ", ..." if self.precision >= 8 else ""
        return f"TruncatedSeries([{shown}{more}], ring={self.ring}, P={self.precision})"

    def to_ring(self, ring: CoefficientRing) -> "TruncatedSeries":
        """Reduce an exact series (or a residue series mod a multiple) into ``ring``."""
        if ring == self.ring:
            return self
        if ring.exact:
            raise SeriesError("cannot lift a residue series to Z")
        if not self.ring.exact and self.ring.modulus % ring.modulus:
            raise SeriesError(f"{ring.modulus} does not divide {self.ring.modulus}")
        if self.ring.exact:
            arr = np.array([int(c) % ring.modulus for c in self._c], dtype=np.int64)
        else:
            arr = self._c % ring.modulus
        return TruncatedSeries._wrap(arr, ring)

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise SeriesError("cannot raise precision")
        return TruncatedSeries._wrap(self._c[: precision + 1].copy(), self.ring)

    def __mul__(self, other):
        return series_mul(self, other)

    def __add__(self, other):
        _check_compatible(self, other)
        return TruncatedSeries._wrap(self._c + other._c, self.ring)

    def __sub__(self, other):
        _check_compatible(self, other)
        return TruncatedSeries._wrap(self._c - other._c, self.ring)

    def __neg__(self):
        return TruncatedSeries._wrap(-self._c, self.ring)

    def scale(self, c: int) -> "TruncatedSeries":
        if not self.ring.exact:
            c %= self.ring.modulus
        return TruncatedSeries._wrap(self._c * c, self.ring)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (k >= 0), keeping the precision."""
        if k < 0:
            raise SeriesError("negative shifts leave the power-series ring")
        arr = np.zeros_like(self._c)
        if k <= self.precision:
            arr[k:] = self._c[: self.precision + 1 - k]
        return TruncatedSeries._wrap(arr, self.ring)


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.ring != b.ring:
        raise SeriesError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.precision != b.precision:
        raise SeriesError(f"precision mismatch: {a.precision} vs {b.precision}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(a, b)
    if a.nnz() > b.nnz():
        a, b = b, a
    P = a.precision
    ring = a.ring
    dense = b._c
    out = np.zeros(P + 1, dtype=ring.dtype())
    exps, coefs = a.nonzero_terms()
    for e, c in zip(exps.tolist(), coefs.tolist()):
        seg = c * dense[: P + 1 - e]
        if ring.exact:
            out[e:] += seg
        else:
            out[e:] = (out[e:] + seg) % ring.modulus
    return TruncatedSeries._wrap(out, ring)


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient a/b by the triangular recurrence; cost O(nnz(b) * P)."""
    _check_compatible(a, b)
    ring = b.ring
    inv0 = ring.unit_inverse(int(b._c[0]))
    exps, coefs = b.nonzero_terms()
    exps, coefs = exps[1:], coefs[1:]
    if ring.exact:
        num = a.tolist()
        terms = list(zip(exps.tolist(), [int(c) for c in coefs]))
        out = [0] * len(num)
        for n in range(len(num)):
            acc = num[n]
            for e, c in terms:
                if e > n:
                    break
                acc -= c * out[n - e]
            out[n] = acc * inv0
        return TruncatedSeries._wrap(np.array(out, dtype=object), ring)
    res = div_sparse_mod(
        np.ascontiguousarray(a._c, dtype=np.int64),
        np.ascontiguousarray(exps, dtype=np.int64),
        np.ascontiguousarray(coefs, dtype=np.int64),
        np.int64(inv0),
        np.int64(ring.modulus),
    )
    return TruncatedSeries._wrap(res, ring)


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    return series_div(TruncatedSeries.one(a.precision, a.ring), a)


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        a, e = series_invert(a), -e
    result = TruncatedSeries.one(a.precision, a.ring)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def series_dilate(a: TruncatedSeries, t: int) -> TruncatedSeries:
    """Substitute q -> q^t."""
    if t < 1:
        raise ValueError("dilation factor must be positive")
    P = a.precision
    out = np.zeros(P + 1, dtype=a.ring.dtype())
    out[::t] = a._c[: P // t + 1]
    return TruncatedSeries._wrap(out, a.ring)


def pentagonal_terms(P: int) -> Iterator[Tuple[int, int]]:
    """(exponent, sign) pairs of (q;q)_inf up to q^P, ascending."""
    yield 0, 1
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        if e1 > P:
            return
        sign = -1 if j % 2 else 1
        yield e1, sign
        e2 = e1 + j
        if e2 <= P:
            yield e2, sign
        j += 1


def euler_factor(b: int, P: int, ring: CoefficientRing = ZZ) -> TruncatedSeries:
    """(q^b; q^b)_inf to precision P via the pentagonal number theorem."""
    if b < 1:
        raise ValueError("b must be positive")
    out = np.zeros(P + 1, dtype=ring.dtype())
    for e, s in pentagonal_terms(P // b):
        out[b * e] = s
    return TruncatedSeries._wrap(out, ring)


def pochhammer(a: int, b: int, sign: int, P: int, ring: CoefficientRing = ZZ) -> TruncatedSeries:
    """prod_{n>=0} (1 + sign*q^(a+b*n)) to precision P."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = np.zeros(P + 1, dtype=ring.dtype())
    out[0] = 1
    for m in range(a, P + 1, b):
        out[m:] = out[m:] + sign * out[: P + 1 - m]
        if not ring.exact:
            out[m:] %= ring.modulus
    return TruncatedSeries._wrap(out, ring)


def write_csv(series: TruncatedSeries, fh: TextIO, start: int = 0) -> None:
    """Write ``n,coefficient`` lines for n = start..P."""
    for n in range(start, series.precision + 1):
        fh.write(f"{n},{int(series._c[n])}\n")
