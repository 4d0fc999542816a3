"""Elementary number theory shared by the rest of the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Dict, Iterable, List, Mapping


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization of ``|n|``; fine for the smooth levels used here."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: Dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(N: int) -> List[int]:
    if N < 1:
        raise ValueError("N must be positive")
    divs = [1]
    for p, e in factorize(N).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError("p must be a prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(a, n) != 1:
        return 0
    result = 1
    # strip factors of 2 from n; (a/2) depends on a mod 8
    while n % 2 == 0:
        n //= 2
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class FactoredInteger:
    """``sign * prod(p**e)`` kept in factored form.

    Exponents may be negative: eta-quotient tops ``prod(delta**r)`` are in
    general rationals, and only exponent parity matters for characters.
    """

    sign: int = 1
    factors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        clean = {}
        for p, e in self.factors.items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e:
                clean[int(p)] = int(e)
        object.__setattr__(self, "factors", dict(sorted(clean.items())))

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        return cls(-1 if n < 0 else 1, factorize(n))

    @classmethod
    def product(cls, terms: Iterable[tuple[int, int]], sign: int = 1) -> "FactoredInteger":
        """Build ``sign * prod(base**exp)`` from ``(base, exp)`` pairs without multiplying out."""
        acc: Dict[int, int] = {}
        for base, exp in terms:
            if base <= 0:
                raise ValueError("bases must be positive")
            for p, e in factorize(base).items():
                acc[p] = acc.get(p, 0) + e * exp
        return cls(sign, acc)

    def value(self) -> int:
        """Materialize; only meant for small values (tests, display)."""
        if any(e < 0 for e in self.factors.values()):
            raise ValueError("not an integer: negative exponent present")
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        return v

    def to_json(self) -> dict:
        return {"sign": self.sign, "factors": {str(p): e for p, e in self.factors.items()}}


def kronecker_factored(a: FactoredInteger, n: int) -> int:
    """(a/n) by multiplicativity in the top argument."""
    if n < 1:
        raise ValueError("n must be positive")
    result = kronecker_symbol(a.sign, n)
    for p, e in a.factors.items():
        s = kronecker_symbol(p, n)
        if s == 0:
            return 0
        if e % 2:
            result *= s
    return result
